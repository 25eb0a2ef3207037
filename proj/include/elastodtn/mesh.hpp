// Copyright the elastodtn authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef ELASTODTN_MESH_HPP
#define ELASTODTN_MESH_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace elastodtn
{

using Vec2 = Eigen::Vector2d;

enum class VertexTag : int
{
  Interior = 0,
  Obstacle = 1,
  Outer = 2
};

enum class EdgeTag
{
  Interior,
  Obstacle,
  Outer
};

// Counterclockwise vertex triple. The refinement edge for newest-vertex bisection is
// (t[1], t[2]), i.e. the edge opposite t[0].
using Triangle = std::array<int, 3>;

struct Edge
{
  std::array<int, 2> v;
  // Adjacent triangles; tri[1] == -1 on the boundary.
  std::array<int, 2> tri{-1, -1};
  EdgeTag tag = EdgeTag::Interior;
};

struct ObstacleShape
{
  // Circular obstacles get bisection midpoints projected back onto the circle.
  bool circular = false;
  double radius = 0.0;
};

//
// Conforming triangulation of the annular region between an obstacle and the circle of
// radius R. Immutable; refinement produces a new mesh with a fresh id.
//
class Mesh
{
public:
  // Validates orientation, conformity and boundary tags and derives the edge list. The
  // triangle vertex order is kept as given (it carries the refinement edge).
  Mesh(std::vector<Vec2> vertices, std::vector<VertexTag> tags, std::vector<Triangle> triangles,
       int generation = 0);

  int NumVertices() const { return static_cast<int>(vertices_.size()); }
  int NumTriangles() const { return static_cast<int>(triangles_.size()); }
  int NumEdges() const { return static_cast<int>(edges_.size()); }

  const Vec2 &Vertex(int i) const { return vertices_[i]; }
  VertexTag Tag(int i) const { return tags_[i]; }
  const Triangle &Tri(int t) const { return triangles_[t]; }
  const Edge &GetEdge(int e) const { return edges_[e]; }
  const std::vector<Vec2> &Vertices() const { return vertices_; }
  const std::vector<VertexTag> &Tags() const { return tags_; }
  const std::vector<Triangle> &Triangles() const { return triangles_; }
  const std::vector<Edge> &Edges() const { return edges_; }

  // Edge indices of triangle t; entry i is the edge opposite local vertex i.
  const std::array<int, 3> &TriangleEdges(int t) const { return tri_edges_[t]; }

  double Area(int t) const;
  // Longest edge.
  double Diameter(int t) const;
  double EdgeLength(int e) const;
  // Smallest interior angle over all triangles, in degrees.
  double MinAngleDegrees() const;

  double OuterRadius() const { return outer_radius_; }
  const ObstacleShape &Obstacle() const { return obstacle_; }

  // Outer vertices sorted by polar angle in [0, 2 pi), with the angles.
  const std::vector<int> &OuterVertices() const { return outer_vertices_; }
  const std::vector<double> &OuterAngles() const { return outer_angles_; }

  int Generation() const { return generation_; }
  std::uint64_t Id() const { return id_; }

private:
  std::vector<Vec2> vertices_;
  std::vector<VertexTag> tags_;
  std::vector<Triangle> triangles_;
  std::vector<Edge> edges_;
  std::vector<std::array<int, 3>> tri_edges_;
  std::vector<int> outer_vertices_;
  std::vector<double> outer_angles_;
  double outer_radius_ = 0.0;
  ObstacleShape obstacle_;
  int generation_ = 0;
  std::uint64_t id_ = 0;

  void BuildEdges();
  void ClassifyBoundary();
};

// Rotates each triangle so its longest edge becomes the refinement edge; ties go to the
// rotation whose opposite vertex has the lowest index.
void AssignLongestEdge(const std::vector<Vec2> &vertices, std::vector<Triangle> &triangles);

// Structured triangulation of inner < |x| < outer with angular_segments * (layers + 1)
// vertices; the inner circle is the obstacle.
Mesh GenerateAnnulus(double inner, double outer, int angular_segments, int radial_layers);

enum class RefineMode
{
  // Newest-vertex bisection of the marked triangles plus closure.
  Bisection,
  // All three edges of each marked triangle (four children per triangle).
  Full
};

Mesh Refine(const Mesh &mesh, std::span<const int> marked, RefineMode mode = RefineMode::Bisection);

// Maximum marking: {K : eta_K > theta max eta}.
std::vector<int> Mark(std::span<const double> etas, double theta);

// Obstacle vertices where the boundary turns (polygonal obstacles only).
std::vector<Vec2> ObstacleCorners(const Mesh &mesh, double tolerance_degrees = 1.0);

struct LoadOptions
{
  // Flip clockwise triangles instead of rejecting the file.
  bool fix_orientation = false;
};

Mesh ReadMesh(std::istream &in, const LoadOptions &options = {});
Mesh LoadMesh(const std::string &path, const LoadOptions &options = {});
void WriteMesh(std::ostream &out, const Mesh &mesh);
void SaveMesh(const std::string &path, const Mesh &mesh);

// "triangle_index value" lines.
void WriteTriangleScalars(std::ostream &out, std::span<const double> values);

}  // namespace elastodtn

#endif  // ELASTODTN_MESH_HPP
