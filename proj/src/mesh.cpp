// Copyright the elastodtn authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "elastodtn/mesh.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "elastodtn/error.hpp"

namespace elastodtn
{

namespace
{

std::atomic<std::uint64_t> next_mesh_id{1};

std::uint64_t EdgeKey(int a, int b)
{
  const auto lo = static_cast<std::uint64_t>(std::min(a, b));
  const auto hi = static_cast<std::uint64_t>(std::max(a, b));
  return (hi << 32) | lo;
}

double SignedArea(const Vec2 &a, const Vec2 &b, const Vec2 &c)
{
  return 0.5 * ((b - a).x() * (c - a).y() - (b - a).y() * (c - a).x());
}

double PolarAngle(const Vec2 &p)
{
  double t = std::atan2(p.y(), p.x());
  if (t < 0.0)
  {
    t += 2.0 * std::numbers::pi;
  }
  // atan2 may round a tiny negative angle up to exactly 2 pi.
  return (t >= 2.0 * std::numbers::pi) ? 0.0 : t;
}

std::string EdgeName(int a, int b)
{
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

}  // namespace

Mesh::Mesh(std::vector<Vec2> vertices, std::vector<VertexTag> tags,
           std::vector<Triangle> triangles, int generation)
  : vertices_(std::move(vertices)), tags_(std::move(tags)), triangles_(std::move(triangles)),
    generation_(generation), id_(next_mesh_id++)
{
  if (vertices_.size() != tags_.size())
  {
    throw Error(ErrorCode::InvalidConfig, "vertex and tag counts differ");
  }
  if (triangles_.empty())
  {
    throw Error(ErrorCode::NonConforming, "mesh has no triangles");
  }
  const int nv = NumVertices();
  for (int t = 0; t < NumTriangles(); t++)
  {
    const auto &tri = triangles_[t];
    for (int v : tri)
    {
      if (v < 0 || v >= nv)
      {
        throw Error(ErrorCode::NonConforming,
                    "triangle " + std::to_string(t) + " references missing vertex " +
                        std::to_string(v));
      }
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
    {
      throw Error(ErrorCode::NonConforming,
                  "triangle " + std::to_string(t) + " repeats a vertex");
    }
    const double area = SignedArea(vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]);
    if (std::abs(area) < 1e-16)
    {
      throw Error(ErrorCode::SingularElement,
                  "triangle " + std::to_string(t) + " has vanishing area");
    }
    if (area < 0.0)
    {
      throw Error(ErrorCode::OrientationError,
                  "triangle " + std::to_string(t) + " is clockwise");
    }
  }
  BuildEdges();
  ClassifyBoundary();
}

void Mesh::BuildEdges()
{
  std::unordered_map<std::uint64_t, int> lookup;
  lookup.reserve(3 * triangles_.size());
  tri_edges_.assign(triangles_.size(), {-1, -1, -1});
  for (int t = 0; t < NumTriangles(); t++)
  {
    const auto &tri = triangles_[t];
    for (int i = 0; i < 3; i++)
    {
      const int a = tri[(i + 1) % 3];
      const int b = tri[(i + 2) % 3];
      const auto [it, inserted] = lookup.try_emplace(EdgeKey(a, b), NumEdges());
      if (inserted)
      {
        Edge e;
        e.v = {a, b};
        e.tri = {t, -1};
        edges_.push_back(e);
      }
      else
      {
        Edge &e = edges_[it->second];
        // A conforming, consistently oriented neighbor traverses the edge backwards.
        if (e.tri[1] != -1 || e.v[0] != b)
        {
          throw Error(ErrorCode::NonConforming, "edge " + EdgeName(a, b) +
                                                    " is shared inconsistently (triangle " +
                                                    std::to_string(t) + ")");
        }
        e.tri[1] = t;
      }
      tri_edges_[t][i] = it->second;
    }
  }
}

void Mesh::ClassifyBoundary()
{
  for (auto &e : edges_)
  {
    if (e.tri[1] != -1)
    {
      e.tag = EdgeTag::Interior;
      continue;
    }
    const VertexTag a = tags_[e.v[0]];
    const VertexTag b = tags_[e.v[1]];
    if (a == VertexTag::Obstacle && b == VertexTag::Obstacle)
    {
      e.tag = EdgeTag::Obstacle;
    }
    else if (a == VertexTag::Outer && b == VertexTag::Outer)
    {
      e.tag = EdgeTag::Outer;
    }
    else
    {
      throw Error(ErrorCode::NonConforming,
                  "boundary edge " + EdgeName(e.v[0], e.v[1]) +
                      " does not join two obstacle or two outer vertices");
    }
  }

  std::vector<std::pair<double, int>> outer;
  std::vector<double> obstacle_radii;
  for (int v = 0; v < NumVertices(); v++)
  {
    if (tags_[v] == VertexTag::Outer)
    {
      outer.emplace_back(PolarAngle(vertices_[v]), v);
    }
    else if (tags_[v] == VertexTag::Obstacle)
    {
      obstacle_radii.push_back(vertices_[v].norm());
    }
  }
  if (outer.size() < 3)
  {
    throw Error(ErrorCode::EmptyBoundary, "mesh needs at least 3 outer vertices");
  }
  std::sort(outer.begin(), outer.end());
  outer_radius_ = 0.0;
  for (const auto &[angle, v] : outer)
  {
    outer_radius_ += vertices_[v].norm();
  }
  outer_radius_ /= static_cast<double>(outer.size());
  for (const auto &[angle, v] : outer)
  {
    if (std::abs(vertices_[v].norm() - outer_radius_) > 1e-12 * outer_radius_)
    {
      throw Error(ErrorCode::InvalidRadii, "outer vertex " + std::to_string(v) +
                                               " is off the circle |x| = R");
    }
    outer_vertices_.push_back(v);
    outer_angles_.push_back(angle);
  }
  for (std::size_t k = 1; k < outer_angles_.size(); k++)
  {
    if (!(outer_angles_[k] > outer_angles_[k - 1]))
    {
      throw Error(ErrorCode::NonConforming, "two outer vertices share a polar angle");
    }
  }

  obstacle_ = {};
  if (obstacle_radii.size() >= 3)
  {
    const auto [lo, hi] = std::minmax_element(obstacle_radii.begin(), obstacle_radii.end());
    if (*hi - *lo <= 1e-12 * *hi)
    {
      obstacle_.circular = true;
      obstacle_.radius =
          std::accumulate(obstacle_radii.begin(), obstacle_radii.end(), 0.0) /
          static_cast<double>(obstacle_radii.size());
    }
  }
}

double Mesh::Area(int t) const
{
  const auto &tri = triangles_[t];
  return SignedArea(vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]);
}

double Mesh::Diameter(int t) const
{
  const auto &e = tri_edges_[t];
  return std::max({EdgeLength(e[0]), EdgeLength(e[1]), EdgeLength(e[2])});
}

double Mesh::EdgeLength(int e) const
{
  return (vertices_[edges_[e].v[0]] - vertices_[edges_[e].v[1]]).norm();
}

double Mesh::MinAngleDegrees() const
{
  double worst = 180.0;
  for (const auto &tri : triangles_)
  {
    for (int i = 0; i < 3; i++)
    {
      const Vec2 &p = vertices_[tri[i]];
      const Vec2 u = vertices_[tri[(i + 1) % 3]] - p;
      const Vec2 w = vertices_[tri[(i + 2) % 3]] - p;
      const double angle = std::atan2(std::abs(u.x() * w.y() - u.y() * w.x()), u.dot(w));
      worst = std::min(worst, angle * 180.0 / std::numbers::pi);
    }
  }
  return worst;
}

void AssignLongestEdge(const std::vector<Vec2> &vertices, std::vector<Triangle> &triangles)
{
  for (auto &tri : triangles)
  {
    int best = 0;
    double best_len = -1.0;
    for (int i = 0; i < 3; i++)
    {
      const double len = (vertices[tri[(i + 1) % 3]] - vertices[tri[(i + 2) % 3]]).norm();
      // Exact ties prefer the lower opposite-vertex index.
      if (len > best_len || (len == best_len && tri[i] < tri[best]))
      {
        best = i;
        best_len = len;
      }
    }
    std::rotate(tri.begin(), tri.begin() + best, tri.end());
  }
}

Mesh GenerateAnnulus(double inner, double outer, int angular_segments, int radial_layers)
{
  if (!(inner > 0.0) || !(inner < outer))
  {
    std::ostringstream msg;
    msg << "annulus needs 0 < inner < outer (inner = " << inner << ", outer = " << outer << ")";
    throw Error(ErrorCode::InvalidRadii, msg.str());
  }
  if (angular_segments < 8 || radial_layers < 1)
  {
    throw Error(ErrorCode::InvalidConfig, "annulus needs >= 8 segments and >= 1 layer");
  }
  const int m = angular_segments;
  std::vector<Vec2> vertices;
  std::vector<VertexTag> tags;
  for (int j = 0; j <= radial_layers; j++)
  {
    const double r = (j == radial_layers)
                         ? outer
                         : inner + (outer - inner) * static_cast<double>(j) / radial_layers;
    for (int i = 0; i < m; i++)
    {
      const double t = 2.0 * std::numbers::pi * i / m;
      vertices.emplace_back(r * std::cos(t), r * std::sin(t));
      tags.push_back(j == 0 ? VertexTag::Obstacle
                            : (j == radial_layers ? VertexTag::Outer : VertexTag::Interior));
    }
  }
  auto id = [m](int i, int j) { return j * m + (i % m); };
  std::vector<Triangle> triangles;
  for (int j = 0; j < radial_layers; j++)
  {
    for (int i = 0; i < m; i++)
    {
      triangles.push_back({id(i, j), id(i, j + 1), id(i + 1, j + 1)});
      triangles.push_back({id(i, j), id(i + 1, j + 1), id(i + 1, j)});
    }
  }
  AssignLongestEdge(vertices, triangles);
  return Mesh(std::move(vertices), std::move(tags), std::move(triangles));
}

Mesh Refine(const Mesh &mesh, std::span<const int> marked, RefineMode mode)
{
  const int ne = mesh.NumEdges();
  std::vector<char> edge_marked(ne, 0);
  std::vector<int> queue;
  for (int t : marked)
  {
    if (t < 0 || t >= mesh.NumTriangles())
    {
      throw Error(ErrorCode::InvalidConfig, "marked triangle " + std::to_string(t) +
                                                " does not exist");
    }
    const auto &edges = mesh.TriangleEdges(t);
    const int count = (mode == RefineMode::Full) ? 3 : 1;
    for (int i = 0; i < count; i++)
    {
      edge_marked[edges[i]] = 1;
    }
    queue.push_back(t);
  }
  for (int t = 0; t < mesh.NumTriangles(); t++)
  {
    queue.push_back(t);
  }

  // Closure: a triangle with any marked edge must have its refinement edge marked.
  while (!queue.empty())
  {
    const int t = queue.back();
    queue.pop_back();
    const auto &edges = mesh.TriangleEdges(t);
    if (edge_marked[edges[0]] || !(edge_marked[edges[1]] || edge_marked[edges[2]]))
    {
      continue;
    }
    edge_marked[edges[0]] = 1;
    for (int nb : mesh.GetEdge(edges[0]).tri)
    {
      if (nb >= 0 && nb != t)
      {
        queue.push_back(nb);
      }
    }
  }

  std::vector<Vec2> vertices = mesh.Vertices();
  std::vector<VertexTag> tags = mesh.Tags();
  std::vector<int> midpoint(ne, -1);
  std::unordered_map<std::uint64_t, int> coarse_edge;
  coarse_edge.reserve(ne);
  for (int e = 0; e < ne; e++)
  {
    const Edge &edge = mesh.GetEdge(e);
    coarse_edge.emplace(EdgeKey(edge.v[0], edge.v[1]), e);
    if (!edge_marked[e])
    {
      continue;
    }
    Vec2 p = 0.5 * (mesh.Vertex(edge.v[0]) + mesh.Vertex(edge.v[1]));
    VertexTag tag = VertexTag::Interior;
    if (edge.tag == EdgeTag::Outer)
    {
      tag = VertexTag::Outer;
      p *= mesh.OuterRadius() / p.norm();
    }
    else if (edge.tag == EdgeTag::Obstacle)
    {
      tag = VertexTag::Obstacle;
      if (mesh.Obstacle().circular)
      {
        p *= mesh.Obstacle().radius / p.norm();
      }
    }
    midpoint[e] = static_cast<int>(vertices.size());
    vertices.push_back(p);
    tags.push_back(tag);
  }

  auto marked_midpoint = [&](int a, int b)
  {
    const auto it = coarse_edge.find(EdgeKey(a, b));
    return (it == coarse_edge.end()) ? -1 : midpoint[it->second];
  };

  std::vector<Triangle> triangles;
  triangles.reserve(2 * mesh.NumTriangles());
  // (a, b, c) with refinement edge b-c; children inherit the new vertex as their peak.
  auto bisect = [&](auto &&self, const Triangle &tri) -> void
  {
    const int m = marked_midpoint(tri[1], tri[2]);
    if (m < 0)
    {
      triangles.push_back(tri);
      return;
    }
    self(self, Triangle{m, tri[0], tri[1]});
    self(self, Triangle{m, tri[2], tri[0]});
  };
  for (const auto &tri : mesh.Triangles())
  {
    bisect(bisect, tri);
  }
  return Mesh(std::move(vertices), std::move(tags), std::move(triangles), mesh.Generation() + 1);
}

std::vector<int> Mark(std::span<const double> etas, double theta)
{
  if (!(theta > 0.0) || !(theta < 1.0))
  {
    throw Error(ErrorCode::ThetaOutOfRange, "theta must lie in (0, 1)");
  }
  double eta_max = 0.0;
  for (double eta : etas)
  {
    if (eta < 0.0)
    {
      throw Error(ErrorCode::InvalidConfig, "estimator values must be non-negative");
    }
    eta_max = std::max(eta_max, eta);
  }
  std::vector<int> out;
  for (int k = 0; k < static_cast<int>(etas.size()); k++)
  {
    if (etas[k] > theta * eta_max)
    {
      out.push_back(k);
    }
  }
  return out;
}

std::vector<Vec2> ObstacleCorners(const Mesh &mesh, double tolerance_degrees)
{
  std::vector<Vec2> corners;
  if (mesh.Obstacle().circular)
  {
    return corners;
  }
  std::vector<std::vector<int>> neighbors(mesh.NumVertices());
  for (const auto &e : mesh.Edges())
  {
    if (e.tag == EdgeTag::Obstacle)
    {
      neighbors[e.v[0]].push_back(e.v[1]);
      neighbors[e.v[1]].push_back(e.v[0]);
    }
  }
  const double tol = tolerance_degrees * std::numbers::pi / 180.0;
  for (int v = 0; v < mesh.NumVertices(); v++)
  {
    if (neighbors[v].size() != 2)
    {
      continue;
    }
    const Vec2 a = (mesh.Vertex(neighbors[v][0]) - mesh.Vertex(v)).normalized();
    const Vec2 b = (mesh.Vertex(neighbors[v][1]) - mesh.Vertex(v)).normalized();
    // Straight continuation has a and b antiparallel.
    const double angle = std::atan2(std::abs(a.x() * b.y() - a.y() * b.x()), a.dot(b));
    if (std::abs(std::numbers::pi - angle) > tol)
    {
      corners.push_back(mesh.Vertex(v));
    }
  }
  return corners;
}

Mesh ReadMesh(std::istream &in, const LoadOptions &options)
{
  std::string line;
  int line_no = 0;
  auto next_line = [&]() -> std::istringstream
  {
    while (std::getline(in, line))
    {
      line_no++;
      const auto first = line.find_first_not_of(" \t\r");
      if (first != std::string::npos && line[first] != '#')
      {
        return std::istringstream(line);
      }
    }
    throw Error(ErrorCode::ParseError, "unexpected end of file after line " +
                                           std::to_string(line_no));
  };
  auto fail = [&](const std::string &what)
  { throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + what); };

  long nv = 0, nt = 0;
  {
    auto ss = next_line();
    std::string kw_v, kw_t;
    if (!(ss >> kw_v >> nv >> kw_t >> nt) || kw_v != "vertices" || kw_t != "triangles" ||
        nv <= 0 || nt <= 0)
    {
      fail("expected header 'vertices <V> triangles <T>'");
    }
  }
  std::vector<Vec2> vertices;
  std::vector<VertexTag> tags;
  vertices.reserve(nv);
  tags.reserve(nv);
  for (long i = 0; i < nv; i++)
  {
    auto ss = next_line();
    double x, y;
    int tag;
    std::string extra;
    if (!(ss >> x >> y >> tag) || (ss >> extra) || tag < 0 || tag > 2)
    {
      fail("expected 'x y tag' with tag in {0, 1, 2}");
    }
    vertices.emplace_back(x, y);
    tags.push_back(static_cast<VertexTag>(tag));
  }
  std::vector<Triangle> triangles;
  triangles.reserve(nt);
  for (long t = 0; t < nt; t++)
  {
    auto ss = next_line();
    Triangle tri;
    std::string extra;
    if (!(ss >> tri[0] >> tri[1] >> tri[2]) || (ss >> extra))
    {
      fail("expected 'i j k'");
    }
    for (int v : tri)
    {
      if (v < 0 || v >= nv)
      {
        fail("vertex index " + std::to_string(v) + " out of range");
      }
    }
    if (SignedArea(vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]) < 0.0)
    {
      if (!options.fix_orientation)
      {
        throw Error(ErrorCode::OrientationError, "line " + std::to_string(line_no) +
                                                     ": triangle " + std::to_string(t) +
                                                     " is clockwise");
      }
      std::swap(tri[1], tri[2]);
    }
    triangles.push_back(tri);
  }
  AssignLongestEdge(vertices, triangles);
  return Mesh(std::move(vertices), std::move(tags), std::move(triangles));
}

Mesh LoadMesh(const std::string &path, const LoadOptions &options)
{
  std::ifstream in(path);
  if (!in)
  {
    throw Error(ErrorCode::IoError, "cannot open mesh file " + path);
  }
  return ReadMesh(in, options);
}

void WriteMesh(std::ostream &out, const Mesh &mesh)
{
  out << "vertices " << mesh.NumVertices() << " triangles " << mesh.NumTriangles() << "\n";
  out << std::setprecision(17);
  for (int v = 0; v < mesh.NumVertices(); v++)
  {
    out << mesh.Vertex(v).x() << ' ' << mesh.Vertex(v).y() << ' '
        << static_cast<int>(mesh.Tag(v)) << '\n';
  }
  for (const auto &tri : mesh.Triangles())
  {
    out << tri[0] << ' ' << tri[1] << ' ' << tri[2] << '\n';
  }
}

void SaveMesh(const std::string &path, const Mesh &mesh)
{
  std::ofstream out(path);
  if (!out)
  {
    throw Error(ErrorCode::IoError, "cannot write mesh file " + path);
  }
  WriteMesh(out, mesh);
}

void WriteTriangleScalars(std::ostream &out, std::span<const double> values)
{
  out << std::setprecision(17);
  for (std::size_t t = 0; t < values.size(); t++)
  {
    out << t << ' ' << values[t] << '\n';
  }
}

}  // namespace elastodtn
