// Copyright the elastodtn authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "elastodtn/assembly.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/SparseLU>

#include "elastodtn/error.hpp"

namespace elastodtn
{

namespace
{

void CheckField(const Mesh &mesh, const SolutionField &field)
{
  if (field.mesh_id != mesh.Id() ||
      field.values.size() != static_cast<std::size_t>(mesh.NumVertices()))
  {
    throw Error(ErrorCode::MeshMismatch, "field does not belong to this mesh");
  }
}

// Exact integral of |u|^2 over a triangle for linear u (edge-midpoint rule).
double TriangleL2Squared(double area, const Vec2c &a, const Vec2c &b, const Vec2c &c)
{
  return area / 3.0 *
         ((0.5 * (a + b)).squaredNorm() + (0.5 * (b + c)).squaredNorm() +
          (0.5 * (c + a)).squaredNorm());
}

}  // namespace

std::array<Vec2, 3> BarycentricGradients(const Mesh &mesh, int t)
{
  const auto &tri = mesh.Tri(t);
  const double two_area = 2.0 * mesh.Area(t);
  std::array<Vec2, 3> g;
  for (int i = 0; i < 3; i++)
  {
    const Vec2 &p = mesh.Vertex(tri[(i + 1) % 3]);
    const Vec2 &q = mesh.Vertex(tri[(i + 2) % 3]);
    g[i] = Vec2(p.y() - q.y(), q.x() - p.x()) / two_area;
  }
  return g;
}

Grad2c ElementGradient(const Mesh &mesh, const SolutionField &field, int t)
{
  const auto grads = BarycentricGradients(mesh, t);
  const auto &tri = mesh.Tri(t);
  Grad2c g = Grad2c::Zero();
  for (int a = 0; a < 3; a++)
  {
    g += field.values[tri[a]] * grads[a].transpose().cast<cplx>();
  }
  return g;
}

Eigen::MatrixXcd DtnBlock(const DtnSpectrum &spectrum, std::span<const double> angles)
{
  const int N = spectrum.Truncation();
  const int m = static_cast<int>(angles.size());
  const Eigen::MatrixXcd w = ArcFourierWeights(angles, N);
  // Rows 2(n + N) + p: polar component p of mode n; columns 2k + c: Cartesian nodal DOF.
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(2 * (2 * N + 1), 2 * m);
  for (int k = 0; k < m; k++)
  {
    const double cs = std::cos(angles[k]), sn = std::sin(angles[k]);
    const double rot[2][2] = {{cs, sn}, {-sn, cs}};
    for (int row = 0; row < 2 * N + 1; row++)
    {
      for (int p = 0; p < 2; p++)
      {
        for (int c = 0; c < 2; c++)
        {
          b(2 * row + p, 2 * k + c) = w(row, k) * rot[p][c];
        }
      }
    }
  }
  Eigen::MatrixXcd mb(b.rows(), b.cols());
  for (int n = -N; n <= N; n++)
  {
    const int row = 2 * (n + N);
    mb.middleRows(row, 2).noalias() = spectrum.Mode(n) * b.middleRows(row, 2);
  }
  return (2.0 * std::numbers::pi * spectrum.Radius()) * (b.adjoint() * mb);
}

LinearSystem Assemble(const Mesh &mesh, const ProblemConfig &config,
                      const DtnSpectrum &spectrum, const AssemblyOptions &options)
{
  const Material &mat = config.material;
  mat.Validate();
  const int nv = mesh.NumVertices();

  LinearSystem sys;
  sys.mesh_id = mesh.Id();
  sys.free_index.assign(nv, -1);
  sys.dirichlet_values.assign(nv, Vec2c::Zero());
  const VectorField g = options.dirichlet_value
                            ? options.dirichlet_value
                            : VectorField([&config](const Vec2 &x) { return Vec2c(-IncidentField(config, x)); });
  int nfree = 0;
  for (int v = 0; v < nv; v++)
  {
    const VertexTag tag = mesh.Tag(v);
    const bool fixed = tag == VertexTag::Obstacle ||
                       (tag == VertexTag::Outer && options.dirichlet_on_outer);
    if (fixed)
    {
      sys.dirichlet_values[v] = g(mesh.Vertex(v));
    }
    else
    {
      sys.free_index[v] = nfree++;
    }
  }
  const int ndof = 2 * nfree;
  sys.rhs = Eigen::VectorXcd::Zero(ndof);
  std::vector<Eigen::Triplet<cplx>> triplets;
  triplets.reserve(36 * static_cast<std::size_t>(mesh.NumTriangles()));

  // Adds a(test (va, c), trial (vb, d)) either to the matrix or, for Dirichlet trial
  // DOFs, moved to the right-hand side.
  auto add = [&](int va, int c, int vb, int d, cplx value)
  {
    const int row = sys.free_index[va];
    if (row < 0)
    {
      return;
    }
    const int col = sys.free_index[vb];
    if (col >= 0)
    {
      triplets.emplace_back(2 * row + c, 2 * col + d, value);
    }
    else
    {
      sys.rhs(2 * row + c) -= value * sys.dirichlet_values[vb](d);
    }
  };

  const double w2 = mat.omega * mat.omega;
  for (int t = 0; t < mesh.NumTriangles(); t++)
  {
    const double area = mesh.Area(t);
    if (area < 1e-16)
    {
      throw Error(ErrorCode::SingularElement, "triangle " + std::to_string(t) + " is degenerate");
    }
    const auto grads = BarycentricGradients(mesh, t);
    const auto &tri = mesh.Tri(t);
    for (int a = 0; a < 3; a++)
    {
      for (int b = 0; b < 3; b++)
      {
        const double stiff = mat.mu * area * grads[a].dot(grads[b]);
        const double mass = options.mass ? w2 * area * (a == b ? 2.0 : 1.0) / 12.0 : 0.0;
        for (int c = 0; c < 2; c++)
        {
          for (int d = 0; d < 2; d++)
          {
            double value = (mat.lambda + mat.mu) * area * grads[a](c) * grads[b](d);
            if (c == d)
            {
              value += stiff - mass;
            }
            add(tri[a], c, tri[b], d, value);
          }
        }
      }
    }
  }

  if (options.dtn)
  {
    const auto &outer = mesh.OuterVertices();
    const Eigen::MatrixXcd block = DtnBlock(spectrum, mesh.OuterAngles());
    const int m = static_cast<int>(outer.size());
    for (int k = 0; k < m; k++)
    {
      for (int l = 0; l < m; l++)
      {
        for (int c = 0; c < 2; c++)
        {
          for (int d = 0; d < 2; d++)
          {
            add(outer[k], c, outer[l], d, -block(2 * k + c, 2 * l + d));
          }
        }
      }
    }
    for (int v : outer)
    {
      sys.dtn_block_size += (sys.free_index[v] >= 0) ? 2 : 0;
    }
  }

  sys.matrix.resize(ndof, ndof);
  sys.matrix.setFromTriplets(triplets.begin(), triplets.end());
  sys.matrix.makeCompressed();
  return sys;
}

Eigen::VectorXcd SolveSparse(const Eigen::SparseMatrix<cplx> &matrix, const Eigen::VectorXcd &rhs)
{
  const double rhs_norm = rhs.norm();
  if (rhs_norm == 0.0)
  {
    return Eigen::VectorXcd::Zero(rhs.size());
  }
  Eigen::SparseLU<Eigen::SparseMatrix<cplx>, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(matrix);
  lu.factorize(matrix);
  if (lu.info() != Eigen::Success)
  {
    throw Error(ErrorCode::SingularSystem, "sparse LU failed: " + lu.lastErrorMessage());
  }
  Eigen::VectorXcd x = lu.solve(rhs);
  const double residual = (matrix * x - rhs).norm() / rhs_norm;
  if (!std::isfinite(residual) || residual > 1e-10)
  {
    throw Error(ErrorCode::SingularSystem,
                "relative residual " + std::to_string(residual) + " exceeds 1e-10");
  }
  return x;
}

SolutionField Solve(const LinearSystem &system)
{
  const Eigen::VectorXcd x = SolveSparse(system.matrix, system.rhs);
  SolutionField field;
  field.mesh_id = system.mesh_id;
  const std::size_t nv = system.free_index.size();
  field.values.resize(nv);
  field.dirichlet.resize(nv);
  for (std::size_t v = 0; v < nv; v++)
  {
    const int k = system.free_index[v];
    field.dirichlet[v] = (k < 0);
    field.values[v] = (k < 0) ? system.dirichlet_values[v] : Vec2c(x(2 * k), x(2 * k + 1));
  }
  return field;
}

SolutionField Interpolate(const Mesh &mesh, const VectorField &f)
{
  SolutionField field;
  field.mesh_id = mesh.Id();
  field.values.reserve(mesh.NumVertices());
  field.dirichlet.assign(mesh.NumVertices(), 0);
  for (const auto &x : mesh.Vertices())
  {
    field.values.push_back(f(x));
  }
  return field;
}

BoundaryTrace OuterTrace(const Mesh &mesh, const SolutionField &field)
{
  CheckField(mesh, field);
  BoundaryTrace trace;
  trace.angles = mesh.OuterAngles();
  trace.values.reserve(trace.angles.size());
  for (int v : mesh.OuterVertices())
  {
    trace.values.push_back(field.values[v]);
  }
  return trace;
}

SolutionField Difference(const SolutionField &a, const SolutionField &b)
{
  if (a.mesh_id != b.mesh_id || a.values.size() != b.values.size())
  {
    throw Error(ErrorCode::MeshMismatch, "fields live on different meshes");
  }
  SolutionField out = a;
  for (std::size_t v = 0; v < a.values.size(); v++)
  {
    out.values[v] -= b.values[v];
  }
  return out;
}

double L2Norm(const Mesh &mesh, const SolutionField &field)
{
  CheckField(mesh, field);
  double sum = 0.0;
  for (int t = 0; t < mesh.NumTriangles(); t++)
  {
    const auto &tri = mesh.Tri(t);
    sum += TriangleL2Squared(mesh.Area(t), field.values[tri[0]], field.values[tri[1]],
                             field.values[tri[2]]);
  }
  return std::sqrt(sum);
}

double H1Norm(const Mesh &mesh, const SolutionField &field)
{
  CheckField(mesh, field);
  double sum = 0.0;
  for (int t = 0; t < mesh.NumTriangles(); t++)
  {
    const auto &tri = mesh.Tri(t);
    const double area = mesh.Area(t);
    sum += TriangleL2Squared(area, field.values[tri[0]], field.values[tri[1]],
                             field.values[tri[2]]);
    sum += area * ElementGradient(mesh, field, t).squaredNorm();
  }
  return std::sqrt(sum);
}

double EnergyNorm(const Mesh &mesh, const SolutionField &field, const Material &material)
{
  CheckField(mesh, field);
  const double w2 = material.omega * material.omega;
  double sum = 0.0;
  for (int t = 0; t < mesh.NumTriangles(); t++)
  {
    const auto &tri = mesh.Tri(t);
    const double area = mesh.Area(t);
    const Grad2c g = ElementGradient(mesh, field, t);
    sum += w2 * TriangleL2Squared(area, field.values[tri[0]], field.values[tri[1]],
                                  field.values[tri[2]]);
    sum += area * (material.mu * g.squaredNorm() +
                   (material.lambda + material.mu) * std::norm(g.trace()));
  }
  return std::sqrt(sum);
}

Vec2c IncidentField(const ProblemConfig &config, const Vec2 &x)
{
  const double k1 = config.material.Kappa1();
  if (config.incident.kind == IncidentKind::PlaneCompressional)
  {
    const Vec2 &d = config.incident.direction;
    const cplx phase = std::exp(cplx(0.0, k1 * x.dot(d)));
    return Vec2c(d(0) * phase, d(1) * phase);
  }
  const double r = x.norm();
  if (r == 0.0)
  {
    throw Error(ErrorCode::OriginEvaluation, "the Example 1 incident field is singular at 0");
  }
  const double k2 = config.material.Kappa2();
  // H_0' = -H_1.
  const cplx radial = -k1 * Hankel1(1, k1 * r).h / r;
  const cplx tangential = -k2 * Hankel1(1, k2 * r).h / r;
  return Vec2c(-radial * x.x() - tangential * x.y(), -radial * x.y() + tangential * x.x());
}

double IncidentH1(const ProblemConfig &config, const Mesh &mesh)
{
  return H1Norm(mesh, Interpolate(mesh, [&config](const Vec2 &x)
                                  { return IncidentField(config, x); }));
}

}  // namespace elastodtn
