// Copyright the elastodtn authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef ELASTODTN_ASSEMBLY_HPP
#define ELASTODTN_ASSEMBLY_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "elastodtn/config.hpp"
#include "elastodtn/dtn.hpp"
#include "elastodtn/mesh.hpp"

namespace elastodtn
{

using Vec2c = Eigen::Vector2cd;
// Displacement gradient, G(i, j) = d u_i / d x_j.
using Grad2c = Eigen::Matrix2cd;
using VectorField = std::function<Vec2c(const Vec2 &)>;

//
// Nodal P1 displacement (Cartesian components) on one mesh.
//
struct SolutionField
{
  std::uint64_t mesh_id = 0;
  std::vector<Vec2c> values;
  // Per vertex: 1 where the value was prescribed as Dirichlet data.
  std::vector<char> dirichlet;
};

//
// Which terms of the sesquilinear form to assemble and where Dirichlet data is imposed.
// The defaults give the scattering problem: rigid obstacle, DtN condition on the circle.
//
struct AssemblyOptions
{
  bool mass = true;
  bool dtn = true;
  bool dirichlet_on_outer = false;
  // Dirichlet values; -u_inc when unset.
  VectorField dirichlet_value;
};

//
// Complex symmetric system over the free (non-Dirichlet) vertex components. DOF 2k + c is
// component c of the k-th free vertex.
//
struct LinearSystem
{
  Eigen::SparseMatrix<cplx> matrix;
  Eigen::VectorXcd rhs;
  // Per vertex: index k of the free vertex, or -1 for Dirichlet vertices.
  std::vector<int> free_index;
  // Per vertex: prescribed values (zero on free vertices).
  std::vector<Vec2c> dirichlet_values;
  std::uint64_t mesh_id = 0;
  // Size of the dense DtN block (2 x free outer vertices), 0 without the DtN term.
  int dtn_block_size = 0;
};

// Gradients of the three barycentric coordinates of triangle t.
std::array<Vec2, 3> BarycentricGradients(const Mesh &mesh, int t);

// Constant displacement gradient of a P1 field on triangle t.
Grad2c ElementGradient(const Mesh &mesh, const SolutionField &field, int t);

LinearSystem Assemble(const Mesh &mesh, const ProblemConfig &config,
                      const DtnSpectrum &spectrum, const AssemblyOptions &options = {});

// Direct sparse LU solve. Throws SingularSystem when the factorization breaks down or the
// relative residual exceeds 1e-10.
Eigen::VectorXcd SolveSparse(const Eigen::SparseMatrix<cplx> &matrix,
                             const Eigen::VectorXcd &rhs);

SolutionField Solve(const LinearSystem &system);

// Dense 2 pi R B^H M B block over the given outer angles, before the minus sign of the
// sesquilinear form. Row/column 2k + c is Cartesian component c at angle k.
Eigen::MatrixXcd DtnBlock(const DtnSpectrum &spectrum, std::span<const double> angles);

// Nodal interpolant of f.
SolutionField Interpolate(const Mesh &mesh, const VectorField &f);

// Boundary trace on the outer circle, ordered by angle.
BoundaryTrace OuterTrace(const Mesh &mesh, const SolutionField &field);

// a - b; throws MeshMismatch for fields on different meshes.
SolutionField Difference(const SolutionField &a, const SolutionField &b);

double L2Norm(const Mesh &mesh, const SolutionField &field);
double H1Norm(const Mesh &mesh, const SolutionField &field);
// (mu |grad u|^2 + (lambda + mu) |div u|^2 + omega^2 |u|^2)^(1/2), integrated over the mesh.
double EnergyNorm(const Mesh &mesh, const SolutionField &field, const Material &material);

Vec2c IncidentField(const ProblemConfig &config, const Vec2 &x);
// ||u_inc||_{H^1} of the nodal interpolant of the incident field.
double IncidentH1(const ProblemConfig &config, const Mesh &mesh);

}  // namespace elastodtn

#endif  // ELASTODTN_ASSEMBLY_HPP
