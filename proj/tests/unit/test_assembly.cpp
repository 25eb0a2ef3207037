// Copyright the elastodtn authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <set>

#include "elastodtn/assembly.hpp"
#include "elastodtn/error.hpp"
#include "elastodtn/verify.hpp"
#include "oracles.hpp"

using namespace elastodtn;
using std::numbers::pi;

namespace
{

Mesh RefineAll(const Mesh &mesh)
{
  std::vector<int> all(mesh.NumTriangles());
  std::iota(all.begin(), all.end(), 0);
  return Refine(mesh, all, RefineMode::Full);
}

double MaxAbs(const Eigen::SparseMatrix<cplx> &a)
{
  double m = 0.0;
  for (int k = 0; k < a.outerSize(); k++)
  {
    for (Eigen::SparseMatrix<cplx>::InnerIterator it(a, k); it; ++it)
    {
      m = std::max(m, std::abs(it.value()));
    }
  }
  return m;
}

ExactField Example1Exact(const Material &material)
{
  return [material](const Vec2 &x) { return ExactSolutionExample1(material, x); };
}

VectorField Example1Values(const Material &material)
{
  return [material](const Vec2 &x) { return ExactSolutionExample1(material, x).u; };
}

// Rate p in error ~ h^p between consecutive uniform refinements (h halves each round).
std::vector<double> Rates(const std::vector<double> &errors)
{
  std::vector<double> rates;
  for (std::size_t i = 1; i < errors.size(); i++)
  {
    rates.push_back(std::log2(errors[i - 1] / errors[i]));
  }
  return rates;
}

}  // namespace

TEST_CASE("system dimensions and sparsity on a 16-triangle annulus")
{
  const Mesh mesh = GenerateAnnulus(0.5, 1.0, 8, 1);
  REQUIRE(mesh.NumTriangles() == 16);
  ProblemConfig config = Example1Config();
  config.N = 0;
  const DtnSpectrum spectrum(config.material, config.R, 0);

  const LinearSystem full = Assemble(mesh, config, spectrum);
  int obstacle = 0;
  for (int v = 0; v < mesh.NumVertices(); v++)
  {
    obstacle += mesh.Tag(v) == VertexTag::Obstacle;
  }
  CHECK(obstacle == 8);
  CHECK(full.matrix.rows() == 2 * (mesh.NumVertices() - obstacle));
  CHECK(full.matrix.cols() == full.matrix.rows());
  CHECK(full.rhs.size() == full.matrix.rows());
  CHECK(full.dtn_block_size == 2 * 8);

  // Without the DtN block each free outer vertex couples to itself and its two ring
  // neighbours only.
  AssemblyOptions local;
  local.dtn = false;
  const LinearSystem sparse = Assemble(mesh, config, spectrum, local);
  std::set<std::pair<int, int>> pairs;
  for (int k = 0; k < sparse.matrix.outerSize(); k++)
  {
    for (Eigen::SparseMatrix<cplx>::InnerIterator it(sparse.matrix, k); it; ++it)
    {
      if (it.value() != cplx(0.0))
      {
        pairs.emplace(static_cast<int>(it.row()) / 2, static_cast<int>(it.col()) / 2);
      }
    }
  }
  CHECK(pairs.size() == 8 * 3);
}

TEST_CASE("assembled matrix is complex symmetric")
{
  SUBCASE("Example 1 annulus")
  {
    const Mesh mesh = GenerateAnnulus(0.5, 1.0, 24, 3);
    ProblemConfig config = Example1Config();
    const DtnSpectrum spectrum(config.material, config.R, 35);
    const LinearSystem sys = Assemble(mesh, config, spectrum);
    const Eigen::SparseMatrix<cplx> diff = sys.matrix - Eigen::SparseMatrix<cplx>(sys.matrix.transpose());
    CHECK(MaxAbs(diff) <= 1e-12 * MaxAbs(sys.matrix));
  }
  SUBCASE("polygonal obstacle")
  {
    const Mesh mesh = LoadMesh(std::string(ELASTODTN_DATA_DIR) + "/u_obstacle.mesh");
    ProblemConfig config = Example2Config();
    const DtnSpectrum spectrum(config.material, config.R, 40);
    const LinearSystem sys = Assemble(mesh, config, spectrum);
    const Eigen::SparseMatrix<cplx> diff = sys.matrix - Eigen::SparseMatrix<cplx>(sys.matrix.transpose());
    CHECK(MaxAbs(diff) <= 1e-12 * MaxAbs(sys.matrix));
  }
}

TEST_CASE("constant displacement is in the kernel of the elastic operator")
{
  const Mesh mesh = GenerateAnnulus(0.5, 1.0, 16, 2);
  const ProblemConfig config = Example1Config();
  const DtnSpectrum spectrum(config.material, config.R, 0);
  const Vec2c c(cplx(0.3, -1.2), cplx(2.0, 0.5));
  AssemblyOptions options;
  options.mass = false;
  options.dtn = false;
  options.dirichlet_value = [c](const Vec2 &) { return c; };
  const LinearSystem sys = Assemble(mesh, config, spectrum, options);
  // With the lift on the Dirichlet columns, K_ff c + K_fD c = 0 reads K_ff c = rhs.
  Eigen::VectorXcd cf(sys.matrix.rows());
  for (int k = 0; k < cf.size() / 2; k++)
  {
    cf.segment<2>(2 * k) = c;
  }
  const Eigen::VectorXcd defect = sys.matrix * cf - sys.rhs;
  CHECK(defect.cwiseAbs().maxCoeff() <= 1e-12 * MaxAbs(sys.matrix) * c.cwiseAbs().maxCoeff());
}

TEST_CASE("identity system returns the right-hand side")
{
  const int n = 50;
  Eigen::SparseMatrix<cplx> eye(n, n);
  eye.setIdentity();
  Eigen::VectorXcd b(n);
  std::mt19937 rng(7);
  std::normal_distribution<double> g;
  for (int i = 0; i < n; i++)
  {
    b(i) = cplx(g(rng), g(rng));
  }
  const Eigen::VectorXcd x = SolveSparse(eye, b);
  CHECK((x - b).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("singular system is reported")
{
  Eigen::SparseMatrix<cplx> zero(4, 4);
  zero.insert(0, 0) = 1.0;
  zero.insert(1, 1) = 1.0;
  zero.makeCompressed();
  try
  {
    SolveSparse(zero, Eigen::VectorXcd::Ones(4));
    FAIL("expected an error");
  }
  catch (const Error &e)
  {
    CHECK(e.code() == ErrorCode::SingularSystem);
  }
}

TEST_CASE("manufactured Dirichlet problem converges at first order")
{
  ProblemConfig config = Example1Config();
  const DtnSpectrum spectrum(config.material, config.R, 0);
  AssemblyOptions options;
  options.dtn = false;
  options.dirichlet_on_outer = true;
  options.dirichlet_value = Example1Values(config.material);
  Mesh mesh = GenerateAnnulus(0.5, 1.0, 32, 2);
  std::vector<double> errors;
  for (int round = 0; round <= 3; round++)
  {
    const SolutionField u = Solve(Assemble(mesh, config, spectrum, options));
    errors.push_back(H1Error(mesh, u, Example1Exact(config.material)));
    if (round < 3)
    {
      mesh = RefineAll(mesh);
    }
  }
  for (double rate : Rates(errors))
  {
    CHECK(rate >= 0.85);
    CHECK(rate <= 1.3);
  }
}

TEST_CASE("Example 1 with the DtN condition converges for N = 0 and N = 35")
{
  const ProblemConfig config = Example1Config();
  for (int N : {0, 35})
  {
    const DtnSpectrum spectrum(config.material, config.R, N);
    Mesh mesh = GenerateAnnulus(0.5, 1.0, 32, 2);
    std::vector<double> errors;
    for (int round = 0; round <= 3; round++)
    {
      const SolutionField u = Solve(Assemble(mesh, config, spectrum));
      errors.push_back(H1Error(mesh, u, Example1Exact(config.material)));
      if (round < 3)
      {
        mesh = RefineAll(mesh);
      }
    }
    INFO("N = " << N);
    for (double rate : Rates(errors))
    {
      CHECK(rate >= 0.85);
    }
  }
}

TEST_CASE("coarse Example 1 solve satisfies the linear system")
{
  const Mesh mesh = GenerateAnnulus(0.5, 1.0, 16, 2);
  const ProblemConfig config = Example1Config();
  const DtnSpectrum spectrum(config.material, config.R, 35);
  const LinearSystem sys = Assemble(mesh, config, spectrum);
  const Eigen::VectorXcd x = SolveSparse(sys.matrix, sys.rhs);
  CHECK(x.allFinite());
  CHECK((sys.matrix * x - sys.rhs).norm() <= 1e-10 * sys.rhs.norm());

  const SolutionField u = Solve(sys);
  for (int v = 0; v < mesh.NumVertices(); v++)
  {
    CHECK(u.values[v].allFinite());
    if (mesh.Tag(v) == VertexTag::Obstacle)
    {
      CHECK(u.dirichlet[v]);
      CHECK((u.values[v] + IncidentField(config, mesh.Vertex(v))).norm() == 0.0);
    }
  }
}

TEST_CASE("discrete solution is Galerkin orthogonal to every free basis function")
{
  SUBCASE("Example 1")
  {
    const Mesh mesh = GenerateAnnulus(0.5, 1.0, 20, 3);
    const ProblemConfig config = Example1Config();
    const DtnSpectrum spectrum(config.material, config.R, 12);
    const SolutionField u = Solve(Assemble(mesh, config, spectrum));
    const oracle::GalerkinCheck check = oracle::GalerkinResiduals(mesh, u, spectrum);
    for (int i = 0; i < check.residual.size(); i++)
    {
      INFO("entry " << i);
      CHECK(std::abs(check.residual(i)) <= 1e-9 * check.scale(i));
    }
  }
  SUBCASE("Example 2")
  {
    const Mesh mesh = LoadMesh(std::string(ELASTODTN_DATA_DIR) + "/u_obstacle.mesh");
    const ProblemConfig config = Example2Config();
    const DtnSpectrum spectrum(config.material, config.R, 20);
    const SolutionField u = Solve(Assemble(mesh, config, spectrum));
    const oracle::GalerkinCheck check = oracle::GalerkinResiduals(mesh, u, spectrum);
    double worst = 0.0;
    for (int i = 0; i < check.residual.size(); i++)
    {
      worst = std::max(worst, std::abs(check.residual(i)) / check.scale(i));
    }
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("DtN block reproduces the boundary form")
{
  const ProblemConfig config = Example1Config();
  const DtnSpectrum spectrum(config.material, config.R, 9);
  std::vector<double> angles;
  for (int k = 0; k < 23; k++)
  {
    angles.push_back(2.0 * pi * (k + 0.3 * std::sin(k)) / 23.0);
  }
  std::mt19937 rng(11);
  std::normal_distribution<double> g;
  BoundaryTrace tu{angles, {}}, tv{angles, {}};
  Eigen::VectorXcd xu(2 * angles.size()), xv(2 * angles.size());
  for (std::size_t k = 0; k < angles.size(); k++)
  {
    const Vec2c a(cplx(g(rng), g(rng)), cplx(g(rng), g(rng)));
    const Vec2c b(cplx(g(rng), g(rng)), cplx(g(rng), g(rng)));
    tu.values.push_back(a);
    tv.values.push_back(b);
    xu.segment<2>(2 * k) = a;
    xv.segment<2>(2 * k) = b;
  }
  const Eigen::MatrixXcd d = DtnBlock(spectrum, angles);
  const cplx form = DtnBoundaryForm(spectrum, tu, tv);
  const cplx block = xv.dot(d * xu);
  CHECK(std::abs(form - block) <= 1e-12 * std::abs(form));
}

TEST_CASE("norms of a constant field")
{
  const Mesh mesh = GenerateAnnulus(0.5, 1.0, 256, 8);
  const Material material;
  const SolutionField u = Interpolate(mesh, [](const Vec2 &) { return Vec2c(1.0, 0.0); });
  double area = 0.0;
  for (int t = 0; t < mesh.NumTriangles(); t++)
  {
    area += mesh.Area(t);
  }
  // P1 integration is exact on the polygonal domain, which approaches the annulus.
  CHECK(std::pow(H1Norm(mesh, u), 2) == doctest::Approx(area).epsilon(1e-12));
  CHECK(std::pow(L2Norm(mesh, u), 2) == doctest::Approx(area).epsilon(1e-12));
  CHECK(std::abs(area - 3.0 * pi / 4.0) <= 1e-3 * area);
  CHECK(std::pow(EnergyNorm(mesh, u, material), 2) ==
        doctest::Approx(material.omega * material.omega * area).epsilon(1e-12));
}

TEST_CASE("H1 and energy norms are equivalent")
{
  const Mesh mesh = GenerateAnnulus(0.5, 1.0, 16, 2);
  const Material material;
  const double w2 = material.omega * material.omega;
  const double lower = std::min(material.mu, w2);
  const double upper = std::max(2.0 * material.lambda + 3.0 * material.mu, w2);
  std::mt19937 rng(3);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 100; trial++)
  {
    SolutionField u;
    u.mesh_id = mesh.Id();
    u.dirichlet.assign(mesh.NumVertices(), 0);
    for (int v = 0; v < mesh.NumVertices(); v++)
    {
      u.values.emplace_back(cplx(g(rng), g(rng)), cplx(g(rng), g(rng)));
    }
    const double h1 = std::pow(H1Norm(mesh, u), 2);
    const double energy = std::pow(EnergyNorm(mesh, u, material), 2);
    CHECK(energy >= lower * h1 * (1.0 - 1e-12));
    CHECK(energy <= upper * h1 * (1.0 + 1e-12));
  }
}

TEST_CASE("interpolation error of the exact field decays at first order")
{
  const Material material;
  Mesh mesh = GenerateAnnulus(0.5, 1.0, 32, 2);
  std::vector<double> errors;
  for (int round = 0; round <= 3; round++)
  {
    const SolutionField u = Interpolate(mesh, Example1Values(material));
    errors.push_back(H1Error(mesh, u, Example1Exact(material)));
    if (round < 3)
    {
      mesh = RefineAll(mesh);
    }
  }
  for (double rate : Rates(errors))
  {
    CHECK(rate >= 0.85);
    CHECK(rate <= 1.3);
  }
}

TEST_CASE("fields on different meshes cannot be combined")
{
  const Mesh a = GenerateAnnulus(0.5, 1.0, 8, 1);
  const Mesh b = RefineAll(a);
  const VectorField one = [](const Vec2 &) { return Vec2c(1.0, 0.0); };
  try
  {
    Difference(Interpolate(a, one), Interpolate(b, one));
    FAIL("expected an error");
  }
  catch (const Error &e)
  {
    CHECK(e.code() == ErrorCode::MeshMismatch);
  }
  CHECK_THROWS_AS(H1Norm(b, Interpolate(a, one)), Error);
}

TEST_CASE("incident fields")
{
  SUBCASE("plane compressional wave")
  {
    const ProblemConfig config = Example2Config();
    const Vec2c origin = IncidentField(config, Vec2(0.0, 0.0));
    CHECK(origin(0) == cplx(1.0, 0.0));
    CHECK(origin(1) == cplx(0.0, 0.0));
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> x(-3.0, 3.0);
    for (int k = 0; k < 50; k++)
    {
      CHECK(IncidentField(config, Vec2(x(rng), x(rng))).norm() == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
  SUBCASE("Example 1 in polar components")
  {
    const ProblemConfig config = Example1Config();
    const double k1 = config.material.Kappa1(), k2 = config.material.Kappa2();
    CHECK(k1 == doctest::Approx(pi / 2.0).epsilon(1e-15));
    CHECK(k2 == doctest::Approx(pi).epsilon(1e-15));
    for (double theta : {0.0, 0.7, 2.9, 5.0})
    {
      const Vec2 x(std::cos(theta), std::sin(theta));
      const Vec2 er = x, et(-x.y(), x.x());
      const Vec2c u = IncidentField(config, x);
      const cplx ur = u(0) * er.x() + u(1) * er.y();
      const cplx ut = u(0) * et.x() + u(1) * et.y();
      CHECK(std::abs(ur + k1 * oracle::HankelPrime(0, k1)) <= 1e-12 * std::abs(ur));
      CHECK(std::abs(ut - k2 * oracle::HankelPrime(0, k2)) <= 1e-12 * std::abs(ut));
    }
    try
    {
      IncidentField(config, Vec2(0.0, 0.0));
      FAIL("expected an error");
    }
    catch (const Error &e)
    {
      CHECK(e.code() == ErrorCode::OriginEvaluation);
    }
  }
  SUBCASE("incident H1 norm matches independent quadrature of the interpolant")
  {
    const ProblemConfig config = Example2Config();
    const Mesh mesh = LoadMesh(std::string(ELASTODTN_DATA_DIR) + "/u_obstacle.mesh");
    const SolutionField u =
      Interpolate(mesh, [&config](const Vec2 &x) { return IncidentField(config, x); });
    const double l2 = oracle::IntegrateMesh(
      mesh, [&](const Vec2 &x, int t) { return oracle::EvaluateP1(mesh, u, t, x).squaredNorm(); });
    double grad = 0.0;
    for (int t = 0; t < mesh.NumTriangles(); t++)
    {
      grad += ElementGradient(mesh, u, t).squaredNorm() * mesh.Area(t);
    }
    CHECK(IncidentH1(config, mesh) == doctest::Approx(std::sqrt(l2 + grad)).epsilon(1e-12));
  }
}

TEST_CASE("adding ten modes beyond the selected truncation leaves the solution unchanged")
{
  const Mesh mesh = GenerateAnnulus(0.5, 1.0, 32, 3);
  const ProblemConfig config = Example1Config();
  const int N = SelectTruncation(config.R_hat, config.R, IncidentH1(config, mesh));
  const SolutionField a = Solve(Assemble(mesh, config, DtnSpectrum(config.material, config.R, N)));
  const SolutionField b =
    Solve(Assemble(mesh, config, DtnSpectrum(config.material, config.R, N + 10)));
  const double na = H1Norm(mesh, a), nb = H1Norm(mesh, b);
  CHECK(std::abs(na - nb) <= 1e-6 * nb);
}
