// Copyright the elastodtn authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "elastodtn/assembly.hpp"
#include "elastodtn/driver.hpp"
#include "elastodtn/dtn.hpp"
#include "elastodtn/error.hpp"
#include "elastodtn/mesh.hpp"
#include "elastodtn/specfun.hpp"
#include "elastodtn/verify.hpp"
#include "oracles.hpp"

using namespace elastodtn;
using std::numbers::pi;

namespace
{

struct Outcome
{
  bool pass = true;
  std::ostringstream detail;

  void Require(bool condition, const std::string &what)
  {
    if (!condition)
    {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point start)
{
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Runs one criterion, enforces its time budget and prints the verdict line.
bool Run(int id, const std::string &name, double budget_seconds,
         const std::function<void(Outcome &)> &body)
{
  Outcome out;
  out.detail << std::setprecision(4);
  const auto start = Clock::now();
  try
  {
    body(out);
  }
  catch (const std::exception &e)
  {
    out.pass = false;
    out.detail << " [exception: " << e.what() << "]";
  }
  const double elapsed = Seconds(start);
  if (elapsed > budget_seconds)
  {
    out.pass = false;
    out.detail << " [over time budget " << budget_seconds << " s]";
  }
  std::cout << (out.pass ? "PASS" : "FAIL") << " " << id << " " << name << ":"
            << out.detail.str() << " (" << std::fixed << std::setprecision(2) << elapsed
            << " s)" << std::defaultfloat << std::endl;
  return out.pass;
}

Material MakeMaterial(double omega, double lambda = 2.0, double mu = 1.0)
{
  Material m;
  m.omega = omega;
  m.lambda = lambda;
  m.mu = mu;
  return m;
}

Vec2c Derivative(const VectorField &u, const Vec2 &x, const Vec2 &d, double h)
{
  return (-u(x + 2.0 * h * d) + 8.0 * u(x + h * d) - 8.0 * u(x - h * d) + u(x - 2.0 * h * d)) /
         (12.0 * h);
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

double SymmetryDefect(const Eigen::SparseMatrix<cplx> &a)
{
  const Eigen::SparseMatrix<cplx> t = a.transpose();
  return MaxAbs(a - t) / MaxAbs(a);
}

std::string HistoryText(const RunHistory &h)
{
  std::ostringstream out;
  WriteHistoryCsv(out, h);
  return out.str();
}

// Every edge is shared by two triangles unless it lies on a boundary.
bool Conforming(const Mesh &mesh)
{
  std::map<std::pair<int, int>, int> uses;
  for (const Triangle &t : mesh.Triangles())
  {
    for (int i = 0; i < 3; i++)
    {
      const int a = t[i], b = t[(i + 1) % 3];
      uses[{std::min(a, b), std::max(a, b)}]++;
    }
  }
  if (static_cast<int>(uses.size()) != mesh.NumEdges())
  {
    return false;
  }
  for (const auto &[edge, count] : uses)
  {
    if (count > 2)
    {
      return false;
    }
    if (count == 1 && (mesh.Tag(edge.first) == VertexTag::Interior ||
                       mesh.Tag(edge.second) == VertexTag::Interior))
    {
      return false;
    }
  }
  return true;
}

// DoF needed to reach `target` by log-linear interpolation between bracketing records.
std::optional<double> InterpolatedDof(const RunHistory &h, double target)
{
  for (std::size_t i = 1; i < h.records.size(); i++)
  {
    const double e0 = *h.records[i - 1].e_h, e1 = *h.records[i].e_h;
    if (e0 >= target && e1 <= target)
    {
      const double s = std::log(target / e0) / std::log(e1 / e0);
      return std::exp(std::log(static_cast<double>(h.records[i - 1].dof)) +
                      s * std::log(static_cast<double>(h.records[i].dof) /
                                   static_cast<double>(h.records[i - 1].dof)));
    }
  }
  return std::nullopt;
}

const IterationRecord &ClosestTo(const RunHistory &h, double target)
{
  return *std::min_element(h.records.begin(), h.records.end(),
                           [target](const IterationRecord &a, const IterationRecord &b)
                           {
                             return std::abs(std::log(*a.e_h / target)) <
                                    std::abs(std::log(*b.e_h / target));
                           });
}

void DtnAlgebra(Outcome &out)
{
  const Material material = MakeMaterial(pi);
  const DtnSpectrum spectrum(material, 1.0, 40);
  double worst = 0.0;
  for (int n = -40; n <= 40; n++)
  {
    const Eigen::Matrix2cd reference = oracle::LongFormModeMatrix(n, material, 1.0);
    const double rel = (spectrum.Mode(n) - reference).cwiseAbs().maxCoeff() /
                       reference.cwiseAbs().maxCoeff();
    worst = std::max(worst, rel);
  }
  out.detail << " max relative difference " << worst << " over |n| <= 40";
  out.Require(worst <= 1e-9, "relative difference <= 1e-9");
}

void LambdaAsymptotics(Outcome &out)
{
  const double k1 = pi / 2.0, k2 = pi;
  const double limit = (k1 * k1 + k2 * k2) / 2.0;
  std::vector<double> scaled;
  bool bounded = true;
  for (int n = 64; n <= 512; n++)
  {
    const double gap = std::abs(ComputeModeScalars(n, k1, k2, 1.0).lambda_n - limit);
    bounded = bounded && gap <= 10.0 / n;
    scaled.push_back(n * gap);
  }
  bool monotone = true;
  double previous = std::numeric_limits<double>::infinity();
  std::vector<double> windows;
  for (std::size_t start = 0; start + 32 <= scaled.size(); start += 32)
  {
    const double w = *std::max_element(scaled.begin() + start, scaled.begin() + start + 32);
    monotone = monotone && w <= previous;
    previous = w;
    windows.push_back(w);
  }
  out.detail << " n|Lambda_n - 5pi^2/8| windowed max " << windows.front() << " -> "
             << windows.back();
  out.Require(bounded, "|Lambda_n - 5pi^2/8| <= 10/n");
  out.Require(monotone, "windowed maximum non-increasing");
}

void GapBound(Outcome &out)
{
  const double k1 = pi / 2.0, k2 = pi, r_hat = 0.5, r = 1.0;
  double worst = 0.0;
  for (int n = 30; n <= 120; n++)
  {
    const double bound =
      k2 * (k2 - k1) * (r * r - r_hat * r_hat) * std::pow(r_hat / r, n) / (n - 1.0);
    worst = std::max(worst, HankelRatioGap(n, k1, k2, r_hat, r) / bound);
  }
  out.detail << " max gap/bound " << worst << " over n in [30, 120]";
  out.Require(worst <= 1.0, "gap <= bound");
}

void ModeZeroIdentity(Outcome &out)
{
  const Material triples[] = {MakeMaterial(pi), MakeMaterial(1.0), MakeMaterial(2.0 * pi)};
  double worst = 0.0;
  for (const Material &material : triples)
  {
    const DtnSpectrum spectrum(material, 1.0, 0);
    const VectorField u = [&material](const Vec2 &x)
    { return ExactSolutionExample1(material, x).u; };
    for (double theta : {0.0, 0.9, 2.5, 4.1})
    {
      const Vec2 er(std::cos(theta), std::sin(theta)), et(-std::sin(theta), std::cos(theta));
      const Vec2c dx = Derivative(u, er, Vec2(1.0, 0.0), 1e-3);
      const Vec2c dy = Derivative(u, er, Vec2(0.0, 1.0), 1e-3);
      const Vec2c traction = material.mu * (dx * er.x() + dy * er.y()) +
                             (material.lambda + material.mu) * (dx(0) + dy(1)) * er.cast<cplx>();
      const Eigen::Vector2cd bu(er.cast<cplx>().dot(traction), et.cast<cplx>().dot(traction));
      const Vec2c ux = u(er);
      const Eigen::Vector2cd u0(er.cast<cplx>().dot(ux), et.cast<cplx>().dot(ux));
      worst = std::max(worst, (spectrum.Mode(0) * u0 - bu).norm() / bu.norm());
    }
  }
  out.detail << " max relative mismatch " << worst << " for omega in {pi, 1, 2pi}";
  out.Require(worst <= 1e-8, "relative mismatch <= 1e-8");
}

void TruncationDecay(Outcome &out)
{
  std::vector<double> ns, logs;
  for (int n = 20; n <= 60; n++)
  {
    ns.push_back(n);
    logs.push_back(std::log(TruncationError(n, 0.5, 1.0, 1.0)));
  }
  const double mx = std::accumulate(ns.begin(), ns.end(), 0.0) / ns.size();
  const double my = std::accumulate(logs.begin(), logs.end(), 0.0) / logs.size();
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < ns.size(); i++)
  {
    sxx += (ns[i] - mx) * (ns[i] - mx);
    sxy += (ns[i] - mx) * (logs[i] - my);
  }
  const double slope = sxy / sxx;
  const double ratio = slope / std::log(0.5);
  out.detail << " slope " << slope << " (" << ratio << " x ln 0.5)";
  out.Require(std::abs(ratio - 1.0) <= 0.05, "slope within 5% of ln 0.5");

  std::mt19937 rng(2026);
  std::uniform_real_distribution<double> q(0.2, 0.9), lt(-12.0, -3.0);
  int agree = 0;
  for (int k = 0; k < 20; k++)
  {
    const double ratio_q = q(rng), tol = std::pow(10.0, lt(rng));
    agree += SelectTruncation(ratio_q, 1.0, 1.0, tol) == oracle::BruteForceTruncation(ratio_q, 1.0, tol);
  }
  out.detail << "; selection matches brute force " << agree << "/20";
  out.Require(agree == 20, "selection equals brute-force scan");
}

struct Example1Runs
{
  std::optional<RunHistory> adaptive;
  std::optional<RunHistory> uniform;
  double adaptive_seconds = 0.0;
};

void Example1Convergence(Outcome &out, Example1Runs &runs)
{
  ProblemConfig config = Example1Config();
  config.N = 35;
  config.theta = 0.5;
  config.tolerance = 1e-6;
  config.max_dof = 15000;
  const auto start = Clock::now();
  runs.adaptive = AdaptiveSolve(config, GenerateAnnulus(0.5, 1.0, 64, 4));
  runs.adaptive_seconds = Seconds(start);
  const RunHistory &h = *runs.adaptive;
  const ConvergenceFit fit = FitRate(h, RateQuantity::ErrorH1);
  int plateaus = 0;
  double ratio_lo = std::numeric_limits<double>::infinity(), ratio_hi = 0.0;
  for (std::size_t i = 0; i < h.records.size(); i++)
  {
    const double ratio = h.records[i].eps_h / *h.records[i].e_h;
    ratio_lo = std::min(ratio_lo, ratio);
    ratio_hi = std::max(ratio_hi, ratio);
    if (i > 0 && h.records[i].eps_h >= h.records[i - 1].eps_h)
    {
      plateaus++;
    }
  }
  out.detail << " " << h.records.size() << " iterations, DoF " << h.records.front().dof << " -> "
             << h.records.back().dof << ", e_h " << *h.records.front().e_h << " -> "
             << *h.records.back().e_h << ", slope " << fit.slope << ", eps_h/e_h in ["
             << ratio_lo << ", " << ratio_hi << "], non-decreasing steps " << plateaus;
  out.Require(h.records.size() >= 5, "at least 5 iterations");
  out.Require(h.records.back().dof >= 13000 && h.records.back().dof <= 25000, "final DoF near 15k");
  out.Require(fit.slope >= -0.65 && fit.slope <= -0.35, "slope in [-0.65, -0.35]");
  out.Require(plateaus <= 1, "eps_h decreasing with at most one plateau");
  out.Require(ratio_lo >= 2.0 && ratio_hi <= 30.0, "eps_h/e_h in [2, 30]");
  out.Require(runs.adaptive_seconds <= 300.0, "adaptive run under 5 min");
}

void AdaptiveVersusUniform(Outcome &out, Example1Runs &runs)
{
  if (!runs.adaptive)
  {
    throw Error(ErrorCode::InsufficientData, "the adaptive run did not complete");
  }
  ProblemConfig config = Example1Config();
  config.N = 35;
  const auto start = Clock::now();
  runs.uniform = UniformSolve(config, GenerateAnnulus(0.5, 1.0, 64, 4), 3);
  const double uniform_seconds = Seconds(start);
  const double target = 0.18;
  const IterationRecord &a = ClosestTo(*runs.adaptive, target);
  const IterationRecord &u = ClosestTo(*runs.uniform, target);
  out.detail << " closest to e_h = 0.18: adaptive DoF " << a.dof << " (e_h " << *a.e_h
             << "), uniform DoF " << u.dof << " (e_h " << *u.e_h << ")";
  const auto ia = InterpolatedDof(*runs.adaptive, target);
  const auto iu = InterpolatedDof(*runs.uniform, target);
  if (ia && iu)
  {
    out.detail << "; interpolated to 0.18: adaptive " << std::lround(*ia) << ", uniform "
               << std::lround(*iu);
  }
  out.Require(a.dof <= u.dof, "adaptive DoF <= uniform DoF");
  out.Require(runs.adaptive_seconds + uniform_seconds <= 600.0, "combined runtime under 10 min");
}

void Example2Convergence(Outcome &out)
{
  const Mesh mesh = LoadMesh(std::string(ELASTODTN_DATA_DIR) + "/u_obstacle.mesh");
  ProblemConfig config = Example2Config();
  config.tolerance = 1e-6;
  config.max_dof = 20000;
  const RunHistory h = AdaptiveSolve(config, mesh);
  const ConvergenceFit fit = FitRate(h, RateQuantity::Estimate);
  const std::vector<Vec2> corners = ObstacleCorners(mesh);
  auto near_corner = [&corners](const Vec2 &p)
  {
    return std::any_of(corners.begin(), corners.end(),
                       [&p](const Vec2 &c) { return (p - c).norm() <= 0.3; });
  };
  // Concentration over the last five iterations, once the initial transient has passed.
  const std::size_t first = h.records.size() >= 5 ? h.records.size() - 5 : 0;
  int hits = 0;
  for (std::size_t i = first; i < h.records.size(); i++)
  {
    hits += near_corner(h.records[i].max_eta_centroid);
  }
  int all_hits = 0;
  for (const IterationRecord &rec : h.records)
  {
    all_hits += near_corner(rec.max_eta_centroid);
  }
  out.detail << " N = " << h.truncation << ", " << h.records.size() << " iterations, DoF "
             << h.records.front().dof << " -> " << h.records.back().dof << ", eps_h "
             << h.records.front().eps_h << " -> " << h.records.back().eps_h << ", slope "
             << fit.slope << ", max eta near a corner in " << hits << "/5 final iterations ("
             << all_hits << "/" << h.records.size() << " overall), " << corners.size()
             << " corners";
  out.Require(h.records.size() >= 6, "at least 5 fitted iterations");
  out.Require(fit.slope >= -0.65 && fit.slope <= -0.35, "slope in [-0.65, -0.35]");
  out.Require(hits >= 3, "max eta within 0.3 of a corner in >= 3 of 5 iterations");
}

void TruncationSaturation(Outcome &out)
{
  const Mesh mesh = GenerateAnnulus(0.5, 1.0, 64, 4);
  const ProblemConfig config = Example1Config();
  const SolutionField a =
    Solve(Assemble(mesh, config, DtnSpectrum(config.material, config.R, 35)));
  const SolutionField b =
    Solve(Assemble(mesh, config, DtnSpectrum(config.material, config.R, 45)));
  const double rel = H1Norm(mesh, Difference(a, b)) / H1Norm(mesh, b);
  out.detail << " ||u_35 - u_45||_H1 / ||u_45||_H1 = " << rel;
  out.Require(rel <= 1e-6, "relative H1 difference <= 1e-6");
}

void Infrastructure(Outcome &out)
{
  // Complex symmetry on both examples.
  {
    const ProblemConfig c1 = Example1Config();
    const double s1 = SymmetryDefect(
      Assemble(GenerateAnnulus(0.5, 1.0, 64, 4), c1, DtnSpectrum(c1.material, c1.R, 35)).matrix);
    const ProblemConfig c2 = Example2Config();
    const double s2 =
      SymmetryDefect(Assemble(LoadMesh(std::string(ELASTODTN_DATA_DIR) + "/u_obstacle.mesh"), c2,
                              DtnSpectrum(c2.material, c2.R, 40))
                       .matrix);
    out.detail << " symmetry defect " << std::max(s1, s2);
    out.Require(std::max(s1, s2) <= 1e-12, "complex symmetry <= 1e-12");
  }
  // Wronskian J_{n+1} Y_n - J_n Y_{n+1} = 2/(pi z), orders 0..256.
  {
    double worst = 0.0;
    for (double z : {0.5, 1.0, pi, 10.0, 19.0})
    {
      const auto s = BesselJYScaled(257, z);
      for (int n = 0; n <= 256; n++)
      {
        const double a = s[n + 1].sign_j * s[n].sign_y * std::exp(s[n + 1].log_abs_j + s[n].log_abs_y);
        const double b = s[n].sign_j * s[n + 1].sign_y * std::exp(s[n].log_abs_j + s[n + 1].log_abs_y);
        worst = std::max(worst, std::abs((a - b) * pi * z / 2.0 - 1.0));
      }
    }
    out.detail << ", Wronskian defect " << worst;
    out.Require(worst <= 1e-10, "Wronskian <= 1e-10");
  }
  // Euler characteristic and conformity across six rounds of refinement.
  {
    Mesh mesh = GenerateAnnulus(0.5, 1.0, 16, 2);
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    bool ok = mesh.NumVertices() - mesh.NumEdges() + mesh.NumTriangles() == 0 && Conforming(mesh);
    for (int round = 0; round < 6; round++)
    {
      std::vector<double> eta(mesh.NumTriangles());
      for (double &e : eta)
      {
        e = u(rng);
      }
      mesh = Refine(mesh, Mark(eta, 0.5));
      ok = ok && mesh.NumVertices() - mesh.NumEdges() + mesh.NumTriangles() == 0 &&
           Conforming(mesh) && mesh.MinAngleDegrees() >= 10.0;
    }
    out.detail << ", 6-round mesh " << mesh.NumVertices() << " vertices "
               << (ok ? "valid" : "INVALID");
    out.Require(ok, "Euler characteristic and conformity after each round");
  }
  // Bit-identical history from two identical runs.
  {
    ProblemConfig config = Example1Config();
    config.tolerance = 1e-6;
    config.max_dof = 3000;
    const Mesh mesh = GenerateAnnulus(0.5, 1.0, 32, 2);
    const bool same = HistoryText(AdaptiveSolve(config, mesh)) == HistoryText(AdaptiveSolve(config, mesh));
    out.detail << ", repeated run " << (same ? "identical" : "DIFFERENT");
    out.Require(same, "deterministic history");
  }
}

}  // namespace

int main()
{
  Example1Runs runs;
  int failures = 0;
  failures += !Run(1, "DtN mode matrices", 1.0, DtnAlgebra);
  failures += !Run(2, "Lambda_n asymptotics", 1.0, LambdaAsymptotics);
  failures += !Run(3, "Hankel ratio gap bound", 1.0, GapBound);
  failures += !Run(4, "mode-zero DtN identity", 1.0, ModeZeroIdentity);
  failures += !Run(5, "truncation decay and selection", 1.0, TruncationDecay);
  failures += !Run(6, "Example 1 adaptive convergence", 300.0,
                   [&runs](Outcome &o) { Example1Convergence(o, runs); });
  failures += !Run(7, "adaptive versus uniform", 600.0,
                   [&runs](Outcome &o) { AdaptiveVersusUniform(o, runs); });
  failures += !Run(8, "Example 2 adaptive convergence", 600.0, Example2Convergence);
  failures += !Run(9, "truncation saturation", 60.0, TruncationSaturation);
  failures += !Run(10, "infrastructure properties", 60.0, Infrastructure);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
