// Copyright the elastodtn authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef ELASTODTN_VERIFY_HPP
#define ELASTODTN_VERIFY_HPP

#include <functional>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "elastodtn/assembly.hpp"
#include "elastodtn/driver.hpp"

namespace elastodtn
{

struct ExactValue
{
  Vec2c u;
  Grad2c grad;  // grad(i, j) = d u_i / d x_j
};

using ExactField = std::function<ExactValue(const Vec2 &)>;

// Closed-form scattered field for the Example 1 incident wave (the negative of it):
// u = [k1 H_0'(k1 r)/r] (x, y) + [k2 H_0'(k2 r)/r] (y, -x), with its gradient.
ExactValue ExactSolutionExample1(const Material &material, const Vec2 &x);

// ||exact - u_h||_{H^1} with a degree-5 triangle rule.
double H1Error(const Mesh &mesh, const SolutionField &field, const ExactField &exact);
double EnergyError(const Mesh &mesh, const SolutionField &field, const ExactField &exact,
                   const Material &material);

struct HelmholtzReport
{
  // max over points of |Delta f + k^2 f| / (k^2 |f|) for f = div u (k1) and curl u (k2);
  // absolute values where |f| vanishes.
  double divergence_residual = 0.0;
  double curl_residual = 0.0;
  // max |div u| and |curl u| over the points.
  double divergence_scale = 0.0;
  double curl_scale = 0.0;
};

// Finite-difference check that div u and curl u solve the compressional/shear Helmholtz
// equations at the given points.
HelmholtzReport HelmholtzCheck(const VectorField &u, std::span<const Vec2> points,
                               double kappa1, double kappa2, double step = 1e-3);

struct ConvergenceFit
{
  std::vector<std::pair<double, double>> points;  // (log DoF, log error)
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// Least squares of log error against log DoF; needs at least 3 points.
ConvergenceFit FitPowerLaw(std::span<const double> dofs, std::span<const double> errors);

enum class RateQuantity
{
  ErrorH1,
  Estimate
};

// Rate over the history with the first (pre-asymptotic) iteration dropped.
ConvergenceFit FitRate(const RunHistory &history, RateQuantity quantity);

// Side-by-side "DoF e_h eps_h" columns for an adaptive and a uniform run.
void WriteComparisonTable(std::ostream &out, const RunHistory &adaptive,
                          const RunHistory &uniform);

}  // namespace elastodtn

#endif  // ELASTODTN_VERIFY_HPP
