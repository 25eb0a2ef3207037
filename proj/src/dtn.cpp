// Copyright the elastodtn authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "elastodtn/dtn.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <string>

#include "elastodtn/error.hpp"

namespace elastodtn
{

namespace
{

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr cplx kI(0.0, 1.0);

void CheckAngles(std::span<const double> angles)
{
  if (angles.size() < 3)
  {
    throw Error(ErrorCode::EmptyBoundary,
                "need at least 3 boundary nodes, got " + std::to_string(angles.size()));
  }
  for (std::size_t k = 0; k < angles.size(); k++)
  {
    if (angles[k] < 0.0 || angles[k] >= kTwoPi || (k > 0 && !(angles[k] > angles[k - 1])))
    {
      throw Error(ErrorCode::InvalidConfig,
                  "boundary angles must be strictly increasing in [0, 2 pi)");
    }
  }
}

// sin(s)/s and (sin s - s cos s)/(2 s^2), series near zero.
void ArcKernels(double s, double &sinc, double &odd)
{
  if (std::abs(s) < 0.05)
  {
    const double s2 = s * s;
    sinc = 1.0 - s2 / 6.0 * (1.0 - s2 / 20.0 * (1.0 - s2 / 42.0));
    odd = s / 6.0 * (1.0 - s2 / 10.0 * (1.0 - s2 / 28.0 * (1.0 - s2 / 54.0)));
    return;
  }
  sinc = std::sin(s) / s;
  odd = (std::sin(s) - s * std::cos(s)) / (2.0 * s * s);
}

}  // namespace

Eigen::Matrix2cd ModeMatrix(const ModeScalars &s, const Material &material)
{
  const double mu = material.mu;
  const double w2 = material.omega * material.omega;
  const double r = s.radius;
  const cplx in_r = kI * static_cast<double>(s.n) / r;
  Eigen::Matrix2cd m;
  m(0, 0) = -(mu / r) * s.lambda_n + s.alpha2 * w2;
  m(0, 1) = -in_r * mu * s.lambda_n + in_r * w2;
  m(1, 0) = in_r * mu * s.lambda_n - in_r * w2;
  m(1, 1) = -(mu / r) * s.lambda_n + s.alpha1 * w2;
  return m / s.lambda_n;
}

DtnSpectrum::DtnSpectrum(const Material &material, double radius, int truncation)
  : material_(material), radius_(radius), truncation_(truncation)
{
  material_.Validate();
  if (truncation < 0)
  {
    throw Error(ErrorCode::InvalidConfig, "truncation order must be non-negative");
  }
  if (!(radius > 0.0))
  {
    throw Error(ErrorCode::InvalidRadii, "DtN radius must be positive");
  }
  const double k1 = material_.Kappa1();
  const double k2 = material_.Kappa2();
  modes_.reserve(2 * truncation + 1);
  scalars_.reserve(2 * truncation + 1);
  for (int n = -truncation; n <= truncation; n++)
  {
    scalars_.push_back(ComputeModeScalars(n, k1, k2, radius));
    modes_.push_back(ModeMatrix(scalars_.back(), material_));
  }
}

Eigen::Vector2cd DtnSpectrum::Evaluate(const PolarCoefficients &coeffs, double theta) const
{
  const int n_max = std::min(truncation_, coeffs.Truncation());
  Eigen::Vector2cd out = Eigen::Vector2cd::Zero();
  for (int n = -n_max; n <= n_max; n++)
  {
    out += Mode(n) * coeffs[n] * std::exp(kI * (n * theta));
  }
  return out;
}

DtnSpectrum BuildSpectrum(const Material &material, double radius, int truncation)
{
  return DtnSpectrum(material, radius, truncation);
}

void WriteSpectrum(std::ostream &out, const DtnSpectrum &spectrum)
{
  out << "# n Re(M11) Im(M11) Re(M12) Im(M12) Re(M21) Im(M21) Re(M22) Im(M22) "
         "Re(Lambda) Im(Lambda)\n";
  out << std::setprecision(17);
  const int N = spectrum.Truncation();
  for (int n = -N; n <= N; n++)
  {
    const auto &m = spectrum.Mode(n);
    const auto lam = spectrum.Scalars(n).lambda_n;
    out << n;
    for (const cplx v : {m(0, 0), m(0, 1), m(1, 0), m(1, 1), lam})
    {
      out << ' ' << v.real() << ' ' << v.imag();
    }
    out << '\n';
  }
}

Eigen::MatrixXcd ArcFourierWeights(std::span<const double> angles, int truncation)
{
  CheckAngles(angles);
  const int m = static_cast<int>(angles.size());
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(2 * truncation + 1, m);
  for (int k = 0; k < m; k++)
  {
    const int next = (k + 1) % m;
    const double a = angles[k];
    const double b = (next == 0) ? angles[0] + kTwoPi : angles[next];
    const double h = b - a;
    const double c = 0.5 * (a + b);
    for (int n = -truncation; n <= truncation; n++)
    {
      double sinc, odd;
      ArcKernels(0.5 * n * h, sinc, odd);
      const cplx scale = (h / kTwoPi) * std::exp(-kI * (n * c));
      w(n + truncation, k) += scale * (0.5 * sinc + kI * odd);
      w(n + truncation, next) += scale * (0.5 * sinc - kI * odd);
    }
  }
  return w;
}

Eigen::Vector2cd ToPolar(const Eigen::Vector2cd &v, double theta)
{
  const double c = std::cos(theta), s = std::sin(theta);
  return {c * v(0) + s * v(1), -s * v(0) + c * v(1)};
}

Eigen::Vector2cd ToCartesian(const Eigen::Vector2cd &p, double theta)
{
  const double c = std::cos(theta), s = std::sin(theta);
  return {c * p(0) - s * p(1), s * p(0) + c * p(1)};
}

PolarCoefficients FourierCoefficients(const BoundaryTrace &trace, int truncation)
{
  if (trace.values.size() != trace.angles.size())
  {
    throw Error(ErrorCode::NodeSetMismatch, "trace values and angles differ in length");
  }
  const Eigen::MatrixXcd w = ArcFourierWeights(trace.angles, truncation);
  const int m = static_cast<int>(trace.angles.size());
  Eigen::MatrixXcd polar(m, 2);
  for (int k = 0; k < m; k++)
  {
    polar.row(k) = ToPolar(trace.values[k], trace.angles[k]).transpose();
  }
  const Eigen::MatrixXcd c = w * polar;
  PolarCoefficients out(truncation);
  for (int n = -truncation; n <= truncation; n++)
  {
    out[n] = c.row(n + truncation).transpose();
  }
  return out;
}

cplx DtnBoundaryForm(const DtnSpectrum &spectrum, const BoundaryTrace &trace_u,
                     const BoundaryTrace &trace_v)
{
  if (trace_u.angles != trace_v.angles)
  {
    throw Error(ErrorCode::NodeSetMismatch, "traces live on different boundary node sets");
  }
  const int N = spectrum.Truncation();
  const auto cu = FourierCoefficients(trace_u, N);
  const auto cv = FourierCoefficients(trace_v, N);
  cplx sum = 0.0;
  for (int n = -N; n <= N; n++)
  {
    // Plain dot with conjugated v; Eigen's dot() would conjugate the wrong argument.
    const Eigen::Vector2cd mu = spectrum.Mode(n) * cu[n];
    sum += mu(0) * std::conj(cv[n](0)) + mu(1) * std::conj(cv[n](1));
  }
  return kTwoPi * spectrum.Radius() * sum;
}

double TruncationError(int truncation, double r_hat, double r, double u_inc_h1)
{
  if (!(r_hat > 0.0) || !(r_hat < r))
  {
    throw Error(ErrorCode::InvalidRadii, "truncation error needs 0 < R-hat < R");
  }
  if (truncation < 0)
  {
    throw Error(ErrorCode::InvalidConfig, "truncation order must be non-negative");
  }
  const double q = r_hat / r;
  // n q^n decreases past 1/ln(1/q); the window below always contains the maximizer.
  const int span = static_cast<int>(std::ceil(2.0 / std::log(1.0 / q)));
  double best = 0.0;
  for (int n = truncation; n <= truncation + span; n++)
  {
    best = std::max(best, n * std::pow(q, n));
  }
  return best * u_inc_h1;
}

int SelectTruncation(double r_hat, double r, double u_inc_h1, double tolerance)
{
  if (!(tolerance > 0.0))
  {
    throw Error(ErrorCode::InvalidConfig, "truncation tolerance must be positive");
  }
  int n = 0;
  while (TruncationError(n, r_hat, r, u_inc_h1) > tolerance)
  {
    n++;
  }
  return n;
}

}  // namespace elastodtn
