// Copyright the elastodtn authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "elastodtn/specfun.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "elastodtn/error.hpp"

namespace elastodtn
{

namespace
{

// Rescaling step for the recurrences; ln of it is added to the tracked exponent.
constexpr double kRescale = 1e200;
const double kLogRescale = std::log(kRescale);

void CheckArguments(int n_max, double z)
{
  if (!(z > 0.0))
  {
    throw Error(ErrorCode::NonPositiveArgument,
                "Bessel argument must be positive, got " + std::to_string(z));
  }
  if (n_max < 0 || n_max > kMaxBesselOrder)
  {
    throw Error(ErrorCode::OverflowRegime,
                "Bessel order " + std::to_string(n_max) + " outside [0, " +
                    std::to_string(kMaxBesselOrder) + "]");
  }
}

double SignOf(double x)
{
  return (x > 0.0) ? 1.0 : ((x < 0.0) ? -1.0 : 0.0);
}

// sign(a) sign(b) exp(log|a| - log|b|), i.e. a / b from the scaled form.
double ScaledQuotient(double log_a, double sign_a, double log_b, double sign_b)
{
  if (sign_a == 0.0)
  {
    return 0.0;
  }
  return sign_a * sign_b * std::exp(log_a - log_b);
}

}  // namespace

double ScaledBessel::JOverY() const
{
  return ScaledQuotient(log_abs_j, sign_j, log_abs_y, sign_y);
}

std::vector<ScaledBessel> BesselJYScaled(int n_max, double z)
{
  CheckArguments(n_max, z);
  std::vector<ScaledBessel> out(static_cast<std::size_t>(n_max) + 1);

  // Miller: start far enough above both the requested order and the turning point z.
  const int base = std::max(n_max, static_cast<int>(std::ceil(z)));
  const int start = base + static_cast<int>(std::ceil(20.0 + 4.0 * std::sqrt(base)));
  {
    std::vector<double> mant(out.size());
    std::vector<int> count(out.size());
    double j_next = 0.0;  // j_{k+1}
    double j_cur = 1e-30;  // j_k
    double sum = 0.0;      // J_0 + 2 sum J_2k, in the current scale
    int rescales = 0;
    for (int k = start; k >= 0; k--)
    {
      if (k <= n_max)
      {
        mant[k] = j_cur;
        count[k] = rescales;
      }
      if (k == 0)
      {
        sum += j_cur;
        break;
      }
      if (k % 2 == 0)
      {
        sum += 2.0 * j_cur;
      }
      const double j_prev = (2.0 * k / z) * j_cur - j_next;
      j_next = j_cur;
      j_cur = j_prev;
      if (std::abs(j_cur) > kRescale)
      {
        j_cur /= kRescale;
        j_next /= kRescale;
        sum /= kRescale;
        rescales++;
      }
    }
    const double log_sum = std::log(std::abs(sum));
    const double sign_sum = SignOf(sum);
    for (int n = 0; n <= n_max; n++)
    {
      out[n].sign_j = SignOf(mant[n]) * sign_sum;
      out[n].log_abs_j = (mant[n] == 0.0)
                             ? -std::numeric_limits<double>::infinity()
                             : std::log(std::abs(mant[n])) +
                                   (count[n] - rescales) * kLogRescale - log_sum;
    }
  }

  // Y_n: forward recurrence is stable since Y_n is the dominant solution.
  {
    double y_prev = std::cyl_neumann(0.0, z);
    double y_cur = std::cyl_neumann(1.0, z);
    int rescales = 0;
    auto store = [&](int n, double v)
    {
      out[n].sign_y = SignOf(v);
      out[n].log_abs_y = std::log(std::abs(v)) + rescales * kLogRescale;
    };
    store(0, y_prev);
    if (n_max >= 1)
    {
      store(1, y_cur);
    }
    for (int n = 1; n < n_max; n++)
    {
      const double y_next = (2.0 * n / z) * y_cur - y_prev;
      y_prev = y_cur;
      y_cur = y_next;
      if (std::abs(y_cur) > kRescale)
      {
        y_cur /= kRescale;
        y_prev /= kRescale;
        rescales++;
      }
      store(n + 1, y_cur);
    }
  }
  return out;
}

std::vector<BesselPair> BesselJY(int n_max, double z)
{
  const auto scaled = BesselJYScaled(n_max, z);
  const double log_max = std::log(std::numeric_limits<double>::max());
  const double log_min = std::log(1e-300);
  std::vector<BesselPair> out;
  out.reserve(scaled.size());
  for (int n = 0; n <= n_max; n++)
  {
    const auto &s = scaled[n];
    if (s.log_abs_y >= log_max || s.log_abs_y < log_min)
    {
      throw Error(ErrorCode::OverflowRegime,
                  "|Y_" + std::to_string(n) + "(" + std::to_string(z) +
                      ")| is not representable; lower the truncation order");
    }
    out.push_back({n, z, s.sign_j * std::exp(s.log_abs_j), s.sign_y * std::exp(s.log_abs_y)});
  }
  return out;
}

HankelValue Hankel1(int n, double z)
{
  const int order = std::abs(n);
  const auto pairs = BesselJY(std::max(order, 1), z);
  auto h = [&](int k) { return cplx(pairs[k].j, pairs[k].y); };
  HankelValue out{n, z, h(order), {}};
  out.h_prime = (order == 0) ? -h(1) : h(order - 1) - (static_cast<double>(order) / z) * h(order);
  if (n < 0 && order % 2 == 1)
  {
    out.h = -out.h;
    out.h_prime = -out.h_prime;
  }
  return out;
}

cplx HankelLogDerivative(int n, double z)
{
  const int order = std::abs(n);
  const auto s = BesselJYScaled(std::max(order, 1), z);
  if (order == 0)
  {
    // H_0' = -H_1; both are O(1) away from z -> 0.
    const cplx h0 = cplx(s[0].sign_j * std::exp(s[0].log_abs_j), s[0].sign_y * std::exp(s[0].log_abs_y));
    const cplx h1 = cplx(s[1].sign_j * std::exp(s[1].log_abs_j), s[1].sign_y * std::exp(s[1].log_abs_y));
    return -h1 / h0;
  }
  // H_{n-1}/H_n with numerator and denominator divided by Y_n.
  const auto &lo = s[order - 1];
  const auto &hi = s[order];
  const cplx num(ScaledQuotient(lo.log_abs_j, lo.sign_j, hi.log_abs_y, hi.sign_y),
                 ScaledQuotient(lo.log_abs_y, lo.sign_y, hi.log_abs_y, hi.sign_y));
  const cplx den(hi.JOverY(), 1.0);
  return num / den - static_cast<double>(order) / z;
}

cplx HankelRatio(int n, double z_num, double z_den)
{
  const int order = std::abs(n);
  const auto a = BesselJYScaled(order, z_num)[order];
  const auto b = BesselJYScaled(order, z_den)[order];
  const double y_ratio = ScaledQuotient(a.log_abs_y, a.sign_y, b.log_abs_y, b.sign_y);
  return y_ratio * cplx(a.JOverY(), 1.0) / cplx(b.JOverY(), 1.0);
}

ModeScalars ComputeModeScalars(int n, double kappa1, double kappa2, double radius)
{
  if (!(radius > 0.0))
  {
    throw Error(ErrorCode::NonPositiveArgument, "mode radius must be positive");
  }
  if (!(kappa1 > 0.0) || !(kappa2 > kappa1))
  {
    throw Error(ErrorCode::InvalidMaterial, "wavenumbers must satisfy 0 < kappa1 < kappa2");
  }
  ModeScalars m{n, kappa1, kappa2, radius, {}, {}, {}};
  m.alpha1 = kappa1 * HankelLogDerivative(n, kappa1 * radius);
  m.alpha2 = kappa2 * HankelLogDerivative(n, kappa2 * radius);
  const double nr = static_cast<double>(n) / radius;
  m.lambda_n = nr * nr - m.alpha1 * m.alpha2;
  if (std::abs(m.lambda_n) < 1e-14)
  {
    throw Error(ErrorCode::DegenerateMode,
                "Lambda_n vanishes for n = " + std::to_string(n) +
                    "; the frequency/radius pair is exceptional");
  }
  return m;
}

double HankelRatioGap(int n, double kappa1, double kappa2, double r_hat, double r)
{
  const cplx first = HankelRatio(n, kappa1 * r, kappa1 * r_hat);
  const cplx second = HankelRatio(n, kappa2 * r, kappa2 * r_hat);
  return std::abs(first - second);
}

double HankelRatioGapBound(int n, double kappa1, double kappa2, double r_hat, double r)
{
  const int order = std::abs(n);
  return kappa2 * (kappa2 - kappa1) * (r * r - r_hat * r_hat) * std::pow(r_hat / r, order) /
         (order - 1.0);
}

}  // namespace elastodtn
