// Copyright the elastodtn authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef ELASTODTN_SPECFUN_HPP
#define ELASTODTN_SPECFUN_HPP

#include <complex>
#include <vector>

namespace elastodtn
{

using cplx = std::complex<double>;

inline constexpr int kMaxBesselOrder = 1024;

struct BesselPair
{
  int order;
  double argument;
  double j;  // J_n(z)
  double y;  // Y_n(z)
};

//
// J_n and Y_n stored as sign * exp(log_abs). High orders at moderate arguments leave the
// double range (Y_n grows like (2n/ez)^n), so ratios of Bessel values are formed from
// these logarithms.
//
struct ScaledBessel
{
  double log_abs_j;
  double sign_j;
  double log_abs_y;
  double sign_y;

  // J_n / Y_n.
  double JOverY() const;
};

struct HankelValue
{
  int order;
  double argument;
  cplx h;        // H_n^(1)(z)
  cplx h_prime;  // d/dz H_n^(1)(z)
};

// Compressional/shear scalars of one Fourier mode on the circle of the given radius.
struct ModeScalars
{
  int n;
  double kappa1;
  double kappa2;
  double radius;
  cplx alpha1;    // kappa1 H_n'(kappa1 r) / H_n(kappa1 r)
  cplx alpha2;    // kappa2 H_n'(kappa2 r) / H_n(kappa2 r)
  cplx lambda_n;  // (n/r)^2 - alpha1 alpha2
};

// Log-scaled J_n(z), Y_n(z) for n = 0..n_max. Y_n by forward recurrence from Y_0, Y_1;
// J_n by Miller's downward recurrence normalized with J_0 + 2 sum J_2k = 1.
std::vector<ScaledBessel> BesselJYScaled(int n_max, double z);

// Same values in plain doubles. Throws OverflowRegime when some |Y_n| leaves the
// representable range before n_max.
std::vector<BesselPair> BesselJY(int n_max, double z);

// H_n^(1)(z) and its derivative for signed n.
HankelValue Hankel1(int n, double z);

// H_n^(1)'(z) / H_n^(1)(z) for signed n, valid for orders where H_n itself overflows.
cplx HankelLogDerivative(int n, double z);

// H_n^(1)(z_num) / H_n^(1)(z_den) without forming either value.
cplx HankelRatio(int n, double z_num, double z_den);

ModeScalars ComputeModeScalars(int n, double kappa1, double kappa2, double radius);

// |H_n(k1 R)/H_n(k1 Rh) - H_n(k2 R)/H_n(k2 Rh)|.
double HankelRatioGap(int n, double kappa1, double kappa2, double r_hat, double r);

// Right-hand side of the ratio-gap estimate:
// k2 (k2 - k1) (R^2 - Rh^2) (Rh/R)^|n| / (|n| - 1).
double HankelRatioGapBound(int n, double kappa1, double kappa2, double r_hat, double r);

}  // namespace elastodtn

#endif  // ELASTODTN_SPECFUN_HPP
