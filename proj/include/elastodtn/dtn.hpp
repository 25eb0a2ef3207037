// Copyright the elastodtn authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef ELASTODTN_DTN_HPP
#define ELASTODTN_DTN_HPP

#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "elastodtn/config.hpp"
#include "elastodtn/specfun.hpp"

namespace elastodtn
{

//
// Displacement trace on the artificial circle. Values are Cartesian (u_x, u_y) at the
// boundary nodes; angles are strictly increasing in [0, 2 pi) and the last arc closes
// periodically back to the first node.
//
struct BoundaryTrace
{
  std::vector<double> angles;
  std::vector<Eigen::Vector2cd> values;
};

//
// Polar Fourier coefficients (u_n^r, u_n^theta) for |n| <= N.
//
class PolarCoefficients
{
public:
  explicit PolarCoefficients(int truncation)
    : truncation_(truncation), coeffs_(2 * truncation + 1, Eigen::Vector2cd::Zero())
  {
  }

  int Truncation() const { return truncation_; }
  Eigen::Vector2cd &operator[](int n) { return coeffs_[n + truncation_]; }
  const Eigen::Vector2cd &operator[](int n) const { return coeffs_[n + truncation_]; }

private:
  int truncation_;
  std::vector<Eigen::Vector2cd> coeffs_;
};

//
// Truncated DtN operator on the circle of radius R: the 2x2 mode matrices M_n acting on
// (u_n^r, u_n^theta), for every signed n with |n| <= N.
//
class DtnSpectrum
{
public:
  DtnSpectrum(const Material &material, double radius, int truncation);

  int Truncation() const { return truncation_; }
  double Radius() const { return radius_; }
  const Material &GetMaterial() const { return material_; }

  const Eigen::Matrix2cd &Mode(int n) const { return modes_.at(n + truncation_); }
  const ModeScalars &Scalars(int n) const { return scalars_.at(n + truncation_); }

  // (T_N u)(R, theta) in polar components.
  Eigen::Vector2cd Evaluate(const PolarCoefficients &coeffs, double theta) const;

private:
  Material material_;
  double radius_;
  int truncation_;
  std::vector<Eigen::Matrix2cd> modes_;
  std::vector<ModeScalars> scalars_;
};

// M_n from the simplified entries N_ij / Lambda_n.
Eigen::Matrix2cd ModeMatrix(const ModeScalars &s, const Material &material);

DtnSpectrum BuildSpectrum(const Material &material, double radius, int truncation);

// Text table "n Re/Im(M11 M12 M21 M22) Re/Im(Lambda_n)", one row per mode.
void WriteSpectrum(std::ostream &out, const DtnSpectrum &spectrum);

// Linear map from nodal values of a piecewise-linear periodic function of theta to its
// Fourier coefficients: c_n = sum_k W(n + N, k) f_k. Each arc is integrated in closed
// form.
Eigen::MatrixXcd ArcFourierWeights(std::span<const double> angles, int truncation);

// Cartesian -> polar (u^r, u^theta) at angle theta.
Eigen::Vector2cd ToPolar(const Eigen::Vector2cd &cartesian, double theta);
Eigen::Vector2cd ToCartesian(const Eigen::Vector2cd &polar, double theta);

// Fourier coefficients of the piecewise-linear interpolant of the polar trace components.
PolarCoefficients FourierCoefficients(const BoundaryTrace &trace, int truncation);

// 2 pi R sum_{|n|<=N} (M_n u_n) . conj(v_n); the sesquilinear form subtracts this term.
cplx DtnBoundaryForm(const DtnSpectrum &spectrum, const BoundaryTrace &trace_u,
                     const BoundaryTrace &trace_v);

// max_{|n| >= N} |n| (Rh/R)^|n| * u_inc_h1.
double TruncationError(int truncation, double r_hat, double r, double u_inc_h1);

// Smallest N >= 0 whose truncation error does not exceed tolerance.
int SelectTruncation(double r_hat, double r, double u_inc_h1, double tolerance = 1e-8);

}  // namespace elastodtn

#endif  // ELASTODTN_DTN_HPP
