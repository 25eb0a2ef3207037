// Copyright the elastodtn authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef ELASTODTN_ESTIMATOR_HPP
#define ELASTODTN_ESTIMATOR_HPP

#include <optional>
#include <vector>

#include "elastodtn/assembly.hpp"
#include "elastodtn/dtn.hpp"
#include "elastodtn/mesh.hpp"

namespace elastodtn
{

struct EstimateReport
{
  std::vector<double> eta;  // per triangle
  double eps_h = 0.0;       // (sum eta_K^2)^(1/2)
  double eps_N = 0.0;       // DtN truncation part
  long dof = 0;             // number of mesh vertices
  std::optional<double> e_h;           // ||u - u_h||_{H^1} when the exact field is known
  std::optional<double> energy_error;  // |||u - u_h|||
};

// h_K || omega^2 u ||_{L^2(K)}: for P1 fields the second-order terms of the Navier
// operator vanish inside each element.
double ElementResidual(const Mesh &mesh, const SolutionField &field, int t,
                       const Material &material);

// ||J_e||_{L^2(e)} for the flux jump -[sigma(u_1) nu_1 + sigma(u_2) nu_2] with
// sigma(u) nu = mu (grad u) nu + (lambda + mu) (div u) nu.
double InteriorJump(const Mesh &mesh, const SolutionField &field, int edge,
                    const Material &material);

// ||J_e||_{L^2(e)} for J_e = 2 (T_N u_h - mu (grad u_h) e_r - (lambda + mu) (div u_h) e_r)
// on an outer edge. coeffs are the polar Fourier coefficients of the outer trace of u_h.
double BoundaryJump(const Mesh &mesh, const SolutionField &field, int edge,
                    const DtnSpectrum &spectrum, const PolarCoefficients &coeffs);
double BoundaryJump(const Mesh &mesh, const SolutionField &field, int edge,
                    const DtnSpectrum &spectrum);

// eta_K = h_K ||R u||_K + (1/2 sum_{e in dK} h_e ||J_e||^2)^(1/2); obstacle edges carry no
// jump.
double LocalEstimator(const Mesh &mesh, const SolutionField &field, int t,
                      const DtnSpectrum &spectrum);

// Per-triangle indicators, eps_h, and eps_N from the frozen incident-field norm.
EstimateReport GlobalEstimate(const Mesh &mesh, const SolutionField &field,
                              const DtnSpectrum &spectrum, const ProblemConfig &config,
                              double u_inc_h1);

}  // namespace elastodtn

#endif  // ELASTODTN_ESTIMATOR_HPP
