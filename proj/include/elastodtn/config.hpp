// Copyright the elastodtn authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef ELASTODTN_CONFIG_HPP
#define ELASTODTN_CONFIG_HPP

#include <iosfwd>
#include <numbers>
#include <optional>
#include <string>

#include <Eigen/Core>

namespace elastodtn
{

// Lame parameters and angular frequency of the background medium (unit density).
struct Material
{
  double omega = std::numbers::pi;
  double lambda = 2.0;
  double mu = 1.0;

  // Compressional wavenumber omega / sqrt(lambda + 2 mu).
  double Kappa1() const;
  // Shear wavenumber omega / sqrt(mu).
  double Kappa2() const;

  // Throws InvalidMaterial unless omega > 0, mu > 0, lambda + mu > 0.
  void Validate() const;
};

enum class IncidentKind
{
  // Radial/tangential Hankel field with a closed-form scattered solution.
  Example1,
  // Compressional plane wave d exp(i kappa1 x.d).
  PlaneCompressional
};

struct Incident
{
  IncidentKind kind = IncidentKind::Example1;
  Eigen::Vector2d direction{1.0, 0.0};
};

struct ProblemConfig
{
  Material material;
  double R = 1.0;      // radius of the artificial boundary
  double R_hat = 0.5;  // radius of the disk containing the obstacle
  // DtN truncation order; chosen from truncation_tolerance when unset.
  std::optional<int> N;
  double theta = 0.5;
  double tolerance = 1e-2;
  double truncation_tolerance = 1e-8;
  int max_iterations = 30;
  // Optional stop once the vertex count reaches this budget.
  std::optional<long> max_dof;
  Incident incident;

  // Throws InvalidRadii / InvalidMaterial / ThetaOutOfRange / InvalidConfig.
  void Validate() const;
};

ProblemConfig Example1Config();
ProblemConfig Example2Config();

// Applies "key = value" lines ('#' starts a comment) on top of cfg. Keys match the CLI
// long options: omega, lambda, mu, R, R-hat, N, theta, tol, max-iters, max-dof, example.
void ParseConfig(std::istream &in, ProblemConfig &cfg);
void LoadConfigFile(const std::string &path, ProblemConfig &cfg);
void WriteConfig(std::ostream &out, const ProblemConfig &cfg);

}  // namespace elastodtn

#endif  // ELASTODTN_CONFIG_HPP
