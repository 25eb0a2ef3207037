// Copyright the elastodtn authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "elastodtn/config.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "elastodtn/error.hpp"

namespace elastodtn
{

double Material::Kappa1() const
{
  return omega / std::sqrt(lambda + 2.0 * mu);
}

double Material::Kappa2() const
{
  return omega / std::sqrt(mu);
}

void Material::Validate() const
{
  if (!(omega > 0.0) || !(mu > 0.0) || !(lambda + mu > 0.0))
  {
    std::ostringstream msg;
    msg << "need omega > 0, mu > 0, lambda + mu > 0 (omega = " << omega
        << ", lambda = " << lambda << ", mu = " << mu << ")";
    throw Error(ErrorCode::InvalidMaterial, msg.str());
  }
}

void ProblemConfig::Validate() const
{
  material.Validate();
  if (!(R_hat > 0.0) || !(R_hat < R))
  {
    std::ostringstream msg;
    msg << "need 0 < R-hat < R (R-hat = " << R_hat << ", R = " << R << ")";
    throw Error(ErrorCode::InvalidRadii, msg.str());
  }
  if (!(theta > 0.0) || !(theta < 1.0))
  {
    throw Error(ErrorCode::ThetaOutOfRange, "theta must lie in (0, 1)");
  }
  if (N && *N < 0)
  {
    throw Error(ErrorCode::InvalidConfig, "N must be non-negative");
  }
  if (!(tolerance > 0.0) || !(truncation_tolerance > 0.0))
  {
    throw Error(ErrorCode::InvalidConfig, "tolerances must be positive");
  }
  if (max_iterations < 1)
  {
    throw Error(ErrorCode::InvalidConfig, "max-iters must be at least 1");
  }
  if (incident.kind == IncidentKind::PlaneCompressional &&
      std::abs(incident.direction.norm() - 1.0) > 1e-12)
  {
    throw Error(ErrorCode::InvalidConfig, "incident direction must be a unit vector");
  }
}

ProblemConfig Example1Config()
{
  ProblemConfig cfg;
  cfg.R = 1.0;
  cfg.R_hat = 0.5;
  cfg.incident.kind = IncidentKind::Example1;
  return cfg;
}

ProblemConfig Example2Config()
{
  ProblemConfig cfg;
  cfg.R = 3.0;
  cfg.R_hat = 2.31;
  cfg.incident.kind = IncidentKind::PlaneCompressional;
  cfg.incident.direction = {1.0, 0.0};
  return cfg;
}

namespace
{

std::string Trim(const std::string &s)
{
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos)
  {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double ToDouble(const std::string &key, const std::string &value, int line)
{
  try
  {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size())
    {
      throw std::invalid_argument(value);
    }
    return v;
  }
  catch (const std::exception &)
  {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": bad value '" +
                                           value + "' for " + key);
  }
}

}  // namespace

void ParseConfig(std::istream &in, ProblemConfig &cfg)
{
  std::string raw;
  int line = 0;
  while (std::getline(in, raw))
  {
    line++;
    const auto hash = raw.find('#');
    const std::string text = Trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty())
    {
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos)
    {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(line) + ": expected 'key = value'");
    }
    const std::string key = Trim(text.substr(0, eq));
    const std::string value = Trim(text.substr(eq + 1));
    if (key == "example")
    {
      const ProblemConfig keep = cfg;
      if (value == "1")
      {
        cfg = Example1Config();
      }
      else if (value == "2")
      {
        cfg = Example2Config();
      }
      else
      {
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(line) + ": example must be 1 or 2");
      }
      cfg.material = keep.material;
    }
    else if (key == "omega")
    {
      cfg.material.omega = ToDouble(key, value, line);
    }
    else if (key == "lambda")
    {
      cfg.material.lambda = ToDouble(key, value, line);
    }
    else if (key == "mu")
    {
      cfg.material.mu = ToDouble(key, value, line);
    }
    else if (key == "R")
    {
      cfg.R = ToDouble(key, value, line);
    }
    else if (key == "R-hat" || key == "R_hat")
    {
      cfg.R_hat = ToDouble(key, value, line);
    }
    else if (key == "N")
    {
      cfg.N = static_cast<int>(ToDouble(key, value, line));
    }
    else if (key == "theta")
    {
      cfg.theta = ToDouble(key, value, line);
    }
    else if (key == "tol" || key == "tolerance")
    {
      cfg.tolerance = ToDouble(key, value, line);
    }
    else if (key == "truncation-tol")
    {
      cfg.truncation_tolerance = ToDouble(key, value, line);
    }
    else if (key == "max-iters")
    {
      cfg.max_iterations = static_cast<int>(ToDouble(key, value, line));
    }
    else if (key == "max-dof")
    {
      cfg.max_dof = static_cast<long>(ToDouble(key, value, line));
    }
    else
    {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(line) + ": unknown key '" + key + "'");
    }
  }
}

void LoadConfigFile(const std::string &path, ProblemConfig &cfg)
{
  std::ifstream in(path);
  if (!in)
  {
    throw Error(ErrorCode::IoError, "cannot open config file " + path);
  }
  ParseConfig(in, cfg);
}

void WriteConfig(std::ostream &out, const ProblemConfig &cfg)
{
  out << std::setprecision(17);
  out << "omega = " << cfg.material.omega << "\n";
  out << "lambda = " << cfg.material.lambda << "\n";
  out << "mu = " << cfg.material.mu << "\n";
  out << "R = " << cfg.R << "\n";
  out << "R-hat = " << cfg.R_hat << "\n";
  if (cfg.N)
  {
    out << "N = " << *cfg.N << "\n";
  }
  out << "theta = " << cfg.theta << "\n";
  out << "tol = " << cfg.tolerance << "\n";
  out << "truncation-tol = " << cfg.truncation_tolerance << "\n";
  out << "max-iters = " << cfg.max_iterations << "\n";
  if (cfg.max_dof)
  {
    out << "max-dof = " << *cfg.max_dof << "\n";
  }
}

}  // namespace elastodtn
