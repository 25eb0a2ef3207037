// Copyright the elastodtn authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

// Command line front end: solve, convergence, spectrum-dump, mesh-info.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "elastodtn/driver.hpp"
#include "elastodtn/dtn.hpp"
#include "elastodtn/error.hpp"
#include "elastodtn/mesh.hpp"
#include "elastodtn/verify.hpp"

#ifndef ELASTODTN_DATA_DIR
#define ELASTODTN_DATA_DIR "data"
#endif

namespace
{

using namespace elastodtn;

struct Options
{
  int example = 1;
  std::string config_path;
  std::string mesh_path;
  std::string out_dir = "elastodtn_out";
  std::optional<double> omega, lambda, mu, R, R_hat, theta, tol;
  std::optional<int> N, max_iters;
  std::optional<long> max_dof;
  int rounds = 3;
  int annulus_segments = 64;
  int annulus_layers = 4;
};

void AddProblemOptions(CLI::App *app, Options &opt)
{
  app->add_option("--example", opt.example, "Built-in problem (1: annulus, 2: U obstacle)")
    ->check(CLI::IsMember({1, 2}));
  app->add_option("--config", opt.config_path, "key = value configuration file")
    ->check(CLI::ExistingFile);
  app->add_option("--omega", opt.omega, "Angular frequency");
  app->add_option("--lambda", opt.lambda, "Lame parameter lambda");
  app->add_option("--mu", opt.mu, "Lame parameter mu");
  app->add_option("--R", opt.R, "Radius of the artificial boundary");
  app->add_option("--R-hat", opt.R_hat, "Radius of the disk containing the obstacle");
  app->add_option("--N", opt.N, "DtN truncation order (default: chosen from the tolerance)");
  app->add_option("--theta", opt.theta, "Marking parameter in (0, 1)");
  app->add_option("--tol", opt.tol, "Stop once eps_h falls below this value");
  app->add_option("--max-iters", opt.max_iters, "Iteration cap");
  app->add_option("--max-dof", opt.max_dof, "Stop once the vertex count reaches this value");
  app->add_option("--mesh", opt.mesh_path, "Initial mesh file")->check(CLI::ExistingFile);
  app->add_option("--annulus", opt.annulus_segments,
                  "Angular segments of the generated Example 1 mesh");
  app->add_option("--layers", opt.annulus_layers,
                  "Radial layers of the generated Example 1 mesh");
}

ProblemConfig BuildConfig(const Options &opt)
{
  ProblemConfig cfg = opt.example == 2 ? Example2Config() : Example1Config();
  if (!opt.config_path.empty())
  {
    LoadConfigFile(opt.config_path, cfg);
  }
  if (opt.omega) cfg.material.omega = *opt.omega;
  if (opt.lambda) cfg.material.lambda = *opt.lambda;
  if (opt.mu) cfg.material.mu = *opt.mu;
  if (opt.R) cfg.R = *opt.R;
  if (opt.R_hat) cfg.R_hat = *opt.R_hat;
  if (opt.N) cfg.N = *opt.N;
  if (opt.theta) cfg.theta = *opt.theta;
  if (opt.tol) cfg.tolerance = *opt.tol;
  if (opt.max_iters) cfg.max_iterations = *opt.max_iters;
  if (opt.max_dof) cfg.max_dof = *opt.max_dof;
  cfg.Validate();
  return cfg;
}

Mesh BuildMesh(const Options &opt, const ProblemConfig &cfg)
{
  if (!opt.mesh_path.empty())
  {
    return LoadMesh(opt.mesh_path);
  }
  if (cfg.incident.kind == IncidentKind::Example1)
  {
    return GenerateAnnulus(cfg.R_hat, cfg.R, opt.annulus_segments, opt.annulus_layers);
  }
  return LoadMesh(std::string(ELASTODTN_DATA_DIR) + "/u_obstacle.mesh");
}

void PrintHistory(const RunHistory &history)
{
  std::cout << "N = " << history.truncation << ", |u_inc|_H1 = " << history.u_inc_h1 << "\n";
  WriteHistoryCsv(std::cout, history);
}

int RunSolve(const Options &opt)
{
  const ProblemConfig cfg = BuildConfig(opt);
  const Mesh mesh = BuildMesh(opt, cfg);
  try
  {
    const RunHistory history = AdaptiveSolve(cfg, mesh);
    WriteRunArtifacts(opt.out_dir, history);
    PrintHistory(history);
    std::cout << "artifacts written to " << opt.out_dir << "\n";
    return 0;
  }
  catch (const IterationCapReached &e)
  {
    WriteRunArtifacts(opt.out_dir, e.History());
    PrintHistory(e.History());
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

int RunConvergence(const Options &opt)
{
  const ProblemConfig cfg = BuildConfig(opt);
  const Mesh mesh = BuildMesh(opt, cfg);
  RunHistory adaptive;
  try
  {
    adaptive = AdaptiveSolve(cfg, mesh);
  }
  catch (const IterationCapReached &e)
  {
    adaptive = e.History();
  }
  const RunHistory uniform = UniformSolve(cfg, mesh, opt.rounds);
  WriteComparisonTable(std::cout, adaptive, uniform);
  const RateQuantity quantity = cfg.incident.kind == IncidentKind::Example1
                                  ? RateQuantity::ErrorH1
                                  : RateQuantity::Estimate;
  const char *label = quantity == RateQuantity::ErrorH1 ? "e_h" : "eps_h";
  const std::pair<const char *, const RunHistory *> runs[] = {{"adaptive", &adaptive},
                                                              {"uniform", &uniform}};
  for (const auto &[name, history] : runs)
  {
    try
    {
      const ConvergenceFit fit = FitRate(*history, quantity);
      std::cout << name << " " << label << " slope " << std::setprecision(4) << fit.slope
                << " (r^2 " << fit.r_squared << ")\n";
    }
    catch (const Error &e)
    {
      std::cout << name << " " << label << " slope unavailable: " << e.what() << "\n";
    }
  }
  WriteRunArtifacts(opt.out_dir, adaptive);
  std::ofstream table(std::filesystem::path(opt.out_dir) / "comparison.txt");
  WriteComparisonTable(table, adaptive, uniform);
  return 0;
}

int RunSpectrumDump(const Options &opt)
{
  const ProblemConfig cfg = BuildConfig(opt);
  const int n = cfg.N ? *cfg.N : SelectTruncation(cfg.R_hat, cfg.R, 1.0, cfg.truncation_tolerance);
  WriteSpectrum(std::cout, BuildSpectrum(cfg.material, cfg.R, n));
  return 0;
}

int RunMeshInfo(const Options &opt)
{
  const ProblemConfig cfg = BuildConfig(opt);
  const Mesh mesh = BuildMesh(opt, cfg);
  int obstacle_edges = 0, outer_edges = 0;
  for (const Edge &e : mesh.Edges())
  {
    obstacle_edges += e.tag == EdgeTag::Obstacle;
    outer_edges += e.tag == EdgeTag::Outer;
  }
  std::cout << "vertices " << mesh.NumVertices() << "\n"
            << "triangles " << mesh.NumTriangles() << "\n"
            << "edges " << mesh.NumEdges() << "\n"
            << "outer_edges " << outer_edges << "\n"
            << "obstacle_edges " << obstacle_edges << "\n"
            << "outer_radius " << mesh.OuterRadius() << "\n"
            << "min_angle_deg " << mesh.MinAngleDegrees() << "\n";
  if (mesh.Obstacle().circular)
  {
    std::cout << "obstacle circular radius " << mesh.Obstacle().radius << "\n";
  }
  else
  {
    const auto corners = ObstacleCorners(mesh);
    std::cout << "obstacle polygon corners " << corners.size() << "\n";
    for (const Vec2 &c : corners)
    {
      std::cout << "  " << c.x() << " " << c.y() << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Adaptive finite element DtN solver for 2D elastic scattering"};
  app.require_subcommand(1);
  Options opt;

  CLI::App *solve = app.add_subcommand("solve", "Run the adaptive loop and write artifacts");
  AddProblemOptions(solve, opt);
  solve->add_option("--out", opt.out_dir, "Output directory");

  CLI::App *conv = app.add_subcommand("convergence", "Adaptive vs uniform refinement table");
  AddProblemOptions(conv, opt);
  conv->add_option("--out", opt.out_dir, "Output directory");
  conv->add_option("--rounds", opt.rounds, "Uniform refinement rounds")
    ->check(CLI::NonNegativeNumber);

  CLI::App *spectrum = app.add_subcommand("spectrum-dump", "Print M_n and Lambda_n per mode");
  AddProblemOptions(spectrum, opt);

  CLI::App *info = app.add_subcommand("mesh-info", "Summarize a mesh");
  AddProblemOptions(info, opt);

  CLI11_PARSE(app, argc, argv);

  try
  {
    if (solve->parsed())
    {
      return RunSolve(opt);
    }
    if (conv->parsed())
    {
      return RunConvergence(opt);
    }
    if (spectrum->parsed())
    {
      return RunSpectrumDump(opt);
    }
    return RunMeshInfo(opt);
  }
  catch (const Error &e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  catch (const std::exception &e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
