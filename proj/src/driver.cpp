// Copyright the elastodtn authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "elastodtn/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>

#include "elastodtn/dtn.hpp"
#include "elastodtn/verify.hpp"

namespace elastodtn
{

namespace
{

void CheckGeometry(const ProblemConfig &config, const Mesh &mesh)
{
  if (std::abs(mesh.OuterRadius() - config.R) > 1e-9 * config.R)
  {
    std::ostringstream msg;
    msg << "mesh outer radius " << mesh.OuterRadius() << " differs from R = " << config.R;
    throw Error(ErrorCode::InvalidRadii, msg.str());
  }
  for (int v = 0; v < mesh.NumVertices(); v++)
  {
    if (mesh.Tag(v) == VertexTag::Obstacle && mesh.Vertex(v).norm() > config.R_hat * (1.0 + 1e-12))
    {
      std::ostringstream msg;
      msg << "obstacle vertex " << v << " lies outside the disk of radius " << config.R_hat;
      throw Error(ErrorCode::InvalidRadii, msg.str());
    }
  }
}

// Shared state of one run: truncation order and incident norm are frozen on the initial
// mesh.
struct Runner
{
  ProblemConfig config;
  RunHistory history;
  std::optional<DtnSpectrum> spectrum;

  Runner(const ProblemConfig &cfg, const Mesh &initial) : config(cfg)
  {
    config.Validate();
    CheckGeometry(config, initial);
    history.config = config;
    history.u_inc_h1 = IncidentH1(config, initial);
    history.truncation = config.N ? *config.N
                                  : SelectTruncation(config.R_hat, config.R, history.u_inc_h1,
                                                     config.truncation_tolerance);
    spectrum.emplace(config.material, config.R, history.truncation);
  }

  const IterationRecord &Step(const Mesh &mesh)
  {
    const auto start = std::chrono::steady_clock::now();
    const LinearSystem system = Assemble(mesh, config, *spectrum);
    SolutionField field = Solve(system);
    EstimateReport estimate = GlobalEstimate(mesh, field, *spectrum, config, history.u_inc_h1);
    if (config.incident.kind == IncidentKind::Example1)
    {
      const Material material = config.material;
      const ExactField exact = [material](const Vec2 &x)
      { return ExactSolutionExample1(material, x); };
      estimate.e_h = H1Error(mesh, field, exact);
      estimate.energy_error = EnergyError(mesh, field, exact, material);
    }
    IterationRecord rec;
    rec.iteration = static_cast<int>(history.records.size());
    rec.dof = estimate.dof;
    rec.triangles = mesh.NumTriangles();
    rec.eps_h = estimate.eps_h;
    rec.eps_N = estimate.eps_N;
    rec.e_h = estimate.e_h;
    const auto peak = std::max_element(estimate.eta.begin(), estimate.eta.end());
    if (peak != estimate.eta.end())
    {
      const auto &tri = mesh.Tri(static_cast<int>(peak - estimate.eta.begin()));
      rec.max_eta_centroid =
        (mesh.Vertex(tri[0]) + mesh.Vertex(tri[1]) + mesh.Vertex(tri[2])) / 3.0;
    }
    rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    history.final_mesh = mesh;
    history.final_field = std::move(field);
    history.final_estimate = std::move(estimate);
    history.records.push_back(rec);
    return history.records.back();
  }
};

std::string FormatValue(double v)
{
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

}  // namespace

RunHistory AdaptiveSolve(const ProblemConfig &config, const Mesh &initial)
{
  Runner runner(config, initial);
  Mesh mesh = initial;
  while (true)
  {
    const IterationRecord &rec = runner.Step(mesh);
    if (rec.eps_h <= runner.config.tolerance)
    {
      runner.history.stop = StopReason::Tolerance;
      return std::move(runner.history);
    }
    if (runner.config.max_dof && rec.dof >= *runner.config.max_dof)
    {
      runner.history.stop = StopReason::DofBudget;
      return std::move(runner.history);
    }
    if (static_cast<int>(runner.history.records.size()) >= runner.config.max_iterations)
    {
      std::ostringstream msg;
      msg << "no convergence after " << runner.config.max_iterations
          << " iterations (eps_h = " << rec.eps_h << ")";
      throw IterationCapReached(std::move(runner.history), msg.str());
    }
    const std::vector<int> marked = Mark(runner.history.final_estimate.eta, runner.config.theta);
    mesh = Refine(mesh, marked, RefineMode::Bisection);
  }
}

RunHistory UniformSolve(const ProblemConfig &config, const Mesh &initial, int rounds)
{
  if (rounds < 0)
  {
    throw Error(ErrorCode::InvalidConfig, "uniform rounds must be non-negative");
  }
  Runner runner(config, initial);
  Mesh mesh = initial;
  for (int round = 0;; round++)
  {
    runner.Step(mesh);
    if (round == rounds)
    {
      break;
    }
    std::vector<int> all(mesh.NumTriangles());
    std::iota(all.begin(), all.end(), 0);
    mesh = Refine(mesh, all, RefineMode::Full);
  }
  runner.history.stop = StopReason::RoundsComplete;
  return std::move(runner.history);
}

void WriteHistoryCsv(std::ostream &out, const RunHistory &history)
{
  out << "iter dof eps_h eps_N e_h\n";
  for (const IterationRecord &rec : history.records)
  {
    out << rec.iteration << ' ' << rec.dof << ' ' << FormatValue(rec.eps_h) << ' '
        << FormatValue(rec.eps_N) << ' ' << (rec.e_h ? FormatValue(*rec.e_h) : "nan") << '\n';
  }
}

void WriteSolutionCsv(std::ostream &out, const Mesh &mesh, const SolutionField &field)
{
  if (field.mesh_id != mesh.Id())
  {
    throw Error(ErrorCode::MeshMismatch, "field does not belong to this mesh");
  }
  out << "vertex_index x y re_ux im_ux re_uy im_uy\n";
  for (int v = 0; v < mesh.NumVertices(); v++)
  {
    const Vec2 &p = mesh.Vertex(v);
    const Vec2c &u = field.values[v];
    out << v << ' ' << FormatValue(p.x()) << ' ' << FormatValue(p.y()) << ' '
        << FormatValue(u(0).real()) << ' ' << FormatValue(u(0).imag()) << ' '
        << FormatValue(u(1).real()) << ' ' << FormatValue(u(1).imag()) << '\n';
  }
}

std::vector<double> TriangleMagnitudes(const Mesh &mesh, const SolutionField &field)
{
  std::vector<double> mags(mesh.NumTriangles());
  for (int t = 0; t < mesh.NumTriangles(); t++)
  {
    const auto &tri = mesh.Tri(t);
    mags[t] = (field.values[tri[0]].norm() + field.values[tri[1]].norm() +
               field.values[tri[2]].norm()) /
              3.0;
  }
  return mags;
}

void WriteRunArtifacts(const std::string &directory, const RunHistory &history)
{
  if (!history.final_mesh)
  {
    throw Error(ErrorCode::InvalidConfig, "the run produced no mesh");
  }
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec)
  {
    throw Error(ErrorCode::IoError, "cannot create " + directory + ": " + ec.message());
  }
  const fs::path dir(directory);
  auto open = [&dir](const char *name)
  {
    std::ofstream out(dir / name);
    if (!out)
    {
      throw Error(ErrorCode::IoError, "cannot write " + (dir / name).string());
    }
    return out;
  };
  const Mesh &mesh = *history.final_mesh;
  {
    auto out = open("history.csv");
    WriteHistoryCsv(out, history);
  }
  SaveMesh((dir / "mesh_final.txt").string(), mesh);
  {
    auto out = open("solution_final.csv");
    WriteSolutionCsv(out, mesh, history.final_field);
  }
  {
    auto out = open("eta_final.csv");
    WriteTriangleScalars(out, history.final_estimate.eta);
  }
  {
    auto out = open("umag_final.csv");
    WriteTriangleScalars(out, TriangleMagnitudes(mesh, history.final_field));
  }
  {
    auto out = open("spectrum.txt");
    WriteSpectrum(out, BuildSpectrum(history.config.material, history.config.R,
                                     history.truncation));
  }
}

}  // namespace elastodtn
