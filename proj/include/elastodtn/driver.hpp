// Copyright the elastodtn authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef ELASTODTN_DRIVER_HPP
#define ELASTODTN_DRIVER_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "elastodtn/assembly.hpp"
#include "elastodtn/config.hpp"
#include "elastodtn/error.hpp"
#include "elastodtn/estimator.hpp"
#include "elastodtn/mesh.hpp"

namespace elastodtn
{

struct IterationRecord
{
  int iteration = 0;
  long dof = 0;  // mesh vertices
  int triangles = 0;
  double eps_h = 0.0;
  double eps_N = 0.0;
  std::optional<double> e_h;
  // Centroid of the triangle with the largest indicator.
  Vec2 max_eta_centroid = Vec2::Zero();
  double wall_seconds = 0.0;
};

enum class StopReason
{
  Tolerance,
  DofBudget,
  RoundsComplete
};

struct RunHistory
{
  ProblemConfig config;
  int truncation = 0;
  double u_inc_h1 = 0.0;
  std::vector<IterationRecord> records;
  std::optional<Mesh> final_mesh;
  SolutionField final_field;
  EstimateReport final_estimate;
  StopReason stop = StopReason::Tolerance;
};

// Thrown when the adaptive loop hits max_iterations; carries everything computed so far.
class IterationCapReached : public Error
{
public:
  IterationCapReached(RunHistory history, const std::string &what)
    : Error(ErrorCode::IterationCapReached, what), history_(std::move(history))
  {
  }

  const RunHistory &History() const { return history_; }

private:
  RunHistory history_;
};

// Loop: solve, estimate, stop if eps_h <= tolerance (or the DoF budget is reached), mark
// with theta, refine.
RunHistory AdaptiveSolve(const ProblemConfig &config, const Mesh &initial);

// Same pipeline, every triangle refined into four each round.
RunHistory UniformSolve(const ProblemConfig &config, const Mesh &initial, int rounds);

// "iter dof eps_h eps_N e_h"; wall time is left out so reruns compare bit-identically.
void WriteHistoryCsv(std::ostream &out, const RunHistory &history);

// "vertex_index x y Re(u_x) Im(u_x) Re(u_y) Im(u_y)".
void WriteSolutionCsv(std::ostream &out, const Mesh &mesh, const SolutionField &field);

// Mean nodal |u| per triangle.
std::vector<double> TriangleMagnitudes(const Mesh &mesh, const SolutionField &field);

// history.csv, mesh_final.txt, solution_final.csv, eta_final.csv, umag_final.csv and
// spectrum.txt under directory (created if missing).
void WriteRunArtifacts(const std::string &directory, const RunHistory &history);

}  // namespace elastodtn

#endif  // ELASTODTN_DRIVER_HPP
