// Copyright the elastodtn authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "elastodtn/estimator.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "elastodtn/error.hpp"

namespace elastodtn
{

namespace
{

// 4-point Gauss-Legendre rule on [0, 1].
constexpr double kGaussX[4] = {0.0694318442029737, 0.3300094782075719, 0.6699905217924281,
                               0.9305681557970263};
constexpr double kGaussW[4] = {0.1739274225687269, 0.3260725774312731, 0.3260725774312731,
                               0.1739274225687269};

Vec2c Flux(const Grad2c &g, const Vec2 &normal, const Material &material)
{
  const Vec2c n = normal.cast<cplx>();
  return material.mu * (g * n) + (material.lambda + material.mu) * g.trace() * n;
}

// Outward unit normal of edge e seen from its first triangle.
Vec2 EdgeNormal(const Mesh &mesh, int e)
{
  const Edge &edge = mesh.GetEdge(e);
  const Vec2 d = mesh.Vertex(edge.v[1]) - mesh.Vertex(edge.v[0]);
  return Vec2(d.y(), -d.x()).normalized();
}

double Angle(const Vec2 &p)
{
  return std::atan2(p.y(), p.x());
}

// h_e ||J_e||^2 for every edge; zero on obstacle edges.
std::vector<double> EdgeTerms(const Mesh &mesh, const SolutionField &field,
                              const DtnSpectrum &spectrum, const PolarCoefficients &coeffs)
{
  const Material &mat = spectrum.GetMaterial();
  std::vector<double> terms(mesh.NumEdges(), 0.0);
  for (int e = 0; e < mesh.NumEdges(); e++)
  {
    const EdgeTag tag = mesh.GetEdge(e).tag;
    double jump = 0.0;
    if (tag == EdgeTag::Interior)
    {
      jump = InteriorJump(mesh, field, e, mat);
    }
    else if (tag == EdgeTag::Outer)
    {
      jump = BoundaryJump(mesh, field, e, spectrum, coeffs);
    }
    terms[e] = mesh.EdgeLength(e) * jump * jump;
  }
  return terms;
}

double CombineEta(const Mesh &mesh, const SolutionField &field, int t, const Material &mat,
                  const std::vector<double> &edge_terms)
{
  double jumps = 0.0;
  for (int e : mesh.TriangleEdges(t))
  {
    jumps += edge_terms[e];
  }
  return ElementResidual(mesh, field, t, mat) + std::sqrt(0.5 * jumps);
}

}  // namespace

double ElementResidual(const Mesh &mesh, const SolutionField &field, int t,
                       const Material &material)
{
  const auto &tri = mesh.Tri(t);
  const Vec2c &a = field.values[tri[0]];
  const Vec2c &b = field.values[tri[1]];
  const Vec2c &c = field.values[tri[2]];
  const double l2_sq = mesh.Area(t) / 3.0 *
                       ((0.5 * (a + b)).squaredNorm() + (0.5 * (b + c)).squaredNorm() +
                        (0.5 * (c + a)).squaredNorm());
  return mesh.Diameter(t) * material.omega * material.omega * std::sqrt(l2_sq);
}

double InteriorJump(const Mesh &mesh, const SolutionField &field, int edge,
                    const Material &material)
{
  const Edge &e = mesh.GetEdge(edge);
  if (e.tag != EdgeTag::Interior || e.tri[1] < 0)
  {
    throw Error(ErrorCode::NotInteriorEdge, "edge " + std::to_string(edge) + " is on the boundary");
  }
  const Vec2 nu = EdgeNormal(mesh, edge);
  const Vec2c jump = -(Flux(ElementGradient(mesh, field, e.tri[0]), nu, material) -
                       Flux(ElementGradient(mesh, field, e.tri[1]), nu, material));
  return jump.norm() * std::sqrt(mesh.EdgeLength(edge));
}

double BoundaryJump(const Mesh &mesh, const SolutionField &field, int edge,
                    const DtnSpectrum &spectrum, const PolarCoefficients &coeffs)
{
  const Edge &e = mesh.GetEdge(edge);
  if (e.tag != EdgeTag::Outer)
  {
    throw Error(ErrorCode::NotOuterEdge, "edge " + std::to_string(edge) + " is not on the circle");
  }
  const Material &mat = spectrum.GetMaterial();
  const Grad2c g = ElementGradient(mesh, field, e.tri[0]);
  const double theta_a = Angle(mesh.Vertex(e.v[0]));
  double span = Angle(mesh.Vertex(e.v[1])) - theta_a;
  span = std::remainder(span, 2.0 * std::numbers::pi);
  double sum = 0.0;
  for (int q = 0; q < 4; q++)
  {
    const double theta = theta_a + kGaussX[q] * span;
    const Vec2 e_r(std::cos(theta), std::sin(theta));
    const Vec2c dtn = ToCartesian(spectrum.Evaluate(coeffs, theta), theta);
    const Vec2c jump = 2.0 * (dtn - Flux(g, e_r, mat));
    sum += kGaussW[q] * jump.squaredNorm();
  }
  return std::sqrt(sum * mesh.EdgeLength(edge));
}

double BoundaryJump(const Mesh &mesh, const SolutionField &field, int edge,
                    const DtnSpectrum &spectrum)
{
  const auto coeffs = FourierCoefficients(OuterTrace(mesh, field), spectrum.Truncation());
  return BoundaryJump(mesh, field, edge, spectrum, coeffs);
}

double LocalEstimator(const Mesh &mesh, const SolutionField &field, int t,
                      const DtnSpectrum &spectrum)
{
  const Material &mat = spectrum.GetMaterial();
  double jumps = 0.0;
  std::optional<PolarCoefficients> coeffs;
  for (int e : mesh.TriangleEdges(t))
  {
    const EdgeTag tag = mesh.GetEdge(e).tag;
    double jump = 0.0;
    if (tag == EdgeTag::Interior)
    {
      jump = InteriorJump(mesh, field, e, mat);
    }
    else if (tag == EdgeTag::Outer)
    {
      if (!coeffs)
      {
        coeffs = FourierCoefficients(OuterTrace(mesh, field), spectrum.Truncation());
      }
      jump = BoundaryJump(mesh, field, e, spectrum, *coeffs);
    }
    jumps += mesh.EdgeLength(e) * jump * jump;
  }
  return ElementResidual(mesh, field, t, mat) + std::sqrt(0.5 * jumps);
}

EstimateReport GlobalEstimate(const Mesh &mesh, const SolutionField &field,
                              const DtnSpectrum &spectrum, const ProblemConfig &config,
                              double u_inc_h1)
{
  const auto coeffs = FourierCoefficients(OuterTrace(mesh, field), spectrum.Truncation());
  const auto edge_terms = EdgeTerms(mesh, field, spectrum, coeffs);
  EstimateReport report;
  report.eta.resize(mesh.NumTriangles());
  double sum = 0.0;
  for (int t = 0; t < mesh.NumTriangles(); t++)
  {
    report.eta[t] = CombineEta(mesh, field, t, spectrum.GetMaterial(), edge_terms);
    sum += report.eta[t] * report.eta[t];
  }
  report.eps_h = std::sqrt(sum);
  report.eps_N = TruncationError(spectrum.Truncation(), config.R_hat, config.R, u_inc_h1);
  report.dof = mesh.NumVertices();
  return report;
}

}  // namespace elastodtn
