// Copyright the elastodtn authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "elastodtn/verify.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "elastodtn/error.hpp"
#include "elastodtn/specfun.hpp"

namespace elastodtn
{

namespace
{

// Degree-5 seven-point rule on the reference triangle, barycentric coordinates.
struct QuadPoint
{
  double l0, l1, l2, w;
};

constexpr double kA1 = 0.059715871789770, kB1 = 0.470142064105115, kW1 = 0.132394152788506;
constexpr double kA2 = 0.797426985353087, kB2 = 0.101286507323456, kW2 = 0.125939180544827;

constexpr QuadPoint kRule[7] = {
  {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.225},
  {kA1, kB1, kB1, kW1},
  {kB1, kA1, kB1, kW1},
  {kB1, kB1, kA1, kW1},
  {kA2, kB2, kB2, kW2},
  {kB2, kA2, kB2, kW2},
  {kB2, kB2, kA2, kW2},
};

// Calls f(point, weight, interpolated value, element gradient) at every quadrature point.
template <typename F>
void Integrate(const Mesh &mesh, const SolutionField &field, F &&f)
{
  if (field.mesh_id != mesh.Id())
  {
    throw Error(ErrorCode::MeshMismatch, "field does not belong to this mesh");
  }
  for (int t = 0; t < mesh.NumTriangles(); t++)
  {
    const auto &tri = mesh.Tri(t);
    const Grad2c g = ElementGradient(mesh, field, t);
    const double area = mesh.Area(t);
    for (const QuadPoint &q : kRule)
    {
      const Vec2 x = q.l0 * mesh.Vertex(tri[0]) + q.l1 * mesh.Vertex(tri[1]) +
                     q.l2 * mesh.Vertex(tri[2]);
      const Vec2c uh = q.l0 * field.values[tri[0]] + q.l1 * field.values[tri[1]] +
                       q.l2 * field.values[tri[2]];
      f(x, q.w * area, uh, g);
    }
  }
}

struct FdDerivatives
{
  cplx div;
  cplx curl;
};

FdDerivatives Derivatives(const VectorField &u, const Vec2 &p, double h)
{
  const Vec2c ux = (u(p + Vec2(h, 0.0)) - u(p - Vec2(h, 0.0))) / (2.0 * h);
  const Vec2c uy = (u(p + Vec2(0.0, h)) - u(p - Vec2(0.0, h))) / (2.0 * h);
  return {ux(0) + uy(1), ux(1) - uy(0)};
}

double Relative(cplx residual, cplx value, double k)
{
  const double scale = k * k * std::abs(value);
  return scale > 0.0 ? std::abs(residual) / scale : std::abs(residual);
}

std::string FormatOptional(const std::optional<double> &v)
{
  if (!v)
  {
    return "-";
  }
  std::ostringstream s;
  s << std::scientific << std::setprecision(4) << *v;
  return s.str();
}

}  // namespace

ExactValue ExactSolutionExample1(const Material &material, const Vec2 &x)
{
  const double r = x.norm();
  if (r == 0.0)
  {
    throw Error(ErrorCode::OriginEvaluation, "the exact field is singular at 0");
  }
  const double k1 = material.Kappa1();
  const double k2 = material.Kappa2();
  const HankelValue h1_0 = Hankel1(0, k1 * r);
  const HankelValue h1_1 = Hankel1(1, k1 * r);
  const HankelValue h2_0 = Hankel1(0, k2 * r);
  const HankelValue h2_1 = Hankel1(1, k2 * r);
  // a(r) = k H_0'(k r) / r = -k H_1(k r) / r, a'(r) = -k (k r H_0 - 2 H_1) / r^2.
  const cplx a = -k1 * h1_1.h / r;
  const cplx b = -k2 * h2_1.h / r;
  const cplx da = -k1 * (k1 * r * h1_0.h - 2.0 * h1_1.h) / (r * r);
  const cplx db = -k2 * (k2 * r * h2_0.h - 2.0 * h2_1.h) / (r * r);
  const double px = x.x(), py = x.y();
  ExactValue v;
  v.u = Vec2c(a * px + b * py, a * py - b * px);
  v.grad(0, 0) = a + da * px * px / r + db * px * py / r;
  v.grad(0, 1) = da * px * py / r + b + db * py * py / r;
  v.grad(1, 0) = da * px * py / r - b - db * px * px / r;
  v.grad(1, 1) = a + da * py * py / r - db * px * py / r;
  return v;
}

double H1Error(const Mesh &mesh, const SolutionField &field, const ExactField &exact)
{
  double sum = 0.0;
  Integrate(mesh, field,
            [&](const Vec2 &x, double w, const Vec2c &uh, const Grad2c &g)
            {
              const ExactValue e = exact(x);
              sum += w * ((e.u - uh).squaredNorm() + (e.grad - g).squaredNorm());
            });
  return std::sqrt(sum);
}

double EnergyError(const Mesh &mesh, const SolutionField &field, const ExactField &exact,
                   const Material &material)
{
  const double w2 = material.omega * material.omega;
  double sum = 0.0;
  Integrate(mesh, field,
            [&](const Vec2 &x, double w, const Vec2c &uh, const Grad2c &g)
            {
              const ExactValue e = exact(x);
              const Grad2c d = e.grad - g;
              sum += w * (material.mu * d.squaredNorm() +
                          (material.lambda + material.mu) * std::norm(d.trace()) +
                          w2 * (e.u - uh).squaredNorm());
            });
  return std::sqrt(sum);
}

HelmholtzReport HelmholtzCheck(const VectorField &u, std::span<const Vec2> points,
                               double kappa1, double kappa2, double step)
{
  HelmholtzReport report;
  const double h = step;
  for (const Vec2 &p : points)
  {
    const FdDerivatives c = Derivatives(u, p, h);
    const FdDerivatives e = Derivatives(u, p + Vec2(h, 0.0), h);
    const FdDerivatives w = Derivatives(u, p - Vec2(h, 0.0), h);
    const FdDerivatives n = Derivatives(u, p + Vec2(0.0, h), h);
    const FdDerivatives s = Derivatives(u, p - Vec2(0.0, h), h);
    const cplx lap_div = (e.div + w.div + n.div + s.div - 4.0 * c.div) / (h * h);
    const cplx lap_curl = (e.curl + w.curl + n.curl + s.curl - 4.0 * c.curl) / (h * h);
    report.divergence_residual =
      std::max(report.divergence_residual, Relative(lap_div + kappa1 * kappa1 * c.div, c.div, kappa1));
    report.curl_residual =
      std::max(report.curl_residual, Relative(lap_curl + kappa2 * kappa2 * c.curl, c.curl, kappa2));
    report.divergence_scale = std::max(report.divergence_scale, std::abs(c.div));
    report.curl_scale = std::max(report.curl_scale, std::abs(c.curl));
  }
  return report;
}

ConvergenceFit FitPowerLaw(std::span<const double> dofs, std::span<const double> errors)
{
  if (dofs.size() != errors.size())
  {
    throw Error(ErrorCode::InsufficientData, "DoF and error series differ in length");
  }
  ConvergenceFit fit;
  for (std::size_t i = 0; i < dofs.size(); i++)
  {
    if (dofs[i] > 0.0 && errors[i] > 0.0 && std::isfinite(errors[i]))
    {
      fit.points.emplace_back(std::log(dofs[i]), std::log(errors[i]));
    }
  }
  const std::size_t m = fit.points.size();
  if (m < 3)
  {
    throw Error(ErrorCode::InsufficientData,
                "a rate fit needs at least 3 points, got " + std::to_string(m));
  }
  double mx = 0.0, my = 0.0;
  for (const auto &[x, y] : fit.points)
  {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto &[x, y] : fit.points)
  {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (sxx == 0.0)
  {
    throw Error(ErrorCode::InsufficientData, "all points share one DoF count");
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
  return fit;
}

ConvergenceFit FitRate(const RunHistory &history, RateQuantity quantity)
{
  std::vector<double> dofs, errors;
  for (std::size_t i = 1; i < history.records.size(); i++)
  {
    const IterationRecord &rec = history.records[i];
    double value = rec.eps_h;
    if (quantity == RateQuantity::ErrorH1)
    {
      if (!rec.e_h)
      {
        throw Error(ErrorCode::InsufficientData, "the history carries no exact error");
      }
      value = *rec.e_h;
    }
    dofs.push_back(static_cast<double>(rec.dof));
    errors.push_back(value);
  }
  return FitPowerLaw(dofs, errors);
}

void WriteComparisonTable(std::ostream &out, const RunHistory &adaptive,
                          const RunHistory &uniform)
{
  out << std::left << std::setw(34) << "# adaptive" << " | " << "uniform\n";
  out << std::setw(10) << "DoF" << std::setw(12) << "e_h" << std::setw(12) << "eps_h" << " | "
      << std::setw(10) << "DoF" << std::setw(12) << "e_h" << std::setw(12) << "eps_h" << "\n";
  const std::size_t rows = std::max(adaptive.records.size(), uniform.records.size());
  auto cell = [&out](const std::vector<IterationRecord> &recs, std::size_t i)
  {
    if (i >= recs.size())
    {
      out << std::setw(10) << "" << std::setw(12) << "" << std::setw(12) << "";
      return;
    }
    out << std::setw(10) << recs[i].dof << std::setw(12) << FormatOptional(recs[i].e_h)
        << std::setw(12) << FormatOptional(recs[i].eps_h);
  };
  for (std::size_t i = 0; i < rows; i++)
  {
    cell(adaptive.records, i);
    out << " | ";
    cell(uniform.records, i);
    out << "\n";
  }
}

}  // namespace elastodtn
