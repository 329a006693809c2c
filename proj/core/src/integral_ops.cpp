#include "metaschwarz/integral_ops.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <string>

#include "metaschwarz/error.hpp"

namespace metaschwarz {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

BivarPoly teodorescu_poly(const BivarPoly& f) {
  BivarPoly out;
  for (const auto& [key, c] : f.terms()) {
    const auto [m, k] = key;
    const double inv = 1.0 / (k + 1);
    out.add_term(m, k + 1, c * inv);
    if (m >= k + 1) out.add_term(m - k - 1, 0, -c * inv);
  }
  return out;
}

cplx teodorescu(const BivarPoly& f, const DiskPoint& z) { return teodorescu_poly(f)(z.value()); }

cplx teodorescu_quadrature_oracle(const DiskFunction& f, const DiskPoint& z,
                                  const QuadratureOptions& opts) {
  const cplx zv = z.value();
  const cplx integral =
      disk_quadrature([&](cplx zeta) { return f(zeta) / (zeta - zv); }, z, opts);
  return -integral / kPi;
}

cplx schwarz_pompeiu(const DiskFunction& f, const DiskPoint& z, const QuadratureOptions& opts) {
  const cplx zv = z.value();
  // f/zeta (zeta+z)/(zeta-z) = 2 f/(zeta-z) - f/zeta
  const cplx cauchy_part =
      disk_quadrature([&](cplx zeta) { return f(zeta) / (zeta - zv); }, z, opts);
  const cplx origin_part = disk_quadrature(
      [&](cplx zeta) {
        const cplx fz = f(zeta);
        const cplx zb = std::conj(zeta);
        return -fz / zeta + std::conj(fz) / zb * (1.0 + zv * zb) / (1.0 - zv * zb);
      },
      DiskPoint(cplx{}), opts);
  return -(2.0 * cauchy_part + origin_part) / (2.0 * kPi);
}

cplx schwarz_pompeiu(const BivarPoly& f, const DiskPoint& z, const QuadratureOptions& opts) {
  return schwarz_pompeiu(DiskFunction([&f](cplx zeta) { return f(zeta); }), z, opts);
}

std::string_view to_string(PsiKind kind) noexcept {
  return kind == PsiKind::cauchy ? "cauchy" : "schwarz";
}

PsiKind psi_kind_from_string(std::string_view name) {
  if (name == "cauchy") return PsiKind::cauchy;
  if (name == "schwarz") return PsiKind::schwarz;
  throw Error(Errc::Schema, "psi_kind must be \"cauchy\" or \"schwarz\", got \"" + std::string(name) + "\"");
}

PsiFactor psi_from_A(const BivarPoly& A, PsiKind kind, const PsiFitOptions& opts) {
  PsiFactor psi;
  psi.kind = kind;
  psi.source = A;
  psi.value = teodorescu_poly(A);
  if (kind == PsiKind::cauchy || A.is_zero()) return psi;

  std::vector<cplx> points;
  for (const double r : opts.radii) {
    for (int j = 0; j < opts.angles; ++j) {
      // stagger the rings so the collocation set is not symmetric under rotation
      points.push_back(std::polar(r, 2.0 * kPi * (j + 0.5 * r) / opts.angles));
    }
  }
  const int degree = A.total_degree() + opts.extra_degree;
  if (points.size() < static_cast<std::size_t>(degree) + 1) {
    throw Error(Errc::InvalidArgument, "not enough collocation points for the psi fit");
  }

  const auto rows = static_cast<Eigen::Index>(points.size());
  const auto cols = static_cast<Eigen::Index>(degree) + 1;
  Eigen::MatrixXcd vander(rows, cols);
  Eigen::VectorXcd rhs(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const cplx z = points[static_cast<std::size_t>(i)];
    cplx power = 1.0;
    for (Eigen::Index j = 0; j < cols; ++j) {
      vander(i, j) = power;
      power *= z;
    }
    rhs(i) = schwarz_pompeiu(A, DiskPoint(z), opts.quadrature) - psi.value(z);
  }
  const Eigen::VectorXcd coeffs = vander.colPivHouseholderQr().solve(rhs);
  psi.fit_residual = (vander * coeffs - rhs).cwiseAbs().maxCoeff();
  if (psi.fit_residual > opts.max_residual) {
    throw Error(Errc::FitResidualTooLarge,
                "schwarz-kind psi collocation residual " + std::to_string(psi.fit_residual));
  }
  for (Eigen::Index j = 0; j < cols; ++j) psi.value.add_term(static_cast<int>(j), 0, coeffs(j));
  const double im0 = psi.value(cplx{}).imag();
  psi.value.add_term(0, 0, cplx{0.0, -im0});
  return psi;
}

}  // namespace metaschwarz
