#pragma once

#include <string_view>
#include <vector>

#include "metaschwarz/bivar_poly.hpp"
#include "metaschwarz/disk.hpp"

namespace metaschwarz {

/// Teodorescu transform T[f](z) = -(1/pi) iint_D f(zeta) / (zeta - z) dA of a
/// polynomial, in closed form. Monomial table:
///   T[z^m zbar^k] = z^m zbar^{k+1} / (k+1)                        k >= m
///   T[z^m zbar^k] = z^m zbar^{k+1} / (k+1) - z^{m-k-1} / (k+1)    m >= k+1
/// obtained by expanding the Cauchy kernel separately on |zeta| < |z| and
/// |zeta| > |z|. Valid on the closed disk.
BivarPoly teodorescu_poly(const BivarPoly& f);

cplx teodorescu(const BivarPoly& f, const DiskPoint& z);

/// Brute-force T[f](z) by polar quadrature centred at z. Independent of the
/// monomial table and used to certify it.
cplx teodorescu_quadrature_oracle(const DiskFunction& f, const DiskPoint& z,
                                  const QuadratureOptions& opts = {});

/// Schwarz-Pompeiu area operator
///   g(z) = -(1/2pi) iint_D [ f(zeta)/zeta (zeta+z)/(zeta-z)
///                          + conj(f(zeta))/conj(zeta) (1+z conj(zeta))/(1-z conj(zeta)) ] dA,
/// which solves dg/dzbar = f with Im g(0) = 0. Evaluated by quadrature: the
/// first kernel is split as 2/(zeta-z) - 1/zeta and each singular piece is
/// integrated in polar coordinates centred at its own singular point.
cplx schwarz_pompeiu(const DiskFunction& f, const DiskPoint& z, const QuadratureOptions& opts = {});
cplx schwarz_pompeiu(const BivarPoly& f, const DiskPoint& z, const QuadratureOptions& opts = {});

enum class PsiKind { cauchy, schwarz };

std::string_view to_string(PsiKind kind) noexcept;
PsiKind psi_kind_from_string(std::string_view name);

/// Similarity exponent psi with dpsi/dzbar = A.
struct PsiFactor {
  PsiKind kind = PsiKind::cauchy;
  BivarPoly value;
  BivarPoly source;
  /// max collocation misfit of the holomorphic correction (schwarz kind only)
  double fit_residual = 0.0;

  [[nodiscard]] cplx operator()(cplx z) const { return value(z); }
};

struct PsiFitOptions {
  QuadratureOptions quadrature{256, 256, 1e-8, true};
  std::vector<double> radii{0.2, 0.45, 0.7};
  int angles = 8;
  /// the holomorphic correction is fitted with degree deg(A) + extra_degree
  int extra_degree = 4;
  double max_residual = 1e-4;
};

/// cauchy: psi = T[A] exactly.
/// schwarz: psi = T[A] + q, with q a holomorphic polynomial least-squares fitted
/// to schwarz_pompeiu(A, .) - T[A] at interior collocation points, then shifted
/// so that Im psi(0) = 0. Throws FitResidualTooLarge when the misfit exceeds
/// opts.max_residual.
PsiFactor psi_from_A(const BivarPoly& A, PsiKind kind, const PsiFitOptions& opts = {});

}  // namespace metaschwarz
