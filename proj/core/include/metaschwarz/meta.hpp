#pragma once

#include <vector>

#include "metaschwarz/bivar_poly.hpp"
#include "metaschwarz/boundary.hpp"
#include "metaschwarz/disk.hpp"
#include "metaschwarz/integral_ops.hpp"

namespace metaschwarz {

/// F(z) = sum_{k<n} zbar^k f_k(z) with holomorphic (polynomial) parts f_k.
/// Every BivarPoly is of this form, so conversion in both directions is exact.
class PolyAnalytic {
 public:
  PolyAnalytic() = default;
  explicit PolyAnalytic(std::vector<HoloSeries> parts);
  static PolyAnalytic from_bivar(const BivarPoly& p);

  [[nodiscard]] int order() const noexcept { return static_cast<int>(parts_.size()); }
  [[nodiscard]] const std::vector<HoloSeries>& parts() const noexcept { return parts_; }
  [[nodiscard]] const HoloSeries& part(int k) const { return parts_.at(static_cast<std::size_t>(k)); }
  [[nodiscard]] bool is_zero() const noexcept;

  [[nodiscard]] BivarPoly to_bivar() const;
  [[nodiscard]] cplx operator()(cplx z) const;
  /// d/dzbar: lowers the zbar-degree by one.
  [[nodiscard]] PolyAnalytic dbar() const;

 private:
  std::vector<HoloSeries> parts_;
};

/// w = e^psi * F with F poly-analytic and dpsi/dzbar = A. The exponential is
/// kept as an atom: d/dzbar (e^psi F) = e^psi (A F + dF/dzbar).
class MetaExpr {
 public:
  MetaExpr(PsiFactor psi, PolyAnalytic poly);

  [[nodiscard]] const PsiFactor& psi() const noexcept { return psi_; }
  [[nodiscard]] const PolyAnalytic& poly() const noexcept { return poly_; }
  [[nodiscard]] const BivarPoly& coefficient() const noexcept { return psi_.source; }
  [[nodiscard]] int order() const noexcept { return poly_.order(); }
  [[nodiscard]] bool is_zero() const noexcept { return poly_.is_zero(); }

  [[nodiscard]] cplx operator()(cplx z) const;

 private:
  PsiFactor psi_;
  PolyAnalytic poly_;
};

/// e^{psi(z)} sum_k zbar^k f_k(z); boundary points allowed.
cplx meta_eval(const MetaExpr& w, const DiskPoint& z);

/// (d/dzbar - A) w = e^psi dF/dzbar.
MetaExpr dbar_shift(const MetaExpr& w);

/// d w / dzbar, exact.
MetaExpr dbar(const MetaExpr& w);

/// Exact d/dzbar at a point (MetaExpr overload of the finite-difference version).
cplx wirtinger_dbar(const MetaExpr& w, const DiskPoint& z);

/// max over grid nodes of |(d/dzbar - A)^n w|. The MetaExpr overload applies
/// the operator exactly in the polynomial algebra, for any A; the generic
/// overload nests central differences with the given step.
double pde_residual(const MetaExpr& w, const BivarPoly& A, int n, const PolarGrid& grid);
double pde_residual(const DiskFunction& w, const BivarPoly& A, int n, const PolarGrid& grid,
                    double step = 1e-3);

/// Cofactor of e^psi in (d/dzbar - A)^n w, exact.
BivarPoly shifted_cofactor(const MetaExpr& w, const BivarPoly& A, int n);

/// Unit lower-triangular n x n matrix [A] of polynomials with
///   d^k (e^psi F) / dzbar^k = e^psi sum_j [A]_{k,j} d^j F / dzbar^j.
struct TriangularOperatorMatrix {
  int size = 0;
  std::vector<std::vector<BivarPoly>> entries;  // entries[k][j], j <= k
  std::vector<std::vector<BivarPoly>> inverse;  // same shape; empty until inverted

  [[nodiscard]] const BivarPoly& operator()(int k, int j) const;
};

/// M_{0,0} = 1, M_{k+1,j} = dM_{k,j}/dzbar + A M_{k,j} + M_{k,j-1}. The inverse
/// is filled in as well.
TriangularOperatorMatrix build_matrix_A(const BivarPoly& A, int n);

/// Forward substitution in the polynomial ring. The result's entries are the
/// inverse of M and its `inverse` member is M. Throws ProductNotIdentity when
/// M * M^{-1} differs from the identity by more than 1e-12 in any coefficient.
TriangularOperatorMatrix invert_matrix_A(const TriangularOperatorMatrix& m);

/// (w, dw/dzbar, ..., d^{n-1}w/dzbar^{n-1}), exact.
std::vector<MetaExpr> derivative_stack(const MetaExpr& w, int n);

struct Decomposition {
  PolyAnalytic parts;
  /// max |fit - sample| over the grid
  double residual = 0.0;
  /// condition estimate of the normal equations (squared 2-norm condition of
  /// the column-equilibrated design matrix)
  double condition = 0.0;
};

/// Least-squares fit of sum_{k<n, m<=degree} c_{k,m} zbar^k z^m to grid samples.
/// Throws IllConditioned when the condition estimate exceeds max_condition.
Decomposition poly_decompose(const PolarGrid& samples, int n, int degree,
                             double max_condition = 1e10);

/// Radii {0.3, 0.5, 0.7, 0.9}.
PolarGrid decomposition_grid(int n_theta = 64);

}  // namespace metaschwarz
