#include "metaschwarz/meta.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "metaschwarz/error.hpp"

namespace metaschwarz {

PolyAnalytic::PolyAnalytic(std::vector<HoloSeries> parts) : parts_(std::move(parts)) {}

PolyAnalytic PolyAnalytic::from_bivar(const BivarPoly& p) {
  if (p.is_zero()) return {};
  std::vector<std::vector<cplx>> coeffs(static_cast<std::size_t>(p.degree_zbar()) + 1);
  for (const auto& [key, c] : p.terms()) {
    auto& part = coeffs[static_cast<std::size_t>(key.second)];
    if (part.size() <= static_cast<std::size_t>(key.first)) part.resize(static_cast<std::size_t>(key.first) + 1);
    part[static_cast<std::size_t>(key.first)] = c;
  }
  std::vector<HoloSeries> parts;
  parts.reserve(coeffs.size());
  for (auto& c : coeffs) parts.emplace_back(std::move(c));
  return PolyAnalytic(std::move(parts));
}

bool PolyAnalytic::is_zero() const noexcept {
  return std::all_of(parts_.begin(), parts_.end(), [](const HoloSeries& h) { return h.is_zero(); });
}

BivarPoly PolyAnalytic::to_bivar() const {
  BivarPoly p;
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    const auto coeffs = parts_[k].coeffs();
    for (std::size_t m = 0; m < coeffs.size(); ++m) {
      p.add_term(static_cast<int>(m), static_cast<int>(k), coeffs[m]);
    }
  }
  return p;
}

cplx PolyAnalytic::operator()(cplx z) const {
  const cplx zb = std::conj(z);
  cplx acc{};
  for (auto it = parts_.rbegin(); it != parts_.rend(); ++it) acc = acc * zb + (*it)(z);
  return acc;
}

PolyAnalytic PolyAnalytic::dbar() const {
  if (parts_.size() <= 1) return {};
  std::vector<HoloSeries> out;
  out.reserve(parts_.size() - 1);
  for (std::size_t k = 1; k < parts_.size(); ++k) {
    out.push_back(static_cast<double>(k) * parts_[k]);
  }
  return PolyAnalytic(std::move(out));
}

MetaExpr::MetaExpr(PsiFactor psi, PolyAnalytic poly) : psi_(std::move(psi)), poly_(std::move(poly)) {}

cplx MetaExpr::operator()(cplx z) const {
  if (poly_.order() == 0) return {};
  return std::exp(psi_(z)) * poly_(z);
}

cplx meta_eval(const MetaExpr& w, const DiskPoint& z) { return w(z.value()); }

MetaExpr dbar_shift(const MetaExpr& w) { return {w.psi(), w.poly().dbar()}; }

MetaExpr dbar(const MetaExpr& w) {
  const BivarPoly f = w.poly().to_bivar();
  return {w.psi(), PolyAnalytic::from_bivar(w.coefficient() * f + f.dbar())};
}

cplx wirtinger_dbar(const MetaExpr& w, const DiskPoint& z) { return dbar(w)(z.value()); }

BivarPoly shifted_cofactor(const MetaExpr& w, const BivarPoly& A, int n) {
  if (n < 0) throw Error(Errc::InvalidArgument, "operator power must be non-negative");
  // (d/dzbar - A)(e^psi P) = e^psi (dP/dzbar + (dpsi/dzbar - A) P); the bracket
  // vanishes identically when A is the coefficient psi was built from.
  const BivarPoly mismatch = A == w.coefficient() ? BivarPoly{} : w.psi().value.dbar() - A;
  BivarPoly p = w.poly().to_bivar();
  for (int i = 0; i < n && !p.is_zero(); ++i) p = p.dbar() + mismatch * p;
  return p;
}

double pde_residual(const MetaExpr& w, const BivarPoly& A, int n, const PolarGrid& grid) {
  const BivarPoly p = shifted_cofactor(w, A, n);
  if (p.is_zero()) return 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.n_radii(); ++i) {
    for (int j = 0; j < grid.n_theta(); ++j) {
      const cplx z = grid.point(i, j);
      worst = std::max(worst, std::abs(std::exp(w.psi()(z)) * p(z)));
    }
  }
  return worst;
}

double pde_residual(const DiskFunction& w, const BivarPoly& A, int n, const PolarGrid& grid,
                    double step) {
  if (n < 0) throw Error(Errc::InvalidArgument, "operator power must be non-negative");
  if (grid.radii().back() + 2.0 * step * std::max(n, 1) >= 1.0) {
    throw Error(Errc::StencilOutsideDisk, "grid radius too close to the unit circle for nested differences");
  }
  std::vector<DiskFunction> levels{w};
  levels.reserve(static_cast<std::size_t>(n) + 1);
  const WirtingerOptions opts{step, false};
  for (int i = 0; i < n; ++i) {
    const DiskFunction& prev = levels.back();
    levels.push_back([prev, &A, opts](cplx z) {
      return wirtinger_dbar(prev, DiskPoint(z), opts) - A(z) * prev(z);
    });
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.n_radii(); ++i) {
    for (int j = 0; j < grid.n_theta(); ++j) {
      const cplx v = levels.back()(grid.point(i, j));
      if (!std::isfinite(std::abs(v))) throw Error(Errc::NonFinite, "non-finite PDE residual");
      worst = std::max(worst, std::abs(v));
    }
  }
  return worst;
}

const BivarPoly& TriangularOperatorMatrix::operator()(int k, int j) const {
  static const BivarPoly zero;
  if (k < 0 || k >= size || j < 0 || j >= size) {
    throw Error(Errc::InvalidArgument, "matrix index out of range");
  }
  if (j > k) return zero;
  return entries[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
}

TriangularOperatorMatrix build_matrix_A(const BivarPoly& A, int n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "matrix size must be >= 1");
  TriangularOperatorMatrix m;
  m.size = n;
  m.entries.resize(static_cast<std::size_t>(n));
  m.entries[0] = {BivarPoly::constant(1.0)};
  for (int k = 0; k + 1 < n; ++k) {
    const auto& row = m.entries[static_cast<std::size_t>(k)];
    auto& next = m.entries[static_cast<std::size_t>(k) + 1];
    next.resize(static_cast<std::size_t>(k) + 2);
    for (int j = 0; j <= k + 1; ++j) {
      BivarPoly entry;
      if (j <= k) entry = row[static_cast<std::size_t>(j)].dbar() + A * row[static_cast<std::size_t>(j)];
      if (j >= 1) entry += row[static_cast<std::size_t>(j) - 1];
      next[static_cast<std::size_t>(j)] = std::move(entry);
    }
  }
  m.inverse = invert_matrix_A(m).entries;
  return m;
}

TriangularOperatorMatrix invert_matrix_A(const TriangularOperatorMatrix& m) {
  const int n = m.size;
  const BivarPoly one = BivarPoly::constant(1.0);
  for (int i = 0; i < n; ++i) {
    if (max_coeff_distance(m(i, i), one) > 0.0) {
      throw Error(Errc::InvalidArgument, "matrix is not unit lower triangular");
    }
  }
  TriangularOperatorMatrix inv;
  inv.size = n;
  inv.entries.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto& row = inv.entries[static_cast<std::size_t>(i)];
    row.resize(static_cast<std::size_t>(i) + 1);
    row[static_cast<std::size_t>(i)] = one;
    for (int j = i - 1; j >= 0; --j) {
      BivarPoly acc;
      for (int k = j; k < i; ++k) acc += m(i, k) * inv(k, j);
      row[static_cast<std::size_t>(j)] = -acc;
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      BivarPoly prod;
      for (int k = j; k <= i; ++k) prod += m(i, k) * inv(k, j);
      const double err = max_coeff_distance(prod, i == j ? one : BivarPoly{});
      if (err > 1e-12) {
        throw Error(Errc::ProductNotIdentity, "entry (" + std::to_string(i) + "," +
                                                  std::to_string(j) + ") off by " + std::to_string(err));
      }
    }
  }
  inv.inverse = m.entries;
  return inv;
}

std::vector<MetaExpr> derivative_stack(const MetaExpr& w, int n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "derivative_stack needs n >= 1");
  std::vector<MetaExpr> out{w};
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k < n; ++k) out.push_back(dbar(out.back()));
  return out;
}

Decomposition poly_decompose(const PolarGrid& samples, int n, int degree, double max_condition) {
  if (n < 1 || degree < 0) throw Error(Errc::InvalidArgument, "poly_decompose needs n >= 1, degree >= 0");
  const auto rows = static_cast<Eigen::Index>(samples.n_radii()) * samples.n_theta();
  const auto cols = static_cast<Eigen::Index>(n) * (degree + 1);
  if (rows < 2 * cols) {
    throw Error(Errc::InvalidArgument, "grid has " + std::to_string(rows) + " samples, need at least " +
                                           std::to_string(2 * cols));
  }
  Eigen::MatrixXcd design(rows, cols);
  Eigen::VectorXcd rhs(rows);
  Eigen::Index row = 0;
  for (std::size_t i = 0; i < samples.n_radii(); ++i) {
    for (int j = 0; j < samples.n_theta(); ++j, ++row) {
      const cplx z = samples.point(i, j);
      const cplx zb = std::conj(z);
      cplx zbk = 1.0;
      for (int k = 0; k < n; ++k) {
        cplx term = zbk;
        for (int m = 0; m <= degree; ++m) {
          design(row, k * (degree + 1) + m) = term;
          term *= z;
        }
        zbk *= zb;
      }
      rhs(row) = samples.value(i, j);
    }
  }
  Eigen::VectorXd scale = design.colwise().norm().transpose();
  for (Eigen::Index c = 0; c < cols; ++c) design.col(c) /= scale(c);

  Eigen::BDCSVD<Eigen::MatrixXcd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  const double cond = smin > 0.0 ? (sv(0) / smin) * (sv(0) / smin) : std::numeric_limits<double>::infinity();
  if (!(cond <= max_condition)) {
    throw Error(Errc::IllConditioned, "normal-equation condition estimate " + std::to_string(cond) +
                                          "; spread the sample radii or lower the degree");
  }
  const Eigen::VectorXcd sol = svd.solve(rhs);

  Decomposition out;
  out.condition = cond;
  out.residual = (design * sol - rhs).cwiseAbs().maxCoeff();
  std::vector<HoloSeries> parts;
  for (int k = 0; k < n; ++k) {
    std::vector<cplx> c(static_cast<std::size_t>(degree) + 1);
    for (int m = 0; m <= degree; ++m) {
      const Eigen::Index idx = k * (degree + 1) + m;
      c[static_cast<std::size_t>(m)] = sol(idx) / scale(idx);
    }
    parts.emplace_back(std::move(c));
  }
  out.parts = PolyAnalytic(std::move(parts));
  return out;
}

PolarGrid decomposition_grid(int n_theta) { return {{0.3, 0.5, 0.7, 0.9}, n_theta}; }

}  // namespace metaschwarz
