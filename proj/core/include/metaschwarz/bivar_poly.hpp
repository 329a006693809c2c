#pragma once

#include <complex>
#include <map>
#include <utility>

namespace metaschwarz {

using cplx = std::complex<double>;

/// Finite polynomial  sum c_{m,k} z^m zbar^k  with complex coefficients.
///
/// Terms are kept in a std::map keyed by (m, k) so iteration order, and
/// therefore every floating-point reduction over the terms, is deterministic.
/// Exact zeros are never stored.
class BivarPoly {
 public:
  using Key = std::pair<int, int>;  // (power of z, power of zbar)
  using Terms = std::map<Key, cplx>;

  BivarPoly() = default;

  static BivarPoly constant(cplx c);
  static BivarPoly monomial(int m, int k, cplx c = 1.0);
  static BivarPoly z() { return monomial(1, 0); }
  static BivarPoly zbar() { return monomial(0, 1); }

  void add_term(int m, int k, cplx c);
  [[nodiscard]] cplx coeff(int m, int k) const;
  [[nodiscard]] const Terms& terms() const noexcept { return terms_; }

  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  [[nodiscard]] int degree_z() const noexcept;
  [[nodiscard]] int degree_zbar() const noexcept;
  [[nodiscard]] int total_degree() const noexcept;
  [[nodiscard]] double max_abs_coeff() const noexcept;

  [[nodiscard]] cplx operator()(cplx z) const;

  /// d/dzbar, exact.
  [[nodiscard]] BivarPoly dbar() const;
  /// d/dz, exact.
  [[nodiscard]] BivarPoly dz() const;
  /// Pointwise complex conjugate: (m, k) -> (k, m), coefficients conjugated.
  [[nodiscard]] BivarPoly conj() const;
  /// Drops coefficients with |c| <= tol.
  [[nodiscard]] BivarPoly pruned(double tol) const;

  BivarPoly& operator+=(const BivarPoly& rhs);
  BivarPoly& operator-=(const BivarPoly& rhs);
  BivarPoly& operator*=(cplx s);
  BivarPoly& operator*=(const BivarPoly& rhs);

  friend BivarPoly operator+(BivarPoly a, const BivarPoly& b) { return a += b; }
  friend BivarPoly operator-(BivarPoly a, const BivarPoly& b) { return a -= b; }
  friend BivarPoly operator-(BivarPoly a) { return a *= -1.0; }
  friend BivarPoly operator*(BivarPoly a, cplx s) { return a *= s; }
  friend BivarPoly operator*(cplx s, BivarPoly a) { return a *= s; }
  friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b);

  friend bool operator==(const BivarPoly&, const BivarPoly&) = default;

 private:
  Terms terms_;
};

/// max_{m,k} |a_{m,k} - b_{m,k}|
double max_coeff_distance(const BivarPoly& a, const BivarPoly& b);

}  // namespace metaschwarz
