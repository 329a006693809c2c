#include "metaschwarz/bivar_poly.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "metaschwarz/error.hpp"

namespace metaschwarz {

BivarPoly BivarPoly::constant(cplx c) { return monomial(0, 0, c); }

BivarPoly BivarPoly::monomial(int m, int k, cplx c) {
  BivarPoly p;
  p.add_term(m, k, c);
  return p;
}

void BivarPoly::add_term(int m, int k, cplx c) {
  if (m < 0 || k < 0) {
    throw Error(Errc::InvalidArgument, "negative exponent in BivarPoly term");
  }
  if (c == cplx{}) return;
  auto [it, inserted] = terms_.try_emplace({m, k}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == cplx{}) terms_.erase(it);
  }
}

cplx BivarPoly::coeff(int m, int k) const {
  auto it = terms_.find({m, k});
  return it == terms_.end() ? cplx{} : it->second;
}

int BivarPoly::degree_z() const noexcept {
  int d = 0;
  for (const auto& [key, c] : terms_) d = std::max(d, key.first);
  return d;
}

int BivarPoly::degree_zbar() const noexcept {
  int d = 0;
  for (const auto& [key, c] : terms_) d = std::max(d, key.second);
  return d;
}

int BivarPoly::total_degree() const noexcept {
  int d = 0;
  for (const auto& [key, c] : terms_) d = std::max(d, key.first + key.second);
  return d;
}

double BivarPoly::max_abs_coeff() const noexcept {
  double v = 0.0;
  for (const auto& [key, c] : terms_) v = std::max(v, std::abs(c));
  return v;
}

cplx BivarPoly::operator()(cplx z) const {
  if (terms_.empty()) return {};
  const int mz = degree_z();
  const int mk = degree_zbar();
  std::vector<cplx> zp(static_cast<std::size_t>(mz) + 1);
  std::vector<cplx> zbp(static_cast<std::size_t>(mk) + 1);
  zp[0] = 1.0;
  zbp[0] = 1.0;
  const cplx zb = std::conj(z);
  for (int i = 1; i <= mz; ++i) zp[i] = zp[i - 1] * z;
  for (int i = 1; i <= mk; ++i) zbp[i] = zbp[i - 1] * zb;
  cplx sum{};
  for (const auto& [key, c] : terms_) sum += c * zp[key.first] * zbp[key.second];
  return sum;
}

BivarPoly BivarPoly::dbar() const {
  BivarPoly out;
  for (const auto& [key, c] : terms_) {
    if (key.second > 0) out.add_term(key.first, key.second - 1, c * static_cast<double>(key.second));
  }
  return out;
}

BivarPoly BivarPoly::dz() const {
  BivarPoly out;
  for (const auto& [key, c] : terms_) {
    if (key.first > 0) out.add_term(key.first - 1, key.second, c * static_cast<double>(key.first));
  }
  return out;
}

BivarPoly BivarPoly::conj() const {
  BivarPoly out;
  for (const auto& [key, c] : terms_) out.add_term(key.second, key.first, std::conj(c));
  return out;
}

BivarPoly BivarPoly::pruned(double tol) const {
  BivarPoly out;
  for (const auto& [key, c] : terms_) {
    if (std::abs(c) > tol) out.terms_.emplace(key, c);
  }
  return out;
}

BivarPoly& BivarPoly::operator+=(const BivarPoly& rhs) {
  for (const auto& [key, c] : rhs.terms_) add_term(key.first, key.second, c);
  return *this;
}

BivarPoly& BivarPoly::operator-=(const BivarPoly& rhs) {
  for (const auto& [key, c] : rhs.terms_) add_term(key.first, key.second, -c);
  return *this;
}

BivarPoly& BivarPoly::operator*=(cplx s) {
  if (s == cplx{}) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, c] : terms_) c *= s;
  return *this;
}

BivarPoly& BivarPoly::operator*=(const BivarPoly& rhs) {
  *this = *this * rhs;
  return *this;
}

BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) {
  BivarPoly out;
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      out.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    }
  }
  return out;
}

double max_coeff_distance(const BivarPoly& a, const BivarPoly& b) {
  return (a - b).max_abs_coeff();
}

}  // namespace metaschwarz
