#include "metaschwarz/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "metaschwarz/error.hpp"
#include "metaschwarz/meta.hpp"

namespace metaschwarz {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw Error(Errc::NonFinite, what);
}

}  // namespace

// ---------------------------------------------------------------------------
// BoundaryDistribution

BoundaryDistribution::BoundaryDistribution(int min_index, std::vector<cplx> coeffs)
    : min_index_(min_index), coeffs_(std::move(coeffs)) {}

int BoundaryDistribution::max_index() const noexcept {
  return min_index_ + static_cast<int>(coeffs_.size()) - 1;
}

cplx BoundaryDistribution::coeff(int n) const {
  if (n < min_index_ || n > max_index()) return {};
  return coeffs_[static_cast<std::size_t>(n - min_index_)];
}

cplx BoundaryDistribution::operator()(double theta) const {
  cplx sum{};
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    sum += coeffs_[i] * std::polar(1.0, (min_index_ + static_cast<int>(i)) * theta);
  }
  return sum;
}

cplx BoundaryDistribution::pair(const TestFunction& phi) const {
  // int_0^{2pi} e^{i n theta} e^{i m theta} dtheta = 2 pi delta_{n,-m}
  cplx sum{};
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const int n = min_index_ + static_cast<int>(i);
    sum += coeffs_[i] * phi.coeff(-n);
  }
  return kTwoPi * sum;
}

BoundaryDistribution BoundaryDistribution::real_part() const {
  if (coeffs_.empty()) return {};
  const int bound = std::max(std::abs(min_index_), std::abs(max_index()));
  std::vector<cplx> out;
  out.reserve(static_cast<std::size_t>(2 * bound + 1));
  for (int n = -bound; n <= bound; ++n) out.push_back(0.5 * (coeff(n) + std::conj(coeff(-n))));
  return {-bound, std::move(out)};
}

BoundaryDistribution BoundaryDistribution::imag_part() const {
  if (coeffs_.empty()) return {};
  const int bound = std::max(std::abs(min_index_), std::abs(max_index()));
  std::vector<cplx> out;
  out.reserve(static_cast<std::size_t>(2 * bound + 1));
  for (int n = -bound; n <= bound; ++n) {
    out.push_back((coeff(n) - std::conj(coeff(-n))) / cplx{0.0, 2.0});
  }
  return {-bound, std::move(out)};
}

// ---------------------------------------------------------------------------
// HoloSeries

HoloSeries::HoloSeries(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void HoloSeries::trim() {
  while (!coeffs_.empty() && coeffs_.back() == cplx{}) coeffs_.pop_back();
}

int HoloSeries::degree() const noexcept {
  return coeffs_.empty() ? 0 : static_cast<int>(coeffs_.size()) - 1;
}

cplx HoloSeries::coeff(int n) const {
  if (n < 0 || n >= static_cast<int>(coeffs_.size())) return {};
  return coeffs_[static_cast<std::size_t>(n)];
}

bool HoloSeries::is_zero() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](cplx c) { return c == cplx{}; });
}

cplx HoloSeries::operator()(cplx z) const {
  cplx acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

BoundaryDistribution HoloSeries::boundary_value() const {
  return {0, coeffs_.empty() ? std::vector<cplx>{cplx{}} : coeffs_};
}

BivarPoly HoloSeries::to_bivar() const {
  BivarPoly p;
  for (std::size_t n = 0; n < coeffs_.size(); ++n) p.add_term(static_cast<int>(n), 0, coeffs_[n]);
  return p;
}

HoloSeries& HoloSeries::operator+=(const HoloSeries& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t n = 0; n < rhs.coeffs_.size(); ++n) coeffs_[n] += rhs.coeffs_[n];
  trim();
  return *this;
}

HoloSeries& HoloSeries::operator*=(cplx s) {
  for (auto& c : coeffs_) c *= s;
  trim();
  return *this;
}

// ---------------------------------------------------------------------------
// TestFunction

TestFunction::TestFunction(int min_index, std::vector<cplx> coeffs)
    : min_index_(min_index), coeffs_(std::move(coeffs)) {}

TestFunction TestFunction::mode(int m, cplx amplitude) { return {m, {amplitude}}; }

TestFunction TestFunction::cos_mode(int m) {
  if (m == 0) return one();
  const int a = std::abs(m);
  std::vector<cplx> c(static_cast<std::size_t>(2 * a + 1));
  c.front() = 0.5;
  c.back() = 0.5;
  return {-a, std::move(c)};
}

TestFunction TestFunction::sin_mode(int m) {
  if (m == 0) return {0, {cplx{}}};
  const int a = std::abs(m);
  const double sign = m > 0 ? 1.0 : -1.0;
  std::vector<cplx> c(static_cast<std::size_t>(2 * a + 1));
  c.front() = cplx{0.0, 0.5 * sign};   // e^{-i a theta} / (-2i) = (i/2) e^{-i a theta}
  c.back() = cplx{0.0, -0.5 * sign};   // e^{ i a theta} / ( 2i)
  return {-a, std::move(c)};
}

int TestFunction::max_index() const noexcept {
  return min_index_ + static_cast<int>(coeffs_.size()) - 1;
}

cplx TestFunction::coeff(int m) const {
  if (m < min_index_ || m > max_index()) return {};
  return coeffs_[static_cast<std::size_t>(m - min_index_)];
}

bool TestFunction::is_real() const {
  for (int m = std::min(min_index_, -max_index()); m <= std::max(max_index(), -min_index_); ++m) {
    if (std::abs(coeff(-m) - std::conj(coeff(m))) > 0.0) return false;
  }
  return true;
}

TestFunction TestFunction::conj() const {
  std::vector<cplx> out(coeffs_.size());
  // conj(b_m e^{i m t}) = conj(b_m) e^{-i m t}
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[coeffs_.size() - 1 - i] = std::conj(coeffs_[i]);
  return {-max_index(), std::move(out)};
}

cplx TestFunction::operator()(double theta) const {
  cplx sum{};
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    sum += coeffs_[i] * std::polar(1.0, (min_index_ + static_cast<int>(i)) * theta);
  }
  return sum;
}

// ---------------------------------------------------------------------------
// limits and integral means

cplx extrapolate_to_boundary(std::span<const double> distances, std::span<const cplx> values,
                             int depth) {
  if (distances.size() != values.size() || values.empty()) {
    throw Error(Errc::InvalidArgument, "extrapolation needs matching, non-empty samples");
  }
  const std::size_t count = std::min(values.size(), static_cast<std::size_t>(std::max(depth, 0)) + 1);
  const std::size_t first = values.size() - count;
  std::vector<cplx> p(values.begin() + static_cast<std::ptrdiff_t>(first), values.end());
  std::vector<double> h(distances.begin() + static_cast<std::ptrdiff_t>(first), distances.end());
  // Neville evaluated at h = 0
  for (std::size_t level = 1; level < count; ++level) {
    for (std::size_t i = 0; i + level < count; ++i) {
      const double hi = h[i];
      const double hj = h[i + level];
      p[i] = (hi * p[i + 1] - hj * p[i]) / (hi - hj);
    }
  }
  return p[0];
}

LimitResult pairing_limit(const PolarGrid& circles, const AngularWeight& phi,
                          const LimitOptions& opts) {
  const std::size_t nr = circles.n_radii();
  const int nt = circles.n_theta();
  std::vector<cplx> weights(static_cast<std::size_t>(nt));
  for (int j = 0; j < nt; ++j) weights[static_cast<std::size_t>(j)] = phi(circles.theta(j));

  LimitResult out;
  out.sequence.reserve(nr);
  std::vector<double> distances;
  distances.reserve(nr);
  for (std::size_t i = 0; i < nr; ++i) {
    const auto row = circles.row(i);
    cplx sum{};
    for (int j = 0; j < nt; ++j) sum += row[static_cast<std::size_t>(j)] * weights[static_cast<std::size_t>(j)];
    const cplx integral = sum * (kTwoPi / nt);
    require_finite(std::abs(integral), "circle integral overflowed");
    out.sequence.push_back(integral);
    distances.push_back(1.0 - circles.radii()[i]);
  }

  if (nr < 2) {
    out.value = out.sequence.back();
    return out;
  }
  const int depth = std::min(opts.extrapolation_depth, static_cast<int>(nr) - 2);
  out.residual = std::abs(out.sequence[nr - 1] - out.sequence[nr - 2]);
  out.value = extrapolate_to_boundary(distances, out.sequence, depth);
  const cplx previous =
      extrapolate_to_boundary(std::span<const double>(distances).first(nr - 1),
                              std::span<const cplx>(out.sequence).first(nr - 1), depth);
  out.stability = std::abs(out.value - previous);
  if (out.stability > opts.tolerance * std::max(1.0, std::abs(out.value))) {
    throw Error(Errc::Divergent, "circle pairings do not stabilise (last extrapolants differ by " +
                                     std::to_string(out.stability) + ")");
  }
  return out;
}

LimitResult pairing_limit(const CircleFamily& family, const AngularWeight& phi,
                          const RadialSequence& rs, const LimitOptions& opts) {
  PolarGrid circles = PolarGrid::circles(rs, opts.n_theta);
  for (std::size_t i = 0; i < circles.n_radii(); ++i) {
    const double r = circles.radii()[i];
    for (int j = 0; j < circles.n_theta(); ++j) circles.value(i, j) = family(r, circles.theta(j));
  }
  return pairing_limit(circles, phi, opts);
}

LimitResult pairing_limit(const DiskFunction& f, const TestFunction& phi, const RadialSequence& rs,
                          const LimitOptions& opts) {
  return pairing_limit(sample_grid(f, PolarGrid::circles(rs, opts.n_theta)),
                       AngularWeight([&phi](double t) { return phi(t); }), opts);
}

cplx poisson_extend(const BoundaryDistribution& u, const DiskPoint& z) {
  const double r = z.radius();
  const double theta = z.angle();
  cplx sum{};
  for (int n = u.min_index(); n <= u.max_index(); ++n) {
    sum += u.coeff(n) * std::pow(r, std::abs(n)) * std::polar(1.0, n * theta);
  }
  return sum;
}

namespace {

constexpr std::size_t kGrowthTail = 4;

}  // namespace

double growth_order(const DiskFunction& f, const RadialSequence& rs, int n_theta) {
  const PolarGrid circles = sample_grid(f, PolarGrid::circles(rs, n_theta));
  std::vector<double> xs;
  std::vector<double> ys;
  bool all_zero = true;
  for (std::size_t i = 0; i < circles.n_radii(); ++i) {
    double sup = 0.0;
    for (const cplx v : circles.row(i)) sup = std::max(sup, std::abs(v));
    require_finite(sup, "sample overflow in growth_order");
    if (sup > 0.0) all_zero = false;
    xs.push_back(-std::log(1.0 - circles.radii()[i]));
    ys.push_back(std::log(std::max(sup, 1e-300)));
  }
  if (all_zero) return 0.0;
  // only the radii closest to the circle: bounded functions still vary at
  // moderate r, which would bias the slope upwards
  const std::size_t tail = std::min<std::size_t>(xs.size(), kGrowthTail);
  xs.erase(xs.begin(), xs.end() - static_cast<std::ptrdiff_t>(tail));
  ys.erase(ys.begin(), ys.end() - static_cast<std::ptrdiff_t>(tail));
  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return std::max(0.0, sxy / sxx);
}

HardyEstimate hardy_norm(const DiskFunction& f, double p, const RadialSequence& rs,
                         const LimitOptions& opts) {
  if (!(p > 0.0)) throw Error(Errc::InvalidArgument, "Hardy exponent p must be positive");
  const PolarGrid circles = sample_grid(f, PolarGrid::circles(rs, opts.n_theta));
  HardyEstimate out;
  std::vector<cplx> as_complex;
  std::vector<double> distances;
  for (std::size_t i = 0; i < circles.n_radii(); ++i) {
    double sum = 0.0;
    for (const cplx v : circles.row(i)) sum += std::pow(std::abs(v), p);
    const double mean = std::pow(sum * kTwoPi / circles.n_theta(), 1.0 / p);
    require_finite(mean, "integral mean overflowed in hardy_norm");
    out.means.push_back(mean);
    as_complex.emplace_back(mean, 0.0);
    distances.push_back(1.0 - circles.radii()[i]);
  }
  const double last = out.means.back();
  const double before = out.means.size() > 1 ? out.means[out.means.size() - 2] : last;
  out.value = *std::max_element(out.means.begin(), out.means.end());
  if (last > 1.05 * before) {
    out.unbounded = true;
    return out;
  }
  if (out.means.size() > 2) {
    const int depth = std::min(opts.extrapolation_depth, static_cast<int>(out.means.size()) - 2);
    const double limit = extrapolate_to_boundary(distances, as_complex, depth).real();
    if (std::isfinite(limit)) out.value = std::max(out.value, limit);
  }
  return out;
}

HardyEstimate meta_hardy_norm(const MetaExpr& w, double p, int n, const RadialSequence& rs,
                              const LimitOptions& opts) {
  if (n < 1) throw Error(Errc::InvalidArgument, "meta_hardy_norm needs n >= 1");
  HardyEstimate total;
  for (const MetaExpr& derivative : derivative_stack(w, n)) {
    const HardyEstimate part =
        hardy_norm([&derivative](cplx z) { return derivative(z); }, p, rs, opts);
    total.value += part.value;
    total.unbounded = total.unbounded || part.unbounded;
    if (total.means.empty()) total.means.assign(part.means.size(), 0.0);
    for (std::size_t i = 0; i < part.means.size(); ++i) total.means[i] += part.means[i];
  }
  return total;
}

std::vector<double> lp_boundary_convergence(const DiskFunction& f, std::span<const cplx> f_plus,
                                            double p, const RadialSequence& rs) {
  if (!(p > 0.0)) throw Error(Errc::InvalidArgument, "exponent p must be positive");
  if (f_plus.empty()) throw Error(Errc::InvalidArgument, "boundary samples are empty");
  const std::size_t nt = f_plus.size();
  std::vector<double> out;
  out.reserve(rs.size());
  for (const double r : rs.radii()) {
    double sum = 0.0;
    for (std::size_t j = 0; j < nt; ++j) {
      const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(nt);
      sum += std::pow(std::abs(f(std::polar(r, theta)) - f_plus[j]), p);
    }
    out.push_back(sum * kTwoPi / static_cast<double>(nt));
  }
  return out;
}

BoundaryDistribution boundary_trace(const DiskFunction& f, int max_freq, int n_theta) {
  if (max_freq < 0 || n_theta <= 2 * max_freq) {
    throw Error(Errc::InvalidArgument, "boundary_trace needs n_theta > 2 * max_freq");
  }
  std::vector<cplx> samples(static_cast<std::size_t>(n_theta));
  for (int j = 0; j < n_theta; ++j) {
    samples[static_cast<std::size_t>(j)] = f(std::polar(1.0, kTwoPi * j / n_theta));
  }
  std::vector<cplx> coeffs;
  coeffs.reserve(static_cast<std::size_t>(2 * max_freq + 1));
  for (int n = -max_freq; n <= max_freq; ++n) {
    cplx sum{};
    for (int j = 0; j < n_theta; ++j) {
      sum += samples[static_cast<std::size_t>(j)] * std::polar(1.0, -kTwoPi * n * j / n_theta);
    }
    coeffs.push_back(sum / static_cast<double>(n_theta));
  }
  return {-max_freq, std::move(coeffs)};
}

}  // namespace metaschwarz
