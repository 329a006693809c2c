#include "metaschwarz/disk.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "metaschwarz/error.hpp"

namespace metaschwarz {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

cplx checked(cplx v) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw Error(Errc::NonFinite, "function returned a non-finite value");
  }
  return v;
}

GaussRule make_gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return rule;
}

cplx polar_quadrature(const DiskFunction& g, cplx center, int n_radial, int n_angular) {
  const GaussRule& rule = gauss_legendre(n_radial);
  const double c2 = std::norm(center);
  cplx total{};
  for (int j = 0; j < n_angular; ++j) {
    const double phi = kTwoPi * j / n_angular;
    const cplx dir = std::polar(1.0, phi);
    // |center + s dir| = 1  ->  s_max = -b + sqrt(b^2 + 1 - |c|^2)
    const double b = (std::conj(center) * dir).real();
    const double s_max = -b + std::sqrt(b * b + 1.0 - c2);
    cplx ray{};
    for (int i = 0; i < n_radial; ++i) {
      const double s = 0.5 * s_max * (rule.nodes[static_cast<std::size_t>(i)] + 1.0);
      ray += rule.weights[static_cast<std::size_t>(i)] * s * checked(g(center + s * dir));
    }
    total += 0.5 * s_max * ray;
  }
  return total * (kTwoPi / n_angular);
}

}  // namespace

DiskPoint::DiskPoint(cplx z) : z_(z) {
  if (!(std::abs(z) < 1.0)) {
    throw Error(Errc::InvalidArgument, "interior DiskPoint requires |z| < 1");
  }
}

DiskPoint DiskPoint::on_boundary(double theta) { return {std::polar(1.0, theta), true}; }

DiskPoint DiskPoint::polar(double r, double theta) {
  if (r == 1.0) return on_boundary(theta);
  return {std::polar(r, theta)};
}

double DiskPoint::angle() const noexcept {
  double a = std::arg(z_);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a -= kTwoPi;
  return a;
}

RadialSequence::RadialSequence(int depth) : depth_(depth) {
  if (depth < 1 || depth > 50) {
    throw Error(Errc::InvalidArgument, "radial depth must be in [1, 50]");
  }
  radii_.reserve(static_cast<std::size_t>(depth) + 1);
  for (int j = 0; j <= depth; ++j) radii_.push_back(1.0 - std::ldexp(1.0, -j - 1));
}

PolarGrid::PolarGrid(std::vector<double> radii, int n_theta)
    : radii_(std::move(radii)), n_theta_(n_theta) {
  if (n_theta_ < 8 || n_theta_ % 2 != 0) {
    throw Error(Errc::InvalidArgument, "PolarGrid needs an even number of angles >= 8");
  }
  if (radii_.empty()) throw Error(Errc::InvalidArgument, "PolarGrid needs at least one radius");
  for (std::size_t i = 0; i < radii_.size(); ++i) {
    if (!(radii_[i] > 0.0 && radii_[i] < 1.0)) {
      throw Error(Errc::InvalidArgument, "PolarGrid radii must lie in (0, 1)");
    }
    if (i > 0 && !(radii_[i] > radii_[i - 1])) {
      throw Error(Errc::InvalidArgument, "PolarGrid radii must be strictly increasing");
    }
  }
  values_.assign(radii_.size() * static_cast<std::size_t>(n_theta_), cplx{});
}

PolarGrid PolarGrid::uniform(int n_r, int n_theta) {
  if (n_r < 1) throw Error(Errc::InvalidArgument, "PolarGrid needs at least one radius");
  std::vector<double> radii;
  radii.reserve(static_cast<std::size_t>(n_r));
  for (int i = 0; i < n_r; ++i) radii.push_back((i + 0.5) / n_r);
  return {std::move(radii), n_theta};
}

PolarGrid PolarGrid::circles(const RadialSequence& rs, int n_theta) {
  return {std::vector<double>(rs.radii().begin(), rs.radii().end()), n_theta};
}

double PolarGrid::theta(int j) const { return kTwoPi * j / n_theta_; }

cplx PolarGrid::point(std::size_t i, int j) const { return std::polar(radii_.at(i), theta(j)); }

std::span<const cplx> PolarGrid::row(std::size_t i) const {
  return std::span<const cplx>(values_).subspan(index(i, 0), static_cast<std::size_t>(n_theta_));
}

std::size_t PolarGrid::index(std::size_t i, int j) const {
  if (i >= radii_.size() || j < 0 || j >= n_theta_) {
    throw Error(Errc::InvalidArgument, "PolarGrid index out of range");
  }
  return i * static_cast<std::size_t>(n_theta_) + static_cast<std::size_t>(j);
}

void PolarGrid::sample(const DiskFunction& f) {
  for (std::size_t i = 0; i < radii_.size(); ++i) {
    for (int j = 0; j < n_theta_; ++j) values_[index(i, j)] = checked(f(point(i, j)));
  }
}

PolarGrid sample_grid(const DiskFunction& f, PolarGrid grid) {
  grid.sample(f);
  return grid;
}

cplx wirtinger_dbar(const DiskFunction& f, const DiskPoint& z, const WirtingerOptions& opts) {
  const double h = opts.step;
  if (!(h > 0.0)) throw Error(Errc::InvalidArgument, "finite-difference step must be positive");
  if (z.is_boundary() || !(1.0 - z.radius() > 2.0 * h)) {
    throw Error(Errc::StencilOutsideDisk,
                "point within 2h of the unit circle (r = " + std::to_string(z.radius()) + ")");
  }
  const cplx c = z.value();
  auto central = [&](double step) {
    const cplx fx = (checked(f(c + step)) - checked(f(c - step))) / (2.0 * step);
    const cplx fy =
        (checked(f(c + cplx{0.0, step})) - checked(f(c - cplx{0.0, step}))) / (2.0 * step);
    return 0.5 * (fx + cplx{0.0, 1.0} * fy);
  };
  if (!opts.richardson) return central(h);
  return (4.0 * central(0.5 * h) - central(h)) / 3.0;
}

const GaussRule& gauss_legendre(int n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "Gauss-Legendre rule needs n >= 1");
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_gauss_legendre(n)).first;
  return it->second;
}

cplx disk_quadrature(const DiskFunction& g, std::optional<DiskPoint> singularity,
                     const QuadratureOptions& opts) {
  if (opts.radial_nodes < 2 || opts.angular_nodes < 4) {
    throw Error(Errc::InvalidArgument, "quadrature resolution too small");
  }
  const cplx center = singularity ? singularity->value() : cplx{};
  if (singularity && singularity->is_boundary()) {
    throw Error(Errc::InvalidArgument, "singularity must be an interior point");
  }
  const cplx fine = polar_quadrature(g, center, opts.radial_nodes, opts.angular_nodes);
  if (opts.check_refinement) {
    const cplx coarse =
        polar_quadrature(g, center, opts.radial_nodes / 2, opts.angular_nodes / 2);
    const double diff = std::abs(fine - coarse);
    if (diff > opts.tolerance) {
      throw Error(Errc::NonConvergent, "refinement levels differ by " + std::to_string(diff));
    }
  }
  return fine;
}

}  // namespace metaschwarz
