#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace metaschwarz {

using cplx = std::complex<double>;

/// Any function that can be sampled at points of the (closed) unit disk.
using DiskFunction = std::function<cplx(cplx)>;

/// A point of the closed unit disk. Interior points satisfy r < 1; boundary
/// points are built through on_boundary() and carry r == 1 exactly.
class DiskPoint {
 public:
  /// Interior point; throws InvalidArgument if |z| >= 1.
  DiskPoint(cplx z);  // NOLINT(google-explicit-constructor)
  DiskPoint(double re, double im = 0.0) : DiskPoint(cplx{re, im}) {}  // NOLINT(google-explicit-constructor)

  static DiskPoint on_boundary(double theta);
  static DiskPoint polar(double r, double theta);

  [[nodiscard]] double re() const noexcept { return z_.real(); }
  [[nodiscard]] double im() const noexcept { return z_.imag(); }
  [[nodiscard]] cplx value() const noexcept { return z_; }
  [[nodiscard]] double radius() const noexcept { return boundary_ ? 1.0 : std::abs(z_); }
  /// Angle in [0, 2pi).
  [[nodiscard]] double angle() const noexcept;
  [[nodiscard]] bool is_boundary() const noexcept { return boundary_; }

  operator cplx() const noexcept { return z_; }  // NOLINT(google-explicit-constructor)

 private:
  DiskPoint(cplx z, bool boundary) : z_(z), boundary_(boundary) {}
  cplx z_;
  bool boundary_ = false;
};

/// r_j = 1 - 2^{-j-1}, j = 0..depth.
class RadialSequence {
 public:
  explicit RadialSequence(int depth = 16);

  [[nodiscard]] int depth() const noexcept { return depth_; }
  [[nodiscard]] std::size_t size() const noexcept { return radii_.size(); }
  [[nodiscard]] double radius(std::size_t j) const { return radii_.at(j); }
  [[nodiscard]] std::span<const double> radii() const noexcept { return radii_; }

 private:
  int depth_;
  std::vector<double> radii_;
};

/// Complex samples on concentric circles: values(i, j) = f(radii[i] e^{i theta_j}),
/// theta_j = 2 pi j / n_theta.
class PolarGrid {
 public:
  PolarGrid(std::vector<double> radii, int n_theta);

  /// radii (i + 1/2) / n_r, i = 0..n_r-1.
  static PolarGrid uniform(int n_r, int n_theta);
  static PolarGrid circles(const RadialSequence& rs, int n_theta);

  [[nodiscard]] std::span<const double> radii() const noexcept { return radii_; }
  [[nodiscard]] std::size_t n_radii() const noexcept { return radii_.size(); }
  [[nodiscard]] int n_theta() const noexcept { return n_theta_; }
  [[nodiscard]] double theta(int j) const;
  [[nodiscard]] cplx point(std::size_t i, int j) const;

  [[nodiscard]] cplx& value(std::size_t i, int j) { return values_[index(i, j)]; }
  [[nodiscard]] cplx value(std::size_t i, int j) const { return values_[index(i, j)]; }
  [[nodiscard]] std::span<const cplx> row(std::size_t i) const;

  /// Overwrites values with f at every node.
  void sample(const DiskFunction& f);

 private:
  [[nodiscard]] std::size_t index(std::size_t i, int j) const;
  std::vector<double> radii_;
  int n_theta_;
  std::vector<cplx> values_;
};

PolarGrid sample_grid(const DiskFunction& f, PolarGrid grid);

struct WirtingerOptions {
  double step = 1e-4;
  bool richardson = false;
};

/// d f / d zbar = (f_x + i f_y) / 2 by central differences.
/// Throws StencilOutsideDisk if z is within 2 * step of the unit circle and
/// NonFinite if f returns a non-finite value.
cplx wirtinger_dbar(const DiskFunction& f, const DiskPoint& z, const WirtingerOptions& opts = {});

struct GaussRule {
  std::vector<double> nodes;    // on (-1, 1)
  std::vector<double> weights;
};

/// Gauss-Legendre rule with n nodes; computed once per n and cached.
const GaussRule& gauss_legendre(int n);

struct QuadratureOptions {
  int radial_nodes = 512;
  int angular_nodes = 512;
  /// Maximum allowed difference between the full and half resolution results.
  double tolerance = 1e-6;
  bool check_refinement = true;
};

/// Area integral of g over D in polar coordinates centred at `singularity`
/// (or at 0). Centring at a point where g ~ 1/|zeta - z| cancels the
/// singularity against the polar Jacobian.
cplx disk_quadrature(const DiskFunction& g, std::optional<DiskPoint> singularity = std::nullopt,
                     const QuadratureOptions& opts = {});

}  // namespace metaschwarz
