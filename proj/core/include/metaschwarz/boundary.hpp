#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "metaschwarz/bivar_poly.hpp"
#include "metaschwarz/disk.hpp"

namespace metaschwarz {

class MetaExpr;
class TestFunction;

/// Two-sided finite Fourier series on the unit circle,
/// u = sum_{n=min_index}^{min_index+size-1} c_n e^{i n theta}.
/// Pairing with a test function is <u, phi> = sum_n c_n int_0^{2pi} e^{i n theta} phi(theta) dtheta.
class BoundaryDistribution {
 public:
  BoundaryDistribution() = default;
  BoundaryDistribution(int min_index, std::vector<cplx> coeffs);

  [[nodiscard]] int min_index() const noexcept { return min_index_; }
  [[nodiscard]] int max_index() const noexcept;
  [[nodiscard]] std::span<const cplx> coeffs() const noexcept { return coeffs_; }
  [[nodiscard]] cplx coeff(int n) const;

  [[nodiscard]] cplx operator()(double theta) const;
  /// Algebraic pairing; exact for trigonometric-polynomial test functions.
  [[nodiscard]] cplx pair(const TestFunction& phi) const;
  /// Re u as a distribution: coefficients (c_n + conj(c_{-n})) / 2.
  [[nodiscard]] BoundaryDistribution real_part() const;
  [[nodiscard]] BoundaryDistribution imag_part() const;

 private:
  int min_index_ = 0;
  std::vector<cplx> coeffs_;
};

/// Truncated power series h(z) = sum_{n=0}^{N} a_n z^n; trailing zeros are dropped.
class HoloSeries {
 public:
  HoloSeries() = default;
  explicit HoloSeries(std::vector<cplx> coeffs);
  static HoloSeries constant(cplx c) { return HoloSeries({c}); }

  [[nodiscard]] std::span<const cplx> coeffs() const noexcept { return coeffs_; }
  [[nodiscard]] int degree() const noexcept;
  [[nodiscard]] cplx coeff(int n) const;
  [[nodiscard]] bool is_zero() const noexcept;

  [[nodiscard]] cplx operator()(cplx z) const;
  [[nodiscard]] BoundaryDistribution boundary_value() const;
  [[nodiscard]] BivarPoly to_bivar() const;

  HoloSeries& operator+=(const HoloSeries& rhs);
  HoloSeries& operator*=(cplx s);
  friend HoloSeries operator+(HoloSeries a, const HoloSeries& b) { return a += b; }
  friend HoloSeries operator*(cplx s, HoloSeries a) { return a *= s; }
  friend bool operator==(const HoloSeries&, const HoloSeries&) = default;

 private:
  void trim();
  std::vector<cplx> coeffs_;
};

/// Trigonometric polynomial phi(theta) = sum_{m=-K}^{K} b_m e^{i m theta}.
class TestFunction {
 public:
  TestFunction() = default;
  TestFunction(int min_index, std::vector<cplx> coeffs);

  static TestFunction one() { return mode(0); }
  static TestFunction mode(int m, cplx amplitude = 1.0);
  static TestFunction cos_mode(int m);
  static TestFunction sin_mode(int m);

  [[nodiscard]] int min_index() const noexcept { return min_index_; }
  [[nodiscard]] int max_index() const noexcept;
  [[nodiscard]] cplx coeff(int m) const;
  [[nodiscard]] bool is_real() const;
  [[nodiscard]] TestFunction conj() const;
  [[nodiscard]] cplx operator()(double theta) const;

 private:
  int min_index_ = 0;
  std::vector<cplx> coeffs_;
};

/// Weight paired against circle restrictions; TestFunction converts to it.
using AngularWeight = std::function<cplx(double)>;
/// f(r, theta), a one-parameter family of functions on the circle.
using CircleFamily = std::function<cplx(double, double)>;

struct LimitOptions {
  int n_theta = 256;
  /// Number of extrapolation levels used on the tail of the radial sequence.
  int extrapolation_depth = 4;
  /// Divergent is raised when successive extrapolants differ by more than
  /// tolerance * max(1, |limit|).
  double tolerance = 1e-8;
};

struct LimitResult {
  cplx value;
  /// |I(r_J) - I(r_{J-1})|
  double residual = 0.0;
  /// difference between the last two extrapolants
  double stability = 0.0;
  std::vector<cplx> sequence;
};

/// Polynomial extrapolation to distance 0 of a sequence sampled at distances
/// h_j from the boundary (Neville's scheme on the last depth+1 samples).
cplx extrapolate_to_boundary(std::span<const double> distances, std::span<const cplx> values,
                             int depth);

/// lim_{r -> 1} int_0^{2pi} f(r e^{i theta}) phi(theta) dtheta.
LimitResult pairing_limit(const DiskFunction& f, const TestFunction& phi, const RadialSequence& rs,
                          const LimitOptions& opts = {});
LimitResult pairing_limit(const CircleFamily& family, const AngularWeight& phi,
                          const RadialSequence& rs, const LimitOptions& opts = {});
/// Same limit computed from precomputed circle samples (rows of the grid).
LimitResult pairing_limit(const PolarGrid& circles, const AngularWeight& phi,
                          const LimitOptions& opts = {});

/// sum_n c_n r^{|n|} e^{i n theta}, the Poisson extension of u at z.
cplx poisson_extend(const BoundaryDistribution& u, const DiskPoint& z);

/// Least-squares slope alpha of log sup_theta |f(r_j e^{i theta})| against
/// -log(1 - r_j) over the four radii closest to the circle, clamped at 0.
double growth_order(const DiskFunction& f, const RadialSequence& rs, int n_theta = 256);

struct HardyEstimate {
  double value = 0.0;
  bool unbounded = false;
  /// (int |f(r_j e^{i theta})|^p dtheta)^{1/p} for each radius
  std::vector<double> means;
};

/// sup_r (int_0^{2pi} |f(r e^{i theta})|^p dtheta)^{1/p}, realised as the max of
/// the integral means over rs together with their extrapolated limit r -> 1.
/// Flagged unbounded when the last mean exceeds the previous one by > 5%.
HardyEstimate hardy_norm(const DiskFunction& f, double p, const RadialSequence& rs,
                         const LimitOptions& opts = {});

/// sum_{k<n} hardy_norm(d^k w / dzbar^k, p), derivatives taken exactly.
HardyEstimate meta_hardy_norm(const MetaExpr& w, double p, int n, const RadialSequence& rs,
                              const LimitOptions& opts = {});

/// int |f(r_j e^{i theta}) - f_plus(theta)|^p dtheta for each r_j, with f_plus
/// sampled on the equispaced grid theta_i = 2 pi i / f_plus.size().
std::vector<double> lp_boundary_convergence(const DiskFunction& f, std::span<const cplx> f_plus,
                                            double p, const RadialSequence& rs);

/// Fourier coefficients n in [-max_freq, max_freq] of a function continuous on
/// the closed disk, restricted to the circle (trapezoid rule with n_theta nodes).
BoundaryDistribution boundary_trace(const DiskFunction& f, int max_freq, int n_theta = 1024);

}  // namespace metaschwarz
