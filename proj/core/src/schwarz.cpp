#include "metaschwarz/schwarz.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <numbers>
#include <string>

#include "metaschwarz/error.hpp"

namespace metaschwarz {

namespace {

constexpr cplx kI{0.0, 1.0};

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

std::string indexed(const char* name, int k) { return std::string(name) + "[" + std::to_string(k) + "]"; }

PolarGrid sample_family(const CircleFamily& family, const RadialSequence& rs, int n_theta) {
  PolarGrid circles = PolarGrid::circles(rs, n_theta);
  for (std::size_t i = 0; i < circles.n_radii(); ++i) {
    const double r = circles.radii()[i];
    for (int j = 0; j < circles.n_theta(); ++j) circles.value(i, j) = family(r, circles.theta(j));
  }
  return circles;
}

/// max over tests of |<lhs, phi> - <rhs, phi>|, both pairings as radial limits.
/// Tests are paired concurrently; the max is independent of completion order.
double worst_pairing_gap(const PolarGrid& lhs, const PolarGrid& rhs, std::span<const TestFunction> tests,
                         const LimitOptions& opts) {
  std::vector<std::future<double>> gaps;
  gaps.reserve(tests.size());
  for (const TestFunction& phi : tests) {
    gaps.push_back(std::async(std::launch::async, [&lhs, &rhs, &phi, &opts] {
      const AngularWeight weight = [&phi](double t) { return phi(t); };
      return std::abs(pairing_limit(lhs, weight, opts).value - pairing_limit(rhs, weight, opts).value);
    }));
  }
  double worst = 0.0;
  for (auto& g : gaps) worst = std::max(worst, g.get());
  return worst;
}

/// h_{j-1}(z) - sum_{l=1}^{j-1} (-1)^l / l! e^{-i l theta} f_{j-l}(z): the
/// unfolded right side of level j, evaluated on the circle of radius r.
cplx unfolded_rhs(const SchwarzSpec& spec, const std::vector<PolyAnalytic>& chain, int j, double r,
                  double theta) {
  const cplx z = std::polar(r, theta);
  cplx value = spec.levels[static_cast<std::size_t>(j) - 1].h(z);
  for (int l = 1; l <= j - 1; ++l) {
    const double coef = (l % 2 == 0 ? 1.0 : -1.0) / factorial(l);
    value -= coef * std::polar(1.0, -l * theta) * chain[static_cast<std::size_t>(j - l) - 1](z);
  }
  return value;
}

void check_kind(const SchwarzSpec& spec, PsiKind expected, const char* solver) {
  if (spec.psi_kind != expected) {
    throw Error(Errc::InvalidArgument, std::string(solver) + " requires psi_kind = " +
                                           std::string(to_string(expected)));
  }
}

SchwarzSolution assemble(const SchwarzSpec& spec, PsiFactor psi, const SolverOptions& opts) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  const RadialSequence rs(opts.radial_depth);
  std::vector<cplx> constants;
  for (const auto& level : spec.levels) {
    constants.push_back(i_constant(level.h, rs, opts.tol.pairing, opts.limit));
  }
  std::vector<PolyAnalytic> chain = solve_poly_chain(spec, opts);
  MetaExpr w(std::move(psi), chain.back());
  SchwarzSolution sol{std::move(w), std::move(chain), std::move(constants), {}};
  const auto t1 = clock::now();
  sol.diagnostics = verify_solution(sol, spec, opts);
  const auto t2 = clock::now();
  sol.diagnostics.set_timing("construct_ms", std::chrono::duration<double, std::milli>(t1 - t0).count());
  sol.diagnostics.set_timing("verify_ms", std::chrono::duration<double, std::milli>(t2 - t1).count());
  if (opts.throw_on_failure && !sol.diagnostics.passed()) {
    const Check* bad = sol.diagnostics.first_failure();
    throw Error(Errc::VerificationFailed, bad->name + " = " + std::to_string(bad->value) +
                                              " (threshold " + std::to_string(bad->threshold) + ")");
  }
  return sol;
}

}  // namespace

void SchwarzSpec::validate() const {
  if (n < 1) throw Error(Errc::InvalidArgument, "Schwarz problem order n must be >= 1");
  if (levels.size() != static_cast<std::size_t>(n)) {
    throw Error(Errc::InvalidArgument, "expected " + std::to_string(n) + " levels, got " +
                                           std::to_string(levels.size()));
  }
  for (const auto& level : levels) {
    if (!std::isfinite(level.c)) throw Error(Errc::InvalidArgument, "level constant must be finite");
  }
}

int SchwarzSpec::max_data_degree() const {
  int d = 0;
  for (const auto& level : levels) d = std::max(d, level.h.degree());
  return d;
}

cplx i_constant(const HoloSeries& h, const RadialSequence& rs, double tolerance, const LimitOptions& opts) {
  // <Im h_b, 1> = 2 pi Im a_0
  const cplx algebraic = kI * h.coeff(0).imag();
  const LimitResult limit = pairing_limit([&h](cplx z) { return cplx{h(z).imag(), 0.0}; },
                                          TestFunction::one(), rs, opts);
  const cplx from_limit = kI * limit.value / (2.0 * std::numbers::pi);
  const double gap = std::abs(algebraic - from_limit);
  if (gap > tolerance) {
    throw Error(Errc::PairingMismatch, "I constant: algebraic and limit values differ by " + std::to_string(gap));
  }
  return algebraic;
}

std::vector<PolyAnalytic> solve_poly_chain(const SchwarzSpec& spec, const SolverOptions& opts) {
  spec.validate();
  const RadialSequence rs(opts.radial_depth);
  std::vector<BivarPoly> f;  // f[k-1] = f_k
  f.reserve(static_cast<std::size_t>(spec.n));
  for (int k = 1; k <= spec.n; ++k) {
    const SchwarzLevel& level = spec.levels[static_cast<std::size_t>(k) - 1];
    const cplx I = i_constant(level.h, rs, opts.tol.pairing, opts.limit);
    BivarPoly fk = level.h.to_bivar();
    fk.add_term(0, 0, kI * level.c - I);
    for (int l = 1; l <= k - 1; ++l) {
      const double coef = (l % 2 == 0 ? 1.0 : -1.0) / factorial(l);
      fk -= coef * (BivarPoly::monomial(0, l) * f[static_cast<std::size_t>(k - l) - 1]);
    }
    f.push_back(std::move(fk));
  }
  std::vector<PolyAnalytic> chain;
  chain.reserve(f.size());
  for (const auto& p : f) chain.push_back(PolyAnalytic::from_bivar(p));
  return chain;
}

SchwarzSolution solve_meta(const SchwarzSpec& spec, const SolverOptions& opts) {
  spec.validate();
  check_kind(spec, PsiKind::cauchy, "solve_meta");
  return assemble(spec, psi_from_A(spec.A, PsiKind::cauchy, opts.psi), opts);
}

SchwarzSolution solve_meta_smooth(const SchwarzSpec& spec, const SolverOptions& opts) {
  spec.validate();
  check_kind(spec, PsiKind::schwarz, "solve_meta_smooth");
  PsiFactor psi = psi_from_A(spec.A, PsiKind::schwarz, opts.psi);
  const double im0 = std::abs(psi(cplx{}).imag());
  if (im0 > opts.tol.psi_imag) {
    throw Error(Errc::PsiNotRealAtZero, "Im psi(0) = " + std::to_string(im0));
  }
  return assemble(spec, std::move(psi), opts);
}

SchwarzSolution solve(const SchwarzSpec& spec, const SolverOptions& opts) {
  return spec.psi_kind == PsiKind::cauchy ? solve_meta(spec, opts) : solve_meta_smooth(spec, opts);
}

std::vector<TestFunction> verification_basis(const SchwarzSpec& spec) {
  const int bound = std::max(8, 2 * spec.max_data_degree());
  std::vector<TestFunction> basis;
  basis.reserve(static_cast<std::size_t>(2 * bound + 1));
  for (int m = -bound; m <= bound; ++m) basis.push_back(TestFunction::mode(m));
  return basis;
}

Report verify_boundary_conditions(const SchwarzSolution& sol, const SchwarzSpec& spec,
                                  std::span<const TestFunction> tests, const SolverOptions& opts) {
  spec.validate();
  if (sol.chain.size() != static_cast<std::size_t>(spec.n) || sol.I.size() != static_cast<std::size_t>(spec.n)) {
    throw Error(Errc::InvalidArgument, "solution chain does not match the problem order");
  }
  const RadialSequence rs(opts.radial_depth);
  const int nt = opts.limit.n_theta;
  const int n = spec.n;
  Report report;

  if (spec.psi_kind == PsiKind::cauchy) {
    // d^k/dzbar^k applied to w / e^psi = f_n
    PolyAnalytic cofactor = sol.w.poly();
    for (int k = 0; k < n; ++k) {
      const int j = n - k;
      const PolyAnalytic& fj = sol.chain[static_cast<std::size_t>(j) - 1];
      const PolarGrid lhs = sample_family(
          [&](double r, double t) { return cplx{cofactor(std::polar(r, t)).real(), 0.0}; }, rs, nt);
      const PolarGrid trace = sample_family(
          [&](double r, double t) { return cplx{fj(std::polar(r, t)).real(), 0.0}; }, rs, nt);
      const PolarGrid rhs = sample_family(
          [&](double r, double t) { return cplx{unfolded_rhs(spec, sol.chain, j, r, t).real(), 0.0}; }, rs, nt);
      report.add(indexed("boundary", k), worst_pairing_gap(lhs, rhs, tests, opts.limit), opts.tol.boundary);
      report.add(indexed("trace", k), worst_pairing_gap(lhs, trace, tests, opts.limit), opts.tol.boundary);
      cofactor = cofactor.dbar();
    }
  } else {
    const PsiFactor& psi = sol.w.psi();
    MetaExpr shifted = sol.w;
    for (int k = 0; k < n; ++k) {
      const int j = n - k;
      const SchwarzLevel& level = spec.levels[static_cast<std::size_t>(j) - 1];
      const cplx constant = kI * level.c - sol.I[static_cast<std::size_t>(j) - 1];
      const PolarGrid lhs = sample_family(
          [&](double r, double t) { return cplx{shifted(std::polar(r, t)).real(), 0.0}; }, rs, nt);
      const PolarGrid rhs = sample_family(
          [&](double r, double t) {
            const cplx boundary_factor = std::exp(psi(std::polar(1.0, t)));
            return cplx{(boundary_factor * (constant + unfolded_rhs(spec, sol.chain, j, r, t))).real(), 0.0};
          },
          rs, nt);
      report.add(indexed("boundary", k), worst_pairing_gap(lhs, rhs, tests, opts.limit), opts.tol.boundary);
      shifted = dbar_shift(shifted);
    }
  }
  return report;
}

Report verify_solution(const SchwarzSolution& sol, const SchwarzSpec& spec, const SolverOptions& opts) {
  spec.validate();
  const int n = spec.n;
  Report report;

  // dbar f_k = f_{k-1}, f_0 = 0, coefficient-wise
  BivarPoly previous;
  for (int k = 1; k <= n; ++k) {
    const BivarPoly fk = sol.chain[static_cast<std::size_t>(k) - 1].to_bivar();
    report.add(indexed("chain", k), max_coeff_distance(fk.dbar(), previous), opts.tol.chain);
    previous = fk;
  }
  report.add("chain_top", max_coeff_distance(sol.w.poly().to_bivar(), previous), opts.tol.chain);

  report.add("pde", pde_residual(sol.w, spec.A, n, PolarGrid::uniform(opts.grid_radii, opts.grid_angles)),
             opts.tol.pde);

  const cplx origin{};
  if (spec.psi_kind == PsiKind::cauchy) {
    PolyAnalytic cofactor = sol.w.poly();
    for (int k = 0; k < n; ++k) {
      const double target = spec.levels[static_cast<std::size_t>(n - 1 - k)].c;
      report.add(indexed("im_at_zero", k), std::abs(cofactor(origin).imag() - target), opts.tol.point);
      cofactor = cofactor.dbar();
    }
  } else {
    const cplx psi0 = sol.w.psi()(origin);
    report.add("psi_imag_at_zero", std::abs(psi0.imag()), opts.tol.psi_imag);
    const double scale = std::exp(psi0.real());
    MetaExpr shifted = sol.w;
    for (int k = 0; k < n; ++k) {
      const double target = scale * spec.levels[static_cast<std::size_t>(n - 1 - k)].c;
      report.add(indexed("im_at_zero", k), std::abs(shifted(origin).imag() - target), opts.tol.point);
      shifted = dbar_shift(shifted);
    }
  }

  const std::vector<TestFunction> basis = verification_basis(spec);
  report.merge(verify_boundary_conditions(sol, spec, basis, opts));

  if (opts.negative_control) {
    const Report corrupted = verify_boundary_conditions(corrupt_solution(sol, opts.corruption), spec, basis, opts);
    double worst = 0.0;
    for (const Check& c : corrupted.checks()) worst = std::max(worst, c.value);
    report.add("negative_control", worst, opts.tol.negative_control, Check::Bound::lower);
  }
  return report;
}

SchwarzSolution corrupt_solution(const SchwarzSolution& sol, double delta) {
  SchwarzSolution out = sol;
  for (std::size_t k = 1; k <= out.chain.size(); ++k) {
    const int power = static_cast<int>(k) - 1;
    const BivarPoly bump = BivarPoly::monomial(0, power, delta / factorial(power));
    out.chain[k - 1] = PolyAnalytic::from_bivar(out.chain[k - 1].to_bivar() + bump);
  }
  out.w = MetaExpr(sol.w.psi(), out.chain.back());
  return out;
}

}  // namespace metaschwarz
