#include <doctest.h>

#include <cmath>
#include <numbers>

#include "metaschwarz/error.hpp"
#include "metaschwarz/schwarz.hpp"
#include "random_data.hpp"

using namespace metaschwarz;
using metaschwarz::testing::Rng;

namespace {

const cplx I{0.0, 1.0};
const BivarPoly one = BivarPoly::constant(1.0);

SchwarzSpec worked(PsiKind kind = PsiKind::cauchy, BivarPoly A = one) {
  return {2, std::move(A), {{HoloSeries::constant(1.0), 0.0}, {HoloSeries{}, 2.0}}, kind};
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::InvalidArgument;
}

double check_value(const Report& r, const std::string& name) {
  const Check* c = r.find(name);
  REQUIRE(c != nullptr);
  return c->value;
}

}  // namespace

TEST_CASE("report bookkeeping") {
  Report r;
  r.add("a", 1e-9, 1e-6);
  r.add("control", 0.5, 1e-3, Check::Bound::lower);
  CHECK(r.passed());
  r.add("nan", NAN, 1.0);
  CHECK_FALSE(r.passed());
  REQUIRE(r.first_failure() != nullptr);
  CHECK(r.first_failure()->name == "nan");
  Report outer;
  outer.merge(r, "x.");
  CHECK(outer.find("x.control") != nullptr);
  Report low;
  low.add("control", 1e-4, 1e-3, Check::Bound::lower);
  CHECK_FALSE(low.passed());
}

TEST_CASE("spec validation") {
  SchwarzSpec s = worked();
  CHECK_NOTHROW(s.validate());
  CHECK(s.max_data_degree() == 0);
  s.levels.pop_back();
  CHECK(code_of([&] { s.validate(); }) == Errc::InvalidArgument);
  s.n = 0;
  s.levels.clear();
  CHECK(code_of([&] { s.validate(); }) == Errc::InvalidArgument);
}

TEST_CASE("i_constant examples") {
  CHECK(i_constant(HoloSeries::constant(1.0)) == cplx{});
  CHECK(std::abs(i_constant(HoloSeries::constant({3.0, 4.0})) - 4.0 * I) < 1e-15);
  CHECK(i_constant(HoloSeries({0.0, 1.0})) == cplx{});
  CHECK(std::abs(i_constant(HoloSeries({cplx{0.5, -2.0}, cplx{1.0, 3.0}, I})) + 2.0 * I) < 1e-15);
}

TEST_CASE("i_constant raises PairingMismatch when the limit disagrees") {
  LimitOptions coarse;
  coarse.n_theta = 8;
  // a z^8 term aliases onto the constant on 8 nodes
  std::vector<cplx> c(10);
  c[8] = I;
  CHECK(code_of([&] { (void)i_constant(HoloSeries(c), RadialSequence{}, 1e-8, coarse); }) == Errc::PairingMismatch);
}

TEST_CASE("solve_poly_chain examples") {
  const double gamma = 0.75;
  const SchwarzSpec s1{1, {}, {{HoloSeries::constant(gamma), -1.5}}, PsiKind::cauchy};
  const auto f1 = solve_poly_chain(s1);
  REQUIRE(f1.size() == 1);
  CHECK(f1[0].to_bivar() == BivarPoly::constant(gamma - 1.5 * I));

  const auto f = solve_poly_chain(worked());
  REQUIRE(f.size() == 2);
  CHECK(f[0].to_bivar() == one);
  CHECK(f[1].to_bivar() == BivarPoly::constant(2.0 * I) + BivarPoly::zbar());
  CHECK(f[1].dbar().to_bivar() == f[0].to_bivar());
  // Re f_2 on the circle is cos(theta) = Re{(h_1)_b + e^{-i theta} (f_1)_b}
  for (double t : {0.0, 0.4, 2.0, 5.5}) {
    CHECK(std::abs(f[1](std::polar(1.0, t)).real() - std::cos(t)) < 1e-15);
  }

  const SchwarzSpec s3{1, {}, {{HoloSeries({0.0, 1.0}), 0.0}}, PsiKind::cauchy};
  CHECK(solve_poly_chain(s3)[0].to_bivar() == BivarPoly::z());
}

TEST_CASE("chain properties on random specs") {
  Rng rng(97);
  for (int trial = 0; trial < 10; ++trial) {
    const SchwarzSpec spec = testing::random_spec(rng, 1 + trial % 4, -1, 6);
    const auto f = solve_poly_chain(spec);
    BivarPoly prev;
    for (int k = 1; k <= spec.n; ++k) {
      const PolyAnalytic& fk = f[static_cast<std::size_t>(k) - 1];
      CHECK(fk.order() <= k);
      CHECK(max_coeff_distance(fk.to_bivar().dbar(), prev) < 1e-12);
      CHECK(std::abs(fk(0.0).imag() - spec.levels[static_cast<std::size_t>(k) - 1].c) < 1e-10);
      prev = fk.to_bivar();
    }
  }
}

TEST_CASE("solve_meta examples") {
  Rng rng(101);
  SchwarzSpec flat = testing::random_spec(rng, 3, -1, 4);
  const SchwarzSolution a = solve_meta(flat);
  const auto chain = solve_poly_chain(flat);
  for (const cplx z : testing::random_points(rng, 20)) CHECK(std::abs(a.w(z) - chain.back()(z)) < 1e-12);

  const SchwarzSolution b = solve_meta(worked());
  CHECK(b.diagnostics.passed());
  CHECK(b.w.psi().value == BivarPoly::zbar());
  for (const cplx z : testing::random_points(rng, 10)) {
    const cplx zb = std::conj(z);
    CHECK(std::abs(b.w(z) - std::exp(zb) * (2.0 * I + zb)) < 1e-14);
  }

  const SchwarzSpec c{1, BivarPoly::z(), {{HoloSeries::constant(1.0), 0.0}}, PsiKind::cauchy};
  const SchwarzSolution sc = solve_meta(c);
  for (const cplx z : testing::random_points(rng, 10)) {
    CHECK(std::abs(sc.w(z) - std::exp(z * std::conj(z) - 1.0)) < 1e-14);
  }
  CHECK(check_value(sc.diagnostics, "pde") == 0.0);
}

TEST_CASE("solve_meta rejects the wrong psi kind") {
  CHECK(code_of([] { (void)solve_meta(worked(PsiKind::schwarz)); }) == Errc::InvalidArgument);
  CHECK(code_of([] { (void)solve_meta_smooth(worked(PsiKind::cauchy)); }) == Errc::InvalidArgument);
}

TEST_CASE("solve_meta diagnostics on the worked example") {
  const SchwarzSolution s = solve_meta(worked());
  for (const char* name : {"chain[1]", "chain[2]", "chain_top", "pde", "im_at_zero[0]", "im_at_zero[1]",
                           "boundary[0]", "boundary[1]", "trace[0]", "trace[1]", "negative_control"}) {
    CHECK_MESSAGE(s.diagnostics.find(name) != nullptr, name);
  }
  CHECK(check_value(s.diagnostics, "negative_control") > 1e-3);
  CHECK(s.diagnostics.timings().count("verify_ms") == 1);
}

TEST_CASE("solve_meta_smooth examples") {
  Rng rng(103);
  SchwarzSpec flat = testing::random_spec(rng, 2, -1, 4, PsiKind::schwarz);
  SchwarzSpec flat_cauchy = flat;
  flat_cauchy.psi_kind = PsiKind::cauchy;
  const SchwarzSolution a = solve_meta_smooth(flat);
  const SchwarzSolution b = solve_meta(flat_cauchy);
  for (const cplx z : testing::random_points(rng, 20)) CHECK(std::abs(a.w(z) - b.w(z)) < 1e-12);

  const SchwarzSpec s{1, one, {{HoloSeries::constant(1.0), 1.0}}, PsiKind::schwarz};
  const SchwarzSolution sol = solve_meta_smooth(s);
  CHECK(sol.diagnostics.passed());
  for (const cplx z : testing::random_points(rng, 10)) {
    CHECK(std::abs(sol.w(z) - std::exp(sol.w.psi()(z)) * cplx{1.0, 1.0}) < 1e-14);
  }
  CHECK(std::abs(sol.w(0.0).imag() - std::exp(sol.w.psi()(0.0).real())) < 1e-9);
}

TEST_CASE("smooth variant pointwise ratio equals e^psi(0)") {
  Rng rng(107);
  const SchwarzSpec spec = testing::random_spec(rng, 3, 2, 4, PsiKind::schwarz);
  const SchwarzSolution sol = solve_meta_smooth(spec);
  const cplx psi0 = sol.w.psi()(0.0);
  CHECK(std::abs(psi0.imag()) < 1e-6);
  MetaExpr v = sol.w;
  for (int k = 0; k < spec.n; ++k) {
    const double c = spec.levels[static_cast<std::size_t>(spec.n - 1 - k)].c;
    CHECK(std::abs(v(0.0).imag() / c - std::exp(psi0.real())) < 1e-8);
    v = dbar_shift(v);
  }
}

TEST_CASE("verify_boundary_conditions examples") {
  const SchwarzSpec s1{1, {}, {{HoloSeries::constant(0.5), 0.25}}, PsiKind::cauchy};
  const SchwarzSolution a = solve_meta(s1);
  const std::vector<TestFunction> just_one{TestFunction::one()};
  const Report r1 = verify_boundary_conditions(a, s1, just_one);
  CHECK(check_value(r1, "boundary[0]") < 1e-10);

  const SchwarzSolution b = solve_meta(worked());
  const std::vector<TestFunction> tests{TestFunction::one(), TestFunction::cos_mode(1), TestFunction::sin_mode(1),
                                        TestFunction::cos_mode(2)};
  const Report r2 = verify_boundary_conditions(b, worked(), tests);
  for (const Check& c : r2.checks()) CHECK_MESSAGE(c.value < 1e-7, c.name);

  const Report r3 = verify_boundary_conditions(corrupt_solution(b, 0.1), worked(), tests);
  double worst = 0.0;
  for (const Check& c : r3.checks()) worst = std::max(worst, c.value);
  CHECK(worst > 1e-3);
}

TEST_CASE("corrupt_solution propagates through the chain") {
  const SchwarzSolution b = solve_meta(worked(), {.throw_on_failure = false});
  const SchwarzSolution c = corrupt_solution(b, 0.1);
  CHECK(max_coeff_distance(c.chain[0].to_bivar(), b.chain[0].to_bivar() + BivarPoly::constant(0.1)) < 1e-15);
  CHECK(max_coeff_distance(c.chain[1].to_bivar(), b.chain[1].to_bivar() + BivarPoly::monomial(0, 1, 0.1)) < 1e-15);
  CHECK(c.chain[1].dbar().to_bivar() == c.chain[0].to_bivar());
  CHECK(c.w.poly().to_bivar() == c.chain[1].to_bivar());
}

TEST_CASE("verification failure names the failing check") {
  SolverOptions opts;
  opts.tol.boundary = 1e-30;
  opts.tol.pde = 1e-30;
  Rng rng(109);
  const SchwarzSpec spec = testing::random_spec(rng, 2, 1, 3);
  bool named = false;
  try {
    (void)solve_meta(spec, opts);
  } catch (const Error& e) {
    named = e.code() == Errc::VerificationFailed && std::string(e.what()).find("boundary[") != std::string::npos;
  }
  CHECK(named);
  opts.throw_on_failure = false;
  CHECK_FALSE(solve_meta(spec, opts).diagnostics.passed());
}

TEST_CASE("verification basis covers the data frequencies") {
  SchwarzSpec s = worked();
  CHECK(verification_basis(s).size() == 17);
  s.levels[0].h = HoloSeries(std::vector<cplx>(7, 1.0));
  CHECK(verification_basis(s).size() == 25);
}

TEST_CASE("randomized solver properties") {
  Rng rng(113);
  const PolarGrid grid = PolarGrid::uniform(32, 64);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 1 + trial % 4;
    const SchwarzSpec spec = testing::random_spec(rng, n, 2, 6);
    const SchwarzSolution sol = solve_meta(spec);
    CHECK(sol.diagnostics.passed());
    CHECK(pde_residual(sol.w, spec.A, n, grid) < 1e-9);
    const RadialSequence rs;
    for (double p : {1.0, 2.0}) {
      const HardyEstimate h = meta_hardy_norm(sol.w, p, n, rs);
      CHECK_FALSE(h.unbounded);
      CHECK(std::isfinite(h.value));
    }
  }
}
