#include <doctest.h>

#include <cmath>

#include "metaschwarz/boundary.hpp"
#include "metaschwarz/error.hpp"
#include "metaschwarz/meta.hpp"
#include "random_data.hpp"

using namespace metaschwarz;
using metaschwarz::testing::Rng;

namespace {

const cplx I{0.0, 1.0};

PsiFactor cauchy(const BivarPoly& A) { return psi_from_A(A, PsiKind::cauchy); }

const BivarPoly one = BivarPoly::constant(1.0);

/// sum_{j} M(k, j) d^j F / dzbar^j, times e^psi, at z
cplx matrix_row_value(const TriangularOperatorMatrix& M, int k, const PolyAnalytic& F, const PsiFactor& psi, cplx z) {
  cplx acc{};
  PolyAnalytic dj = F;
  for (int j = 0; j <= k; ++j) {
    acc += M(k, j)(z) * dj(z);
    dj = dj.dbar();
  }
  return std::exp(psi(z)) * acc;
}

}  // namespace

TEST_CASE("poly-analytic representation") {
  const BivarPoly p = BivarPoly::monomial(2, 0, 3.0) + BivarPoly::zbar() + BivarPoly::monomial(1, 2, I);
  const PolyAnalytic F = PolyAnalytic::from_bivar(p);
  CHECK(F.order() == 3);
  CHECK(F.to_bivar() == p);
  const cplx z{0.2, 0.7};
  CHECK(std::abs(F(z) - p(z)) < 1e-15);
  CHECK(F.dbar().to_bivar() == p.dbar());
  CHECK(PolyAnalytic::from_bivar(BivarPoly{}).is_zero());
  CHECK(PolyAnalytic{}.order() == 0);
}

TEST_CASE("meta_eval examples") {
  const MetaExpr a(cauchy(one), PolyAnalytic({HoloSeries::constant(1.0)}));
  CHECK(std::abs(meta_eval(a, 0.0) - 1.0) < 1e-15);
  const MetaExpr b(cauchy(BivarPoly{}), PolyAnalytic({HoloSeries{}, HoloSeries::constant(1.0)}));
  CHECK(std::abs(meta_eval(b, cplx{0.3, 0.4}) - cplx{0.3, -0.4}) < 1e-15);
  const MetaExpr c(cauchy(one), PolyAnalytic({HoloSeries::constant(2.0 * I), HoloSeries::constant(1.0)}));
  CHECK(std::abs(meta_eval(c, 0.5) - std::exp(0.5) * (2.0 * I + 0.5)) < 1e-14);
  CHECK(std::abs(meta_eval(c, DiskPoint::on_boundary(0.0)) - std::exp(1.0) * (2.0 * I + 1.0)) < 1e-14);
}

TEST_CASE("dbar_shift examples") {
  const MetaExpr w(cauchy(one), PolyAnalytic({HoloSeries{}, HoloSeries::constant(1.0)}));
  const MetaExpr s = dbar_shift(w);
  CHECK(s.poly().to_bivar() == one);
  const cplx z{0.1, -0.3};
  CHECK(std::abs(s(z) - std::exp(std::conj(z))) < 1e-15);

  Rng rng(59);
  const MetaExpr holo(cauchy(testing::random_bivar(rng, 2)), PolyAnalytic({testing::random_holo(rng, 5)}));
  CHECK(dbar_shift(holo).is_zero());

  for (int n = 1; n <= 4; ++n) {
    MetaExpr v(cauchy(testing::random_bivar(rng, 2)), testing::random_poly_analytic(rng, n, 4));
    for (int i = 0; i < n; ++i) v = dbar_shift(v);
    CHECK(v.is_zero());
  }
}

TEST_CASE("exact dbar agrees with finite differences") {
  Rng rng(61);
  const MetaExpr w(cauchy(testing::random_bivar(rng, 2)), testing::random_poly_analytic(rng, 3, 4));
  const MetaExpr dw = dbar(w);
  for (const cplx z : testing::random_points(rng, 10, 0.8)) {
    CHECK(std::abs(wirtinger_dbar([&w](cplx x) { return w(x); }, z, {1e-3, true}) - dw(z)) < 1e-6);
    CHECK(wirtinger_dbar(w, z) == dw(z));
  }
}

TEST_CASE("pde_residual examples") {
  const PolarGrid grid = PolarGrid::uniform(32, 64);
  const MetaExpr w(cauchy(one), PolyAnalytic({HoloSeries::constant(2.0 * I), HoloSeries::constant(1.0)}));
  CHECK(pde_residual(w, one, 2, grid) == 0.0);

  const MetaExpr z2(cauchy(BivarPoly{}), PolyAnalytic({HoloSeries{}, HoloSeries{}, HoloSeries::constant(1.0)}));
  CHECK(pde_residual(z2, BivarPoly{}, 2, grid) == doctest::Approx(2.0));
  CHECK(pde_residual(z2, BivarPoly{}, 3, grid) == 0.0);

  const MetaExpr zero(cauchy(one), PolyAnalytic{});
  CHECK(pde_residual(zero, one, 3, grid) == 0.0);
}

TEST_CASE("pde_residual by nested finite differences") {
  const PolarGrid grid = PolarGrid::uniform(8, 16);
  const DiskFunction w = [](cplx z) { return std::exp(std::conj(z)) * (2.0 * I + std::conj(z)); };
  CHECK(pde_residual(w, one, 2, grid, 1e-3) < 1e-4);
  const DiskFunction z2 = [](cplx z) { return std::conj(z) * std::conj(z); };
  CHECK(pde_residual(z2, BivarPoly{}, 2, grid, 1e-3) == doctest::Approx(2.0).epsilon(1e-4));
  const PolarGrid edge({0.5, 0.999}, 8);
  CHECK_THROWS_AS((void)pde_residual(w, one, 2, edge, 1e-3), Error);
}

TEST_CASE("exact annihilation and order minimality") {
  Rng rng(67);
  const PolarGrid grid = PolarGrid::uniform(32, 64);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + trial % 4;
    const BivarPoly A = testing::random_bivar(rng, 3);
    std::vector<HoloSeries> parts;
    for (int k = 0; k < n; ++k) parts.push_back(testing::random_holo(rng, 8));
    parts.back() = parts.back() + HoloSeries::constant(1.0);
    const MetaExpr w(cauchy(A), PolyAnalytic(parts));
    CHECK(pde_residual(w, A, n, grid) < 1e-10);
    CHECK(pde_residual(w, A, n - 1, grid) > 1e-3);
  }
}

TEST_CASE("shifted cofactor with a mismatched coefficient") {
  // w = e^{zbar} built for A = 1, tested against A = 0: (d/dzbar) w = e^{zbar}
  const MetaExpr w(cauchy(one), PolyAnalytic({HoloSeries::constant(1.0)}));
  CHECK(shifted_cofactor(w, BivarPoly{}, 1) == one);
  CHECK(shifted_cofactor(w, one, 1).is_zero());
}

TEST_CASE("build_matrix_A displayed rows") {
  Rng rng(71);
  const BivarPoly A = testing::random_bivar(rng, 3);
  const TriangularOperatorMatrix M = build_matrix_A(A, 4);
  CHECK(M(0, 0) == one);
  CHECK(M(1, 0) == A);
  CHECK(M(1, 1) == one);
  CHECK(M(1, 2).is_zero());
  CHECK(max_coeff_distance(M(2, 0), A * A + A.dbar()) < 1e-15);
  CHECK(max_coeff_distance(M(2, 1), 2.0 * A) < 1e-15);
  CHECK(M(2, 2) == one);
  for (int k = 0; k < 4; ++k) CHECK(M(k, k) == one);
  CHECK_THROWS_AS((void)M(4, 0), Error);
}

TEST_CASE("build_matrix_A with A = 0 is the identity") {
  const TriangularOperatorMatrix M = build_matrix_A(BivarPoly{}, 5);
  for (int k = 0; k < 5; ++k) {
    for (int j = 0; j < 5; ++j) CHECK(M(k, j) == (k == j ? one : BivarPoly{}));
  }
}

TEST_CASE("matrix entry degrees stay within the stated bound") {
  // P_(k,j) is a polynomial in A and its derivatives of order at most max(k-1, j-1)
  // in A: with A = z zbar, total degree <= 2 * (k - j)
  const BivarPoly A = BivarPoly::monomial(1, 1);
  const TriangularOperatorMatrix M = build_matrix_A(A, 5);
  for (int k = 0; k < 5; ++k) {
    for (int j = 0; j <= k; ++j) CHECK(M(k, j).total_degree() <= 2 * (k - j));
  }
}

TEST_CASE("invert_matrix_A examples") {
  Rng rng(73);
  const BivarPoly A = testing::random_bivar(rng, 2);
  const TriangularOperatorMatrix M2 = build_matrix_A(A, 2);
  const TriangularOperatorMatrix inv2 = invert_matrix_A(M2);
  CHECK(inv2(0, 0) == one);
  CHECK(inv2(1, 0) == -A);
  CHECK(inv2(1, 1) == one);

  const TriangularOperatorMatrix id = invert_matrix_A(build_matrix_A(BivarPoly{}, 3));
  for (int k = 0; k < 3; ++k) {
    for (int j = 0; j < 3; ++j) CHECK(id(k, j) == (k == j ? one : BivarPoly{}));
  }

  const TriangularOperatorMatrix M3 = build_matrix_A(A, 3);
  CHECK(max_coeff_distance(invert_matrix_A(M3)(2, 0), A * A - A.dbar()) < 1e-14);
  REQUIRE(M3.inverse.size() == 3);
  CHECK(max_coeff_distance(M3.inverse[2][0], A * A - A.dbar()) < 1e-14);
}

TEST_CASE("invert_matrix_A rejects non-unit diagonals") {
  TriangularOperatorMatrix M = build_matrix_A(one, 2);
  M.entries[1][1] = BivarPoly::constant(2.0);
  CHECK_THROWS_AS((void)invert_matrix_A(M), Error);
}

TEST_CASE("derivative_stack examples") {
  const MetaExpr e(cauchy(one), PolyAnalytic({HoloSeries::constant(1.0)}));
  const auto s = derivative_stack(e, 2);
  REQUIRE(s.size() == 2);
  const cplx z{0.3, 0.2};
  CHECK(std::abs(s[0](z) - std::exp(std::conj(z))) < 1e-15);
  CHECK(std::abs(s[1](z) - std::exp(std::conj(z))) < 1e-15);

  const MetaExpr zb(cauchy(BivarPoly{}), PolyAnalytic({HoloSeries{}, HoloSeries::constant(1.0)}));
  const auto t = derivative_stack(zb, 2);
  CHECK(std::abs(t[0](z) - std::conj(z)) < 1e-15);
  CHECK(std::abs(t[1](z) - 1.0) < 1e-15);
}

TEST_CASE("derivative stack equals e^psi [A] F-stack") {
  Rng rng(79);
  const PolarGrid grid = PolarGrid::uniform(32, 64);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + trial % 4;
    const BivarPoly A = testing::random_bivar(rng, 3);
    const PsiFactor psi = cauchy(A);
    const PolyAnalytic F = testing::random_poly_analytic(rng, n, 8);
    const auto stack = derivative_stack(MetaExpr(psi, F), n);
    const TriangularOperatorMatrix M = build_matrix_A(A, n);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.n_radii(); ++i) {
      for (int j = 0; j < grid.n_theta(); ++j) {
        const cplx z = grid.point(i, j);
        for (int k = 0; k < n; ++k) {
          const double err = std::abs(stack[static_cast<std::size_t>(k)](z) - matrix_row_value(M, k, F, psi, z));
          worst = std::max(worst, err / std::max(1.0, std::abs(stack[static_cast<std::size_t>(k)](z))));
        }
      }
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("poly_decompose examples") {
  PolarGrid grid = decomposition_grid();
  grid.sample([](cplx z) { return std::conj(z) + 3.0 * z * z; });
  const Decomposition d = poly_decompose(grid, 2, 2);
  CHECK(d.residual < 1e-10);
  CHECK(max_coeff_distance(d.parts.to_bivar(), BivarPoly::zbar() + BivarPoly::monomial(2, 0, 3.0)) < 1e-10);

  PolarGrid zero = decomposition_grid();
  CHECK(poly_decompose(zero, 3, 4).parts.to_bivar().pruned(1e-14).is_zero());

  PolarGrid divided = decomposition_grid();
  divided.sample([](cplx z) { return std::exp(std::conj(z)) * std::conj(z) / std::exp(std::conj(z)); });
  const Decomposition e = poly_decompose(divided, 2, 4);
  CHECK(max_coeff_distance(e.parts.to_bivar(), BivarPoly::zbar()) < 1e-10);
}

TEST_CASE("poly_decompose preconditions") {
  PolarGrid tiny({0.5}, 8);
  CHECK_THROWS_AS((void)poly_decompose(tiny, 2, 4), Error);
  PolarGrid narrow = sample_grid([](cplx z) { return z; }, PolarGrid({0.5, 0.50001}, 64));
  bool ill = false;
  try {
    (void)poly_decompose(narrow, 2, 10);
  } catch (const Error& err) {
    ill = err.code() == Errc::IllConditioned;
  }
  CHECK(ill);
}

TEST_CASE("decomposition round trip on held-out points") {
  Rng rng(83);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 1 + trial % 3;
    const PsiFactor psi = cauchy(testing::random_bivar(rng, 2));
    const MetaExpr w(psi, testing::random_poly_analytic(rng, n, 6));
    PolarGrid samples = decomposition_grid();
    samples.sample([&](cplx z) { return w(z) / std::exp(psi(z)); });
    const Decomposition d = poly_decompose(samples, n, 8);
    const MetaExpr rebuilt(psi, d.parts);
    for (const cplx z : testing::random_points(rng, 20, 0.9)) {
      CHECK(std::abs(rebuilt(z) - w(z)) < 1e-8);
    }
  }
}

TEST_CASE("meta-Hardy norm bounded by the parts' Hardy norms") {
  // C(A, n) measured on this family (max ratio 6.24, at n = 3) and frozen with headroom
  constexpr double frozen_constant = 8.0;
  Rng rng(89);
  const RadialSequence rs;
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 1 + trial % 3;
    const BivarPoly A = testing::random_bivar(rng, 2);
    const PolyAnalytic F = testing::random_poly_analytic(rng, n, 6);
    const MetaExpr w(cauchy(A), F);
    double parts_norm = 0.0;
    for (const auto& part : F.parts()) parts_norm += hardy_norm([&part](cplx z) { return part(z); }, 2.0, rs).value;
    const HardyEstimate meta = meta_hardy_norm(w, 2.0, n, rs);
    CHECK_FALSE(meta.unbounded);
    CHECK(std::isfinite(meta.value));
    CHECK(meta.value <= frozen_constant * parts_norm);
  }
}
