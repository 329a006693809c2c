#pragma once

#include <span>
#include <vector>

#include "metaschwarz/boundary.hpp"
#include "metaschwarz/integral_ops.hpp"
#include "metaschwarz/meta.hpp"
#include "metaschwarz/report.hpp"

namespace metaschwarz {

struct SchwarzLevel {
  HoloSeries h;
  double c = 0.0;
};

/// Data of the order-n Schwarz problem: coefficient A and, for k = 0..n-1,
/// holomorphic boundary data h_k with the real constant c_k.
struct SchwarzSpec {
  int n = 1;
  BivarPoly A;
  std::vector<SchwarzLevel> levels;
  PsiKind psi_kind = PsiKind::cauchy;

  /// Throws InvalidArgument unless n >= 1 and levels.size() == n.
  void validate() const;
  [[nodiscard]] int max_data_degree() const;
};

struct SchwarzSolution {
  MetaExpr w;
  /// f_1 .. f_n; f_0 = 0 is implicit.
  std::vector<PolyAnalytic> chain;
  /// I_0 .. I_{n-1}
  std::vector<cplx> I;
  Report diagnostics;
};

struct Tolerances {
  double chain = 1e-12;
  double pde = 1e-9;
  double point = 1e-9;
  double boundary = 1e-6;
  double pairing = 1e-8;
  double psi_imag = 1e-6;
  double negative_control = 1e-3;
};

struct SolverOptions {
  int grid_radii = 32;
  int grid_angles = 64;
  int radial_depth = 16;
  LimitOptions limit;
  PsiFitOptions psi;
  Tolerances tol;
  bool throw_on_failure = true;
  bool negative_control = true;
  /// amount added to f_1 for the negative control
  double corruption = 0.1;
};

/// I = (i / 2pi) <Im h_b, 1> = i Im h(0). The algebraic value is cross-checked
/// against the radial limit of int Im h(r e^{i theta}) dtheta; a disagreement
/// above `tolerance` raises PairingMismatch.
cplx i_constant(const HoloSeries& h, const RadialSequence& rs = RadialSequence{},
                double tolerance = 1e-8, const LimitOptions& opts = {});

/// f_k = i c_{k-1} - I_{k-1} + h_{k-1} - sum_{l=1}^{k-1} (-1)^l / l! zbar^l f_{k-l},
/// f_0 = 0, for k = 1..n. The Poisson integral of (h_{k-1})_b is h_{k-1} itself.
std::vector<PolyAnalytic> solve_poly_chain(const SchwarzSpec& spec, const SolverOptions& opts = {});

/// w = e^psi f_n with the Cauchy-kernel psi. Boundary conditions are stated for
/// d^k/dzbar^k of the poly-analytic factor w / e^psi.
SchwarzSolution solve_meta(const SchwarzSpec& spec, const SolverOptions& opts = {});

/// w = e^psi f_n with the Schwarz-kernel psi (real at 0). Boundary conditions
/// are stated for (d/dzbar - A)^k w directly.
SchwarzSolution solve_meta_smooth(const SchwarzSpec& spec, const SolverOptions& opts = {});

/// Dispatches on spec.psi_kind.
SchwarzSolution solve(const SchwarzSpec& spec, const SolverOptions& opts = {});

/// {e^{i m theta} : |m| <= max(8, 2 * max deg h_k)}
std::vector<TestFunction> verification_basis(const SchwarzSpec& spec);

/// Pairs both sides of every level's boundary condition with each test
/// function (radial limits) and records the worst |LHS - RHS| per level.
/// Cauchy kind: "boundary[k]" compares Re(d^k (w / e^psi)/dzbar^k)_b against the
/// unfolded right side built from h and the chain, "trace[k]" against
/// Re(f_{n-k})_b. Schwarz kind: "boundary[k]" compares Re((d/dzbar - A)^k w)_b
/// with Re{e^{psi(e^{i.})} (i c - I + h_b - sum ...)}.
Report verify_boundary_conditions(const SchwarzSolution& sol, const SchwarzSpec& spec,
                                  std::span<const TestFunction> tests, const SolverOptions& opts = {});

/// Chain identities, PDE residual, conditions at 0, boundary conditions and,
/// if enabled, the negative control.
Report verify_solution(const SchwarzSolution& sol, const SchwarzSpec& spec, const SolverOptions& opts = {});

/// The solution obtained after f_1 += delta, propagated through the chain
/// (f_k gains delta zbar^{k-1} / (k-1)!).
SchwarzSolution corrupt_solution(const SchwarzSolution& sol, double delta);

}  // namespace metaschwarz
