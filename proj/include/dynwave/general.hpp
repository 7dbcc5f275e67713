#pragma once

// Energy-conserving scheme for u_tt = -dG/du with G = X(u_x) + F(u) and the
// dynamic boundary conditions u_tt(t,0) - X'(u_x)(t,0) = 0,
// u_tt(t,L) + X'(u_x)(t,L) = 0.
//
// Face fluxes Q_k (k = 0..K-1) are the four-point quotients of the flux
// density X between the gradient pairs (d+ U^{n+1}, d+ U^n) and
// (d+ U^n, d+ U^{n-1}); for factored densities they reduce to the two-point
// quotient of X~ between d+ U^{n+1} and d+ U^{n-1}. The interior equation is
//
//   d2t U_k = (Q_k - Q_{k-1}) / dx - dF/d(U^{n+1}_k, U^{n-1}_k),
//
// and the boundary rows d2t U_0 = (Q_{-1} + Q_0) / 2,
// d2t U_K = -(Q_{K-1} + Q_K) / 2 fix the ghost fluxes
// Q_{-1} = 2 d2t U_0 - Q_0 and Q_K = -2 d2t U_K - Q_{K-1}. Substituting them
// into the k = 0 and k = K interior equations gives the eliminated rows
//
//   (1 + 2/dx) d2t U_0 - (2/dx) Q_0     + dF/d(...) = 0,
//   (1 + 2/dx) d2t U_K + (2/dx) Q_{K-1} + dF/d(...) = 0,
//
// which reproduce the semilinear rows when X(a, b) = (a^2 + b^2) / 4.
//
// No existence theory backs this scheme, so the step borrows the coercive
// linear operator of the semilinear fixed-point map and moves the difference
// between the true and the linear flux to the right-hand side, with
// relaxation on the update.

#include <span>
#include <utility>
#include <vector>

#include "dynwave/mesh.hpp"
#include "dynwave/quotients.hpp"
#include "dynwave/semilinear.hpp"

namespace dynwave {

struct GeneralProblem {
    FluxDensity flux;
    Nonlinearity nl;
    Grid grid;
};

/// J_d(next, curr) = kinetic + sum_k X(d+ next_k, d+ curr_k) dx + sum'' F dx
/// + boundary kinetic terms.
double general_energy(std::span<const double> next, std::span<const double> curr,
                      const GeneralProblem& prob);

/// Face fluxes Q_k, k = 0..K-1, between `next` (U^{n+1}) and `prev` (U^{n-1}).
std::vector<double> flux_values(std::span<const double> next, std::span<const double> prev,
                                const GeneralProblem& prob);

/// Eliminated scheme defect at every node.
std::vector<double> general_residual(std::span<const double> next, const StatePair& pair,
                                     const GeneralProblem& prob);

/// Relaxed fixed-point step; throws NoConvergence after params.max_iter.
std::pair<Field, StepDiagnostics> general_step(const StatePair& pair, const GeneralProblem& prob,
                                               const SolverParams& params);

/// Taylor start with the flux-based acceleration (Q_k - Q_{k-1}) / dx - F'(u0)
/// inside and +/- X~'(u_x) from one-sided slopes at the ends.
Field general_first_step(std::span<const double> u0, std::span<const double> v0,
                         const GeneralProblem& prob);

}  // namespace dynwave
