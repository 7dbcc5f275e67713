#include "dynwave/general.hpp"

#include <cassert>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "dynwave/linsys.hpp"

namespace dynwave {

namespace {

// Q - Q_lin on every face, Q_lin being the semilinear flux (a + c) / 2.
std::vector<double> flux_excess(std::span<const double> next, std::span<const double> prev,
                                const GeneralProblem& prob) {
    const int K = prob.grid.K();
    const double dx = prob.grid.dx();
    std::vector<double> out(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) {
        const double a = (next[k + 1] - next[k]) / dx;
        const double c = (prev[k + 1] - prev[k]) / dx;
        out[k] = prob.flux.stable_quotient(a, c) - 0.5 * (a + c);
    }
    return out;
}

// Nonlinear part of the eliminated rows: general_residual minus the
// residual of the linear wave with the same data.
std::vector<double> nonlinear_part(std::span<const double> guess, const StatePair& pair,
                                   const GeneralProblem& prob) {
    const int K = prob.grid.K();
    const double dx = prob.grid.dx();
    const std::vector<double> ex = flux_excess(guess, pair.prev, prob);
    std::vector<double> n(prob.grid.nodes());
    for (int k = 1; k < K; ++k) {
        n[k] = -(ex[k] - ex[k - 1]) / dx + two_point_quotient(prob.nl, guess[k], pair.prev[k]);
    }
    n[0] = -(2.0 / dx) * ex[0] + two_point_quotient(prob.nl, guess[0], pair.prev[0]);
    n[K] = (2.0 / dx) * ex[K - 1] + two_point_quotient(prob.nl, guess[K], pair.prev[K]);
    return n;
}

}  // namespace

double general_energy(std::span<const double> next, std::span<const double> curr,
                      const GeneralProblem& prob) {
    const Grid& grid = prob.grid;
    const int K = grid.K();
    const double dx = grid.dx();
    const double dt = grid.dt();

    std::vector<double> kin(grid.nodes());
    std::vector<double> pot(grid.nodes());
    for (int k = 0; k <= K; ++k) {
        const double v = (next[k] - curr[k]) / dt;
        kin[k] = 0.5 * v * v;
        pot[k] = 0.5 * (prob.nl.potential(next[k]) + prob.nl.potential(curr[k]));
    }
    double flux = 0.0;
    for (int k = 0; k < K; ++k) {
        flux += prob.flux.density((next[k + 1] - next[k]) / dx, (curr[k + 1] - curr[k]) / dx);
    }
    const double v0 = (next[0] - curr[0]) / dt;
    const double vK = (next[K] - curr[K]) / dt;
    return trapz_sum(kin, grid) + flux * dx + trapz_sum(pot, grid) + 0.5 * v0 * v0 +
           0.5 * vK * vK;
}

std::vector<double> flux_values(std::span<const double> next, std::span<const double> prev,
                                const GeneralProblem& prob) {
    const int K = prob.grid.K();
    const double dx = prob.grid.dx();
    std::vector<double> q(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) {
        q[k] = prob.flux.stable_quotient((next[k + 1] - next[k]) / dx, (prev[k + 1] - prev[k]) / dx);
    }
    return q;
}

std::vector<double> general_residual(std::span<const double> next, const StatePair& pair,
                                     const GeneralProblem& prob) {
    const Grid& grid = prob.grid;
    const int K = grid.K();
    const double dx = grid.dx();
    const double dt2 = grid.dt() * grid.dt();
    const std::vector<double> q = flux_values(next, pair.prev, prob);

    std::vector<double> r(grid.nodes());
    for (int k = 0; k <= K; ++k) {
        const double acc = (next[k] - 2.0 * pair.curr[k] + pair.prev[k]) / dt2;
        const double fq = two_point_quotient(prob.nl, next[k], pair.prev[k]);
        if (k == 0) {
            r[k] = (1.0 + 2.0 / dx) * acc - (2.0 / dx) * q[0] + fq;
        } else if (k == K) {
            r[k] = (1.0 + 2.0 / dx) * acc + (2.0 / dx) * q[K - 1] + fq;
        } else {
            r[k] = acc - (q[k] - q[k - 1]) / dx + fq;
        }
    }
    return r;
}

std::pair<Field, StepDiagnostics> general_step(const StatePair& pair, const GeneralProblem& prob,
                                               const SolverParams& params) {
    const Grid& grid = prob.grid;
    const double dt2 = grid.dt() * grid.dt();

    StepDiagnostics diag;
    diag.m_n = xnorm(pair, grid);
    diag.contraction_limit = std::numeric_limits<double>::quiet_NaN();
    diag.existence_radius = std::numeric_limits<double>::quiet_NaN();

    TridiagonalSystem sys = assemble(grid);
    const std::vector<double> base = base_rhs(pair, grid);

    double theta = params.damping;
    int halvings = 0;
    double last = std::numeric_limits<double>::infinity();
    Field guess = pair.curr;
    for (int j = 1; j <= params.max_iter; ++j) {
        const std::vector<double> nonlin = nonlinear_part(guess, pair, prob);
        for (std::size_t k = 0; k < base.size(); ++k) {
            sys.rhs[k] = base[k] + 0.5 * dt2 * guess[k] - dt2 * nonlin[k];
        }
        Field target = solve(sys);

        Field diff(target.size());
        for (std::size_t k = 0; k < diff.size(); ++k) {
            diff[k] = target[k] - guess[k];
        }
        const double inc = norm_l2(diff, grid);
        diag.increments.push_back(inc);
        diag.iterations = j;
        diag.final_increment = inc;
        if (!std::isfinite(inc)) {
            throw NoConvergence(
                fmt::format("general scheme diverged at step n={} after {} iterations; "
                            "reduce Δt or the damping factor",
                            pair.n, j),
                pair.n, j, inc);
        }
        if (inc <= params.tol * (1.0 + norm_l2(guess, grid))) {
            return {std::move(target), std::move(diag)};
        }
        if (inc > last && halvings < params.max_halvings) {
            theta *= 0.5;
            ++halvings;
        }
        last = inc;
        if (theta == 1.0) {
            guess = std::move(target);
        } else {
            for (std::size_t k = 0; k < guess.size(); ++k) {
                guess[k] += theta * diff[k];
            }
        }
    }
    throw NoConvergence(
        fmt::format("general scheme did not converge at step n={} within {} iterations "
                    "(last increment {:.3e}); reduce Δt or the damping factor",
                    pair.n, params.max_iter, diag.final_increment),
        pair.n, params.max_iter, diag.final_increment);
}

Field general_first_step(std::span<const double> u0, std::span<const double> v0,
                         const GeneralProblem& prob) {
    const Grid& grid = prob.grid;
    const int K = grid.K();
    const double dx = grid.dx();
    const double dt = grid.dt();
    auto xprime = [&](double g) { return prob.flux.stable_quotient(g, g); };

    std::vector<double> q(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) {
        q[k] = xprime((u0[k + 1] - u0[k]) / dx);
    }
    std::vector<double> acc(grid.nodes());
    for (int k = 1; k < K; ++k) {
        acc[k] = (q[k] - q[k - 1]) / dx - prob.nl.derivative(u0[k]);
    }
    acc[0] = xprime((-3.0 * u0[0] + 4.0 * u0[1] - u0[2]) / (2.0 * dx));
    acc[K] = -xprime((3.0 * u0[K] - 4.0 * u0[K - 1] + u0[K - 2]) / (2.0 * dx));

    Field u1(grid.nodes());
    for (std::size_t k = 0; k < u1.size(); ++k) {
        u1[k] = u0[k] + dt * v0[k] + 0.5 * dt * dt * acc[k];
    }
    return u1;
}

}  // namespace dynwave
