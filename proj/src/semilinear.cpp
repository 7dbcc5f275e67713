#include "dynwave/semilinear.hpp"

#include <cassert>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace dynwave {

namespace {

double potential_pair(const Nonlinearity& nl, double a, double b) {
    return 0.5 * (nl.potential(a) + nl.potential(b));
}

// Trapezoidal kinetic term sum'' (d+t U)^2 / 2 dx.
double kinetic(std::span<const double> next, std::span<const double> curr, const Grid& grid) {
    std::vector<double> e(grid.nodes());
    for (std::size_t k = 0; k < e.size(); ++k) {
        const double v = (next[k] - curr[k]) / grid.dt();
        e[k] = 0.5 * v * v;
    }
    return trapz_sum(e, grid);
}

double boundary_kinetic(std::span<const double> next, std::span<const double> curr,
                        const Grid& grid) {
    const int K = grid.K();
    const double v0 = (next[0] - curr[0]) / grid.dt();
    const double vK = (next[K] - curr[K]) / grid.dt();
    return 0.5 * v0 * v0 + 0.5 * vK * vK;
}

}  // namespace

double xnorm(const StatePair& pair, const Grid& grid) {
    const int K = grid.K();
    const double dt = grid.dt();
    Field v(grid.nodes());
    for (std::size_t k = 0; k < v.size(); ++k) {
        v[k] = pair.curr[k] - pair.prev[k];
    }
    const double h1 = norm_h1(pair.prev, grid);
    const double l2 = norm_l2(v, grid);
    const double sq = h1 * h1 + (l2 * l2 + v[0] * v[0] + v[K] * v[K]) / (dt * dt);
    return std::sqrt(sq);
}

double discrete_energy(std::span<const double> next, std::span<const double> curr,
                       const Grid& grid, const Nonlinearity& nl, Boundary bc) {
    assert(next.size() == grid.nodes() && curr.size() == grid.nodes());
    const int K = grid.K();
    const double dx = grid.dx();

    double gradient = 0.0;
    for (int k = 0; k < K; ++k) {
        const double gn = (next[k + 1] - next[k]) / dx;
        const double gc = (curr[k + 1] - curr[k]) / dx;
        gradient += 0.5 * (gn * gn + gc * gc) / 2.0;
    }
    gradient *= dx;

    std::vector<double> f(grid.nodes());
    for (std::size_t k = 0; k < f.size(); ++k) {
        f[k] = potential_pair(nl, next[k], curr[k]);
    }

    double J = kinetic(next, curr, grid) + gradient + trapz_sum(f, grid);
    if (bc == Boundary::Dynamic) {
        J += boundary_kinetic(next, curr, grid);
    }
    return J;
}

double discrete_energy_density_form(std::span<const double> next, std::span<const double> curr,
                                    const Grid& grid, const Nonlinearity& nl) {
    const int K = grid.K();
    const double dx = grid.dx();
    auto face = [&](int k) {
        const double gn = (next[k + 1] - next[k]) / dx;
        const double gc = (curr[k + 1] - curr[k]) / dx;
        return 0.5 * (gn * gn + gc * gc) / 2.0;
    };

    double plus = 0.0;
    for (int k = 0; k <= K - 1; ++k) {
        plus += face(k) + potential_pair(nl, next[k], curr[k]);
    }
    double minus = 0.0;
    for (int k = 1; k <= K; ++k) {
        minus += face(k - 1) + potential_pair(nl, next[k], curr[k]);
    }
    return kinetic(next, curr, grid) + 0.5 * plus * dx + 0.5 * minus * dx +
           boundary_kinetic(next, curr, grid);
}

std::pair<double, double> ghost_average(std::span<const double> next, const StatePair& pair,
                                        const Grid& grid, Boundary bc) {
    const int K = grid.K();
    const double dt2 = grid.dt() * grid.dt();
    const auto& prev = pair.prev;
    const auto& curr = pair.curr;
    auto w = [&](int k) { return 0.5 * (next[k] + prev[k]); };
    if (bc == Boundary::Neumann) {
        return {w(1), w(K - 1)};
    }
    const double acc0 = (next[0] - 2.0 * curr[0] + prev[0]) / dt2;
    const double accK = (next[K] - 2.0 * curr[K] + prev[K]) / dt2;
    return {w(1) - 2.0 * grid.dx() * acc0, w(K - 1) - 2.0 * grid.dx() * accK};
}

std::vector<double> scheme_residual(std::span<const double> next, const StatePair& pair,
                                    const Grid& grid, const Nonlinearity& nl, Boundary bc) {
    assert(next.size() == grid.nodes());
    const double dt2 = grid.dt() * grid.dt();
    Field w(grid.nodes());
    for (std::size_t k = 0; k < w.size(); ++k) {
        w[k] = 0.5 * (next[k] + pair.prev[k]);
    }
    const auto [ghost_left, ghost_right] = ghost_average(next, pair, grid, bc);
    const std::vector<double> lap = second_diff(w, ghost_left, ghost_right, grid);

    std::vector<double> r(grid.nodes());
    for (std::size_t k = 0; k < r.size(); ++k) {
        const double acc = (next[k] - 2.0 * pair.curr[k] + pair.prev[k]) / dt2;
        r[k] = acc - lap[k] + two_point_quotient(nl, next[k], pair.prev[k]);
    }
    return r;
}

std::vector<double> base_rhs(const StatePair& pair, const Grid& grid, Boundary bc) {
    const int K = grid.K();
    const double dt = grid.dt();
    const double dx = grid.dx();
    const double alpha = dt * dt / (2.0 * dx * dx);
    const double beta = bc == Boundary::Dynamic ? 2.0 / dx : 0.0;
    const auto& p = pair.prev;
    const auto& c = pair.curr;

    std::vector<double> g(grid.nodes());
    for (int k = 1; k < K; ++k) {
        g[k] = 2.0 * c[k] - p[k] + alpha * (p[k + 1] - 2.0 * p[k] + p[k - 1]);
    }
    g[0] = (1.0 + beta) * (2.0 * c[0] - p[0]) + 2.0 * alpha * (p[1] - p[0]);
    g[K] = (1.0 + beta) * (2.0 * c[K] - p[K]) + 2.0 * alpha * (p[K - 1] - p[K]);
    return g;
}

Field phi_apply(std::span<const double> guess, const StatePair& pair, const Grid& grid,
                const Nonlinearity& nl, Boundary bc) {
    assert(guess.size() == grid.nodes());
    const double dt2 = grid.dt() * grid.dt();
    TridiagonalSystem sys = assemble(grid, bc);
    const std::vector<double> base = base_rhs(pair, grid, bc);
    for (std::size_t k = 0; k < base.size(); ++k) {
        sys.rhs[k] = base[k] + 0.5 * dt2 * guess[k] -
                     dt2 * two_point_quotient(nl, guess[k], pair.prev[k]);
    }
    return solve(sys);
}

RadiusConstants radius_constants(const Nonlinearity& nl, double m_n, double L) {
    const double rho = std::sqrt(3.0) * sobolev_constant(L) * m_n;
    const double c1 = sampled_abs_max(nl.derivative, rho);
    const double c2 = sampled_abs_max(nl.second_derivative, rho);
    const double sqrt_l = std::sqrt(L);
    const double bound = std::min(c1 * sqrt_l, std::abs(nl.derivative(0.0)) * sqrt_l +
                                                   (1.0 + std::sqrt(3.0)) * c2 * m_n);

    RadiusConstants rc;
    rc.c_into = std::sqrt(4.0 * m_n * m_n + 2.0 * bound * bound);
    rc.c_contr = std::sqrt(0.5 + 0.5 * c2 * c2);
    rc.r1 = 1.0 / rc.c_contr;
    if (rc.c_into > 0.0) {
        rc.r1 = std::min(rc.r1, m_n / (std::sqrt(6.0) * rc.c_into));
    }
    return rc;
}

std::pair<Field, StepDiagnostics> step(const StatePair& pair, const Grid& grid,
                                       const Nonlinearity& nl, const SolverParams& params,
                                       Boundary bc) {
    StepDiagnostics diag;
    diag.m_n = xnorm(pair, grid);
    if (params.check_radius) {
        const RadiusConstants rc = radius_constants(nl, diag.m_n, grid.L());
        diag.contraction_limit = 1.0 / rc.c_contr;
        diag.existence_radius = rc.r1;
        diag.radius_ok = grid.dt() < diag.contraction_limit;
    } else {
        diag.contraction_limit = std::numeric_limits<double>::quiet_NaN();
        diag.existence_radius = std::numeric_limits<double>::quiet_NaN();
    }

    Field guess = pair.curr;
    for (int j = 1; j <= params.max_iter; ++j) {
        Field next = phi_apply(guess, pair, grid, nl, bc);
        Field diff(next.size());
        for (std::size_t k = 0; k < diff.size(); ++k) {
            diff[k] = next[k] - guess[k];
        }
        const double inc = norm_l2(diff, grid);
        diag.increments.push_back(inc);
        diag.iterations = j;
        diag.final_increment = inc;
        if (!std::isfinite(inc) || !std::isfinite(norm_inf(next))) {
            throw NoConvergence(
                fmt::format("fixed-point iteration diverged at step n={} after {} iterations; "
                            "reduce Δt (contraction needs Δt < R1(M_n), M_n = {:.6g})",
                            pair.n, j, diag.m_n),
                pair.n, j, inc);
        }
        if (inc <= params.tol * (1.0 + norm_l2(guess, grid))) {
            return {std::move(next), std::move(diag)};
        }
        guess = std::move(next);
    }
    throw NoConvergence(
        fmt::format("fixed-point iteration did not converge at step n={} within {} iterations "
                    "(last increment {:.3e}); reduce Δt (contraction needs Δt < R1(M_n), "
                    "M_n = {:.6g})",
                    pair.n, params.max_iter, diag.final_increment, diag.m_n),
        pair.n, params.max_iter, diag.final_increment);
}

std::pair<Field, StepDiagnostics> neumann_step(const StatePair& pair, const Grid& grid,
                                               const Nonlinearity& nl,
                                               const SolverParams& params) {
    return step(pair, grid, nl, params, Boundary::Neumann);
}

Field first_step(std::span<const double> u0, std::span<const double> v0, const Grid& grid,
                 const Nonlinearity& nl, Boundary bc) {
    assert(u0.size() == grid.nodes() && v0.size() == grid.nodes());
    const int K = grid.K();
    const double dx = grid.dx();
    const double dt = grid.dt();

    std::vector<double> acc(grid.nodes());
    for (int k = 1; k < K; ++k) {
        acc[k] = (u0[k + 1] - 2.0 * u0[k] + u0[k - 1]) / (dx * dx) - nl.derivative(u0[k]);
    }
    if (bc == Boundary::Dynamic) {
        acc[0] = (-3.0 * u0[0] + 4.0 * u0[1] - u0[2]) / (2.0 * dx);
        acc[K] = -(3.0 * u0[K] - 4.0 * u0[K - 1] + u0[K - 2]) / (2.0 * dx);
    } else {
        acc[0] = 2.0 * (u0[1] - u0[0]) / (dx * dx) - nl.derivative(u0[0]);
        acc[K] = 2.0 * (u0[K - 1] - u0[K]) / (dx * dx) - nl.derivative(u0[K]);
    }

    Field u1(grid.nodes());
    for (std::size_t k = 0; k < u1.size(); ++k) {
        u1[k] = u0[k] + dt * v0[k] + 0.5 * dt * dt * acc[k];
    }
    return u1;
}

}  // namespace dynwave
