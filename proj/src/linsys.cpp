#include "dynwave/linsys.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <random>

#include <fmt/format.h>

namespace dynwave {

TridiagonalSystem assemble(const Grid& grid, Boundary bc) {
    const int K = grid.K();
    const double dt = grid.dt();
    const double dx = grid.dx();

    TridiagonalSystem sys;
    sys.alpha = dt * dt / (2.0 * dx * dx);
    sys.beta = 2.0 / dx;
    const double a = sys.alpha;
    const double corner = bc == Boundary::Dynamic ? sys.beta : 0.0;
    const double base = 1.0 + 0.5 * dt * dt + 2.0 * a;

    sys.diag.assign(grid.nodes(), base);
    sys.sub.assign(static_cast<std::size_t>(K), -a);
    sys.sup.assign(static_cast<std::size_t>(K), -a);
    sys.rhs.assign(grid.nodes(), 0.0);

    sys.diag.front() += corner;
    sys.diag.back() += corner;
    sys.sup.front() = -2.0 * a;
    sys.sub.back() = -2.0 * a;
    return sys;
}

Field solve(const TridiagonalSystem& sys) {
    const std::size_t n = sys.size();
    assert(sys.rhs.size() == n && sys.sub.size() + 1 == n && sys.sup.size() + 1 == n);

    std::vector<double> c(n, 0.0);
    Field x(n, 0.0);
    double pivot = sys.diag[0];
    for (std::size_t i = 0;; ++i) {
        if (std::abs(pivot) < 1e-300) {
            throw SingularSystemError(fmt::format("tridiagonal solve: zero pivot at row {}", i));
        }
        if (i + 1 == n) {
            x[i] = (sys.rhs[i] - (i > 0 ? sys.sub[i - 1] * x[i - 1] : 0.0)) / pivot;
            break;
        }
        c[i] = sys.sup[i] / pivot;
        x[i] = (sys.rhs[i] - (i > 0 ? sys.sub[i - 1] * x[i - 1] : 0.0)) / pivot;
        pivot = sys.diag[i + 1] - sys.sub[i] * c[i];
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        x[i] -= c[i] * x[i + 1];
    }
    return x;
}

std::vector<double> multiply(const TridiagonalSystem& sys, std::span<const double> x) {
    const std::size_t n = sys.size();
    assert(x.size() == n);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double v = sys.diag[i] * x[i];
        if (i > 0) v += sys.sub[i - 1] * x[i - 1];
        if (i + 1 < n) v += sys.sup[i] * x[i + 1];
        y[i] = v;
    }
    return y;
}

std::vector<double> apply_a(const Grid& grid, std::span<const double> x, Boundary bc) {
    const TridiagonalSystem sys = assemble(grid, bc);
    // A = (1 + dt^2/2) E - M
    const double shift = 1.0 + 0.5 * grid.dt() * grid.dt();
    std::vector<double> y = multiply(sys, x);
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] = shift * x[i] - y[i];
    }
    return y;
}

double trapz_inner(std::span<const double> u, std::span<const double> v, const Grid& grid) {
    assert(u.size() == v.size() && u.size() == grid.nodes());
    std::vector<double> prod(u.size());
    std::transform(u.begin(), u.end(), v.begin(), prod.begin(), std::multiplies<>());
    return trapz_sum(prod, grid);
}

DefinitenessReport definiteness_check(const Grid& grid, int trials, std::uint64_t seed) {
    DefinitenessReport report;
    report.max_quadratic_form = -std::numeric_limits<double>::infinity();
    report.min_margin = std::numeric_limits<double>::infinity();

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const TridiagonalSystem sys = assemble(grid);
    const double shift = 1.0 + 0.5 * grid.dt() * grid.dt();

    Field u(grid.nodes());
    for (int t = 0; t < trials; ++t) {
        if (t == 0) {
            std::fill(u.begin(), u.end(), 1.0);
        } else {
            std::generate(u.begin(), u.end(), [&] { return dist(rng); });
        }
        const double uu = trapz_inner(u, u, grid);
        if (uu == 0.0) {
            continue;
        }
        const double form = trapz_inner(apply_a(grid, u), u, grid);
        const double margin = trapz_inner(multiply(sys, u), u, grid) - shift * uu;
        report.max_quadratic_form = std::max(report.max_quadratic_form, form / uu);
        report.min_margin = std::min(report.min_margin, margin);
        ++report.trials;
    }
    report.negative_definite = report.max_quadratic_form < 0.0;
    report.margin_ok = report.min_margin >= 0.0;
    return report;
}

}  // namespace dynwave
