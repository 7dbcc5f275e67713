#include "dynwave/mesh.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace dynwave {

Grid::Grid(double L, double T, int K, int N) : L_(L), T_(T), K_(K), N_(N), dx_(0.0), dt_(0.0) {
    if (!(L > 0.0) || !std::isfinite(L)) {
        throw std::invalid_argument(fmt::format("grid: L must be positive, got {}", L));
    }
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw std::invalid_argument(fmt::format("grid: T must be positive, got {}", T));
    }
    if (K < 2) {
        throw std::invalid_argument(fmt::format("grid: K must be at least 2, got {}", K));
    }
    if (N < 2) {
        throw std::invalid_argument(fmt::format("grid: N must be at least 2, got {}", N));
    }
    dx_ = L / K;
    dt_ = T / N;
}

std::vector<double> forward_diff(std::span<const double> f, const Grid& grid) {
    assert(f.size() == grid.nodes());
    const int K = grid.K();
    std::vector<double> out(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) {
        out[k] = (f[k + 1] - f[k]) / grid.dx();
    }
    return out;
}

std::vector<double> second_diff(std::span<const double> f, double ghost_left, double ghost_right,
                                const Grid& grid) {
    assert(f.size() == grid.nodes());
    const int K = grid.K();
    const double inv_dx2 = 1.0 / (grid.dx() * grid.dx());
    std::vector<double> out(grid.nodes());
    for (int k = 0; k <= K; ++k) {
        const double left = k == 0 ? ghost_left : f[k - 1];
        const double right = k == K ? ghost_right : f[k + 1];
        out[k] = (right - 2.0 * f[k] + left) * inv_dx2;
    }
    return out;
}

std::vector<double> second_diff(std::span<const double> f_ext, const Grid& grid) {
    assert(f_ext.size() == grid.nodes() + 2);
    return second_diff(f_ext.subspan(1, grid.nodes()), f_ext.front(), f_ext.back(), grid);
}

double trapz_sum(std::span<const double> f, const Grid& grid) {
    assert(f.size() == grid.nodes());
    const int K = grid.K();
    double s = 0.5 * f[0];
    for (int k = 1; k < K; ++k) {
        s += f[k];
    }
    s += 0.5 * f[K];
    return s * grid.dx();
}

double sbp_defect(std::span<const double> f_ext, std::span<const double> g, const Grid& grid) {
    assert(f_ext.size() == grid.nodes() + 1);
    assert(g.size() == grid.nodes());
    const int K = grid.K();
    const double dx = grid.dx();
    // f_ext[k + 1] holds f_k, f_ext[0] holds f_{-1}.
    auto f = [&](int k) { return f_ext[k + 1]; };

    double lhs_faces = 0.0;
    for (int k = 0; k < K; ++k) {
        lhs_faces += f(k) * (g[k + 1] - g[k]) / dx * dx;
    }
    std::vector<double> back(grid.nodes());
    for (int k = 0; k <= K; ++k) {
        back[k] = (f(k) - f(k - 1)) / dx * g[k];
    }
    const double lhs_nodes = trapz_sum(back, grid);
    const double boundary = 0.5 * (f(K) + f(K - 1)) * g[K] - 0.5 * (f(0) + f(-1)) * g[0];
    return lhs_faces + lhs_nodes - boundary;
}

double norm_l2(std::span<const double> f, const Grid& grid) {
    std::vector<double> sq(f.size());
    std::transform(f.begin(), f.end(), sq.begin(), [](double v) { return v * v; });
    return std::sqrt(trapz_sum(sq, grid));
}

double seminorm_d(std::span<const double> f, const Grid& grid) {
    double s = 0.0;
    for (double d : forward_diff(f, grid)) {
        s += d * d;
    }
    return std::sqrt(s * grid.dx());
}

double norm_h1(std::span<const double> f, const Grid& grid) {
    const double l2 = norm_l2(f, grid);
    const double d = seminorm_d(f, grid);
    return std::sqrt(l2 * l2 + d * d);
}

double norm_inf(std::span<const double> f) noexcept {
    double m = 0.0;
    for (double v : f) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

double sobolev_constant(double L) {
    if (!(L > 0.0)) {
        throw std::invalid_argument(fmt::format("sobolev_constant: L must be positive, got {}", L));
    }
    return std::sqrt((std::sqrt(1.0 + 4.0 * L * L) + 1.0) / (2.0 * L));
}

}  // namespace dynwave
