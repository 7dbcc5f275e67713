#include "dynwave/harness.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "dynwave/csv_io.hpp"
#include "dynwave/general.hpp"
#include "dynwave/quotients.hpp"

namespace dynwave {

std::vector<PresetInfo> preset_catalog() {
    return {
        {"case1", "u0(x) = exp(-(x - L/2)^2)", "v0(x) = 0"},
        {"case2", "u0(x) = exp(-4(x - L/3)^2) + exp(-4(x - 2L/3)^2)",
         "v0(x) = -4(x - L/3) exp(-4(x - L/3)^2)"},
        {"case3", "u0(x) = 5 exp(-4(x - L/3)^2) + exp(-4(x - 2L/3)^2)",
         "v0(x) = -4(x - L/3) exp(-4(x - L/3)^2)"},
    };
}

InitialData preset(std::string_view name, const Grid& grid) {
    const double L = grid.L();
    auto bump = [](double x, double c, double w) { return std::exp(-w * (x - c) * (x - c)); };

    InitialData data{grid.zeros(), grid.zeros()};
    for (int k = 0; k <= grid.K(); ++k) {
        const double x = grid.x(k);
        if (name == "case1") {
            data.u0[k] = bump(x, L / 2.0, 1.0);
        } else if (name == "case2" || name == "case3") {
            const double amp = name == "case2" ? 1.0 : 5.0;
            data.u0[k] = amp * bump(x, L / 3.0, 4.0) + bump(x, 2.0 * L / 3.0, 4.0);
            data.v0[k] = -4.0 * (x - L / 3.0) * bump(x, L / 3.0, 4.0);
        } else {
            throw std::invalid_argument(fmt::format("unknown preset '{}'", name));
        }
    }
    return data;
}

double Trajectory::drift_at(std::size_t i) const {
    return std::abs(energy.at(i).J - initial_energy) / std::max(1.0, std::abs(initial_energy));
}

Trajectory run(const ExperimentConfig& config) {
    const Grid grid = config.grid();
    if (!config.initial_csv.empty()) {
        return run(config, read_initial_csv(config.initial_csv, grid));
    }
    return run(config, preset(config.preset, grid));
}

Trajectory run(const ExperimentConfig& config, const InitialData& initial) {
    const Grid grid = config.grid();
    if (initial.u0.size() != grid.nodes() || initial.v0.size() != grid.nodes()) {
        throw std::invalid_argument("initial data must have K+1 entries");
    }
    if (config.snapshot_stride < 1) {
        throw std::invalid_argument("snapshot_stride must be at least 1");
    }
    const bool general = config.kind == ProblemKind::General;
    if (general && config.bc != Boundary::Dynamic) {
        throw std::invalid_argument("the general scheme supports the dynamic closure only");
    }

    const Nonlinearity nl = nonlinearity_by_name(config.nonlinearity);
    std::optional<GeneralProblem> prob;
    if (general) {
        prob.emplace(GeneralProblem{flux_by_name(config.flux), nl, grid});
    }
    auto energy = [&](const Field& next, const Field& curr) {
        return general ? general_energy(next, curr, *prob)
                       : discrete_energy(next, curr, grid, nl, config.bc);
    };

    Trajectory traj{grid, {}, {}, {}, 0.0, 0.0};
    const int N = grid.N();
    const int stride = config.snapshot_stride;
    auto record = [&](int n, const Field& u) {
        if (n % stride == 0 || n == N) {
            traj.snapshots.push_back({n, u});
        }
    };

    StatePair pair;
    pair.prev = initial.u0;
    pair.curr = general ? general_first_step(initial.u0, initial.v0, *prob)
                        : first_step(initial.u0, initial.v0, grid, nl, config.bc);
    pair.n = 1;
    record(0, pair.prev);
    record(1, pair.curr);

    traj.initial_energy = energy(pair.curr, pair.prev);
    double last_energy = traj.initial_energy;
    traj.energy.reserve(static_cast<std::size_t>(N));
    traj.diagnostics.reserve(static_cast<std::size_t>(N));

    for (int n = 1; n <= N - 1; ++n) {
        pair.n = n;
        auto [next, diag] = general ? general_step(pair, *prob, config.solver)
                                    : step(pair, grid, nl, config.solver, config.bc);
        const double J = energy(next, pair.curr);
        traj.energy.push_back({n, grid.t(n), J, (J - last_energy) / grid.dt()});
        traj.diagnostics.push_back(std::move(diag));
        last_energy = J;

        pair.prev = std::move(pair.curr);
        pair.curr = std::move(next);
        record(n + 1, pair.curr);
    }

    for (std::size_t i = 0; i < traj.energy.size(); ++i) {
        traj.drift = std::max(traj.drift, traj.drift_at(i));
    }
    return traj;
}

double energy_drift(std::span<const EnergySample> series) {
    if (series.empty()) {
        throw std::invalid_argument("energy_drift: empty series");
    }
    const double ref = series.front().J;
    double drift = 0.0;
    for (const auto& s : series) {
        drift = std::max(drift, std::abs(s.J - ref));
    }
    return drift / std::max(1.0, std::abs(ref));
}

TrajectoryError trajectory_error(const Trajectory& coarse, const Trajectory& reference) {
    const Grid& cg = coarse.grid;
    const Grid& fg = reference.grid;
    if (fg.K() % cg.K() != 0 || fg.N() % cg.N() != 0 || fg.K() / cg.K() != fg.N() / cg.N()) {
        throw std::invalid_argument("trajectory_error: reference does not refine the coarse grid");
    }
    const int ratio = fg.K() / cg.K();

    // Reference snapshots by time index.
    std::vector<const Field*> ref_at(static_cast<std::size_t>(fg.N()) + 1, nullptr);
    for (const auto& s : reference.snapshots) {
        ref_at[s.n] = &s.u;
    }

    std::vector<const Field*> coarse_at(static_cast<std::size_t>(cg.N()) + 1, nullptr);
    for (const auto& s : coarse.snapshots) {
        coarse_at[s.n] = &s.u;
    }

    auto error_at = [&](int n) {
        const Field* c = coarse_at[n];
        const Field* f = ref_at[static_cast<std::size_t>(n) * ratio];
        if (c == nullptr || f == nullptr) {
            throw std::invalid_argument(
                fmt::format("trajectory_error: missing snapshot for coarse step {}", n));
        }
        Field e(cg.nodes());
        for (int k = 0; k <= cg.K(); ++k) {
            e[k] = (*c)[k] - (*f)[static_cast<std::size_t>(k) * ratio];
        }
        return e;
    };

    TrajectoryError out;
    Field e_prev = error_at(0);
    out.l2 = norm_l2(e_prev, cg);
    out.h1 = norm_h1(e_prev, cg);
    const int K = cg.K();
    for (int n = 1; n <= cg.N(); ++n) {
        Field e = error_at(n);
        Field de(e.size());
        for (std::size_t k = 0; k < e.size(); ++k) {
            de[k] = (e[k] - e_prev[k]) / cg.dt();
        }
        const double l2 = norm_l2(e, cg);
        const double h1 = norm_h1(e, cg);
        out.l2 = std::max(out.l2, l2);
        out.h1 = std::max(out.h1, h1);
        out.composite =
            std::max(out.composite, norm_l2(de, cg) + h1 + std::abs(de[0]) + std::abs(de[K]));
        e_prev = std::move(e);
    }
    return out;
}

std::vector<ConvergenceRow> convergence_study(const ExperimentConfig& config, int levels,
                                              int reference_offset) {
    if (levels < 3) {
        throw std::invalid_argument("convergence_study: need at least 3 levels");
    }
    if (reference_offset < 0) {
        throw std::invalid_argument("convergence_study: reference_offset must be >= 0");
    }
    auto level_config = [&](int level, int stride) {
        ExperimentConfig c = config;
        c.K = config.K << level;
        c.N = config.N << level;
        c.snapshot_stride = stride;
        return c;
    };

    const int ref_level = levels - 1 + reference_offset;
    // The finest reported level needs every reference step at this stride.
    const int ref_stride = 1 << reference_offset;

    auto reference_future = std::async(std::launch::async, [&] {
        return run(level_config(ref_level, ref_stride));
    });
    std::vector<std::future<Trajectory>> futures;
    for (int level = 0; level < levels; ++level) {
        futures.push_back(std::async(std::launch::async, [&, level] {
            return run(level_config(level, 1));
        }));
    }

    const Trajectory reference = reference_future.get();
    std::vector<ConvergenceRow> rows;
    for (int level = 0; level < levels; ++level) {
        const Trajectory coarse = futures[level].get();
        const TrajectoryError err = trajectory_error(coarse, reference);
        ConvergenceRow row;
        row.level = level;
        row.K = coarse.grid.K();
        row.N = coarse.grid.N();
        row.dx = coarse.grid.dx();
        row.dt = coarse.grid.dt();
        row.err_l2 = err.l2;
        row.err_h1 = err.h1;
        row.err_composite = err.composite;
        row.observed_order = rows.empty()
                                 ? std::numeric_limits<double>::quiet_NaN()
                                 : std::log2(rows.back().err_composite / err.composite);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace dynwave
