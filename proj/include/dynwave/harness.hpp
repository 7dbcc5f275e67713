#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dynwave/linsys.hpp"
#include "dynwave/mesh.hpp"
#include "dynwave/semilinear.hpp"

namespace dynwave {

enum class ProblemKind { Semilinear, General };

struct ExperimentConfig {
    double L = 6.0;
    double T = 5.0;
    int K = 100;
    int N = 2000;
    ProblemKind kind = ProblemKind::Semilinear;
    std::string nonlinearity = "cubic";
    std::string flux = "string";  ///< general problems only
    Boundary bc = Boundary::Dynamic;
    std::string preset = "case1";
    std::string initial_csv;  ///< overrides `preset` when set
    SolverParams solver;
    std::string outdir = ".";
    int snapshot_stride = 10;

    Grid grid() const { return Grid(L, T, K, N); }
};

struct InitialData {
    Field u0;
    Field v0;
};

struct PresetInfo {
    std::string name;
    std::string u0;
    std::string v0;
};

/// The three initial data sets of the reference experiments.
std::vector<PresetInfo> preset_catalog();

/// Samples a preset on the grid nodes. Throws std::invalid_argument for
/// unknown names.
InitialData preset(std::string_view name, const Grid& grid);

struct Snapshot {
    int n = 0;
    Field u;
};

struct Trajectory {
    Grid grid;
    std::vector<Snapshot> snapshots;
    /// Samples n = 1..N-1, J_n = J_d(U^{n+1}, U^n).
    std::vector<EnergySample> energy;
    /// diagnostics[i] belongs to the step producing U^{i+2} (n = i + 1).
    std::vector<StepDiagnostics> diagnostics;
    /// J_d(U^1, U^0).
    double initial_energy = 0.0;
    /// max_n |J_n - J_0| / max(1, |J_0|) over the whole run.
    double drift = 0.0;

    /// Relative drift of sample i against J_0.
    double drift_at(std::size_t i) const;
};

/// Runs the configured experiment from its preset or CSV initial data.
/// Propagates NoConvergence with the failing step index.
Trajectory run(const ExperimentConfig& config);

/// Runs the configured experiment from explicit initial data.
Trajectory run(const ExperimentConfig& config, const InitialData& initial);

/// max_n |J_n - J_first| / max(1, |J_first|). Throws on an empty series.
double energy_drift(std::span<const EnergySample> series);

struct ConvergenceRow {
    int level = 0;
    int K = 0;
    int N = 0;
    double dx = 0.0;
    double dt = 0.0;
    double err_l2 = 0.0;
    double err_h1 = 0.0;
    double err_composite = 0.0;
    double observed_order = 0.0;  ///< NaN on the first row
};

struct TrajectoryError {
    double l2 = 0.0;         ///< max_n ||e^n||_2
    double h1 = 0.0;         ///< max_n ||e^n||_H1
    double composite = 0.0;  ///< max_n ||d-t e||_2 + ||e||_H1 + |d-t e_0| + |d-t e_K|
};

/// Error of `coarse` against `reference`, read off the reference at every
/// coarse node and step. The reference grid must refine the coarse one by
/// the same power of two in space and time, and its snapshots must cover
/// every coarse time level.
TrajectoryError trajectory_error(const Trajectory& coarse, const Trajectory& reference);

/// Self-convergence study on levels (K 2^l, N 2^l), l = 0..levels-1, each
/// measured against a reference run `reference_offset` levels finer than the
/// finest reported level. Levels run concurrently.
std::vector<ConvergenceRow> convergence_study(const ExperimentConfig& config, int levels,
                                              int reference_offset = 3);

}  // namespace dynwave
