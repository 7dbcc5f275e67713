#pragma once

// CSV files written by the CLI and read back by tests and post-processing.
// Numbers are printed with 17 significant digits so every binary64 value
// round-trips exactly; fields are comma separated with LF line endings.
//
//   snapshots.csv    n,t,k,x,u        one row per recorded (n, k), sorted
//   energy.csv       n,t,J,delta,drift   n = 1..N-1
//   diagnostics.csv  n,iterations,final_increment,M_n,radius_ok
//   convergence.csv  level,K,N,dx,dt,err_l2,err_h1,err_composite,observed_order
//   initial data     x,u0,v0          exactly K+1 rows

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dynwave/harness.hpp"

namespace dynwave {

class CsvError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// 17 significant digits, locale independent.
std::string format_double(double v);

void write_snapshots(const std::filesystem::path& path, const Trajectory& traj);
void write_energy(const std::filesystem::path& path, const Trajectory& traj);
void write_diagnostics(const std::filesystem::path& path, const Trajectory& traj);
void write_convergence(const std::filesystem::path& path, std::span<const ConvergenceRow> rows);

struct SnapshotRow {
    int n = 0;
    double t = 0.0;
    int k = 0;
    double x = 0.0;
    double u = 0.0;
};

std::vector<SnapshotRow> read_snapshots(const std::filesystem::path& path);

/// Reads `x,u0,v0` initial data. Requires exactly K+1 rows whose x matches
/// the grid nodes to 1e-12 relative.
InitialData read_initial_csv(const std::filesystem::path& path, const Grid& grid);

}  // namespace dynwave
