#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "dynwave/mesh.hpp"

namespace dynwave {

/// Closure used at the two end nodes.
enum class Boundary {
    Dynamic,  ///< u_tt -/+ u_x = 0 at x = 0 / x = L
    Neumann,  ///< homogeneous discrete Neumann, comparison runs only
};

/// Three-band storage of ((1 + dt^2/2) E - A) with its right-hand side.
///
/// A is the second-difference matrix left after eliminating the ghost nodes:
/// interior rows (alpha, -2 alpha, alpha), first and last rows
/// (-2 alpha - beta, 2 alpha) and (2 alpha, -2 alpha - beta), where
/// alpha = dt^2 / (2 dx^2) and beta = 2 / dx. Under the Neumann closure
/// beta drops out of the corner entries.
struct TridiagonalSystem {
    std::vector<double> sub;   ///< length K, sub[k] couples row k+1 to column k
    std::vector<double> diag;  ///< length K+1
    std::vector<double> sup;   ///< length K, sup[k] couples row k to column k+1
    std::vector<double> rhs;   ///< length K+1
    double alpha = 0.0;
    double beta = 0.0;

    std::size_t size() const noexcept { return diag.size(); }
};

class SingularSystemError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Coefficients for `grid`, right-hand side zeroed.
TridiagonalSystem assemble(const Grid& grid, Boundary bc = Boundary::Dynamic);

/// Thomas algorithm. Throws SingularSystemError on a pivot below 1e-300.
Field solve(const TridiagonalSystem& sys);

/// y = M x for the stored bands.
std::vector<double> multiply(const TridiagonalSystem& sys, std::span<const double> x);

/// y = A x with A the eliminated second-difference matrix.
std::vector<double> apply_a(const Grid& grid, std::span<const double> x,
                            Boundary bc = Boundary::Dynamic);

/// Trapezoidal inner product sum'' u_k v_k dx.
double trapz_inner(std::span<const double> u, std::span<const double> v, const Grid& grid);

struct DefinitenessReport {
    int trials = 0;
    double max_quadratic_form = 0.0;  ///< max over trials of <AU, U>'' / <U, U>''
    double min_margin = 0.0;          ///< min over trials of <MU, U>'' - (1 + dt^2/2) <U, U>''
    bool negative_definite = false;
    bool margin_ok = false;
};

/// Probes the sign of <AU, U>'' on `trials` random nonzero vectors; the first
/// trial is always U = 1.
DefinitenessReport definiteness_check(const Grid& grid, int trials, std::uint64_t seed = 1);

}  // namespace dynwave
