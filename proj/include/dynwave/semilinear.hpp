#pragma once

// Energy-conserving scheme for u_tt = u_xx - F'(u) with dynamic boundary
// conditions u_tt(t,0) - u_x(t,0) = 0 and u_tt(t,L) + u_x(t,L) = 0.
//
// With W = (U^{n+1} + U^{n-1}) / 2 the scheme reads, at every node k = 0..K,
//
//   (U^{n+1} - 2 U^n + U^{n-1}) / dt^2 = d2x W_k - dF/d(U^{n+1}_k, U^{n-1}_k),
//
// closed at both ends by the centered boundary equations
//
//   d2t U_0 - (W_1 - W_{-1}) / (2 dx) = 0,   d2t U_K + (W_{K+1} - W_{K-1}) / (2 dx) = 0.
//
// The ghost averages W_{-1}, W_{K+1} are eliminated through the boundary
// equations, which leaves a tridiagonal system on the K+1 stored nodes. The
// implicit level is found with the fixed-point map
//
//   Phi(U): solve ((1 + dt^2/2) E - A) U~ = G(U),
//
// whose right-hand side carries dt^2/2 U - dt^2 dF/d(U, U^{n-1}); its fixed
// point solves the scheme, and for small enough dt it is a contraction.

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dynwave/linsys.hpp"
#include "dynwave/mesh.hpp"
#include "dynwave/quotients.hpp"

namespace dynwave {

struct SolverParams {
    /// Stop when ||U_{j+1} - U_j||_2 <= tol (1 + ||U_j||_2).
    double tol = 1e-13;
    int max_iter = 100;
    /// Report the dt < 1/C_contr(M_n) contraction diagnostic on every step.
    bool check_radius = false;
    /// Relaxation factor of the general-scheme iteration (semilinear ignores it).
    double damping = 1.0;
    /// Automatic halvings of `damping` when the increment grows.
    int max_halvings = 4;
};

struct StepDiagnostics {
    int iterations = 0;
    double final_increment = 0.0;
    /// X-norm of the incoming pair (U^{n-1}, U^n - U^{n-1}).
    double m_n = 0.0;
    std::optional<bool> radius_ok;
    /// 1 / C_contr(M_n) and R1(M_n); NaN unless check_radius is set.
    double contraction_limit = 0.0;
    double existence_radius = 0.0;
    /// ||U_{j+1} - U_j||_2 for every iterate.
    std::vector<double> increments;
};

struct EnergySample {
    int n = 0;
    double t = 0.0;
    double J = 0.0;      ///< J_d(U^{n+1}, U^n)
    double delta = 0.0;  ///< (J_n - J_{n-1}) / dt
};

/// The fixed-point iteration hit max_iter or produced non-finite values.
class NoConvergence : public std::runtime_error {
public:
    NoConvergence(const std::string& what, int step, int iterations, double increment)
        : std::runtime_error(what), step_(step), iterations_(iterations), increment_(increment) {}

    int step() const noexcept { return step_; }
    int iterations() const noexcept { return iterations_; }
    double increment() const noexcept { return increment_; }

private:
    int step_;
    int iterations_;
    double increment_;
};

/// sqrt(||U||_H1^2 + ||V||_2^2 / dt^2 + (V_0^2 + V_K^2) / dt^2) with
/// U = pair.prev and V = pair.curr - pair.prev.
double xnorm(const StatePair& pair, const Grid& grid);

/// Discrete energy J_d(next, curr): kinetic + averaged gradient + potential
/// sums, plus the two boundary kinetic terms under the dynamic closure.
double discrete_energy(std::span<const double> next, std::span<const double> curr,
                       const Grid& grid, const Nonlinearity& nl,
                       Boundary bc = Boundary::Dynamic);

/// The same energy assembled from the face densities G+_k (k = 0..K-1) and
/// G-_k (k = 1..K). Agrees with discrete_energy up to rounding.
double discrete_energy_density_form(std::span<const double> next, std::span<const double> curr,
                                    const Grid& grid, const Nonlinearity& nl);

/// Averaged ghost values W_{-1}, W_{K+1} of W = (next + prev) / 2 implied by
/// the two dynamic boundary equations.
std::pair<double, double> ghost_average(std::span<const double> next, const StatePair& pair,
                                        const Grid& grid, Boundary bc = Boundary::Dynamic);

/// Defect of the scheme at every node with the ghosts eliminated; zero at
/// the exact solution of the implicit step.
std::vector<double> scheme_residual(std::span<const double> next, const StatePair& pair,
                                    const Grid& grid, const Nonlinearity& nl,
                                    Boundary bc = Boundary::Dynamic);

/// The guess-independent part of G: everything the fixed-point right-hand
/// side takes from U^{n-1} and U^n.
std::vector<double> base_rhs(const StatePair& pair, const Grid& grid,
                             Boundary bc = Boundary::Dynamic);

/// One application of the fixed-point map.
Field phi_apply(std::span<const double> guess, const StatePair& pair, const Grid& grid,
                const Nonlinearity& nl, Boundary bc = Boundary::Dynamic);

/// Advances the pair by one level, iterating Phi from U^n.
/// Throws NoConvergence when the iteration fails.
std::pair<Field, StepDiagnostics> step(const StatePair& pair, const Grid& grid,
                                       const Nonlinearity& nl, const SolverParams& params,
                                       Boundary bc = Boundary::Dynamic);

/// Same interior scheme under the Neumann closure W_{-1} = W_1, W_{K+1} = W_{K-1}.
std::pair<Field, StepDiagnostics> neumann_step(const StatePair& pair, const Grid& grid,
                                               const Nonlinearity& nl,
                                               const SolverParams& params);

/// Taylor start U^1 = u0 + dt v0 + dt^2/2 a. Interior accelerations are
/// d2x u0 - F'(u0); under the dynamic closure the end accelerations are the
/// one-sided second-order slopes +u_x(0) and -u_x(L).
Field first_step(std::span<const double> u0, std::span<const double> v0, const Grid& grid,
                 const Nonlinearity& nl, Boundary bc = Boundary::Dynamic);

/// Contraction and existence-radius constants for a pair of X-norm m_n.
struct RadiusConstants {
    double c_into = 0.0;
    double c_contr = 0.0;
    double r1 = 0.0;
};
RadiusConstants radius_constants(const Nonlinearity& nl, double m_n, double L);

}  // namespace dynwave
