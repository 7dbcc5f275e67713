#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dynwave {

/// Relative threshold below which quotients switch to their derivative branch.
inline constexpr double kSwitchEps = 1e-8;

using ScalarFn = std::function<double(double)>;
using PairFn = std::function<double(double, double)>;

/// A potential F(u) entering the energy through F(a, b) = (F(a) + F(b)) / 2.
struct Nonlinearity {
    std::string name;
    ScalarFn potential;
    ScalarFn derivative;
    ScalarFn second_derivative;
    /// Cancellation-free closed form of (F(a) - F(c)) / (a - c), if known.
    PairFn stable_quotient;
    std::string formula;
};

/// Flux density X(a, b) of the general scheme, evaluated on face gradients.
/// Catalog entries are factored, X(a, b) = (X~(a) + X~(b)) / 2, so the
/// four-point quotient along the time diagonal collapses to `stable_quotient`
/// of the outer gradients.
struct FluxDensity {
    std::string name;
    PairFn density;
    PairFn stable_quotient;
    std::string formula;
};

/// dF/d(a, c): the two-point difference quotient of the potential.
double two_point_quotient(const Nonlinearity& nl, double a, double c);

/// Four-point quotient of f between (a, b) and (c, d), measured along
/// loc(a, b) = (a + b) / 2. `diagonal_derivative(x)` must return d f(x, x)/dx
/// and is required when the two locations coincide.
double four_point_quotient(const PairFn& f, const ScalarFn& diagonal_derivative, double a,
                           double b, double c, double d);

/// Averaged second-order difference quotient
///   F''(xi, xit; eta, etat) = d/d(xi, xit) [dF/d(., eta) + dF/d(., etat)].
/// Without a closed form, the degenerate branch differentiates the bracket
/// numerically with a centered step eps^(1/3) (1 + |xi|).
double averaged_second_quotient(const Nonlinearity& nl, double xi, double xit, double eta,
                                double etat);

/// LHS - RHS of
///   dF/d(xi, eta) - dF/d(xit, etat)
///     = 1/2 F''(xi, xit; eta, etat) (xi - xit) + 1/2 F''(eta, etat; xi, xit) (eta - etat).
double quotient_decomposition_defect(const Nonlinearity& nl, double xi, double xit, double eta,
                                     double etat);

/// Vector form {dF/d(U_k, V_k)}.
std::vector<double> quotient_vector(const Nonlinearity& nl, std::span<const double> u,
                                    std::span<const double> v);

/// max_{|xi| <= rho} |fn(xi)| sampled on 1001 equispaced points.
double sampled_abs_max(const ScalarFn& fn, double rho);

// Catalog ----------------------------------------------------------------------

Nonlinearity cubic();         ///< F(u) = u^4 / 4
Nonlinearity sine_gordon();   ///< F(u) = 1 - cos u
Nonlinearity klein_gordon();  ///< F(u) = u^4 / 4 + u^2 / 2
Nonlinearity zero_potential();
Nonlinearity quadratic();     ///< F(u) = u^2 / 2

FluxDensity string_flux();     ///< X(a, b) = (sqrt(1 + a^2) + sqrt(1 + b^2)) / 2
FluxDensity quadratic_flux();  ///< X(a, b) = (a^2 + b^2) / 4, the semilinear case

double sinc(double x);

/// Throws std::invalid_argument for unknown names.
Nonlinearity nonlinearity_by_name(std::string_view name);
FluxDensity flux_by_name(std::string_view name);
std::vector<std::string> nonlinearity_names();
std::vector<std::string> flux_names();

}  // namespace dynwave
