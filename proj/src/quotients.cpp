#include "dynwave/quotients.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

namespace dynwave {

namespace {

bool nearly_equal(double a, double c) {
    return std::abs(a - c) <= kSwitchEps * (1.0 + std::abs(a) + std::abs(c));
}

// dF/d(a, c) through the generic ratio, ignoring any closed form.
double generic_quotient(const Nonlinearity& nl, double a, double c) {
    if (nearly_equal(a, c)) {
        return nl.derivative(0.5 * (a + c));
    }
    return (nl.potential(a) - nl.potential(c)) / (a - c);
}

}  // namespace

double two_point_quotient(const Nonlinearity& nl, double a, double c) {
    if (nl.stable_quotient) {
        return nl.stable_quotient(a, c);
    }
    return generic_quotient(nl, a, c);
}

double four_point_quotient(const PairFn& f, const ScalarFn& diagonal_derivative, double a,
                           double b, double c, double d) {
    const double loc_ab = 0.5 * (a + b);
    const double loc_cd = 0.5 * (c + d);
    if (nearly_equal(loc_ab, loc_cd)) {
        if (!diagonal_derivative) {
            throw std::logic_error("four_point_quotient: degenerate branch needs d f(x,x)/dx");
        }
        return diagonal_derivative(loc_ab);
    }
    return (f(a, b) - f(c, d)) / (loc_ab - loc_cd);
}

double averaged_second_quotient(const Nonlinearity& nl, double xi, double xit, double eta,
                                double etat) {
    auto bracket = [&](double x) {
        return two_point_quotient(nl, x, eta) + two_point_quotient(nl, x, etat);
    };
    if (!nearly_equal(xi, xit)) {
        return (bracket(xi) - bracket(xit)) / (xi - xit);
    }
    const double x = 0.5 * (xi + xit);
    const double h = std::cbrt(std::numeric_limits<double>::epsilon()) * (1.0 + std::abs(x));
    return (bracket(x + h) - bracket(x - h)) / (2.0 * h);
}

double quotient_decomposition_defect(const Nonlinearity& nl, double xi, double xit, double eta,
                                     double etat) {
    const double lhs = two_point_quotient(nl, xi, eta) - two_point_quotient(nl, xit, etat);
    const double rhs = 0.5 * averaged_second_quotient(nl, xi, xit, eta, etat) * (xi - xit) +
                       0.5 * averaged_second_quotient(nl, eta, etat, xi, xit) * (eta - etat);
    return lhs - rhs;
}

std::vector<double> quotient_vector(const Nonlinearity& nl, std::span<const double> u,
                                    std::span<const double> v) {
    assert(u.size() == v.size());
    std::vector<double> out(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) {
        out[k] = two_point_quotient(nl, u[k], v[k]);
    }
    return out;
}

double sampled_abs_max(const ScalarFn& fn, double rho) {
    constexpr int kSamples = 1000;
    double m = 0.0;
    for (int i = 0; i <= kSamples; ++i) {
        const double xi = -rho + 2.0 * rho * i / kSamples;
        m = std::max(m, std::abs(fn(xi)));
    }
    return m;
}

double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

Nonlinearity cubic() {
    return {
        "cubic",
        [](double u) { return 0.25 * u * u * u * u; },
        [](double u) { return u * u * u; },
        [](double u) { return 3.0 * u * u; },
        [](double a, double c) { return 0.25 * (a * a * a + a * a * c + a * c * c + c * c * c); },
        "F(u) = u^4/4, F'(u) = u^3",
    };
}

Nonlinearity sine_gordon() {
    return {
        "sine_gordon",
        [](double u) { return 1.0 - std::cos(u); },
        [](double u) { return std::sin(u); },
        [](double u) { return std::cos(u); },
        [](double a, double c) { return sinc(0.5 * (a - c)) * std::sin(0.5 * (a + c)); },
        "F(u) = 1 - cos(u), F'(u) = sin(u)",
    };
}

Nonlinearity klein_gordon() {
    return {
        "klein_gordon",
        [](double u) { return 0.25 * u * u * u * u + 0.5 * u * u; },
        [](double u) { return u * u * u + u; },
        [](double u) { return 3.0 * u * u + 1.0; },
        [](double a, double c) {
            return 0.25 * (a * a * a + a * a * c + a * c * c + c * c * c) + 0.5 * (a + c);
        },
        "F(u) = u^4/4 + u^2/2, F'(u) = u^3 + u",
    };
}

Nonlinearity zero_potential() {
    return {
        "zero",
        [](double) { return 0.0; },
        [](double) { return 0.0; },
        [](double) { return 0.0; },
        [](double, double) { return 0.0; },
        "F(u) = 0 (linear wave)",
    };
}

Nonlinearity quadratic() {
    return {
        "quadratic",
        [](double u) { return 0.5 * u * u; },
        [](double u) { return u; },
        [](double) { return 1.0; },
        [](double a, double c) { return 0.5 * (a + c); },
        "F(u) = u^2/2, F'(u) = u",
    };
}

FluxDensity string_flux() {
    return {
        "string",
        [](double a, double b) { return 0.5 * (std::sqrt(1.0 + a * a) + std::sqrt(1.0 + b * b)); },
        [](double a, double c) { return (a + c) / (std::sqrt(1.0 + a * a) + std::sqrt(1.0 + c * c)); },
        "X(a,b) = (sqrt(1+a^2) + sqrt(1+b^2))/2",
    };
}

FluxDensity quadratic_flux() {
    return {
        "quadratic",
        [](double a, double b) { return 0.25 * (a * a + b * b); },
        [](double a, double c) { return 0.5 * (a + c); },
        "X(a,b) = (a^2 + b^2)/4",
    };
}

Nonlinearity nonlinearity_by_name(std::string_view name) {
    if (name == "cubic") return cubic();
    if (name == "sine_gordon") return sine_gordon();
    if (name == "klein_gordon") return klein_gordon();
    if (name == "zero") return zero_potential();
    if (name == "quadratic") return quadratic();
    throw std::invalid_argument(fmt::format("unknown nonlinearity '{}'", name));
}

FluxDensity flux_by_name(std::string_view name) {
    if (name == "string") return string_flux();
    if (name == "quadratic") return quadratic_flux();
    throw std::invalid_argument(fmt::format("unknown flux density '{}'", name));
}

std::vector<std::string> nonlinearity_names() {
    return {"cubic", "sine_gordon", "klein_gordon", "zero", "quadratic"};
}

std::vector<std::string> flux_names() { return {"string", "quadratic"}; }

}  // namespace dynwave
