#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "dynwave/mesh.hpp"
#include "dynwave/quotients.hpp"
#include "oracle.hpp"

using namespace dynwave;
using Catch::Approx;

namespace {

std::vector<Nonlinearity> catalog() {
    std::vector<Nonlinearity> out;
    for (const auto& name : nonlinearity_names()) out.push_back(nonlinearity_by_name(name));
    return out;
}

// Min and max of fn on [lo, hi], sampled densely.
std::pair<double, double> sampled_range(const ScalarFn& fn, double lo, double hi) {
    double mn = fn(lo);
    double mx = mn;
    const int n = 4000;
    for (int i = 0; i <= n; ++i) {
        const double v = fn(lo + (hi - lo) * i / n);
        mn = std::min(mn, v);
        mx = std::max(mx, v);
    }
    return {mn, mx};
}

}  // namespace

TEST_CASE("two-point quotient worked examples", "[quotients]") {
    CHECK(two_point_quotient(cubic(), 2.0, 0.0) == Approx(2.0));
    CHECK(two_point_quotient(sine_gordon(), std::numbers::pi, 0.0) ==
          Approx(2.0 / std::numbers::pi).epsilon(1e-12));
    CHECK(two_point_quotient(sine_gordon(), std::numbers::pi, 0.0) ==
          Approx(0.636620).epsilon(1e-6));

    for (const auto& nl : catalog()) {
        for (double a : {-1.3, 0.0, 0.7, 2.5}) {
            CHECK(two_point_quotient(nl, a, a) == Approx(nl.derivative(a)).margin(1e-14));
        }
    }
}

TEST_CASE("closed forms agree with the generic quotient", "[quotients]") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (const auto& nl : catalog()) {
        Nonlinearity generic = nl;
        generic.stable_quotient = nullptr;
        for (int i = 0; i < 200; ++i) {
            const double a = dist(rng);
            const double c = dist(rng);
            const double stable = two_point_quotient(nl, a, c);
            const double plain = two_point_quotient(generic, a, c);
            const double scale = 1.0 + std::abs(nl.potential(a)) + std::abs(nl.potential(c));
            INFO(nl.name << " a=" << a << " c=" << c);
            CHECK(std::abs(stable - plain) <= 1e-12 * scale / std::max(1e-3, std::abs(a - c)));
            CHECK(two_point_quotient(nl, a, c) == Approx(two_point_quotient(nl, c, a)));
        }
        // Tiny separations fall back on the derivative branch.
        CHECK(two_point_quotient(generic, 1.0, 1.0 + 1e-12) == Approx(nl.derivative(1.0)).margin(1e-10));
    }
}

TEST_CASE("sinc", "[quotients]") {
    CHECK(sinc(0.0) == 1.0);
    CHECK(sinc(1e-5) == Approx(1.0 - 1e-10 / 6.0).epsilon(1e-15));
    CHECK(sinc(std::numbers::pi / 2) == Approx(2.0 / std::numbers::pi));
    CHECK(sinc(-0.3) == Approx(std::sin(0.3) / 0.3));
}

TEST_CASE("mean-value bound", "[quotients]") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (const auto& nl : catalog()) {
        for (int i = 0; i < 200; ++i) {
            const double a = dist(rng);
            const double c = dist(rng);
            const auto [lo, hi] = sampled_range(nl.derivative, std::min(a, c), std::max(a, c));
            const double q = two_point_quotient(nl, a, c);
            const double slack = 1e-10 * (1.0 + std::abs(q));
            INFO(nl.name << " a=" << a << " c=" << c);
            CHECK(q >= lo - slack);
            CHECK(q <= hi + slack);
        }
    }
}

TEST_CASE("four-point quotient", "[quotients]") {
    const FluxDensity s = string_flux();
    const ScalarFn diag = [](double x) { return x / std::sqrt(1.0 + x * x); };

    CHECK(four_point_quotient(s.density, diag, 1.0, 0.0, 0.0, 1.0) == Approx(0.447214).epsilon(1e-6));
    CHECK(four_point_quotient(s.density, diag, 0.4, 0.4, 0.4, 0.4) == Approx(diag(0.4)));
    CHECK_THROWS_AS(four_point_quotient(s.density, nullptr, 1.0, 0.0, 0.0, 1.0), std::logic_error);

    // A shared middle argument collapses to the two-point quotient.
    const Nonlinearity nl = cubic();
    const PairFn pair = [&](double a, double b) {
        return 0.5 * (nl.potential(a) + nl.potential(b));
    };
    const ScalarFn nd = nl.derivative;
    for (auto [a, b, d] : {std::tuple{1.5, 0.3, -0.4}, std::tuple{-2.0, 1.0, 0.5}}) {
        CHECK(four_point_quotient(pair, nd, a, b, b, d) == Approx(two_point_quotient(nl, a, d)));
    }
}

TEST_CASE("averaged second quotient", "[quotients]") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    const Nonlinearity quad = quadratic();
    for (int i = 0; i < 50; ++i) {
        CHECK(averaged_second_quotient(quad, dist(rng), dist(rng), dist(rng), dist(rng)) ==
              Approx(1.0).margin(1e-6));
    }
    for (const auto& nl : catalog()) {
        for (double x : {-1.1, 0.0, 0.8}) {
            INFO(nl.name << " x=" << x);
            CHECK(averaged_second_quotient(nl, x, x, x, x) ==
                  Approx(nl.second_derivative(x)).margin(1e-6));
        }
    }
    // Cubic at (1, 0; 0, 0): ([q(1,0) + q(1,0)] - [q(0,0) + q(0,0)]) / 1 with q(1,0) = 1/4.
    CHECK(averaged_second_quotient(cubic(), 1.0, 0.0, 0.0, 0.0) == Approx(0.5));
}

TEST_CASE("averaged second quotient stays within the range of F''", "[quotients]") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> dist(-2.5, 2.5);
    for (const auto& nl : catalog()) {
        for (int i = 0; i < 200; ++i) {
            const double v[4] = {dist(rng), dist(rng), dist(rng), dist(rng)};
            const double lo_x = *std::min_element(v, v + 4);
            const double hi_x = *std::max_element(v, v + 4);
            const auto [lo, hi] = sampled_range(nl.second_derivative, lo_x, hi_x);
            const double s = averaged_second_quotient(nl, v[0], v[1], v[2], v[3]);
            const double slack = 1e-8 * (1.0 + std::abs(s));
            INFO(nl.name);
            CHECK(s >= lo - slack);
            CHECK(s <= hi + slack);
        }
    }
}

TEST_CASE("quotient decomposition identity", "[quotients]") {
    for (const auto& nl : catalog()) {
        CHECK(quotient_decomposition_defect(nl, 0.7, 0.7, 0.7, 0.7) == Approx(0.0).margin(1e-12));
        CHECK(quotient_decomposition_defect(nl, 0.7, 0.7, -1.2, -1.2) == Approx(0.0).margin(1e-12));
    }
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (const auto& nl : catalog()) {
        for (int i = 0; i < 1000; ++i) {
            const double xi = dist(rng);
            const double eta = dist(rng);
            // Every tenth tuple is nearly degenerate in one pair.
            const double xit = i % 10 == 0 ? xi + 1e-11 : dist(rng);
            const double etat = dist(rng);
            const double scale = 1.0 + std::abs(two_point_quotient(nl, xi, eta)) +
                                 std::abs(two_point_quotient(nl, xit, etat));
            INFO(nl.name << " " << xi << " " << xit << " " << eta << " " << etat);
            REQUIRE(std::abs(quotient_decomposition_defect(nl, xi, xit, eta, etat)) <= 1e-10 * scale);
        }
    }
}

TEST_CASE("field bounds for the quotient vector", "[quotients]") {
    std::mt19937_64 rng(43);
    const Grid g(6.0, 1.0, 40, 2);
    const double cs = sobolev_constant(g.L());
    for (const auto& nl : catalog()) {
        for (int trial = 0; trial < 50; ++trial) {
            const auto u = oracle::random_vector(rng, g.nodes(), -0.6, 0.6);
            const auto v = oracle::random_vector(rng, g.nodes(), -0.6, 0.6);
            const auto ut = oracle::random_vector(rng, g.nodes(), -0.6, 0.6);
            const auto vt = oracle::random_vector(rng, g.nodes(), -0.6, 0.6);
            double R = 0.0;
            for (const auto* f : {&u, &v, &ut, &vt}) R = std::max(R, norm_h1(*f, g));
            const double rho = cs * R;
            const double c1 = std::max(std::abs(sampled_range(nl.derivative, -rho, rho).first),
                                       std::abs(sampled_range(nl.derivative, -rho, rho).second));
            const auto [f2lo, f2hi] = sampled_range(nl.second_derivative, -rho, rho);
            const double c2 = std::max(std::abs(f2lo), std::abs(f2hi));

            const auto q = quotient_vector(nl, u, v);
            const auto qt = quotient_vector(nl, ut, vt);
            INFO(nl.name);
            CHECK(norm_l2(q, g) <= c1 * std::sqrt(g.L()) * (1.0 + 1e-6) + 1e-14);

            Field dq(g.nodes()), du(g.nodes()), dv(g.nodes());
            for (std::size_t k = 0; k < g.nodes(); ++k) {
                dq[k] = q[k] - qt[k];
                du[k] = u[k] - ut[k];
                dv[k] = v[k] - vt[k];
            }
            CHECK(norm_l2(dq, g) <= 0.5 * c2 * (norm_l2(du, g) + norm_l2(dv, g)) * (1.0 + 1e-6) + 1e-14);
        }
    }
}

TEST_CASE("sampled maximum", "[quotients]") {
    CHECK(sampled_abs_max([](double x) { return x * x * x; }, 2.0) == Approx(8.0));
    CHECK(sampled_abs_max([](double x) { return std::sin(x); }, 3.0) == Approx(1.0).epsilon(1e-5));
    CHECK(sampled_abs_max([](double) { return 0.0; }, 1.0) == 0.0);
}

TEST_CASE("catalog lookup", "[quotients]") {
    for (const auto& name : nonlinearity_names()) CHECK(nonlinearity_by_name(name).name == name);
    for (const auto& name : flux_names()) CHECK(flux_by_name(name).name == name);
    CHECK_THROWS_AS(nonlinearity_by_name("quartic"), std::invalid_argument);
    CHECK_THROWS_AS(flux_by_name("nope"), std::invalid_argument);

    CHECK(klein_gordon().potential(2.0) == Approx(6.0));
    CHECK(zero_potential().derivative(3.0) == 0.0);
    CHECK(string_flux().density(0.0, 0.0) == 1.0);
    CHECK(quadratic_flux().stable_quotient(1.0, 3.0) == Approx(2.0));
}
