// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <string>

#include <fmt/format.h>

#include "dynwave/general.hpp"
#include "dynwave/harness.hpp"
#include "dynwave/linsys.hpp"
#include "dynwave/mesh.hpp"
#include "dynwave/quotients.hpp"
#include "dynwave/semilinear.hpp"
#include "oracle.hpp"
#include "scheme_oracle.hpp"

using namespace dynwave;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

ExperimentConfig reference_config(const std::string& nl, const std::string& preset_name) {
    ExperimentConfig c;
    c.L = 6.0;
    c.T = 5.0;
    c.K = 100;
    c.N = 2000;
    c.nonlinearity = nl;
    c.preset = preset_name;
    c.solver.tol = 1e-13;
    c.snapshot_stride = 100;
    return c;
}

int max_iterations(const Trajectory& t) {
    int m = 0;
    for (const auto& d : t.diagnostics) m = std::max(m, d.iterations);
    return m;
}

// Shared between criteria 1 and 10.
Trajectory& cubic_case1() {
    static Trajectory t = run(reference_config("cubic", "case1"));
    return t;
}

Outcome energy_cubic() {
    const auto t0 = Clock::now();
    const Trajectory& t = cubic_case1();
    const double secs = seconds_since(t0);
    return {t.drift <= 1e-9 && secs < 30.0,
            fmt::format("drift {:.2e}, {:.2f} s", t.drift, secs)};
}

Outcome energy_sine_gordon() {
    bool ok = true;
    std::string detail;
    for (const auto* name : {"case1", "case2", "case3"}) {
        const Trajectory t = run(reference_config("sine_gordon", name));
        ok = ok && t.drift <= 1e-9;
        detail += fmt::format("{} {:.2e}  ", name, t.drift);
    }
    return {ok, detail};
}

Outcome energy_string() {
    ExperimentConfig c = reference_config("zero", "case1");
    c.kind = ProblemKind::General;
    c.flux = "string";
    const Trajectory t = run(c);
    return {t.drift <= 1e-8, fmt::format("drift {:.2e}", t.drift)};
}

Outcome convergence_order() {
    const auto t0 = Clock::now();
    ExperimentConfig c;
    c.T = 1.0;
    c.K = 25;
    c.N = 100;
    c.nonlinearity = "cubic";
    c.preset = "case1";
    const auto rows = convergence_study(c, 4);
    const double secs = seconds_since(t0);
    const double order = rows.back().observed_order;
    return {order >= 1.8 && order <= 2.2 && secs < 120.0,
            fmt::format("orders {:.3f} {:.3f} {:.3f}, {:.2f} s", rows[1].observed_order,
                        rows[2].observed_order, order, secs)};
}

Outcome sbp_identity() {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> kdist(2, 64);
    std::uniform_real_distribution<double> ldist(0.5, 10.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Grid g(ldist(rng), 1.0, kdist(rng), 2);
        const auto f = oracle::random_vector(rng, g.nodes() + 1, -5.0, 5.0);
        const auto h = oracle::random_vector(rng, g.nodes(), -5.0, 5.0);
        const double scale = oracle::max_abs(f) * oracle::max_abs(h) * std::max(1.0, g.L());
        worst = std::max(worst, std::abs(sbp_defect(f, h, g)) / (kEps * scale));
    }
    return {worst <= 100.0, fmt::format("max |defect| = {:.1f} eps*scale", worst)};
}

Outcome quotient_identities() {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    double worst = 0.0;
    int violations = 0;
    auto range = [](const ScalarFn& fn, double lo, double hi) {
        double mn = fn(lo), mx = mn;
        for (int i = 0; i <= 2000; ++i) {
            const double v = fn(lo + (hi - lo) * i / 2000.0);
            mn = std::min(mn, v);
            mx = std::max(mx, v);
        }
        return std::pair{mn, mx};
    };
    for (const auto& name : nonlinearity_names()) {
        const Nonlinearity nl = nonlinearity_by_name(name);
        for (int i = 0; i < 1000; ++i) {
            const double xi = dist(rng), xit = dist(rng), eta = dist(rng), etat = dist(rng);
            const double scale = 1.0 + std::abs(two_point_quotient(nl, xi, eta)) +
                                 std::abs(two_point_quotient(nl, xit, etat));
            worst = std::max(worst,
                             std::abs(quotient_decomposition_defect(nl, xi, xit, eta, etat)) / scale);

            const auto [d1lo, d1hi] = range(nl.derivative, std::min(xi, eta), std::max(xi, eta));
            const double q = two_point_quotient(nl, xi, eta);
            const double s1 = 1e-10 * (1.0 + std::abs(q));
            if (q < d1lo - s1 || q > d1hi + s1) ++violations;

            const double lo = std::min({xi, xit, eta, etat});
            const double hi = std::max({xi, xit, eta, etat});
            const auto [d2lo, d2hi] = range(nl.second_derivative, lo, hi);
            const double s = averaged_second_quotient(nl, xi, xit, eta, etat);
            const double s2 = 1e-8 * (1.0 + std::abs(s));
            if (s < d2lo - s2 || s > d2hi + s2) ++violations;
        }
    }
    return {worst <= 1e-10 && violations == 0,
            fmt::format("max defect/scale {:.2e}, bound violations {}", worst, violations)};
}

Outcome sobolev() {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> kdist(2, 100);
    int violations = 0;
    double tightest = 0.0;
    for (double L : {0.5, 1.0, 6.0}) {
        for (int i = 0; i < 1000; ++i) {
            const Grid g(L, 1.0, kdist(rng), 2);
            const auto f = oracle::random_vector(rng, g.nodes(), -2.0, 2.0);
            const double ratio = norm_inf(f) / (sobolev_constant(L) * norm_h1(f, g));
            tightest = std::max(tightest, ratio);
            if (ratio > 1.0) ++violations;
        }
    }
    return {violations == 0, fmt::format("max ratio {:.3f}", tightest)};
}

Outcome definiteness() {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> kdist(2, 64);
    int bad = 0;
    double worst_form = -std::numeric_limits<double>::infinity();
    double worst_margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 1000; ++i) {
        const Grid g(6.0, 5.0, kdist(rng), 2000);
        const auto u = oracle::random_vector(rng, g.nodes());
        const double uu = trapz_inner(u, u, g);
        const double form = trapz_inner(apply_a(g, u), u, g);
        const TridiagonalSystem sys = assemble(g);
        const double margin =
            trapz_inner(multiply(sys, u), u, g) - (1.0 + 0.5 * g.dt() * g.dt()) * uu;
        worst_form = std::max(worst_form, form / uu);
        worst_margin = std::min(worst_margin, margin);
        if (!(form < 0.0) || margin < 0.0) ++bad;
    }
    return {bad == 0, fmt::format("max <AU,U>/<U,U> {:.3e}, min margin {:.3e}", worst_form,
                                  worst_margin)};
}

Outcome oracle_equivalence() {
    std::mt19937_64 rng(9);
    double phi_err = 0.0;
    for (int K = 2; K <= 8; ++K) {
        for (const auto& name : nonlinearity_names()) {
            const Nonlinearity nl = nonlinearity_by_name(name);
            const Grid g(0.5 + 0.5 * K, 3.0, K, 9);
            StatePair p{oracle::random_vector(rng, g.nodes()), {}, 1};
            p.curr = p.prev;
            for (auto& v : p.curr) v += 0.1 * std::uniform_real_distribution<double>(-1, 1)(rng);
            const auto guess = oracle::random_vector(rng, g.nodes());
            const Field a = phi_apply(guess, p, g, nl);
            const Field b = oracle::dense_phi(guess, p, g, nl);
            for (int k = 0; k <= K; ++k) phi_err = std::max(phi_err, std::abs(a[k] - b[k]));
        }
    }

    double reduction_err = 0.0;
    const Grid g(6.0, 5.0, 100, 2000);
    for (const auto& name : nonlinearity_names()) {
        const Nonlinearity nl = nonlinearity_by_name(name);
        const GeneralProblem semi{quadratic_flux(), nl, g};
        const InitialData d = preset("case1", g);
        StatePair ps{d.u0, first_step(d.u0, d.v0, g, nl), 1};
        StatePair pg{d.u0, general_first_step(d.u0, d.v0, semi), 1};
        for (int n = 1; n <= 50; ++n) {
            auto [us, ds] = step(ps, g, nl, {});
            auto [ug, dg] = general_step(pg, semi, {});
            for (std::size_t k = 0; k < us.size(); ++k) {
                reduction_err = std::max(reduction_err, std::abs(us[k] - ug[k]));
            }
            ps = {std::move(ps.curr), std::move(us), n + 1};
            pg = {std::move(pg.curr), std::move(ug), n + 1};
        }
    }
    return {phi_err <= 1e-12 && reduction_err <= 1e-10,
            fmt::format("Phi vs dense {:.2e}, general vs semilinear {:.2e}", phi_err,
                        reduction_err)};
}

Outcome fixed_point_behavior() {
    const int iters = max_iterations(cubic_case1());

    ExperimentConfig c = reference_config("cubic", "case3");
    c.N = 5;
    bool raised = false;
    std::string message;
    try {
        (void)run(c);
    } catch (const NoConvergence& e) {
        raised = true;
        message = fmt::format("NoConvergence at n={} after {} iterations", e.step(), e.iterations());
    }
    return {iters <= 20 && raised,
            fmt::format("max iterations {}; N=5: {}", iters, raised ? message : "no error")};
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"energy conservation, cubic Case 1", energy_cubic},
        {"energy conservation, sine-Gordon Cases 1-3", energy_sine_gordon},
        {"energy conservation, general scheme (string)", energy_string},
        {"second-order self-convergence", convergence_order},
        {"summation by parts", sbp_identity},
        {"quotient decomposition and bounds", quotient_identities},
        {"discrete Sobolev inequality", sobolev},
        {"matrix definiteness", definiteness},
        {"fixed-point map and reduction oracles", oracle_equivalence},
        {"fixed-point iteration behavior", fixed_point_behavior},
    };

    int failed = 0;
    int index = 0;
    for (const auto& [name, check] : criteria) {
        ++index;
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, fmt::format("unexpected exception: {}", e.what())};
        }
        fmt::print("{} [{:2}] {}: {}\n", o.pass ? "PASS" : "FAIL", index, name, o.detail);
        if (!o.pass) ++failed;
    }
    fmt::print("{} of {} criteria passed\n", index - failed, index);
    return failed == 0 ? 0 : 1;
}
