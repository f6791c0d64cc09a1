#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "generators.hpp"
#include "tslab/bessel_tensor.hpp"
#include "tslab/bounds.hpp"
#include "tslab/cli.hpp"
#include "tslab/density.hpp"
#include "tslab/extension.hpp"
#include "tslab/quintic.hpp"
#include "tslab/regularity.hpp"
#include "tslab/solver.hpp"
#include "tslab/variational.hpp"

using namespace tslab;
using tslab::testing::random_function;
using tslab::testing::uniform;

namespace {

// Golden value of int_0^inf J0^6 rho d rho, locked from the first run on
// which the three quadrature regimes agreed to 1e-6.
constexpr double kGoldenT0 = 0.336827961766448;

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

Outcome criterion1() {
    std::mt19937_64 rng(1001);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto f = random_function(rng, 1 + trial % 8, uniform(rng, 0.0, 0.5));
        const double pairing = inner_product(quintic_self(f), f).real();
        const double dual = std::pow(l6_norm(extend(f)), 6) / (kTwoPi * kTwoPi);
        worst = std::max(worst, std::fabs(pairing - dual) / dual);
    }
    return {worst < 1e-6, "max relative gap " + fmt("%.2e", worst) + " < 1e-6 over 50 functions"};
}

Outcome criterion2() {
    const auto one = CircleFunction::constant(1.0);
    const ELReport r = el_residual(one.padded(8));
    const double rel = r.residual_l2 / r.lambda_fit;
    const auto q = quintic_polar({one, one, one, one, one}, {.output_bandwidth = 8});
    double leak = 0.0;
    for (int n = 1; n <= 8; ++n) leak += std::norm(q.coeff(n)) + std::norm(q.coeff(-n));
    leak = std::sqrt(leak) / std::abs(q.coeff(0));
    return {rel < 1e-8 && leak < 1e-9,
            "residual/lambda " + fmt("%.2e", rel) + " < 1e-8, leakage " + fmt("%.2e", leak) + " < 1e-9"};
}

Outcome criterion3() {
    const auto one = CircleFunction::constant(1.0);
    const double tensor = quintic_convolve({one, one, one, one, one}, build_tensor(0)).coeff(0).real();
    const double mu5 = density_value(5, 1.0).value();
    const double t0 = std::pow(kTwoPi, 4) * t0_oracle().value;
    const double gap = std::max({std::fabs(tensor - mu5) / t0, std::fabs(tensor - t0) / t0, std::fabs(mu5 - t0) / t0});
    return {gap < 1e-5, "tensor " + fmt("%.10f", tensor) + ", mu5(1) " + fmt("%.10f", mu5) + ", (2pi)^4 T0 " +
                            fmt("%.10f", t0) + "; max pairwise gap " + fmt("%.2e", gap) + " < 1e-5"};
}

Outcome criterion4() {
    const double mass = density_mass(5);
    const double mass_err = std::fabs(mass - std::pow(kTwoPi, 5)) / std::pow(kTwoPi, 5);
    const SupBoundReport a = sup_bound_check(5, 4.99, 500);
    const SupBoundReport b = sup_bound_check(5, 4.99, 1000, RadialGrid(200.0, 0.25));
    const double drift = std::fabs(a.sup - b.sup) / a.sup;

    std::mt19937_64 rng(1004);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    const long samples = 10'000'000;
    const double lo = 0.1, width = 0.1;
    const int bins = 18;
    std::vector<long> counts(bins);
    for (long i = 0; i < samples; ++i) {
        const double s = angle(rng), t = angle(rng);
        const double r = std::hypot(std::cos(s) + std::cos(t), std::sin(s) + std::sin(t));
        const int bin = static_cast<int>(std::floor((r - lo) / width));
        if (r >= lo && bin < bins) ++counts[static_cast<std::size_t>(bin)];
    }
    double worst_bin = 0.0;
    for (int k = 0; k < bins; ++k) {
        const double a0 = lo + k * width;
        double p = 0.0;
        const int m = 64;
        for (int i = 0; i < m; ++i) {
            const double r = a0 + (i + 0.5) * width / m;
            p += *density_value(2, r) * kTwoPi * r * width / m;
        }
        p /= kTwoPi * kTwoPi;
        worst_bin = std::max(worst_bin, std::fabs(static_cast<double>(counts[static_cast<std::size_t>(k)]) / samples - p) / p);
    }
    const bool pass = mass_err < 1e-4 && a.finite && drift < 1e-3 && worst_bin < 0.01;
    return {pass, "mass error " + fmt("%.2e", mass_err) + " < 1e-4, C5 = " + fmt("%.7f", a.sup) + " drift " +
                      fmt("%.2e", drift) + " < 1e-3, mu2 worst bin " + fmt("%.2e", worst_bin) + " < 1e-2"};
}

Outcome criterion5() {
    const double c5 = sup_bound_check(5, 4.99, 500).sup;
    std::mt19937_64 rng(1005);
    int violations = 0;
    double worst0 = 0.0, worst5 = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        Quintuple f;
        for (auto& g : f) g = random_function(rng, 8, uniform(rng, 0.0, 0.6));
        const auto checks = quintilinear_bound_checks(f, {0.0, 0.5}, c5);
        for (const BoundCheck& c : checks) {
            if (!c.holds) ++violations;
            (c.s == 0.0 ? worst0 : worst5) = std::max(c.s == 0.0 ? worst0 : worst5, c.ratio / c.bound_ratio);
        }
    }
    return {violations == 0, "violations " + std::to_string(violations) + " of 200; max ratio/bound s=0 " +
                                 fmt("%.3f", worst0) + ", s=0.5 " + fmt("%.3f", worst5)};
}

Outcome criterion6() {
    std::mt19937_64 rng(1006);
    double worst = 0.0;
    for (const auto& [beta, alpha] : {std::pair{0.2, 0.4}, std::pair{0.3, 0.9}})
        for (int trial = 0; trial < 100; ++trial) {
            const auto f = random_function(rng, 4 + trial % 60, uniform(rng, 0.0, 0.5));
            worst = std::max(worst, interpolation_constant(f, beta, alpha));
        }
    return {worst <= 2.0, "max measured constant " + fmt("%.4f", worst) + " <= 2"};
}

AscentResult extremizer16() {
    AscentConfig c;
    c.bandwidth = 16;
    return ascend(CircleFunction::constant(1.0) + CircleFunction::mode(1, 0.3), c);
}

Outcome criterion7() {
    const AscentResult r = extremizer16();
    PicardConfig pc;
    pc.eps = 0.05;
    const PicardState s = picard_iterate(picard_init(lambda_normalize(r.f), pc), 60);
    const double ratio = picard_max_ratio(s);
    const double gap = l2_norm(s.h - s.g.padded(s.h.bandwidth()));

    std::mt19937_64 rng(1007);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto phi = random_function(rng, 8, 0.3) * 0.3;
        const auto g = random_function(rng, 8, 0.3) * 0.1;
        const auto lhs = linear_part(phi, g) + nonlinear_part(phi, g);
        const auto rhs = quintic_self(phi + g) - phi;
        worst = std::max(worst, l2_norm(lhs - rhs) / std::max(1.0, l2_norm(rhs)));
    }
    const bool pass = s.converged && ratio < 1.0 && gap < 1e-6 && worst < 1e-9;
    return {pass, std::string("picard converged ") + (s.converged ? "yes" : "no") + " in " + std::to_string(s.steps) +
                      " steps, max ratio " + fmt("%.3e", ratio) + " < 1, |h-g| " + fmt("%.2e", gap) +
                      " < 1e-6, expansion identity " + fmt("%.2e", worst) + " < 1e-9"};
}

Outcome criterion8() {
    const SmoothingReport sm = smoothing_experiment(CircleFunction::square_wave(64));
    const LipschitzReport lip = lipschitz_experiment(CircleFunction::square_wave(64), CircleFunction::square_wave(128));
    const bool pass = sm.gain >= 0.25 && lip.grid_change <= 0.05;
    return {pass, "slopes " + fmt("%.3f", sm.input_slope.slope) + " -> " + fmt("%.3f", sm.output_slope.slope) +
                      " (gain " + fmt("%.3f", sm.gain) + " >= 0.25); Lipschitz " + fmt("%.3f", lip.lipschitz) +
                      " grid change " + fmt("%.2e", lip.grid_change) + " <= 5e-2 (resolution change " +
                      fmt("%.3f", lip.resolution_change) + ", L2 quotient change " +
                      fmt("%.2e", lip.l2_resolution_change) + ")"};
}

Outcome criterion9() {
    const double q1 = constant_from_constants().value;
    double worst = 0.0, worst_tail = 0.0;
    bool converged = true;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        std::mt19937_64 rng(9000 + seed);
        AscentConfig c;
        c.bandwidth = 16;
        const AscentResult r = ascend(random_function(rng, 16, 0.5), c);
        converged = converged && r.converged;
        worst = std::max(worst, std::fabs(r.quotient - q1) / q1);
        const Canonical can = canonicalize(r.f);
        for (int n = 4; n <= 16; ++n)
            worst_tail = std::max({worst_tail, std::abs(can.f.coeff(n)), std::abs(can.f.coeff(-n))});
    }
    const T0Oracle t0 = t0_oracle();
    const double golden = std::fabs(t0.value - kGoldenT0) / kGoldenT0;
    const bool pass = converged && worst < 1e-4 && worst_tail < 1e-10 && t0.spread < 1e-6 && golden < 1e-12;
    return {pass, "max quotient gap " + fmt("%.2e", worst) + " < 1e-4 over 5 starts (conditional), tail |n|>=4 " +
                      fmt("%.1e", worst_tail) + " < 1e-10; T0 regimes spread " + fmt("%.1e", t0.spread) +
                      " < 1e-6, golden gap " + fmt("%.1e", golden)};
}

Outcome criterion10() {
    const auto path = std::filesystem::temp_directory_path() / "tslab_acceptance_cache.bin";
    const BesselTensor t = build_tensor(4);
    const BesselTensor back = cache_roundtrip(t, path);
    bool identical = back.size() == t.size();
    for (std::size_t k = 0; identical && k < t.size(); ++k)
        identical = back.entries()[k].index == t.entries()[k].index &&
                    back.entries()[k].integral.value == t.entries()[k].integral.value &&
                    back.entries()[k].integral.error == t.entries()[k].integral.error;
    std::filesystem::remove(path);

    ExperimentConfig c;
    c.bandwidth = 6;
    c.seed = 10;
    c.input = "random";
    int reproducible = 0, total = 0;
    for (const char* cmd : {"functional", "el-residual", "solve", "split", "regularity-profile", "constant"}) {
        ++total;
        auto strip = [&] {
            nlohmann::json j = run(cmd, c);
            j.erase("wall_clock");
            return j.dump();
        };
        if (strip() == strip()) ++reproducible;
    }
    return {identical && reproducible == total, std::string("cache round trip ") + (identical ? "identical" : "differs") +
                                                    ", reproducible envelopes " + std::to_string(reproducible) + "/" +
                                                    std::to_string(total)};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget;  // seconds
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "Parseval/duality chain", 120, criterion1},
        {2, "Euler-Lagrange at constants", 10, criterion2},
        {3, "cross-representation constant", 60, criterion3},
        {4, "density mass, sup bound, Monte-Carlo profile", 180, criterion4},
        {5, "quintilinear bound, s = 0 and s = 0.5", 180, criterion5},
        {6, "interpolation constant", 60, criterion6},
        {7, "contraction lab", 120, criterion7},
        {8, "smoothing and Lipschitz stability", 120, criterion8},
        {9, "conditional sharp-constant reproduction", 300, criterion9},
        {10, "infrastructure", 10, criterion10},
    };
    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_budget = seconds <= c.budget;
        const bool pass = o.pass && in_budget;
        failures += !pass;
        std::printf("%s criterion %d (%s): %s; %.1f s of %.0f s\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                    seconds, c.budget);
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
