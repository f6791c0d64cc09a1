#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "tslab/circle_function.hpp"
#include "tslab/errors.hpp"
#include "tslab/symmetry.hpp"

using namespace tslab;
using tslab::testing::random_function;
using tslab::testing::uniform;

namespace {

std::vector<cplx> direct_synthesis(const CircleFunction& f, int m) {
    std::vector<cplx> out(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k)
        for (int n = -f.bandwidth(); n <= f.bandwidth(); ++n)
            out[static_cast<std::size_t>(k)] += f.coeff(n) * std::polar(1.0, kTwoPi * n * k / m);
    return out;
}

double trapezoid_inner(const CircleFunction& f, const CircleFunction& g, int m) {
    const auto a = f.samples(m), b = g.samples(m);
    cplx sum = 0.0;
    for (int k = 0; k < m; ++k) sum += a[static_cast<std::size_t>(k)] * std::conj(b[static_cast<std::size_t>(k)]);
    return std::abs(sum * kTwoPi / double(m));
}

}  // namespace

TEST(Synthesize, ConstantAndSingleMode) {
    for (const cplx v : synthesize(CircleFunction::constant(1.0).coeffs(), 8)) EXPECT_NEAR(std::abs(v - 1.0), 0.0, 1e-15);
    const auto s = synthesize(CircleFunction::mode(1).coeffs(), 8);
    for (int m = 0; m < 8; ++m) EXPECT_NEAR(std::abs(s[m] - std::polar(1.0, kTwoPi * m / 8)), 0.0, 1e-15);
}

TEST(Synthesize, MatchesDirectSummationAndRoundTrips) {
    std::mt19937_64 rng(11);
    const auto f = random_function(rng, 16);
    const auto fast = synthesize(f.coeffs(), 64);
    const auto slow = direct_synthesis(f, 64);
    for (std::size_t k = 0; k < fast.size(); ++k) EXPECT_LT(std::abs(fast[k] - slow[k]), 1e-12);
    const auto back = analyze(fast, 16);
    EXPECT_LT(max_coeff_distance(back, f), 1e-12);
}

TEST(Synthesize, RejectsSmallGrid) {
    EXPECT_THROW(synthesize(CircleFunction(4).coeffs(), 9), SizeError);
    EXPECT_NO_THROW(synthesize(CircleFunction(4).coeffs(), 10));
}

TEST(Analyze, TrivialInputs) {
    const auto one = analyze(std::vector<cplx>(16, 1.0), 4);
    EXPECT_NEAR(std::abs(one.coeff(0) - 1.0), 0.0, 1e-15);
    for (int n = 1; n <= 4; ++n) EXPECT_NEAR(std::abs(one.coeff(n)) + std::abs(one.coeff(-n)), 0.0, 1e-15);
    std::vector<cplx> s(16);
    for (int m = 0; m < 16; ++m) s[m] = std::polar(1.0, 2.0 * kTwoPi * m / 16);
    EXPECT_NEAR(std::abs(analyze(s, 4).coeff(2) - 1.0), 0.0, 1e-14);
}

TEST(Analyze, SquareWaveSamplesFollowTheAnalyticSeries) {
    const int m = 256;
    std::vector<cplx> s(m);
    for (int k = 0; k < m; ++k) {
        const double c = std::cos(kTwoPi * k / m);
        s[k] = std::fabs(c) < 1e-12 ? 0.0 : (c > 0 ? 1.0 : -1.0);
    }
    const auto result = analyze_checked(s, 64);
    EXPECT_TRUE(result.aliasing_warning);
    const auto exact = CircleFunction::square_wave(16);
    for (int n = -16; n <= 16; ++n) {
        if (n % 2 == 0) {
            EXPECT_LT(std::abs(result.function.coeff(n)), 1e-12);
            continue;
        }
        EXPECT_LT(std::abs(result.function.coeff(n) - exact.coeff(n)), 0.02 * std::abs(exact.coeff(n))) << n;
    }
}

TEST(Analyze, BandLimitedInputHasNoAliasingWarning) {
    std::mt19937_64 rng(3);
    const auto f = random_function(rng, 8);
    EXPECT_FALSE(analyze_checked(f.samples(32), 8).aliasing_warning);
}

TEST(InnerProduct, BasicValues) {
    const auto one = CircleFunction::constant(1.0);
    EXPECT_NEAR(std::abs(inner_product(one, one) - kTwoPi), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(inner_product(CircleFunction::mode(1), one)), 0.0, 1e-15);
}

TEST(InnerProduct, AgreesWithTrapezoid) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = random_function(rng, 10), g = random_function(rng, 10);
        const double ref = trapezoid_inner(f, g, 64);
        EXPECT_NEAR(std::abs(inner_product(f, g)), ref, 1e-10 * ref);
    }
}

TEST(Properties, ParsevalOnHundredFunctions) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + trial % 20;
        const auto f = random_function(rng, n);
        const auto s = f.samples(default_grid_size(n));
        double sum = 0.0;
        for (const cplx v : s) sum += std::norm(v);
        const double sample_norm = sum * kTwoPi / double(s.size());
        const double coeff_norm = std::pow(l2_norm(f), 2);
        EXPECT_NEAR(sample_norm, coeff_norm, 1e-10 * coeff_norm);
    }
}

TEST(Symmetry, RotationFixesConstants) {
    const auto r = apply_symmetry(CircleFunction::constant(1.0), {kPi / 3, {0.0, 0.0}, false});
    EXPECT_NEAR(std::abs(r.coeff(0) - 1.0), 0.0, 1e-15);
}

TEST(Symmetry, ConjugateReflectionPointwise) {
    const auto g = apply_symmetry(CircleFunction::mode(1), {0.0, {0.0, 0.0}, true});
    EXPECT_NEAR(std::abs(g.coeff(-1) + 1.0), 0.0, 1e-15);
    std::mt19937_64 rng(13);
    const auto f = random_function(rng, 6);
    const auto h = apply_symmetry(f, {0.0, {0.0, 0.0}, true});
    for (int k = 0; k < 32; ++k) {
        const double t = kTwoPi * k / 32;
        EXPECT_LT(std::abs(h(t) - std::conj(f(t + kPi))), 1e-12);
    }
}

TEST(Symmetry, ModulationMatchesPlaneWave) {
    const auto g = apply_symmetry(CircleFunction::constant(1.0), {0.0, {1.0, 0.0}, false});
    EXPECT_NEAR(std::abs(g.coeff(0) - std::cyl_bessel_j(0.0, 1.0)), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(g.coeff(2) + std::cyl_bessel_j(2.0, 1.0)), 0.0, 1e-13);
    for (int k = 0; k < 40; ++k) {
        const double t = kTwoPi * k / 40;
        EXPECT_LT(std::abs(g(t) - std::polar(1.0, std::cos(t))), 1e-13);
    }
    const std::array<double, 2> xi{0.7, -2.3};
    const auto w = apply_symmetry(CircleFunction::constant(1.0), {0.0, xi, false});
    for (int k = 0; k < 40; ++k) {
        const double t = kTwoPi * k / 40;
        EXPECT_LT(std::abs(w(t) - std::polar(1.0, xi[0] * std::cos(t) + xi[1] * std::sin(t))), 1e-13);
    }
}

TEST(Symmetry, ModulationTooLarge) {
    EXPECT_THROW(plane_wave({51.0, 0.0}), SizeError);
}

TEST(Symmetry, CompositionLaw) {
    std::mt19937_64 rng(17);
    const auto f = random_function(rng, 5);
    for (int trial = 0; trial < 10; ++trial) {
        const SymmetryElement a{uniform(rng, -3, 3), {uniform(rng, -2, 2), uniform(rng, -2, 2)}, trial % 2 == 0};
        const SymmetryElement b{uniform(rng, -3, 3), {uniform(rng, -2, 2), uniform(rng, -2, 2)}, trial % 3 == 0};
        const auto lhs = apply_symmetry(f, a * b);
        const auto rhs = apply_symmetry(apply_symmetry(f, b), a);
        for (int k = 0; k < 24; ++k) {
            const double t = kTwoPi * k / 24;
            EXPECT_LT(std::abs(lhs(t) - rhs(t)), 1e-11);
        }
    }
    EXPECT_TRUE(SymmetryElement::identity().is_identity());
    EXPECT_TRUE((SymmetryElement::identity() * SymmetryElement::identity()).is_identity());
}

TEST(Properties, SymmetriesAreUnitary) {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 50; ++trial) {
        const auto f = random_function(rng, 8);
        const SymmetryElement s{uniform(rng, -3, 3), {uniform(rng, -5, 5), uniform(rng, -5, 5)}, trial % 2 == 1};
        const double before = weighted_norm(f, 0.0), after = weighted_norm(apply_symmetry(f, s), 0.0);
        EXPECT_NEAR(after, before, 1e-12 * before);
    }
}

TEST(Properties, ConjugateReflectionIsAnInvolution) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = random_function(rng, 9);
        EXPECT_LT(max_coeff_distance(f.conj_reflect().conj_reflect(), f), 1e-14);
    }
}

TEST(Properties, SymmetriesCommuteWithScalars) {
    std::mt19937_64 rng(29);
    const auto f = random_function(rng, 6);
    const cplx a(0.3, -1.7);
    const SymmetryElement s{0.9, {1.1, -0.4}, false};
    EXPECT_LT(max_coeff_distance(apply_symmetry(f * a, s), apply_symmetry(f, s) * a), 1e-13);
}

TEST(WeightedNorm, Examples) {
    EXPECT_NEAR(weighted_norm(CircleFunction::constant(1.0), 0.0), std::sqrt(kTwoPi), 1e-14);
    EXPECT_NEAR(weighted_norm(CircleFunction::constant(1.0), 3.7), std::sqrt(kTwoPi), 1e-14);
    EXPECT_NEAR(weighted_norm(CircleFunction::mode(1), 1.0), std::sqrt(4.0 * kPi), 1e-14);
}

TEST(WeightedNorm, SquareWaveThreshold) {
    // |c_n| ~ 1/n: the squared-norm increment from N to 2N scales like N^{2s-1}.
    auto increments = [](double s) {
        std::vector<double> sq;
        for (int n = 256; n <= 8192; n *= 2) sq.push_back(std::pow(weighted_norm(CircleFunction::square_wave(n), s), 2));
        std::vector<double> d;
        for (std::size_t k = 1; k < sq.size(); ++k) d.push_back(sq[k] - sq[k - 1]);
        return d;
    };
    const auto low = increments(0.4), high = increments(0.6);
    for (std::size_t k = 1; k < low.size(); ++k) {
        EXPECT_NEAR(low[k] / low[k - 1], std::pow(2.0, -0.2), 0.02);
        EXPECT_NEAR(high[k] / high[k - 1], std::pow(2.0, 0.2), 0.02);
    }
}

TEST(Json, RoundTrip) {
    std::mt19937_64 rng(31);
    const auto f = random_function(rng, 4);
    nlohmann::json j = f;
    EXPECT_EQ(j["N"], 4);
    EXPECT_EQ(j["coeffs"].size(), 9u);
    const auto g = j.get<CircleFunction>();
    EXPECT_EQ(max_coeff_distance(f, g), 0.0);
}
