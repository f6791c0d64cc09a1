#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "tslab/errors.hpp"
#include "tslab/quintic.hpp"
#include "tslab/regularity.hpp"

using namespace tslab;
using tslab::testing::random_function;
using tslab::testing::uniform;

namespace {

CircleFunction power_decay(int bandwidth, double p) {
    std::vector<cplx> c(static_cast<std::size_t>(2 * bandwidth + 1));
    for (int n = -bandwidth; n <= bandwidth; ++n) c[static_cast<std::size_t>(n + bandwidth)] = std::pow(1.0 + std::abs(n), -p);
    return CircleFunction(std::move(c));
}

}  // namespace

TEST(Holder, ConstantGivesModulus) {
    EXPECT_NEAR(holder_estimate(CircleFunction::constant(cplx(3.0, -4.0)), 0.5), 5.0, 1e-13);
}

TEST(Holder, SmoothModeStableUnderGridDoubling) {
    const auto f = CircleFunction::mode(1);
    const double a = holder_estimate(f, 0.5, 64), b = holder_estimate(f, 0.5, 128);
    EXPECT_TRUE(std::isfinite(a));
    EXPECT_NEAR(b, a, 0.01 * a);
    EXPECT_FALSE(holder_profile(f, 0.5).diverging);
}

TEST(Holder, SquareWaveDiverges) {
    const auto p = holder_profile(CircleFunction::square_wave(16384), 0.5);
    EXPECT_TRUE(p.diverging);
    // q(2^-12) / q(2^-1) ~ 2^{11 / 2} for a jump.
    EXPECT_GT(std::log2(p.quotients.back() / p.quotients[1]), 5.0);
}

TEST(Holder, RejectsOutOfRangeAlpha) {
    EXPECT_THROW(holder_estimate(CircleFunction::mode(1), 1.0), DomainError);
    EXPECT_THROW(holder_estimate(CircleFunction::mode(1), 0.0), DomainError);
}

TEST(Holder, LipschitzOfSingleMode) {
    const double lip = lipschitz_estimate(CircleFunction::mode(1), 256);
    const double t = std::ldexp(1.0, -kDyadicLevels);
    EXPECT_NEAR(lip, 1.0 + 2.0 * std::sin(0.5 * t) / t, 1e-9);
}

TEST(CalH, ScaleZeroIsL2) {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 10; ++trial) {
        const auto f = random_function(rng, 12);
        EXPECT_EQ(calH_estimate(f, 0.0), l2_norm(f));
    }
}

TEST(CalH, SingleModeClosedForm) {
    // sup_{0<t<=1} |e^{it} - 1| / t^{1/2} is attained at t = 1.
    const double expected = std::sqrt(kTwoPi) * (1.0 + 2.0 * std::sin(0.5));
    EXPECT_NEAR(calH_estimate(CircleFunction::mode(1), 0.5), expected, 0.01 * expected);
    EXPECT_NEAR(calH_estimate(CircleFunction::mode(1), 0.5), 4.91011, 1e-5);
}

TEST(CalH, IntegerScaleRejected) {
    EXPECT_THROW(calH_estimate(CircleFunction::mode(1), 1.0), DomainError);
    EXPECT_THROW(calH_estimate(CircleFunction::mode(1), -0.5), DomainError);
}

TEST(CalH, DerivativeBandwidthWarning) {
    EXPECT_TRUE(calH_profile(CircleFunction::square_wave(64), 1.5).bandwidth_warning);
    EXPECT_FALSE(calH_profile(CircleFunction::mode(1).padded(8), 1.5).bandwidth_warning);
}

TEST(Properties, CalHNonDecreasingInScale) {
    std::mt19937_64 rng(103);
    const std::vector<double> scales{0.0, 0.1, 0.3, 0.5, 0.9, 1.2, 1.7};
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = random_function(rng, 10, 0.2);
        double prev = 0.0;
        for (double s : scales) {
            const double v = calH_estimate(f, s);
            EXPECT_GE(v, prev * (1 - 1e-14)) << trial << " s=" << s;
            prev = v;
        }
    }
}

TEST(Properties, RotationInvariance) {
    std::mt19937_64 rng(107);
    for (int trial = 0; trial < 10; ++trial) {
        const auto f = random_function(rng, 8);
        const double t = uniform(rng, -3, 3);
        EXPECT_NEAR(calH_estimate(f.rotated(t), 0.4), calH_estimate(f, 0.4), 1e-10 * calH_estimate(f, 0.4));
        const int m = 64;
        const double grid_rotation = kTwoPi * (trial + 1) / m;
        const double a = holder_estimate(f, 0.3, m), b = holder_estimate(f.rotated(grid_rotation), 0.3, m);
        EXPECT_NEAR(b, a, 1e-10 * a);
    }
}

TEST(Properties, InterpolationConstantAtMostTwo) {
    std::mt19937_64 rng(109);
    for (const auto& [beta, alpha] : {std::pair{0.2, 0.4}, std::pair{0.3, 0.9}}) {
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const auto f = random_function(rng, 4 + trial % 60, uniform(rng, 0.0, 0.5));
            worst = std::max(worst, interpolation_constant(f, beta, alpha));
        }
        EXPECT_LE(worst, 2.0) << beta << " " << alpha;
    }
}

TEST(Properties, SobolevInclusionConstantStable) {
    const double s = 0.4, t = 0.2;
    auto ratio = [&](int n) {
        const auto f = CircleFunction::square_wave(n);
        return weighted_norm(f, t) / calH_estimate(f, s);
    };
    const double a = ratio(512), b = ratio(1024);
    EXPECT_LT(a, 10.0);
    EXPECT_NEAR(b, a, 0.02 * a);
}

TEST(DecaySlope, ConstructedPowerLaw) {
    const auto d = decay_slope(power_decay(256, 2.0), 16, 256);
    EXPECT_NEAR(d.slope, -2.0, 0.05);
    EXPECT_GT(d.points, 0);
}

TEST(DecaySlope, SquareWave) {
    EXPECT_NEAR(decay_slope(CircleFunction::square_wave(256), 8, 256).slope, -1.0, 0.05);
}

TEST(DecaySlope, EmptyBand) {
    EXPECT_THROW(decay_slope(CircleFunction::constant(1.0).padded(8), 2, 8), DomainError);
    EXPECT_THROW(decay_slope(CircleFunction::square_wave(8), 9, 12), DomainError);
}

TEST(Split, BandLimitedFlatPartVanishes) {
    const auto one = CircleFunction::constant(2.0).padded(4);
    const auto trivial = sharp_flat_split(one, 1.0, 0.25);
    EXPECT_EQ(l2_norm(trivial.flat), 0.0);
    EXPECT_TRUE(trivial.report.bounds_hold);

    std::mt19937_64 rng(113);
    const auto f = random_function(rng, 6);
    const auto split = sharp_flat_split(f, 1e-12, 0.25);
    EXPECT_EQ(split.report.cutoff, 6);
    EXPECT_EQ(l2_norm(split.flat), 0.0);
    EXPECT_EQ(max_coeff_distance(split.sharp, f), 0.0);
    EXPECT_TRUE(split.report.bounds_hold);
}

TEST(Split, LargeEtaGivesMinimalCutoff) {
    std::mt19937_64 rng(127);
    const auto split = sharp_flat_split(random_function(rng, 6), 1.0, 0.25);
    EXPECT_EQ(split.report.cutoff, 0);
    EXPECT_TRUE(split.report.bounds_hold);
}

TEST(Split, PartitionIsExact) {
    const auto f = CircleFunction::square_wave(1024);
    const auto split = sharp_flat_split(f, 0.1, 0.25);
    EXPECT_EQ(max_coeff_distance(split.sharp.padded(1024) + split.flat.padded(1024), f), 0.0);
    EXPECT_LE(split.report.flat_l2, 0.1 * split.report.norm);
    EXPECT_TRUE(split.report.bounds_hold);
}

TEST(Split, EtaOptimizationOnSquareWave) {
    const auto e = eta_optimization(CircleFunction::square_wave(4096), 0.25);
    ASSERT_EQ(e.splits.size(), 6u);
    for (std::size_t k = 1; k < e.splits.size(); ++k) {
        EXPECT_GE(e.splits[k].cutoff, e.splits[k - 1].cutoff);
        EXPECT_TRUE(e.splits[k].bounds_hold);
    }
    EXPECT_GT(e.cutoff_exponent, 1.0);
    EXPECT_GT(e.lipschitz_exponent, 0.0);
    EXPECT_NEAR(e.delta_fit, e.delta_predicted, 0.02);
}

TEST(Smoothing, SquareWaveGain) {
    const auto r = smoothing_experiment(CircleFunction::square_wave(64));
    EXPECT_NEAR(r.input_slope.slope, -1.0, 0.05);
    EXPECT_GE(r.gain, 0.25);
    EXPECT_TRUE(r.gain_ok);
}

TEST(Smoothing, SmoothInputIsRejected) {
    EXPECT_THROW(smoothing_experiment(power_decay(64, 3.0)), PreconditionError);
}

TEST(Smoothing, SmoothInputStaysSmooth) {
    std::vector<cplx> c(33);
    for (int n = -16; n <= 16; ++n) c[static_cast<std::size_t>(n + 16)] = std::exp(-0.25 * n * n);
    const CircleFunction f(c);
    const auto q = quintic_polar({f, f, f, f, f}, {.output_bandwidth = 16});
    const double q0 = std::abs(q.coeff(0));
    EXPECT_LT(std::abs(q.coeff(8)), 1e-3 * q0);
    EXPECT_LT(std::abs(q.coeff(16)), 1e-9 * q0);
    EXPECT_LT(std::abs(q.coeff(16)) / std::abs(q.coeff(8)), std::pow(2.0, -20));
}

TEST(Smoothing, LipschitzStableUnderGridDoubling) {
    const auto r = lipschitz_experiment(CircleFunction::square_wave(64), CircleFunction::square_wave(128));
    EXPECT_TRUE(std::isfinite(r.lipschitz));
    EXPECT_LE(r.grid_change, 0.05);
    EXPECT_LE(r.l2_resolution_change, 0.05);
    // Differences are linear in t at small t.
    const std::size_t last = r.quotients.size() - 1;
    EXPECT_NEAR(r.quotients[last], r.quotients[last - 1], 0.05 * r.quotients[last]);
}

TEST(Profile, CombinesEstimators) {
    const auto p = regularity_profile(CircleFunction::square_wave(1024), {0.25, 0.5}, {0.0, 0.25});
    EXPECT_EQ(p.holder.size(), 2u);
    EXPECT_EQ(p.calH.size(), 2u);
    EXPECT_TRUE(p.diverging);
    EXPECT_NEAR(p.slope.slope, -1.0, 0.05);
    EXPECT_LE(p.calH[0].value, p.calH[1].value);
}

TEST(Profile, CoefficientCsv) {
    std::istringstream in(coefficient_csv(CircleFunction::mode(-1, 2.0)));
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "n,abs_c");
    std::getline(in, line);
    EXPECT_EQ(line.substr(0, 3), "-1,");
}
