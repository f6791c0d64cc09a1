#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "tslab/bessel.hpp"
#include "tslab/bounds.hpp"
#include "tslab/errors.hpp"
#include "tslab/extension.hpp"
#include "tslab/quintic.hpp"
#include "tslab/symmetry.hpp"

using namespace tslab;
using tslab::testing::random_function;
using tslab::testing::uniform;

namespace {

constexpr double kT0 = 0.336827961766448;
const double kLambda0 = std::pow(kTwoPi, 4) * kT0;

cplx direct_extension(const CircleFunction& f, double rho, double phi) {
    const int m = 1024;
    cplx sum = 0.0;
    for (int k = 0; k < m; ++k) {
        const double theta = kTwoPi * k / m;
        sum += std::polar(1.0, -rho * std::cos(theta - phi)) * f(theta);
    }
    return sum * (kTwoPi / m);
}

Quintuple ones() {
    const auto one = CircleFunction::constant(1.0);
    return {one, one, one, one, one};
}

}  // namespace

TEST(Extend, ConstantAtOriginIsTotalMass) {
    const auto field = extend(CircleFunction::constant(1.0));
    EXPECT_NEAR(std::abs(field.evaluate(0.0, 0.0) - kTwoPi), 0.0, 1e-14);
}

TEST(Extend, ConstantMatchesDirectQuadrature) {
    const auto f = CircleFunction::constant(1.0);
    const auto field = extend(f);
    std::mt19937_64 rng(3);
    for (int k = 0; k < 20; ++k) {
        const double rho = uniform(rng, 0.0, 40.0), phi = uniform(rng, 0.0, kTwoPi);
        EXPECT_LT(std::abs(field.evaluate(rho, phi) - direct_extension(f, rho, phi)), 1e-10);
        EXPECT_NEAR(field.evaluate(rho, phi).real(), kTwoPi * bessel_j(0, rho), 1e-10);
    }
}

TEST(Extend, SingleModeModulusIsJ1) {
    const auto f = CircleFunction::mode(1);
    const auto field = extend(f);
    for (double rho : {0.3, 1.0, 4.5, 17.0, 63.0}) {
        EXPECT_NEAR(std::abs(field.evaluate(rho, 0.0)), kTwoPi * std::fabs(bessel_j(1, rho)), 1e-12);
        EXPECT_LT(std::abs(field.evaluate(rho, 0.0) - direct_extension(f, rho, 0.0)), 1e-10);
    }
}

TEST(Extend, SharedBasisMatchesDirectExtension) {
    std::mt19937_64 rng(29);
    const RadialGrid grid(60.0, 2.0);
    const ExtensionBasis basis(6, grid, 48);
    for (int n : {0, 3, 6}) {
        const auto f = random_function(rng, n, 0.2);
        const auto a = basis.samples(f);
        const auto b = extend(f, grid, 48).samples();
        ASSERT_EQ(a.values.size(), b.values.size());
        for (std::size_t k = 0; k < a.values.size(); ++k) EXPECT_NEAR(std::abs(a.values[k] - b.values[k]), 0.0, 1e-13);
        EXPECT_NEAR(std::abs(plane_integral(a).value - plane_integral(b).value), 0.0, 1e-12);
    }
    EXPECT_THROW(basis.samples(random_function(rng, 7)), SizeError);
    EXPECT_THROW(ExtensionBasis(6, grid, 12), SizeError);
}

TEST(Extend, OriginValueIsAngleIndependent) {
    std::mt19937_64 rng(5);
    const auto field = extend(random_function(rng, 6));
    const cplx v = field.evaluate(0.0, 0.0);
    for (double phi : {0.4, 1.9, 3.3, 5.9}) EXPECT_LT(std::abs(field.evaluate(0.0, phi) - v), 1e-13);
}

TEST(Extend, AngularSpectrumStaysInBand) {
    std::mt19937_64 rng(6);
    const auto field = extend(random_function(rng, 3));
    for (double rho : {0.7, 5.0, 30.0}) {
        std::vector<cplx> samples;
        const int m = 32;
        for (int j = 0; j < m; ++j) samples.push_back(field.evaluate(rho, kTwoPi * j / m));
        const auto g = CircleFunction::from_samples(samples, 15);
        for (int n = 4; n <= 15; ++n) {
            EXPECT_LT(std::abs(g.coeff(n)), 1e-12);
            EXPECT_LT(std::abs(g.coeff(-n)), 1e-12);
        }
    }
}

TEST(DecayCheck, ConstantEnvelope) {
    const auto r = decay_check(extend(CircleFunction::constant(1.0), RadialGrid(200.0)));
    EXPECT_LE(r.sup, 0.798);
    EXPECT_TRUE(r.bounded);
    EXPECT_GT(r.sup, 0.79);
}

TEST(DecayCheck, SingleModeEnvelope) {
    const auto r = decay_check(extend(CircleFunction::mode(1), RadialGrid(200.0)));
    double dense = 0.0;
    for (double rho = 10.0; rho <= 200.0; rho += 1e-3) dense = std::max(dense, std::sqrt(rho) * std::fabs(std::cyl_bessel_j(1.0, rho)));
    EXPECT_TRUE(r.bounded);
    EXPECT_NEAR(r.sup, dense, 1e-4);
}

TEST(L6Norm, ZeroFunction) {
    EXPECT_EQ(l6_norm(extend(CircleFunction(3))), 0.0);
}

TEST(L6Norm, ConstantFromT0) {
    const double expected = std::pow(std::pow(kTwoPi, 7) * kT0, 1.0 / 6.0);
    EXPECT_NEAR(l6_norm(extend(CircleFunction::constant(1.0))), expected, 1e-12 * expected);
    EXPECT_NEAR(expected, 7.11941871623514, 1e-12);
}

TEST(L6Norm, ModulationInvariance) {
    const auto one = CircleFunction::constant(1.0);
    SymmetryElement s;
    s.modulation = {0.7, 0.3};
    const double a = l6_norm(extend(one)), b = l6_norm(extend(apply_symmetry(one, s)));
    EXPECT_NEAR(b, a, 1e-8 * a);
}

TEST(L6Norm, RequiresTail) {
    EXPECT_THROW(l6_norm(extend(CircleFunction::constant(1.0)).without_tail()), PreconditionError);
}

TEST(Properties, L6NormSymmetryInvariance) {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 50; ++trial) {
        const auto f = random_function(rng, 3);
        const SymmetryElement s{uniform(rng, -3, 3), {uniform(rng, -1.5, 1.5), uniform(rng, -1.5, 1.5)}, trial % 2 == 0};
        const double a = l6_norm(extend(f)), b = l6_norm(extend(apply_symmetry(f, s)));
        EXPECT_NEAR(b, a, 1e-8 * a) << trial;
    }
}

TEST(Properties, ExtensionIsLinear) {
    std::mt19937_64 rng(47);
    const auto f = random_function(rng, 5), g = random_function(rng, 5);
    const cplx a(0.4, -1.1), b(-2.0, 0.3);
    const auto fa = extend(f), fb = extend(g), fab = extend(f * a + g * b);
    for (int k = 0; k < 30; ++k) {
        const double rho = uniform(rng, 0, 50), phi = uniform(rng, 0, kTwoPi);
        EXPECT_LT(std::abs(fab.evaluate(rho, phi) - (a * fa.evaluate(rho, phi) + b * fb.evaluate(rho, phi))), 1e-12);
    }
}

TEST(Properties, RealEvenInputIsRealOnTheAxis) {
    std::mt19937_64 rng(53);
    // f real with f(-x) = f(x): only even modes, c_{-n} = conj(c_n).
    std::vector<cplx> c(9);
    for (int n = 0; n <= 4; n += 2) {
        c[4 + n] = cplx(uniform(rng, -1, 1), n == 0 ? 0.0 : uniform(rng, -1, 1));
        c[4 - n] = std::conj(c[4 + n]);
    }
    const auto field = extend(CircleFunction(c));
    for (double rho : {0.5, 3.0, 12.0, 80.0}) EXPECT_LT(std::fabs(field.evaluate(rho, 0.0).imag()), 1e-12);
}

TEST(Quintic, ZeroInputGivesZero) {
    std::mt19937_64 rng(59);
    Quintuple f{random_function(rng, 2), random_function(rng, 2), CircleFunction(2), random_function(rng, 2),
                random_function(rng, 2)};
    EXPECT_EQ(l2_norm(quintic_polar(f)), 0.0);
    EXPECT_EQ(l2_norm(quintic_convolve(f, build_tensor(2))), 0.0);
}

TEST(Quintic, OnesGiveLambda0BothPaths) {
    const auto polar = quintic_polar(ones(), {.output_bandwidth = 3});
    const auto tensor = quintic_convolve(ones(), build_tensor(0));
    EXPECT_NEAR(polar.coeff(0).real(), kLambda0, 1e-9 * kLambda0);
    EXPECT_NEAR(tensor.coeff(0).real(), kLambda0, 1e-9 * kLambda0);
    for (int n = 1; n <= 3; ++n) EXPECT_LT(std::abs(polar.coeff(n)) + std::abs(polar.coeff(-n)), 1e-9 * kLambda0);
}

TEST(Quintic, RotationEquivariance) {
    std::mt19937_64 rng(61);
    Quintuple f;
    for (auto& g : f) g = random_function(rng, 3);
    const double t0 = 0.83;
    Quintuple r;
    for (int i = 0; i < 5; ++i) r[i] = f[i].rotated(t0);
    const auto a = quintic_polar(r), b = quintic_polar(f).rotated(t0);
    EXPECT_LT(max_coeff_distance(a, b), 1e-9 * l2_norm(b));
}

TEST(Quintic, TensorAndPolarPathsAgree) {
    std::mt19937_64 rng(67);
    const BesselTensor tensor = build_tensor(8);
    for (int trial = 0; trial < 5; ++trial) {
        const int n = 2 + 3 * (trial % 3);
        Quintuple f;
        for (auto& g : f) g = random_function(rng, n, 0.3);
        const auto a = quintic_polar(f, {.output_bandwidth = 8});
        const auto b = quintic_convolve(f, tensor);
        EXPECT_LT(l2_norm(a - b.padded(8)), 1e-6 * l2_norm(b)) << trial;
    }
}

TEST(Quintic, PolarSumMatchesSeparateTerms) {
    std::mt19937_64 rng(71);
    const auto f = random_function(rng, 3), g = random_function(rng, 3);
    const std::vector<QuinticTerm> terms{{2.0, {0, 0, 1, 1, 0}}, {cplx(0, -1), {1, 1, 1, 0, 0}}};
    const auto sum = quintic_polar_sum({f, g}, terms);
    const auto direct = quintic_polar({f, f, g, g, f}) * 2.0 + quintic_polar({g, g, g, f, f}) * cplx(0, -1);
    EXPECT_LT(l2_norm(sum - direct), 1e-12 * l2_norm(direct));
}

TEST(Quintic, OutputIsBandLimitedToTheSum) {
    std::mt19937_64 rng(73);
    Quintuple f;
    for (auto& g : f) g = random_function(rng, 1);
    const auto q = quintic_polar(f, {.output_bandwidth = 8});
    EXPECT_GT(std::abs(q.coeff(5)) + std::abs(q.coeff(-5)), 1e-6);
    for (int n = 6; n <= 8; ++n) EXPECT_LT(std::abs(q.coeff(n)) + std::abs(q.coeff(-n)), 1e-12 * l2_norm(q));
}

TEST(Quintic, InputAboveTensorBandwidth) {
    const auto f = CircleFunction::mode(3);
    EXPECT_THROW(quintic_convolve({f, f, f, f, f}, build_tensor(2)), SizeError);
}

TEST(Properties, DualityChain) {
    std::mt19937_64 rng(79);
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = random_function(rng, 1 + trial % 8, 0.2);
        const cplx pairing = inner_product(quintic_self(f), f);
        const double l6 = l6_norm(extend(f));
        const double dual = std::pow(l6, 6) / (kTwoPi * kTwoPi);
        EXPECT_NEAR(pairing.real(), dual, 1e-6 * dual) << trial;
        EXPECT_LT(std::fabs(pairing.imag()), 1e-9 * std::abs(pairing));
        EXPECT_GT(pairing.real(), 0.0);
    }
}

TEST(Properties, PairingMatchesCoefficientInnerProduct) {
    std::mt19937_64 rng(83);
    Quintuple f;
    for (auto& g : f) g = random_function(rng, 2);
    const auto h = random_function(rng, 4);
    const cplx a = quintic_pairing(f, h).value;
    const cplx b = inner_product(quintic_polar(f, {.output_bandwidth = 10}), h.padded(10));
    EXPECT_LT(std::abs(a - b), 1e-9 * std::abs(b));
}

TEST(BoundRatio, OnesAtScaleZero) {
    EXPECT_NEAR(quintilinear_bound_ratio(ones(), 0.0), kLambda0 / (kTwoPi * kTwoPi), 1e-9 * kLambda0);
}

TEST(BoundRatio, Homogeneity) {
    std::mt19937_64 rng(89);
    Quintuple f;
    for (auto& g : f) g = random_function(rng, 3);
    Quintuple d = f;
    for (auto& g : d) g = g * 2.0;
    for (double s : {0.0, 0.5}) {
        const double a = quintilinear_bound_ratio(f, s), b = quintilinear_bound_ratio(d, s);
        EXPECT_NEAR(b, a, 1e-9 * a) << s;
    }
}

TEST(BoundRatio, ZeroInputIsRejected) {
    Quintuple f = ones();
    f[2] = CircleFunction(0);
    EXPECT_THROW(quintilinear_bound_ratio(f, 0.0), PreconditionError);
}

TEST(BoundRatio, ChecksHoldOnRandomQuintuples) {
    std::mt19937_64 rng(97);
    for (int trial = 0; trial < 3; ++trial) {
        Quintuple f;
        for (auto& g : f) g = random_function(rng, 4);
        const auto checks = quintilinear_bound_checks(f, {0.0, 0.5}, kLambda0);
        ASSERT_EQ(checks.size(), 2u);
        for (const auto& c : checks) {
            EXPECT_TRUE(c.holds) << trial << " s=" << c.s;
            EXPECT_LE(c.ratio, c.bound_ratio);
        }
        EXPECT_NEAR(checks[0].ratio, quintilinear_bound_ratio(f, 0.0), 1e-9 * checks[0].ratio);
    }
}
