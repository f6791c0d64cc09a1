#pragma once

#include <complex>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "tslab/fft.hpp"

namespace tslab {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Smallest admissible uniform grid for bandwidth N.
constexpr int min_grid_size(int bandwidth) { return 2 * bandwidth + 2; }
/// Default grid size M = 4N (at least 8 points).
constexpr int default_grid_size(int bandwidth) { return bandwidth < 2 ? 8 : 4 * bandwidth; }

/// A band-limited complex function on the unit circle,
/// f(theta) = sum_{|n|<=N} c_n e^{i n theta}.
///
/// Coefficients are the primary representation. A function built from
/// samples also keeps those samples so that sample-space estimators see
/// exactly the data it was created from. Instances are immutable.
class CircleFunction {
public:
    CircleFunction() : CircleFunction(0) {}
    explicit CircleFunction(int bandwidth);
    /// `coeffs` is ordered n = -N..N and must have odd length.
    explicit CircleFunction(std::vector<cplx> coeffs);

    static CircleFunction constant(cplx value);
    static CircleFunction mode(int n, cplx amplitude = 1.0);
    /// Fourier-series truncation of sign(cos theta) at bandwidth N.
    static CircleFunction square_wave(int bandwidth);
    /// Keeps the samples alongside the analyzed coefficients.
    static CircleFunction from_samples(std::vector<cplx> samples, int bandwidth);

    int bandwidth() const { return bandwidth_; }
    cplx coeff(int n) const;
    std::span<const cplx> coeffs() const { return coeffs_; }
    bool has_samples() const { return samples_.has_value(); }

    /// Values on theta_m = 2 pi m / M.
    std::vector<cplx> samples(int grid_size) const;
    std::vector<cplx> samples() const { return samples(default_grid_size(bandwidth_)); }
    cplx operator()(double theta) const;

    CircleFunction padded(int bandwidth) const;
    /// Modes |n| <= cutoff.
    CircleFunction low_pass(int cutoff) const;
    /// Modes |n| > cutoff.
    CircleFunction high_pass(int cutoff) const;
    /// f~(theta) = conj(f(theta + pi)), i.e. d_n = (-1)^n conj(c_{-n}).
    CircleFunction conj_reflect() const;
    /// (R_t f)(theta) = f(theta + t).
    CircleFunction rotated(double t) const;
    /// m-th angular derivative, taken spectrally.
    CircleFunction derivative(int order) const;
    CircleFunction conj() const;

    CircleFunction operator+(const CircleFunction& other) const;
    CircleFunction operator-(const CircleFunction& other) const;
    CircleFunction operator*(cplx scale) const;
    friend CircleFunction operator*(cplx scale, const CircleFunction& f) { return f * scale; }

    bool is_zero() const;

private:
    int bandwidth_;
    std::vector<cplx> coeffs_;
    std::optional<std::vector<cplx>> samples_;
};

/// samples[m] = sum c_n e^{i n theta_m}. Throws SizeError if M < 2N+2.
std::vector<cplx> synthesize(std::span<const cplx> coeffs, int grid_size);

struct Analysis {
    CircleFunction function;
    /// Energy in DFT bins above mode N relative to the total.
    double aliased_fraction = 0.0;
    bool aliasing_warning = false;
};

/// c_n = (1/M) sum_m samples[m] e^{-i n theta_m}.
Analysis analyze_checked(std::span<const cplx> samples, int bandwidth);
CircleFunction analyze(std::span<const cplx> samples, int bandwidth);

/// <f, g> = int f conj(g) dtheta = 2 pi sum c_n conj(d_n).
cplx inner_product(const CircleFunction& f, const CircleFunction& g);
double l2_norm(const CircleFunction& f);
/// (2 pi sum (1+n^2)^s |c_n|^2)^{1/2}; s = 0 is the L2 norm.
double weighted_norm(const CircleFunction& f, double s);
/// Max modulus over an oversampled grid of `oversample * (2N+1)` points.
double sup_norm(const CircleFunction& f, int oversample = 8);
double max_coeff_distance(const CircleFunction& f, const CircleFunction& g);
/// Pointwise product, exact (bandwidth N_f + N_g).
CircleFunction product(const CircleFunction& f, const CircleFunction& g);
/// |f|^2 at bandwidth 2N.
CircleFunction abs_squared(const CircleFunction& f);

void to_json(nlohmann::json& j, const CircleFunction& f);
void from_json(const nlohmann::json& j, CircleFunction& f);

}  // namespace tslab
