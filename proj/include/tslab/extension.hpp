#pragma once

#include <filesystem>
#include <vector>

#include "tslab/circle_function.hpp"
#include "tslab/radial.hpp"

namespace tslab {

/// Complex samples on the polar grid {rho_k} x {phi_j = 2 pi j / J}, stored
/// rho-major, with an asymptotic series per angle describing |xi| > P.
struct PolarSamples {
    RadialGrid grid;
    int angles = 0;
    std::vector<cplx> values;
    std::vector<AsymptoticSeries> tails;  // empty when no tail metadata

    cplx at(std::size_t k, int j) const { return values[k * static_cast<std::size_t>(angles) + static_cast<std::size_t>(j)]; }
    bool has_tail() const { return !tails.empty(); }

    PolarSamples operator*(const PolarSamples& other) const;
    PolarSamples conj() const;
};

/// int_{R^2} of the sampled function: trapezoid in angle, Gauss-Legendre in
/// rho, closed-form tail. Throws NumericalError when the tail is missing.
struct PlaneIntegral {
    cplx value;
    double error;
};
PlaneIntegral plane_integral(const PolarSamples& s);

/// J_m(rho_k), 0 <= m <= N, tabulated once for extending many functions of
/// bandwidth at most N onto the same polar grid.
class ExtensionBasis {
public:
    ExtensionBasis(int bandwidth, const RadialGrid& grid, int angles = 0);

    int bandwidth() const { return bandwidth_; }
    int angles() const { return angles_; }
    const RadialGrid& grid() const { return grid_; }
    /// Throws SizeError when f is wider than the basis.
    PolarSamples samples(const CircleFunction& f) const;

private:
    int bandwidth_;
    RadialGrid grid_;
    int angles_;
    std::vector<double> table_;  // row k holds J_0..J_N at node k
};

/// Extension (f sigma)^(xi) = 2 pi sum_n (-i)^n c_n J_n(|xi|) e^{i n phi}.
class ExtensionField {
public:
    ExtensionField(const CircleFunction& f, const RadialGrid& grid, int angles = 0);

    int bandwidth() const { return source_.bandwidth(); }
    const CircleFunction& source() const { return source_; }
    const PolarSamples& samples() const { return samples_; }
    const RadialGrid& grid() const { return samples_.grid; }
    int angles() const { return samples_.angles; }
    bool has_tail() const { return samples_.has_tail(); }

    /// Direct evaluation at an arbitrary point of the plane.
    cplx evaluate(double rho, double phi) const;
    /// Angular Fourier coefficient of mode n at radius rho.
    cplx mode(int n, double rho) const;

    /// Field of the conjugate reflection f~, equal to conj(F).
    ExtensionField conj() const;

    ExtensionField without_tail() const;

private:
    ExtensionField() = default;
    CircleFunction source_;
    PolarSamples samples_;
};

/// Angular grid size making |F|^6 exactly band-limited: max(6N+2, 64).
int default_angles(int bandwidth);

ExtensionField extend(const CircleFunction& f, const RadialGrid& grid, int angles = 0);
ExtensionField extend(const CircleFunction& f);

/// Per-angle Hankel tails for the angular coefficient sequence a_n(rho) =
/// scale_n J_n(rho), sampled on J angles (amplitude polynomials synthesized by FFT).
std::vector<AsymptoticSeries> angular_tails(std::span<const cplx> scale, int bandwidth, int angles, double cutoff);

struct DecayReport {
    double rho0;
    double cutoff;
    double sup;       // sup_{rho0 <= rho <= P} rho^{1/2} |F| / (2 pi)
    double argmax;    // radius attaining the sup
    bool bounded;     // sup <= 1
};
/// Samples rho0, rho0 + step, ..., P on the field's angular grid.
DecayReport decay_check(const ExtensionField& field, double rho0 = 10.0, double step = 0.005);

/// (int |F|^6 d xi)^{1/6}; refuses without tail metadata.
double l6_norm(const ExtensionField& field);
/// int |F|^6 d xi with its error estimate.
PlaneIntegral l6_power(const ExtensionField& field);

void write_field_csv(const ExtensionField& field, const std::filesystem::path& path);

}  // namespace tslab
