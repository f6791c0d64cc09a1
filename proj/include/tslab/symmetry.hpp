#pragma once

#include <array>

#include "tslab/circle_function.hpp"

namespace tslab {

/// Element of the symmetry group of the extension problem acting on
/// functions of the circle as
///
///     f  |->  M_xi R_theta C^b f,
///
/// with (R_theta f)(x) = f(rotation of x by theta), (M_xi f)(x) = e^{i x.xi} f(x)
/// and (C f)(x) = conj(f(-x)). C commutes with R and M, and
/// R_theta M_xi = M_{rot(-theta) xi} R_theta, which fixes the composition law.
struct SymmetryElement {
    double rotation = 0.0;
    std::array<double, 2> modulation{0.0, 0.0};
    bool conj_reflect = false;

    static SymmetryElement identity() { return {}; }
    bool is_identity() const {
        return rotation == 0.0 && modulation[0] == 0.0 && modulation[1] == 0.0 && !conj_reflect;
    }
    /// (a * b) f = a(b(f)).
    friend SymmetryElement operator*(const SymmetryElement& a, const SymmetryElement& b);
};

inline constexpr double kMaxModulation = 50.0;
inline constexpr double kJacobiAngerCutoff = 1e-14;

/// Coefficients i^n J_n(|xi|) e^{-i n arg xi} of e^{i x.xi}, truncated once
/// |J_n(|xi|)| < 1e-14. Throws DomainError if |xi| > 50.
CircleFunction plane_wave(std::array<double, 2> xi);

CircleFunction apply_symmetry(const CircleFunction& f, const SymmetryElement& s);

}  // namespace tslab
