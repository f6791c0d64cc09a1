#include "tslab/symmetry.hpp"

#include <cmath>
#include <vector>

#include "tslab/bessel.hpp"
#include "tslab/errors.hpp"

namespace tslab {

SymmetryElement operator*(const SymmetryElement& a, const SymmetryElement& b) {
    // M_a R_a C^a M_b R_b C^b = M_{a + rot(-theta_a) b} R_{theta_a + theta_b} C^{a xor b}
    const double c = std::cos(a.rotation), s = std::sin(a.rotation);
    SymmetryElement out;
    out.rotation = a.rotation + b.rotation;
    out.modulation = {a.modulation[0] + c * b.modulation[0] + s * b.modulation[1],
                      a.modulation[1] - s * b.modulation[0] + c * b.modulation[1]};
    out.conj_reflect = a.conj_reflect != b.conj_reflect;
    return out;
}

CircleFunction plane_wave(std::array<double, 2> xi) {
    const double r = std::hypot(xi[0], xi[1]);
    if (r > kMaxModulation) throw SizeError("plane_wave: |xi| > 50 overflows the bandwidth budget");
    if (r == 0.0) return CircleFunction::constant(1.0);
    const double angle = std::atan2(xi[1], xi[0]);
    int top = static_cast<int>(r) + 1;
    while (top < kMaxBesselOrder && std::fabs(bessel_j(top + 1, r)) >= kJacobiAngerCutoff) ++top;
    while (top > 0 && std::fabs(bessel_j(top, r)) < kJacobiAngerCutoff) --top;
    const auto j = bessel_j_orders(top, r);
    std::vector<cplx> coeffs(static_cast<std::size_t>(2 * top + 1));
    for (int n = -top; n <= top; ++n) {
        const double jn = (n < 0 && (-n) % 2 == 1) ? -j[static_cast<std::size_t>(-n)] : j[static_cast<std::size_t>(std::abs(n))];
        const cplx in = std::pow(cplx(0.0, 1.0), n);
        coeffs[static_cast<std::size_t>(n + top)] = in * jn * std::polar(1.0, -n * angle);
    }
    return CircleFunction(std::move(coeffs));
}

CircleFunction apply_symmetry(const CircleFunction& f, const SymmetryElement& s) {
    CircleFunction g = s.conj_reflect ? f.conj_reflect() : f;
    if (s.rotation != 0.0) g = g.rotated(s.rotation);
    if (s.modulation[0] == 0.0 && s.modulation[1] == 0.0) return g;
    const CircleFunction w = plane_wave(s.modulation);
    const int n = g.bandwidth(), k = w.bandwidth();
    std::vector<cplx> coeffs(static_cast<std::size_t>(2 * (n + k) + 1));
    for (int a = -n; a <= n; ++a)
        for (int b = -k; b <= k; ++b) coeffs[static_cast<std::size_t>(a + b + n + k)] += g.coeff(a) * w.coeff(b);
    return CircleFunction(std::move(coeffs));
}

}  // namespace tslab
