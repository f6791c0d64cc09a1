#pragma once

#include <array>
#include <optional>
#include <vector>

#include "tslab/bessel_tensor.hpp"
#include "tslab/circle_function.hpp"
#include "tslab/radial.hpp"

namespace tslab {

/// Five input functions of the quintilinear convolution
/// Q(f1,...,f5) = (f1 sigma * ... * f5 sigma) restricted to the circle.
using Quintuple = std::array<CircleFunction, 5>;

/// Tensor path: q_m = (2 pi)^4 sum_{n1+...+n5=m} prod c^{(i)}_{n_i}
/// int J_{n1} ... J_{n5} J_m rho d rho, for |m| <= tensor N.
/// Throws SizeError when an input exceeds the tensor bandwidth.
CircleFunction quintic_convolve(const Quintuple& f, const BesselTensor& tensor);

struct PolarOptions {
    int output_bandwidth = -1;          // default: largest input bandwidth
    std::optional<RadialGrid> grid;     // default: RadialGrid::for_bandwidth
    int angles = 0;                     // default: sum of bandwidths + output + 1
    unsigned threads = 0;
};

/// Polar path: product of the five extension fields on the polar grid, then
/// q_m = (2 pi)^{-1} i^m int J_m(rho) Pi_m(rho) rho d rho per angular mode m.
CircleFunction quintic_polar(const Quintuple& f, const PolarOptions& options = {});

/// coefficient * Q(functions[slots[0]], ..., functions[slots[4]]).
struct QuinticTerm {
    cplx coefficient;
    std::array<int, 5> slots;
};

/// Sum of quintilinear terms over a shared set of inputs, one polar pass.
CircleFunction quintic_polar_sum(const std::vector<CircleFunction>& functions, const std::vector<QuinticTerm>& terms,
                                 const PolarOptions& options = {});

/// Q(f, f, f, f~, f~).
CircleFunction quintic_self(const CircleFunction& f, const PolarOptions& options = {});
CircleFunction quintic_self(const CircleFunction& f, const BesselTensor& tensor);

/// <Q(f1..f5), g> = (2 pi)^{-2} int F1 ... F5 conj(G) d xi over the plane.
struct PairingResult {
    cplx value;
    double error;
};
PairingResult quintic_pairing(const Quintuple& f, const CircleFunction& g, std::optional<RadialGrid> grid = {});

}  // namespace tslab
