#pragma once

#include <span>
#include <vector>

namespace tslab {

inline constexpr int kMaxBesselOrder = 256;
inline constexpr double kMaxBesselArgument = 1e4;

/// J_n(x) for integer 0 <= n <= 256 and 0 <= x <= 1e4, absolute error
/// below 1e-12. Power series for x <= 12, Hankel asymptotics for
/// x >= 30 + n^2/4, normalized downward recurrence in between.
double bessel_j(int n, double x);

/// J_n for negative orders through J_{-n} = (-1)^n J_n.
double bessel_j_signed(int n, double x);

/// J_0(x) .. J_{nmax}(x) written to `out` (size nmax+1).
void bessel_j_orders(int nmax, double x, std::span<double> out);
std::vector<double> bessel_j_orders(int nmax, double x);

/// Hankel expansion coefficient a_k(n) = prod_{j=1}^k (4n^2-(2j-1)^2) / (k! 8^k),
/// so that H^{(1)}_n(x) ~ sqrt(2/(pi x)) e^{i(x - n pi/2 - pi/4)} sum_k i^k a_k(n) x^{-k}.
double hankel_coefficient(int n, int k);

}  // namespace tslab
