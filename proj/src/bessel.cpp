#include "tslab/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tslab/errors.hpp"

namespace tslab {
namespace {

constexpr double kSeriesLimit = 12.0;

void check_domain(int n, double x) {
    if (n < 0 || n > kMaxBesselOrder || !(x >= 0.0) || x > kMaxBesselArgument)
        throw DomainError("bessel_j: argument out of range (n=" + std::to_string(n) +
                          ", x=" + std::to_string(x) + ")");
}

double asymptotic_threshold(int n) { return 30.0 + 0.25 * double(n) * n; }

// Ascending series accumulated in extended precision; for x <= 12 the
// largest term is below 5e3.
double series(int n, double x) {
    if (x == 0.0) return n == 0 ? 1.0 : 0.0;
    const long double half = 0.5L * x;
    const long double q = -half * half;
    long double term = std::exp(n * std::log(static_cast<long double>(half)) - std::lgamma(n + 1.0L));
    long double sum = term;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<long double>(k) * (k + n));
        sum += term;
        if (std::fabs(term) < 1e-22L * std::fabs(sum) && k > 2) break;
    }
    return static_cast<double>(sum);
}

// Hankel's expansion with truncation at the smallest term.
double asymptotic(int n, double x) {
    const double mu = 4.0 * double(n) * n;
    double p = 0.0, q = 0.0;
    double term = 1.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 200; ++k) {
        if (k > 0) term *= (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (k * 8.0 * x);
        if (std::fabs(term) >= prev && k > 1) break;
        // i^k splits into the cosine (even k) and sine (odd k) amplitudes.
        switch (k % 4) {
            case 0: p += term; break;
            case 1: q += term; break;
            case 2: p -= term; break;
            case 3: q -= term; break;
        }
        prev = std::fabs(term);
        if (prev < 1e-17) break;
    }
    const double chi = x - (0.5 * n + 0.25) * std::numbers::pi;
    return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

// Miller's algorithm normalized by J_0 + 2 sum J_{2k} = 1.
void downward(int nmax, double x, std::span<double> out) {
    const int top = std::max(nmax, static_cast<int>(x));
    int start = top + 20 + static_cast<int>(std::sqrt(40.0 * (top + 1)));
    if (start % 2 != 0) ++start;
    double next = 0.0, cur = 1e-300, norm = 0.0;
    std::fill(out.begin(), out.end(), 0.0);
    for (int k = start; k >= 1; --k) {
        const double prev = 2.0 * k / x * cur - next;
        next = cur;
        cur = prev;  // cur now holds the unnormalized J_{k-1}
        if (k - 1 <= nmax) out[static_cast<std::size_t>(k - 1)] = cur;
        if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * cur;
        if (std::fabs(cur) > 1e250) {
            cur *= 1e-250;
            next *= 1e-250;
            norm *= 1e-250;
            for (int j = k - 1; j <= nmax; ++j) out[static_cast<std::size_t>(j)] *= 1e-250;
        }
    }
    norm += cur;
    const double inv = 1.0 / norm;
    for (int j = 0; j <= nmax; ++j) out[static_cast<std::size_t>(j)] *= inv;
}

}  // namespace

double bessel_j(int n, double x) {
    check_domain(n, x);
    if (x <= kSeriesLimit) return series(n, x);
    if (x >= asymptotic_threshold(n)) return asymptotic(n, x);
    std::vector<double> buf(static_cast<std::size_t>(n + 1));
    downward(n, x, buf);
    return buf[static_cast<std::size_t>(n)];
}

double bessel_j_signed(int n, double x) {
    if (n >= 0) return bessel_j(n, x);
    const double v = bessel_j(-n, x);
    return (n % 2 == 0) ? v : -v;
}

void bessel_j_orders(int nmax, double x, std::span<double> out) {
    check_domain(nmax, x);
    if (out.size() < static_cast<std::size_t>(nmax + 1)) throw SizeError("bessel_j_orders: output too small");
    if (x <= kSeriesLimit) {
        for (int n = 0; n <= nmax; ++n) out[static_cast<std::size_t>(n)] = series(n, x);
        return;
    }
    if (x >= asymptotic_threshold(nmax)) {
        for (int n = 0; n <= nmax; ++n) out[static_cast<std::size_t>(n)] = asymptotic(n, x);
        return;
    }
    downward(nmax, x, out.first(static_cast<std::size_t>(nmax + 1)));
}

std::vector<double> bessel_j_orders(int nmax, double x) {
    std::vector<double> out(static_cast<std::size_t>(nmax + 1));
    bessel_j_orders(nmax, x, out);
    return out;
}

double hankel_coefficient(int n, int k) {
    const double mu = 4.0 * double(n) * n;
    double a = 1.0;
    for (int j = 1; j <= k; ++j) a *= (mu - (2.0 * j - 1.0) * (2.0 * j - 1.0)) / (8.0 * j);
    return a;
}

}  // namespace tslab
