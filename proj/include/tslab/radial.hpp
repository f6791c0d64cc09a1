#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "tslab/fft.hpp"

namespace tslab {

inline constexpr double kDefaultCutoff = 200.0;

/// Composite Gauss-Legendre rule on [0, P]: equal panels of width `panel`,
/// 16 nodes each. Weights integrate d(rho); the rho of the polar measure is
/// applied by callers.
class RadialGrid {
public:
    explicit RadialGrid(double cutoff = kDefaultCutoff, double panel = 1.0, bool tail = true);

    /// Cutoff large enough for the Hankel tail expansion of modes |n| <= N
    /// to be effective: max(min_cutoff, N^2), capped at the Bessel argument limit.
    static RadialGrid for_bandwidth(int bandwidth, double min_cutoff = kDefaultCutoff);

    double cutoff() const { return cutoff_; }
    double panel() const { return panel_; }
    bool tail() const { return tail_; }
    std::span<const double> nodes() const { return nodes_; }
    std::span<const double> weights() const { return weights_; }
    std::size_t size() const { return nodes_.size(); }

    /// Same cutoff, panels halved.
    RadialGrid refined() const { return RadialGrid(cutoff_, 0.5 * panel_, tail_); }
    RadialGrid with_cutoff(double cutoff) const { return RadialGrid(cutoff, panel_, tail_); }
    RadialGrid without_tail() const { return RadialGrid(cutoff_, panel_, false); }

private:
    double cutoff_;
    double panel_;
    bool tail_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

/// Finite sum  rho^{-order} sum_terms e^{i omega rho} sum_k c_k rho^{-k}
/// describing the large-rho behaviour of Bessel products. Multiplication
/// merges equal frequencies and truncates each amplitude polynomial.
class AsymptoticSeries {
public:
    struct Term {
        double omega;
        std::vector<cplx> coeffs;
    };

    AsymptoticSeries() = default;
    AsymptoticSeries(double order, std::vector<Term> terms);

    /// Hankel expansion of J_n(scale * rho), truncated near its smallest term at
    /// rho = cutoff (at most `max_terms` terms).
    static AsymptoticSeries bessel(int n, double scale, double cutoff, int max_terms = 16);
    static AsymptoticSeries power(double exponent);  // rho^{exponent}

    double order() const { return order_; }
    std::span<const Term> terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    AsymptoticSeries operator*(const AsymptoticSeries& other) const;
    AsymptoticSeries operator*(cplx scale) const;
    AsymptoticSeries operator+(const AsymptoticSeries& other) const;
    AsymptoticSeries conj() const;
    /// Keeps amplitude polynomials of degree < max_degree.
    AsymptoticSeries truncated(int max_degree) const;

    struct TailIntegral {
        cplx value;
        double error;
    };
    /// int_P^inf of the series. Throws NumericalError when a non-oscillating
    /// term decays no faster than 1/rho.
    TailIntegral integrate_tail(double cutoff) const;
    cplx evaluate(double rho) const;

private:
    double order_ = 0.0;
    std::vector<Term> terms_;
};

/// int_P^inf rho^{-a} e^{i omega rho} d rho.
cplx power_exp_tail(double a, double omega, double cutoff);

/// Integrand on [0, P] together with its oscillatory tail beyond P.
struct RadialIntegrand {
    std::function<double(double)> body;
    std::optional<AsymptoticSeries> tail;
};

struct RadialResult {
    double value;
    double error;
};

/// int_0^inf g(rho) d rho: quadrature on [0, P] plus the closed-form tail.
/// Without tail metadata the integrand must already be negligible at P,
/// otherwise NumericalError (non-decaying integrand).
RadialResult radial_integrate(const RadialIntegrand& g, const RadialGrid& grid);

}  // namespace tslab
