#include "tslab/radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "tslab/bessel.hpp"
#include "tslab/errors.hpp"

namespace tslab {
namespace {

using Gauss16 = boost::math::quadrature::gauss<double, 16>;

constexpr double kFrequencyTol = 1e-12;
constexpr int kExact = std::numeric_limits<int>::max();

template <class F>
cplx gauss_panel(F&& f, double a, double b) {
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    const auto& x = Gauss16::abscissa();
    const auto& w = Gauss16::weights();
    cplx sum = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) sum += w[k] * (f(mid - half * x[k]) + f(mid + half * x[k]));
    return half * sum;
}

cplx asymptotic_tail(double a, double omega, double cutoff) {
    // int_P^inf rho^{-a} e^{i w rho} = e^{i w P} P^{-a} (i/w) sum_j prod_{l<j} (-i)(a+l)/(w P)
    const cplx step_base(0.0, -1.0 / (omega * cutoff));
    cplx term = 1.0, sum = 1.0;
    double prev = 1.0;
    for (int j = 0; j < 400; ++j) {
        term *= step_base * (a + j);
        const double mag = std::abs(term);
        if (mag >= prev) break;
        sum += term;
        prev = mag;
        if (mag < 1e-18) break;
    }
    return std::polar(std::pow(cutoff, -a), omega * cutoff) * cplx(0.0, 1.0 / omega) * sum;
}

}  // namespace

RadialGrid::RadialGrid(double cutoff, double panel, bool tail) : cutoff_(cutoff), panel_(panel), tail_(tail) {
    if (!(cutoff > 0.0) || !(panel > 0.0)) throw DomainError("RadialGrid: cutoff and panel must be positive");
    const int panels = std::max(1, static_cast<int>(std::ceil(cutoff / panel - 1e-9)));
    const double width = cutoff / panels;
    panel_ = width;
    const auto& x = Gauss16::abscissa();
    const auto& w = Gauss16::weights();
    nodes_.reserve(static_cast<std::size_t>(panels) * 16);
    weights_.reserve(nodes_.capacity());
    for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * width, half = 0.5 * width;
        for (std::size_t k = x.size(); k-- > 0;) {
            nodes_.push_back(mid - half * x[k]);
            weights_.push_back(half * w[k]);
        }
        for (std::size_t k = 0; k < x.size(); ++k) {
            nodes_.push_back(mid + half * x[k]);
            weights_.push_back(half * w[k]);
        }
    }
}

RadialGrid RadialGrid::for_bandwidth(int bandwidth, double min_cutoff) {
    return RadialGrid(std::min(kMaxBesselArgument, std::max(min_cutoff, std::ceil(1.0 * bandwidth * bandwidth))));
}

AsymptoticSeries::AsymptoticSeries(double order, std::vector<Term> terms) : order_(order), terms_(std::move(terms)) {}

AsymptoticSeries AsymptoticSeries::power(double exponent) {
    return AsymptoticSeries(-exponent, {Term{0.0, {cplx(1.0)}}});
}

AsymptoticSeries AsymptoticSeries::bessel(int n, double scale, double cutoff, int max_terms) {
    const int order = std::abs(n);
    const double parity = (n < 0 && order % 2 == 1) ? -1.0 : 1.0;
    if (scale == 0.0) return AsymptoticSeries(0.0, {Term{0.0, {cplx(order == 0 ? 1.0 : 0.0)}}}) ;
    std::vector<cplx> plus;
    const double amp = parity * 0.5 * std::sqrt(2.0 / (std::numbers::pi * scale));
    const cplx phase = std::polar(1.0, -(0.5 * order + 0.25) * std::numbers::pi);
    const double x = scale * cutoff;
    double prev = std::numeric_limits<double>::infinity();
    cplx ik = 1.0;
    for (int k = 0; k < max_terms; ++k) {
        const double a = hankel_coefficient(order, k);
        const double mag = std::fabs(a) * std::pow(x, -k);
        if (k > 1 && mag >= prev) break;
        plus.push_back(amp * phase * ik * a * std::pow(scale, -k));
        prev = mag;
        ik *= cplx(0.0, 1.0);
        if (k > 0 && mag < 1e-18) break;
    }
    std::vector<cplx> minus(plus.size());
    std::transform(plus.begin(), plus.end(), minus.begin(), [](cplx c) { return std::conj(c); });
    return AsymptoticSeries(0.5, {Term{scale, std::move(plus)}, Term{-scale, std::move(minus)}});
}

AsymptoticSeries AsymptoticSeries::operator*(const AsymptoticSeries& other) const {
    // An amplitude polynomial with a single coefficient is treated as exact
    // (powers of rho); otherwise the product keeps the shorter length.
    auto reliable = [](const AsymptoticSeries& s) {
        int len = kExact;
        for (const Term& t : s.terms_)
            if (t.coeffs.size() > 1) len = std::min(len, static_cast<int>(t.coeffs.size()));
        return len;
    };
    const int limit = std::min(reliable(*this), reliable(other));
    std::vector<Term> out;
    for (const Term& a : terms_) {
        for (const Term& b : other.terms_) {
            const double omega = a.omega + b.omega;
            const std::size_t len = std::min<std::size_t>(a.coeffs.size() + b.coeffs.size() - 1,
                                                          limit == kExact ? a.coeffs.size() + b.coeffs.size() - 1
                                                                          : static_cast<std::size_t>(limit));
            auto it = std::find_if(out.begin(), out.end(),
                                   [&](const Term& t) { return std::fabs(t.omega - omega) < kFrequencyTol; });
            if (it == out.end()) {
                out.push_back(Term{omega, std::vector<cplx>(len)});
                it = std::prev(out.end());
            }
            if (it->coeffs.size() < len) it->coeffs.resize(len);
            for (std::size_t i = 0; i < a.coeffs.size(); ++i)
                for (std::size_t j = 0; j < b.coeffs.size() && i + j < len; ++j)
                    it->coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
        }
    }
    return AsymptoticSeries(order_ + other.order_, std::move(out));
}

AsymptoticSeries AsymptoticSeries::operator*(cplx scale) const {
    AsymptoticSeries out = *this;
    for (Term& t : out.terms_)
        for (cplx& c : t.coeffs) c *= scale;
    return out;
}

AsymptoticSeries AsymptoticSeries::operator+(const AsymptoticSeries& other) const {
    if (empty()) return other;
    if (other.empty()) return *this;
    if (std::fabs(order_ - other.order_) > 1e-12) throw DomainError("AsymptoticSeries: order mismatch in sum");
    AsymptoticSeries out = *this;
    for (const Term& b : other.terms_) {
        auto it = std::find_if(out.terms_.begin(), out.terms_.end(),
                               [&](const Term& t) { return std::fabs(t.omega - b.omega) < kFrequencyTol; });
        if (it == out.terms_.end()) {
            out.terms_.push_back(b);
            continue;
        }
        if (it->coeffs.size() < b.coeffs.size()) it->coeffs.resize(b.coeffs.size());
        for (std::size_t k = 0; k < b.coeffs.size(); ++k) it->coeffs[k] += b.coeffs[k];
    }
    return out;
}

AsymptoticSeries AsymptoticSeries::conj() const {
    AsymptoticSeries out = *this;
    for (Term& t : out.terms_) {
        t.omega = -t.omega;
        for (cplx& c : t.coeffs) c = std::conj(c);
    }
    return out;
}

AsymptoticSeries AsymptoticSeries::truncated(int max_degree) const {
    AsymptoticSeries out = *this;
    for (Term& t : out.terms_)
        if (static_cast<int>(t.coeffs.size()) > max_degree) t.coeffs.resize(static_cast<std::size_t>(max_degree));
    return out;
}

AsymptoticSeries::TailIntegral AsymptoticSeries::integrate_tail(double cutoff) const {
    double scale = 0.0;
    for (const Term& t : terms_)
        for (const cplx& c : t.coeffs) scale = std::max(scale, std::abs(c));
    TailIntegral result{0.0, 0.0};
    for (const Term& t : terms_) {
        const bool flat = std::fabs(t.omega) < kFrequencyTol;
        for (std::size_t k = 0; k < t.coeffs.size(); ++k) {
            const double a = order_ + static_cast<double>(k);
            if (flat && a <= 1.0) {
                if (std::abs(t.coeffs[k]) > 1e-13 * scale)
                    throw NumericalError("non-decaying integrand: tail term rho^{-" + std::to_string(a) +
                                         "} does not converge");
                continue;
            }
            const cplx piece = t.coeffs[k] * power_exp_tail(a, flat ? 0.0 : t.omega, cutoff);
            result.value += piece;
            if (k + 1 == t.coeffs.size() && t.coeffs.size() > 1) result.error += std::abs(piece);
        }
    }
    return result;
}

cplx AsymptoticSeries::evaluate(double rho) const {
    cplx sum = 0.0;
    for (const Term& t : terms_) {
        cplx poly = 0.0;
        for (std::size_t k = t.coeffs.size(); k-- > 0;) poly = poly / rho + t.coeffs[k];
        sum += std::polar(1.0, t.omega * rho) * poly;
    }
    return sum * std::pow(rho, -order_);
}

cplx power_exp_tail(double a, double omega, double cutoff) {
    if (std::fabs(omega) < kFrequencyTol) {
        if (a <= 1.0) throw NumericalError("power_exp_tail: divergent non-oscillating tail");
        return std::pow(cutoff, 1.0 - a) / (a - 1.0);
    }
    const double far = (40.0 + a) / std::fabs(omega);
    if (cutoff >= far) return asymptotic_tail(a, omega, cutoff);
    // Panels no wider than one radian of phase and a quarter of the radius.
    cplx sum = 0.0;
    double left = cutoff;
    while (left < far) {
        const double width = std::min({1.0 / std::fabs(omega), 0.25 * left, far - left});
        sum += gauss_panel([&](double r) { return std::polar(std::pow(r, -a), omega * r); }, left, left + width);
        left += width;
    }
    return sum + asymptotic_tail(a, omega, far);
}

RadialResult radial_integrate(const RadialIntegrand& g, const RadialGrid& grid) {
    const auto nodes = grid.nodes();
    const auto weights = grid.weights();
    double sum = 0.0, magnitude = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const double v = weights[k] * g.body(nodes[k]);
        sum += v;
        magnitude += std::fabs(v);
    }
    RadialResult result{sum, 1e-15 * magnitude};
    const double cutoff = grid.cutoff();
    if (g.tail && grid.tail()) {
        const auto tail = g.tail->integrate_tail(cutoff);
        result.value += tail.value.real();
        result.error += tail.error;
        return result;
    }
    if (!g.tail) {
        double edge = 0.0;
        for (double r = std::max(0.0, cutoff - 10.0); r <= cutoff; r += 0.25) edge = std::max(edge, std::fabs(g.body(r)) * r);
        if (edge > 1e-8 * std::max(1.0, std::fabs(sum)))
            throw NumericalError("non-decaying integrand: |g| rho = " + std::to_string(edge) + " at the cutoff");
        result.error += edge;
    }
    return result;
}

}  // namespace tslab
