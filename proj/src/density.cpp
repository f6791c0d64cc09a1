#include "tslab/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss.hpp>

#include "tslab/bessel.hpp"
#include "tslab/circle_function.hpp"
#include "tslab/errors.hpp"

namespace tslab {
namespace {

using Gauss16 = boost::math::quadrature::gauss<double, 16>;

constexpr double kMaxCutoff = 2e4;
constexpr double kMinHankelArgument = 12.0;
constexpr double kSmallRadius = kMinHankelArgument / kMaxCutoff;

template <class F>
double gauss_panel(F&& f, double a, double b) {
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    const auto& x = Gauss16::abscissa();
    const auto& w = Gauss16::weights();
    double sum = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) sum += w[k] * (f(mid - half * x[k]) + f(mid + half * x[k]));
    return half * sum;
}

// Panels on [a, b] shrinking geometrically towards the flagged ends.
std::vector<std::pair<double, double>> graded_panels(double a, double b, bool grade_a, bool grade_b, int levels = 12,
                                                     double ratio = 0.3) {
    std::vector<std::pair<double, double>> out;
    const double mid = 0.5 * (a + b);
    auto half = [&](double from, double to, bool grade) {
        if (!grade) {
            out.emplace_back(std::min(from, to), std::max(from, to));
            return;
        }
        // `from` is the graded endpoint.
        double inner = to;
        for (int l = 0; l < levels; ++l) {
            const double next = from + (inner - from) * ratio;
            out.emplace_back(std::min(next, inner), std::max(next, inner));
            inner = next;
        }
        out.emplace_back(std::min(from, inner), std::max(from, inner));
    };
    half(a, mid, grade_a);
    half(b, mid, grade_b);
    return out;
}

double mu2(double r) {
    if (r >= 2.0) return 0.0;
    // c / (r sqrt(4 - r^2)) with c fixed by the mass (2 pi)^2: 2 pi c (pi/2) = 4 pi^2.
    const double c = kTwoPi * kTwoPi / (kTwoPi * kPi / 2.0);
    return c / (r * std::sqrt(4.0 - r * r));
}

// mu_3(x) = int mu_2(x - y) d sigma(y), written over d = |x - y| in [a, b] and
// substituted d = (a+b)/2 + (b-a)/2 cos t to absorb both inverse square roots.
double mu3(double r) {
    if (r >= 3.0) return 0.0;
    const double a = std::fabs(1.0 - r), b = std::min(1.0 + r, 2.0);
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    auto integrand = [&](double t) {
        const double d = c + h * std::cos(t);
        const double rest = r < 1.0 ? (4.0 - d * d) * (r + 1.0 + d) * (d + a)
                                    : (2.0 + d) * (r + 1.0 + d) * (r + 1.0 - d) * (d + a);
        return 16.0 / std::sqrt(rest);
    };
    double sum = 0.0;
    for (const auto& [lo, hi] : graded_panels(0.0, kPi, true, true, 16, 0.35)) sum += gauss_panel(integrand, lo, hi);
    return sum;
}

// mu_k for k = 4, 5 via the radial Hankel representation.
class HankelDensity {
public:
    HankelDensity(int order, const RadialGrid& grid) : order_(order), grid_(grid) {
        const auto nodes = grid_.nodes();
        power_.resize(nodes.size());
        for (std::size_t k = 0; k < nodes.size(); ++k) power_[k] = std::pow(bessel_j(0, nodes[k]), order_);
        prefactor_ = std::pow(kTwoPi, order_ - 1);
    }

    double operator()(double r) const {
        if (order_ == 5 && r < kSmallRadius) r = 0.0;
        const double needed = r > 0.0 ? std::min(kMaxCutoff, std::max(grid_.cutoff(), kMinHankelArgument / r)) : grid_.cutoff();
        if (needed > grid_.cutoff()) {
            const RadialGrid wide(std::ceil(needed), grid_.panel(), grid_.tail());
            return integrate(r, wide, nullptr);
        }
        return integrate(r, grid_, &power_);
    }

private:
    double integrate(double r, const RadialGrid& grid, const std::vector<double>* cached) const {
        const auto nodes = grid.nodes();
        const auto weights = grid.weights();
        double sum = 0.0;
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            const double p = cached ? (*cached)[k] : std::pow(bessel_j(0, nodes[k]), order_);
            sum += weights[k] * nodes[k] * p * bessel_j(0, r * nodes[k]);
        }
        if (grid.tail()) {
            const auto j0 = AsymptoticSeries::bessel(0, 1.0, grid.cutoff());
            AsymptoticSeries series = AsymptoticSeries::bessel(0, r, grid.cutoff()) * AsymptoticSeries::power(1.0);
            for (int i = 0; i < order_; ++i) series = series * j0;
            sum += series.integrate_tail(grid.cutoff()).value.real();
        }
        return prefactor_ * sum;
    }

    int order_;
    RadialGrid grid_;
    std::vector<double> power_;
    double prefactor_;
};

void check_order(int order) {
    if (order < 2 || order > 5) throw DomainError("density order must be in 2..5");
}

}  // namespace

std::vector<double> singular_radii(int order) {
    check_order(order);
    switch (order) {
        case 2: return {0.0, 2.0};
        case 3: return {1.0, 3.0};
        case 4: return {0.0, 2.0, 4.0};
        default: return {};
    }
}

bool near_singular(int order, double r) {
    for (double s : singular_radii(order))
        if (std::fabs(r - s) < kSingularMargin) return true;
    return false;
}

std::optional<double> density_value(int order, double r, const RadialGrid& grid) {
    check_order(order);
    if (r < 0.0) throw DomainError("density radius must be nonnegative");
    if (near_singular(order, r)) return std::nullopt;
    if (r >= order) return 0.0;
    switch (order) {
        case 2: return mu2(r);
        case 3: return mu3(r);
        default: return HankelDensity(order, grid)(r);
    }
}

double density_mass(int order, const RadialGrid& grid) {
    check_order(order);
    std::optional<HankelDensity> hankel;
    if (order >= 4) hankel.emplace(order, grid);
    auto value = [&](double r) {
        switch (order) {
            case 2: return mu2(r);
            case 3: return mu3(r);
            default: return (*hankel)(r);
        }
    };
    const auto flagged = singular_radii(order);
    auto rough = [&](double x) {
        return x == double(order) || std::find(flagged.begin(), flagged.end(), x) != flagged.end() ||
               (order >= 3 && x > 0.0);
    };
    double sum = 0.0;
    for (int i = 0; i < order; ++i) {
        // mu_4 is log-singular at 0; the first 1e-3 carries a relative mass of order 1e-6.
        const double lo = (order == 4 && i == 0) ? kSingularMargin : double(i);
        for (const auto& [a, b] : graded_panels(lo, i + 1.0, rough(double(i)) && lo == double(i), rough(i + 1.0)))
            sum += gauss_panel([&](double r) { return r * value(r); }, a, b);
    }
    return kTwoPi * sum;
}

RadialDensity auto_density(int order, const std::vector<double>& radii, const RadialGrid& grid) {
    check_order(order);
    RadialDensity d;
    d.order = order;
    d.radii = radii;
    d.singular_radii = singular_radii(order);
    std::optional<HankelDensity> hankel;
    if (order >= 4) hankel.emplace(order, grid);
    for (double r : radii) {
        if (r < 0.0) throw DomainError("density radius must be nonnegative");
        const bool flag = near_singular(order, r);
        d.singular.push_back(flag);
        if (flag) {
            d.values.push_back(std::numeric_limits<double>::quiet_NaN());
            continue;
        }
        double v = 0.0;
        if (r < order) v = order == 2 ? mu2(r) : order == 3 ? mu3(r) : (*hankel)(r);
        d.values.push_back(v);
    }
    d.mass = density_mass(order, grid);
    return d;
}

SupBoundReport sup_bound_check(int order, double radius, int points, const RadialGrid& grid) {
    check_order(order);
    if (points < 2) throw DomainError("sup_bound_check needs at least two points");
    HankelDensity hankel(std::max(order, 4), grid);
    SupBoundReport report{order, radius, points, 0, 0.0, 0.0, true};
    for (int i = 0; i < points; ++i) {
        const double r = radius * i / (points - 1);
        if (near_singular(order, r)) {
            ++report.excluded;
            continue;
        }
        const double v = r >= order ? 0.0 : order == 2 ? mu2(r) : order == 3 ? mu3(r) : hankel(r);
        if (!std::isfinite(v)) report.finite = false;
        if (v > report.sup) {
            report.sup = v;
            report.argmax = r;
        }
    }
    return report;
}

void to_json(nlohmann::json& j, const RadialDensity& d) {
    auto values = nlohmann::json::array();
    for (std::size_t i = 0; i < d.values.size(); ++i) {
        if (d.singular[i])
            values.push_back(nullptr);
        else
            values.push_back(d.values[i]);
    }
    j = nlohmann::json{{"order", d.order},       {"radii", d.radii}, {"values", values},
                       {"singular", d.singular}, {"singular_radii", d.singular_radii},
                       {"mass", d.mass},         {"expected_mass", std::pow(kTwoPi, d.order)}};
}

void to_json(nlohmann::json& j, const SupBoundReport& r) {
    j = nlohmann::json{{"order", r.order}, {"radius", r.radius}, {"points", r.points}, {"excluded", r.excluded},
                       {"sup", r.sup},     {"argmax", r.argmax}, {"finite", r.finite}};
}

}  // namespace tslab
