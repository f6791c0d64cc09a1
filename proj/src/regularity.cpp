#include "tslab/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <iomanip>
#include <limits>

#include "tslab/errors.hpp"

namespace tslab {
namespace {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    if (x.size() < 2) throw DomainError("fit_line: at least two points required");
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LineFit fit;
    fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

int resolve_grid(const CircleFunction& f, int grid_size) {
    const int m = grid_size > 0 ? grid_size : std::max(8, default_grid_size(f.bandwidth()));
    if (m < min_grid_size(f.bandwidth())) throw SizeError("grid too small for the bandwidth");
    return m;
}

// ||R_t g - g||^2 = 2 pi sum |g_n|^2 4 sin^2(n t / 2)
double rotation_difference(std::span<const cplx> g, int bandwidth, double t) {
    double sum = 0.0;
    for (int n = -bandwidth; n <= bandwidth; ++n) {
        const double s = std::sin(0.5 * n * t);
        sum += std::norm(g[static_cast<std::size_t>(n + bandwidth)]) * 4.0 * s * s;
    }
    return std::sqrt(kTwoPi * sum);
}

double sup_difference(const CircleFunction& f, const std::vector<cplx>& base, double t, int m) {
    const auto shifted = f.rotated(t).samples(m);
    double sup = 0.0;
    for (std::size_t i = 0; i < base.size(); ++i) sup = std::max(sup, std::abs(shifted[i] - base[i]));
    return sup;
}

double sample_sup(const std::vector<cplx>& v) {
    double sup = 0.0;
    for (const cplx& z : v) sup = std::max(sup, std::abs(z));
    return sup;
}

}  // namespace

std::vector<double> dyadic_grid() {
    std::vector<double> t(kDyadicLevels + 1);
    for (int k = 0; k <= kDyadicLevels; ++k) t[static_cast<std::size_t>(k)] = std::ldexp(1.0, -k);
    return t;
}

HolderEstimate holder_profile(const CircleFunction& f, double alpha, int grid_size) {
    if (!(alpha > 0.0) || alpha > 1.0) throw DomainError("holder_profile: alpha must lie in (0, 1]");
    const int m = resolve_grid(f, grid_size);
    const auto base = f.samples(m);
    HolderEstimate h;
    h.alpha = alpha;
    h.grid_size = m;
    h.sup_norm = sample_sup(base);
    h.steps = dyadic_grid();
    std::vector<double> levels, logs;
    double best = 0.0;
    for (std::size_t k = 0; k < h.steps.size(); ++k) {
        const double t = h.steps[k];
        const double q = sup_difference(f, base, t, m) / std::pow(t, alpha);
        h.quotients.push_back(q);
        best = std::max(best, q);
        if (f.bandwidth() > 0 && t * f.bandwidth() >= kPi && q > 0.0) {
            levels.push_back(static_cast<double>(k));
            logs.push_back(std::log2(q));
        }
    }
    h.value = h.sup_norm + best;
    if (levels.size() >= 2) h.growth_slope = fit_line(levels, logs).slope;
    h.diverging = h.growth_slope > 0.5 * alpha;
    return h;
}

double holder_estimate(const CircleFunction& f, double alpha, int grid_size) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) throw DomainError("holder_estimate: alpha must lie in (0, 1)");
    return holder_profile(f, alpha, grid_size).value;
}

double lipschitz_estimate(const CircleFunction& f, int grid_size) { return holder_profile(f, 1.0, grid_size).value; }

CalHEstimate calH_profile(const CircleFunction& f, double s) {
    if (!(s >= 0.0)) throw DomainError("calH_estimate: s must be nonnegative");
    const double k = std::floor(s);
    if (s > 0.0 && s == k) throw DomainError("calH_estimate: s must not be a positive integer");
    CalHEstimate c;
    c.s = s;
    c.l2 = l2_norm(f);
    c.value = c.l2;
    if (s == 0.0) return c;
    c.derivatives = static_cast<int>(k);
    const double alpha = s - k;
    const auto steps = dyadic_grid();
    const int n = f.bandwidth();
    for (int order = 0; order <= c.derivatives; ++order) {
        const CircleFunction g = order == 0 ? f : f.derivative(order);
        double best = 0.0;
        for (double t : steps) best = std::max(best, rotation_difference(g.coeffs(), n, t) / std::pow(t, alpha));
        c.seminorms.push_back(best);
        c.value += best;
        if (order == c.derivatives && order > 0) {
            double total = 0.0, high = 0.0;
            for (int j = -n; j <= n; ++j) {
                const double e = std::norm(g.coeff(j));
                total += e;
                if (2 * std::abs(j) > n) high += e;
            }
            c.bandwidth_warning = total > 0.0 && high > 0.1 * total;
        }
    }
    return c;
}

double calH_estimate(const CircleFunction& f, double s) { return calH_profile(f, s).value; }

DecaySlope decay_slope(const CircleFunction& f, int lo, int hi) {
    lo = std::max(lo, 1);
    hi = std::min(hi, f.bandwidth());
    if (lo > hi) throw DomainError("decay_slope: empty band");
    double scale = 0.0;
    for (const cplx& c : f.coeffs()) scale = std::max(scale, std::abs(c));
    const double floor = 1e-14 * std::max(1.0, scale);
    std::vector<double> x, y;
    for (int n = lo; n <= hi; ++n) {
        for (int sign : {-1, 1}) {
            const double a = std::abs(f.coeff(sign * n));
            if (a < floor) continue;
            x.push_back(std::log(static_cast<double>(n)));
            y.push_back(std::log(a));
        }
    }
    if (x.size() < 2) throw DomainError("decay_slope: fewer than two coefficients above the floor");
    const LineFit fit = fit_line(x, y);
    return DecaySlope{fit.slope, fit.intercept, fit.residual, static_cast<int>(x.size())};
}

double interpolation_constant(const CircleFunction& f, double beta, double alpha) {
    if (!(0.0 < beta && beta < alpha)) throw DomainError("interpolation_constant: need 0 < beta < alpha");
    const double l2 = l2_norm(f);
    if (l2 == 0.0) throw PreconditionError("interpolation_constant: zero function");
    const double theta = beta / alpha;
    return calH_estimate(f, beta) / (std::pow(l2, 1.0 - theta) * std::pow(calH_estimate(f, alpha), theta));
}

SharpFlatSplit sharp_flat_split(const CircleFunction& f, double eta, double scale) {
    if (!(eta > 0.0)) throw DomainError("sharp_flat_split: eta must be positive");
    const int n = f.bandwidth();
    SplitReport r;
    r.eta = eta;
    r.scale = scale;
    r.norm = calH_estimate(f, scale);
    r.flat_bound = eta * r.norm;
    // tail[K] = ||modes |n| > K||^2
    std::vector<double> tail(static_cast<std::size_t>(n + 1), 0.0);
    for (int k = n - 1; k >= 0; --k)
        tail[static_cast<std::size_t>(k)] =
            tail[static_cast<std::size_t>(k + 1)] + kTwoPi * (std::norm(f.coeff(k + 1)) + std::norm(f.coeff(-k - 1)));
    int cutoff = n;
    while (cutoff > 0 && std::sqrt(tail[static_cast<std::size_t>(cutoff - 1)]) <= r.flat_bound) --cutoff;
    r.cutoff = cutoff;
    SharpFlatSplit out{f.low_pass(cutoff), f.high_pass(cutoff), {}};
    r.flat_l2 = l2_norm(out.flat);
    r.sharp_l2 = l2_norm(out.sharp);
    r.sharp_constant = r.norm > 0.0 ? r.sharp_l2 / r.norm : 0.0;
    r.sharp_lipschitz = lipschitz_estimate(out.sharp.padded(std::max(cutoff, 1)));
    const bool partition = max_coeff_distance(out.sharp + out.flat, f) == 0.0;
    r.bounds_hold = partition && r.flat_l2 <= r.flat_bound * (1.0 + 1e-12) && r.sharp_constant <= 1.0 + 1e-12;
    out.report = r;
    return out;
}

EtaOptimization eta_optimization(const CircleFunction& f, double scale, double eta0, int halvings) {
    if (halvings < 1) throw DomainError("eta_optimization: at least one halving required");
    EtaOptimization e;
    std::vector<double> le, lk, ll;
    for (int j = 0; j <= halvings; ++j) {
        const double eta = std::ldexp(eta0, -j);
        const SplitReport r = sharp_flat_split(f, eta, scale).report;
        e.splits.push_back(r);
        if (r.cutoff > 0 && r.sharp_lipschitz > 0.0) {
            le.push_back(std::log(1.0 / eta));
            lk.push_back(std::log(static_cast<double>(r.cutoff)));
            ll.push_back(std::log(r.sharp_lipschitz));
        }
    }
    if (le.size() >= 2) {
        e.cutoff_exponent = fit_line(le, lk).slope;
        const LineFit lip = fit_line(le, ll);
        e.lipschitz_exponent = std::max(0.0, lip.slope);
        e.lipschitz_constant = std::exp(lip.intercept);
    } else {
        e.lipschitz_constant = e.splits.back().sharp_lipschitz;
    }
    const double p = e.lipschitz_exponent, c = e.lipschitz_constant;
    e.delta_predicted = 1.0 / (1.0 + p);
    e.steps = dyadic_grid();
    std::vector<double> lt, lb;
    constexpr int kEtaPoints = 2001;
    for (double t : e.steps) {
        double best = std::numeric_limits<double>::infinity(), arg = 0.0;
        for (int i = 0; i < kEtaPoints; ++i) {
            const double eta = std::pow(10.0, -12.0 + 12.0 * i / (kEtaPoints - 1));
            const double b = c * t * std::pow(eta, -p) + 2.0 * eta;
            if (b < best) {
                best = b;
                arg = eta;
            }
        }
        e.optimal_eta.push_back(arg);
        e.optimal_bound.push_back(best);
        lt.push_back(std::log(t));
        lb.push_back(std::log(best));
    }
    e.delta_fit = fit_line(lt, lb).slope;
    return e;
}

SmoothingReport smoothing_experiment(const CircleFunction& f_rough, const SmoothingOptions& options) {
    const int n = f_rough.bandwidth();
    SmoothingReport r;
    r.bandwidth = n;
    const int lo = options.band_lo > 0 ? options.band_lo : std::max(1, n / 8);
    const int hi = options.band_hi > 0 ? options.band_hi : n;
    r.input_slope = decay_slope(f_rough, lo, hi);
    if (!(r.input_slope.slope > -1.6 && r.input_slope.slope < -0.9))
        throw PreconditionError("smoothing_experiment: input decay slope " + std::to_string(r.input_slope.slope) +
                                " is outside (-1.6, -0.9)");
    PolarOptions polar = options.polar;
    if (polar.output_bandwidth < 0) polar.output_bandwidth = n;
    r.output = quintic_polar({f_rough, f_rough, f_rough, f_rough, f_rough}, polar);
    r.output_slope = decay_slope(r.output, lo, std::min(hi, r.output.bandwidth()));
    r.gain = r.input_slope.slope - r.output_slope.slope;
    r.gain_ok = r.gain >= options.min_gain;
    return r;
}

LipschitzReport lipschitz_experiment(const CircleFunction& h, const CircleFunction& h_doubled,
                                     const PolarOptions& options) {
    const CircleFunction one = CircleFunction::constant(1.0);
    LipschitzReport r;
    r.bandwidth = h.bandwidth();
    r.h_l2 = l2_norm(h);
    if (r.h_l2 == 0.0) throw PreconditionError("lipschitz_experiment: zero L2 input");
    auto convolve = [&](const CircleFunction& input, bool refine) {
        PolarOptions o = options;
        o.output_bandwidth = input.bandwidth();
        const RadialGrid grid = o.grid.value_or(RadialGrid::for_bandwidth(input.bandwidth()));
        o.grid = refine ? grid.refined() : grid;
        return quintic_polar({one, one, one, one, input}, o);
    };
    auto l2_quotient = [](const CircleFunction& f) {
        double best = 0.0;
        for (double t : dyadic_grid()) best = std::max(best, rotation_difference(f.coeffs(), f.bandwidth(), t) / t);
        return best;
    };
    const CircleFunction base = convolve(h, false);
    const CircleFunction refined = convolve(h, true);
    const CircleFunction doubled = convolve(h_doubled, false);
    const int m = 4 * default_grid_size(h.bandwidth());
    const HolderEstimate p = holder_profile(base, 1.0, m);
    r.steps = p.steps;
    r.quotients = p.quotients;
    r.lipschitz = p.value;
    r.lipschitz_grid_doubled = lipschitz_estimate(refined, 2 * m);
    r.grid_change = std::fabs(r.lipschitz_grid_doubled - r.lipschitz) / r.lipschitz;
    r.lipschitz_resolution_doubled = lipschitz_estimate(doubled, 4 * default_grid_size(h_doubled.bandwidth()));
    r.resolution_change = std::fabs(r.lipschitz_resolution_doubled - r.lipschitz) / r.lipschitz;
    r.l2_quotient = l2_quotient(base);
    r.l2_quotient_resolution_doubled = l2_quotient(doubled);
    r.l2_resolution_change = std::fabs(r.l2_quotient_resolution_doubled - r.l2_quotient) / r.l2_quotient;
    r.constant = *std::max_element(p.quotients.begin(), p.quotients.end()) / r.h_l2;
    return r;
}

RegularityProfile regularity_profile(const CircleFunction& f, const std::vector<double>& alphas,
                                     const std::vector<double>& scales) {
    RegularityProfile p;
    p.bandwidth = f.bandwidth();
    p.band_lo = std::max(1, f.bandwidth() / 8);
    p.band_hi = f.bandwidth();
    if (f.bandwidth() >= 2) p.slope = decay_slope(f, p.band_lo, p.band_hi);
    for (double a : alphas) {
        p.holder.push_back(holder_profile(f, a));
        p.diverging = p.diverging || p.holder.back().diverging;
    }
    std::vector<double> sorted = scales;
    std::sort(sorted.begin(), sorted.end());
    for (double s : sorted) p.calH.push_back(calH_profile(f, s));
    return p;
}

std::string coefficient_csv(const CircleFunction& f) {
    std::ostringstream os;
    os << "n,abs_c\n" << std::setprecision(17);
    for (int n = -f.bandwidth(); n <= f.bandwidth(); ++n) os << n << ',' << std::abs(f.coeff(n)) << '\n';
    return os.str();
}

void to_json(nlohmann::json& j, const HolderEstimate& h) {
    j = {{"alpha", h.alpha},         {"grid_size", h.grid_size}, {"sup_norm", h.sup_norm},
         {"steps", h.steps},         {"quotients", h.quotients}, {"value", h.value},
         {"growth_slope", h.growth_slope}, {"diverging", h.diverging}};
}

void to_json(nlohmann::json& j, const CalHEstimate& c) {
    j = {{"s", c.s},         {"derivatives", c.derivatives}, {"l2", c.l2}, {"seminorms", c.seminorms},
         {"value", c.value}, {"bandwidth_warning", c.bandwidth_warning}};
}

void to_json(nlohmann::json& j, const DecaySlope& d) {
    j = {{"slope", d.slope}, {"intercept", d.intercept}, {"residual", d.residual}, {"points", d.points}};
}

void to_json(nlohmann::json& j, const SplitReport& r) {
    j = {{"eta", r.eta},
         {"scale", r.scale},
         {"norm", r.norm},
         {"cutoff", r.cutoff},
         {"flat_l2", r.flat_l2},
         {"flat_bound", r.flat_bound},
         {"sharp_l2", r.sharp_l2},
         {"sharp_constant", r.sharp_constant},
         {"sharp_lipschitz", r.sharp_lipschitz},
         {"bounds_hold", r.bounds_hold}};
}

void to_json(nlohmann::json& j, const EtaOptimization& e) {
    j = {{"splits", e.splits},
         {"cutoff_exponent", e.cutoff_exponent},
         {"lipschitz_exponent", e.lipschitz_exponent},
         {"lipschitz_constant", e.lipschitz_constant},
         {"steps", e.steps},
         {"optimal_eta", e.optimal_eta},
         {"optimal_bound", e.optimal_bound},
         {"delta_fit", e.delta_fit},
         {"delta_predicted", e.delta_predicted}};
}

void to_json(nlohmann::json& j, const SmoothingReport& r) {
    j = {{"bandwidth", r.bandwidth},
         {"input_slope", r.input_slope},
         {"output_slope", r.output_slope},
         {"gain", r.gain},
         {"gain_ok", r.gain_ok}};
}

void to_json(nlohmann::json& j, const LipschitzReport& r) {
    j = {{"bandwidth", r.bandwidth},
         {"h_l2", r.h_l2},
         {"steps", r.steps},
         {"quotients", r.quotients},
         {"lipschitz", r.lipschitz},
         {"lipschitz_grid_doubled", r.lipschitz_grid_doubled},
         {"grid_change", r.grid_change},
         {"lipschitz_resolution_doubled", r.lipschitz_resolution_doubled},
         {"resolution_change", r.resolution_change},
         {"l2_quotient", r.l2_quotient},
         {"l2_quotient_resolution_doubled", r.l2_quotient_resolution_doubled},
         {"l2_resolution_change", r.l2_resolution_change},
         {"constant", r.constant}};
}

void to_json(nlohmann::json& j, const RegularityProfile& p) {
    j = {{"bandwidth", p.bandwidth}, {"slope", p.slope},   {"band", {p.band_lo, p.band_hi}},
         {"holder", p.holder},       {"calH", p.calH},     {"diverging", p.diverging}};
}

}  // namespace tslab
