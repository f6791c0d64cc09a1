#include "tslab/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "tslab/errors.hpp"
#include "tslab/extension.hpp"
#include "tslab/regularity.hpp"

namespace tslab {
namespace {

double scale_norm(const CircleFunction& f, double s) { return s == 0.0 ? l2_norm(f) : calH_estimate(f, s); }

double denominator(const Quintuple& f, double s) {
    double d = 1.0;
    for (const CircleFunction& g : f) {
        const double n = scale_norm(g, s);
        if (n == 0.0) throw PreconditionError("quintilinear bound: zero input makes the ratio undefined");
        d *= n;
    }
    return d;
}

// Smallest 2^a 3^b 5^c >= n.
int smooth_size(int n) {
    for (int m = n;; ++m) {
        int r = m;
        for (int p : {2, 3, 5})
            while (r % p == 0) r /= p;
        if (r == 1) return m;
    }
}

// <Q(g1..g5), 1> for many quintuples on one polar grid, reusing the sampled
// extension fields of the individual slots.
// Width-2 panels reproduce the default-grid pairings to rounding for inputs with N <= 8.
constexpr double kPanel = 2.0;

class PairingWorkspace {
public:
    explicit PairingWorkspace(int bandwidth)
        : grid_(RadialGrid(RadialGrid::for_bandwidth(bandwidth).cutoff(), kPanel)),
          angles_(smooth_size(std::max(64, 5 * bandwidth + 2))),
          basis_(bandwidth, grid_, angles_),
          one_(basis_.samples(CircleFunction::constant(1.0)).conj()) {}

    PolarSamples field(const CircleFunction& g) const { return basis_.samples(g); }

    double pair(const std::array<const PolarSamples*, 5>& slots) const {
        if (buffer_.values.empty()) buffer_ = one_;
        for (std::size_t i = 0; i < buffer_.values.size(); ++i) {
            cplx v = one_.values[i];
            for (const PolarSamples* s : slots) v *= s->values[i];
            buffer_.values[i] = v;
        }
        for (std::size_t j = 0; j < buffer_.tails.size(); ++j) {
            AsymptoticSeries t = one_.tails[j];
            for (const PolarSamples* s : slots) t = t * s->tails[j];
            buffer_.tails[j] = std::move(t);
        }
        return plane_integral(buffer_).value.real() / (kTwoPi * kTwoPi);
    }

private:
    RadialGrid grid_;
    int angles_;
    ExtensionBasis basis_;
    PolarSamples one_;
    mutable PolarSamples buffer_;
};

}  // namespace

CircleFunction quintic_full(const Quintuple& f, const PolarOptions& options) {
    PolarOptions o = options;
    if (o.output_bandwidth < 0) {
        o.output_bandwidth = 0;
        for (const CircleFunction& g : f) o.output_bandwidth += g.bandwidth();
    }
    return quintic_polar(f, o);
}

double quintilinear_bound_ratio(const Quintuple& f, double s, const PolarOptions& options) {
    const double d = denominator(f, s);
    return scale_norm(quintic_full(f, options), s) / d;
}

double squared_pairing(const Quintuple& f) {
    Quintuple g;
    for (std::size_t i = 0; i < f.size(); ++i) g[i] = abs_squared(f[i]);
    return quintic_pairing(g, CircleFunction::constant(1.0)).value.real();
}

std::vector<BoundCheck> quintilinear_bound_checks(const Quintuple& f, const std::vector<double>& scales,
                                                  double sup_constant, const PolarOptions& options) {
    for (double s : scales)
        if (!(s >= 0.0 && s < 1.0)) throw DomainError("quintilinear_bound_check: s must lie in [0, 1)");
    PolarOptions q_options = options;
    if (!q_options.grid) {
        int total = 0;
        for (const CircleFunction& g : f) total += g.bandwidth();
        q_options.grid = RadialGrid(RadialGrid::for_bandwidth(total).cutoff(), kPanel);
    }
    const CircleFunction q = quintic_full(f, q_options);
    int widest = 0;
    for (const CircleFunction& g : f) widest = std::max(widest, 2 * g.bandwidth());
    const PairingWorkspace ws(widest);
    std::array<PolarSamples, 5> plain;
    for (std::size_t i = 0; i < f.size(); ++i) plain[i] = ws.field(abs_squared(f[i]));
    auto cauchy_schwarz = [&](const std::array<const PolarSamples*, 5>& slots) {
        return std::sqrt(sup_constant * std::max(0.0, ws.pair(slots)));
    };
    const double base = cauchy_schwarz({&plain[0], &plain[1], &plain[2], &plain[3], &plain[4]});
    // Telescoped bound per dyadic step, shared by all s > 0.
    std::vector<double> steps, sums;
    if (std::any_of(scales.begin(), scales.end(), [](double s) { return s > 0.0; })) {
        for (double t : dyadic_grid()) {
            std::array<PolarSamples, 5> rotated, diff;
            for (std::size_t i = 0; i < f.size(); ++i) {
                const CircleFunction r = f[i].rotated(t);
                rotated[i] = ws.field(abs_squared(r));
                diff[i] = ws.field(abs_squared(r - f[i]));
            }
            double sum = 0.0;
            for (std::size_t j = 0; j < f.size(); ++j) {
                std::array<const PolarSamples*, 5> slots;
                for (std::size_t i = 0; i < f.size(); ++i) slots[i] = i < j ? &plain[i] : (i == j ? &diff[i] : &rotated[i]);
                sum += cauchy_schwarz(slots);
            }
            steps.push_back(t);
            sums.push_back(sum);
        }
    }
    std::vector<BoundCheck> out;
    for (double s : scales) {
        BoundCheck b;
        b.s = s;
        b.constant = sup_constant;
        b.denominator = denominator(f, s);
        b.numerator = scale_norm(q, s);
        b.ratio = b.numerator / b.denominator;
        b.bound_numerator = base;
        if (s > 0.0) {
            double best = 0.0;
            for (std::size_t k = 0; k < steps.size(); ++k) best = std::max(best, sums[k] / std::pow(steps[k], s));
            b.bound_numerator += best;
        }
        b.bound_ratio = b.bound_numerator / b.denominator;
        b.holds = b.ratio <= b.bound_ratio * (1.0 + 1e-9);
        out.push_back(b);
    }
    return out;
}

BoundCheck quintilinear_bound_check(const Quintuple& f, double s, double sup_constant, const PolarOptions& options) {
    return quintilinear_bound_checks(f, {s}, sup_constant, options).front();
}

void to_json(nlohmann::json& j, const BoundCheck& b) {
    j = {{"s", b.s},
         {"constant", b.constant},
         {"numerator", b.numerator},
         {"denominator", b.denominator},
         {"ratio", b.ratio},
         {"bound_numerator", b.bound_numerator},
         {"bound_ratio", b.bound_ratio},
         {"holds", b.holds}};
}

}  // namespace tslab
