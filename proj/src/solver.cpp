#include "tslab/solver.hpp"

#include <algorithm>
#include <cmath>

#include "tslab/errors.hpp"
#include "tslab/regularity.hpp"
#include "tslab/symmetry.hpp"
#include "tslab/variational.hpp"

namespace tslab {
namespace {

PolarOptions with_output(PolarOptions o, int bandwidth) {
    if (o.output_bandwidth < 0) o.output_bandwidth = bandwidth;
    return o;
}

int common_bandwidth(const CircleFunction& a, const CircleFunction& b) { return std::max(a.bandwidth(), b.bandwidth()); }

}  // namespace

AscentResult ascend(const CircleFunction& f0, const AscentConfig& config) {
    if (!(config.step > 0.0) || !(config.tolerance > 0.0)) throw ConfigError("ascend: step and tolerance must be positive");
    const int n = config.bandwidth >= 0 ? config.bandwidth : f0.bandwidth();
    CircleFunction f = f0.padded(n);
    if (l2_norm(f) == 0.0) throw PreconditionError("ascend: zero initial function");
    if (config.normalize) f = f * (1.0 / l2_norm(f));
    const PolarOptions polar = with_output(config.polar, n);

    AscentResult r;
    double q = quotient(f);
    double step = config.step;
    r.trace.push_back({0, q, 0.0, 0.0, true});
    for (int k = 1; k <= config.max_iterations; ++k) {
        const double norm = l2_norm(f);
        const CircleFunction qf = quintic_self(f, polar);
        const double lambda = inner_product(qf, f).real() / (norm * norm);
        const CircleFunction grad = qf - f * lambda;
        r.residual = l2_norm(grad) / (lambda * norm);
        r.trace.back().residual = r.residual;
        if (r.residual < config.residual_tolerance) {
            r.converged = true;
            break;
        }
        bool accepted = false;
        while (step >= config.min_step) {
            CircleFunction cand = f + grad * (step / lambda);
            if (config.normalize) cand = cand * (1.0 / l2_norm(cand));
            const double qc = quotient(cand);
            if (qc >= q) {
                const double increment = qc - q;
                f = cand;
                q = qc;
                accepted = true;
                ++r.accepted_steps;
                r.trace.push_back({k, q, step, 0.0, true});
                if (increment <= config.tolerance * q) r.converged = true;
                step = std::min(config.step, step / config.halving);
                break;
            }
            step *= config.halving;
        }
        if (!accepted) {
            r.trace.push_back({k, q, step, r.residual, false});
            break;
        }
        if (r.converged) {
            const CircleFunction qn = quintic_self(f, polar);
            const double nn = l2_norm(f);
            const double ln = inner_product(qn, f).real() / (nn * nn);
            r.residual = l2_norm(qn - f * ln) / (ln * nn);
            r.trace.back().residual = r.residual;
            break;
        }
    }
    for (std::size_t i = 1; i < r.trace.size(); ++i)
        if (r.trace[i].quotient < r.trace[i - 1].quotient)
            throw NumericalError("ascend: quotient trace decreased");
    r.f = f;
    r.quotient = q;
    return r;
}

CircleFunction lambda_normalize(const CircleFunction& f, const PolarOptions& options) {
    const double norm = l2_norm(f);
    if (norm == 0.0) throw PreconditionError("lambda_normalize: zero function");
    const CircleFunction q = quintic_self(f, with_output(options, f.bandwidth()));
    const double lambda = inner_product(q, f).real() / (norm * norm);
    if (!(lambda > 0.0)) throw NumericalError("lambda_normalize: nonpositive lambda");
    return f * std::pow(lambda, -0.25);
}

Canonical canonicalize(const CircleFunction& f, int max_iterations) {
    Canonical c;
    const int n = f.bandwidth();
    c.f = f;
    if (n > 0) {
        // f'/f = i (xi_2 cos - xi_1 sin) for a modulated constant.
        const auto values = f.samples();
        const auto slopes = f.derivative(1).samples();
        std::vector<cplx> log_derivative(values.size());
        bool nonvanishing = true;
        for (std::size_t m = 0; m < values.size(); ++m) {
            nonvanishing = nonvanishing && std::abs(values[m]) > 1e-8 * l2_norm(f);
            if (nonvanishing) log_derivative[m] = slopes[m] / values[m];
        }
        if (nonvanishing) {
            const cplx d1 = analyze(log_derivative, 1).coeff(1);
            const std::array<double, 2> xi{-2.0 * d1.real(), 2.0 * d1.imag()};
            SymmetryElement s;
            s.modulation = {-xi[0], -xi[1]};
            c.f = apply_symmetry(f, s).low_pass(n).padded(n);
            c.modulation = xi;
        }
    }
    for (; c.iterations < max_iterations; ++c.iterations) {
        const cplx c0 = c.f.coeff(0);
        if (std::abs(c0) == 0.0) throw PreconditionError("canonicalize: zero mean");
        if (n == 0) break;
        const cplx z1 = cplx(0.0, -2.0) * c.f.coeff(1) / c0;   // xi_1 - i xi_2
        const cplx z2 = cplx(0.0, -2.0) * c.f.coeff(-1) / c0;  // xi_1 + i xi_2
        const std::array<double, 2> xi{0.5 * (z1.real() + z2.real()), 0.5 * (z2.imag() - z1.imag())};
        if (std::hypot(xi[0], xi[1]) < 1e-15) break;
        SymmetryElement s;
        s.modulation = {-xi[0], -xi[1]};
        c.f = apply_symmetry(c.f, s).low_pass(n).padded(n);
        c.modulation[0] += xi[0];
        c.modulation[1] += xi[1];
    }
    c.phase = std::arg(c.f.coeff(0));
    c.f = c.f * std::polar(1.0, -c.phase);
    return c;
}

Decomposition decompose_at(const CircleFunction& f, int cutoff) {
    Decomposition d;
    d.cutoff = std::clamp(cutoff, 0, f.bandwidth());
    d.phi = f.low_pass(d.cutoff);
    d.g = f.high_pass(d.cutoff);
    d.g_l2 = l2_norm(d.g);
    return d;
}

Decomposition decompose(const CircleFunction& f, double eps) {
    if (!(eps > 0.0)) throw DomainError("decompose: eps must be positive");
    const int n = f.bandwidth();
    if (eps > l2_norm(f)) {
        Decomposition d;
        d.phi = CircleFunction(n);
        d.g = f;
        d.cutoff = -1;
        d.g_l2 = l2_norm(f);
        d.zero_branch = true;
        d.warning = "eps exceeds ||f||: phi = 0";
        return d;
    }
    const double budget = eps * eps / kTwoPi;
    double tail = 0.0;
    int cutoff = n;
    while (cutoff > 0) {
        const double next = tail + std::norm(f.coeff(cutoff)) + std::norm(f.coeff(-cutoff));
        if (!(next < budget)) break;
        tail = next;
        --cutoff;
    }
    return decompose_at(f, cutoff);
}

const std::vector<QuinticTerm>& linear_terms() {
    enum { P, Pt, G, Gt };
    static const std::vector<QuinticTerm> terms{
        {1.0, {P, P, P, Pt, Pt}},
        {2.0, {P, P, P, Pt, Gt}},
        {3.0, {P, P, G, Pt, Pt}},
    };
    return terms;
}

const std::vector<QuinticTerm>& nonlinear_terms() {
    enum { P, Pt, H, Ht };
    static const std::vector<QuinticTerm> terms{
        {1.0, {H, H, H, Ht, Ht}},
        {3.0, {H, H, Ht, Ht, P}},
        {2.0, {H, H, H, Ht, Pt}},
        {3.0, {H, Ht, Ht, P, P}},
        {6.0, {H, H, Ht, P, Pt}},
        {1.0, {H, H, H, Pt, Pt}},
        {1.0, {Ht, Ht, P, P, P}},
        {6.0, {H, Ht, P, P, Pt}},
        {3.0, {H, H, P, Pt, Pt}},
    };
    return terms;
}

CircleFunction linear_part(const CircleFunction& phi_in, const CircleFunction& g_in, const PolarOptions& options) {
    const int n = common_bandwidth(phi_in, g_in);
    const CircleFunction phi = phi_in.padded(n), g = g_in.padded(n);
    const std::vector<CircleFunction> fs{phi, phi.conj_reflect(), g, g.conj_reflect()};
    const CircleFunction q = quintic_polar_sum(fs, linear_terms(), with_output(options, n));
    return q - phi.padded(q.bandwidth());
}

CircleFunction nonlinear_part(const CircleFunction& phi_in, const CircleFunction& h_in, const PolarOptions& options) {
    const int n = common_bandwidth(phi_in, h_in);
    const CircleFunction phi = phi_in.padded(n), h = h_in.padded(n);
    const std::vector<CircleFunction> fs{phi, phi.conj_reflect(), h, h.conj_reflect()};
    return quintic_polar_sum(fs, nonlinear_terms(), with_output(options, n));
}

PicardState picard_init(const CircleFunction& f, const PicardConfig& config) {
    if (!(config.eps > 0.0)) throw ConfigError("picard: eps must be positive");
    const Decomposition d = decompose(f, config.eps);
    PicardState s;
    s.config = config;
    s.phi = d.phi;
    s.g = d.g;
    s.cutoff = d.cutoff;
    s.ball_radius = std::pow(config.eps, config.ball_exponent);
    s.center = linear_part(s.phi, s.g, config.polar);
    s.h = s.center;
    s.norms.push_back(l2_norm(s.h));
    return s;
}

PicardState picard_iterate(PicardState s, int steps) {
    const double limit = s.config.divergence_factor * std::max(s.norms.front(), s.ball_radius);
    std::vector<CircleFunction> diffs;
    for (int k = 0; k < steps && !s.converged; ++k) {
        const CircleFunction next = s.center + nonlinear_part(s.phi, s.h, s.config.polar);
        const CircleFunction diff = next - s.h;
        const double size = l2_norm(diff);
        if (!s.step_sizes.empty() && s.step_sizes.back() > 0.0) {
            s.ratios.push_back(size / s.step_sizes.back());
            const double prev = calH_estimate(diffs.back(), s.config.s_scale);
            s.calH_ratios.push_back(prev > 0.0 ? calH_estimate(diff, s.config.s_scale) / prev : 0.0);
        }
        s.step_sizes.push_back(size);
        diffs.push_back(diff);
        s.h = next;
        s.norms.push_back(l2_norm(s.h));
        ++s.steps;
        s.in_ball = s.in_ball && l2_norm(s.h - s.center) <= s.ball_radius;
        if (s.norms.back() > limit) {
            std::string trace;
            for (double v : s.norms) trace += " " + std::to_string(v);
            throw DivergenceError("picard_iterate: iterate norm exceeded the divergence limit; norms:" + trace);
        }
        if (size < s.config.tolerance) s.converged = true;
    }
    return s;
}

double picard_max_ratio(const PicardState& s, double floor) {
    double best = 0.0;
    for (std::size_t i = 0; i < s.ratios.size(); ++i)
        if (s.step_sizes[i] > floor) best = std::max(best, s.ratios[i]);
    return best;
}

void to_json(nlohmann::json& j, const TraceRecord& r) {
    j = {{"k", r.k}, {"quotient", r.quotient}, {"step", r.step}, {"residual", r.residual}, {"accepted", r.accepted}};
}

void to_json(nlohmann::json& j, const AscentResult& r) {
    j = {{"f", r.f},
         {"quotient", r.quotient},
         {"residual", r.residual},
         {"converged", r.converged},
         {"accepted_steps", r.accepted_steps},
         {"trace", r.trace}};
}

void to_json(nlohmann::json& j, const Decomposition& d) {
    j = {{"cutoff", d.cutoff},           {"g_l2", d.g_l2},       {"zero_branch", d.zero_branch},
         {"warning", d.warning},         {"phi", d.phi},         {"g", d.g}};
}

void to_json(nlohmann::json& j, const PicardState& s) {
    j = {{"eps", s.config.eps},
         {"ball_radius", s.ball_radius},
         {"s_scale", s.config.s_scale},
         {"cutoff", s.cutoff},
         {"g_l2", l2_norm(s.g)},
         {"center_l2", l2_norm(s.center)},
         {"h_minus_g_l2", l2_norm(s.h - s.g.padded(s.h.bandwidth()))},
         {"norms", s.norms},
         {"step_sizes", s.step_sizes},
         {"ratios", s.ratios},
         {"calH_ratios", s.calH_ratios},
         {"max_ratio", picard_max_ratio(s)},
         {"converged", s.converged},
         {"in_ball", s.in_ball},
         {"steps", s.steps}};
}

}  // namespace tslab
