#include "tslab/variational.hpp"

#include <algorithm>
#include <cmath>

#include "tslab/bessel_tensor.hpp"
#include "tslab/errors.hpp"
#include "tslab/extension.hpp"
#include "tslab/solver.hpp"

namespace tslab {

double ts_functional(const CircleFunction& f, const PolarOptions& options) {
    if (f.is_zero()) return 0.0;
    PolarOptions o = options;
    if (o.output_bandwidth < 0) o.output_bandwidth = f.bandwidth();
    const cplx v = inner_product(quintic_self(f, o), f);
    if (std::fabs(v.imag()) > 1e-9 * std::abs(v))
        throw NumericalError("ts_functional: imaginary part " + std::to_string(v.imag()) + " is not negligible");
    return v.real();
}

double quotient(const CircleFunction& f) {
    const double norm = l2_norm(f);
    if (norm == 0.0) throw PreconditionError("quotient: zero function");
    return l6_norm(extend(f)) / norm;
}

ELReport el_residual(const CircleFunction& f, const PolarOptions& options) {
    const double norm = l2_norm(f);
    if (norm == 0.0) throw PreconditionError("el_residual: zero function");
    PolarOptions o = options;
    if (o.output_bandwidth < 0) o.output_bandwidth = f.bandwidth();
    const CircleFunction q = quintic_self(f, o);
    const int width = std::max(q.bandwidth(), f.bandwidth());
    const CircleFunction fp = f.padded(width), qp = q.padded(width);
    ELReport r;
    r.output_bandwidth = o.output_bandwidth;
    r.lambda_fit = inner_product(qp, fp).real() / (norm * norm);
    const double constant = constant_from_constants().value;
    r.lambda_paper = std::pow(constant, 6) * std::pow(norm, 4) / (kTwoPi * kTwoPi);
    const CircleFunction res = qp - fp * r.lambda_fit;
    r.residual_l2 = l2_norm(res);
    r.residual_sup = sup_norm(res);
    r.quotient = quotient(f);
    return r;
}

ConstantEstimate constant_from_constants() {
    static const double value = quotient(CircleFunction::constant(1.0));
    return {value, "constants", false};
}

T0Oracle t0_oracle() {
    const Index6 zero{0, 0, 0, 0, 0, 0};
    T0Oracle t;
    for (const RadialGrid& grid : {RadialGrid(200.0, 1.0), RadialGrid(1000.0, 0.5), RadialGrid(4000.0, 0.25)})
        t.regimes.push_back(six_bessel_integral(zero, grid).value);
    t.value = t.regimes.back();
    for (double v : t.regimes) t.spread = std::max(t.spread, std::fabs(v - t.value) / t.value);
    return t;
}

ConstantEstimate constant_from_t0() {
    const double t0 = t0_oracle().value;
    return {std::pow(std::pow(kTwoPi, 7) * t0, 1.0 / 6.0) / std::sqrt(kTwoPi), "t0", false};
}

ConstantEstimate constant_from_solver(const AscentResult& result) {
    if (!result.converged) throw PreconditionError("constant_estimate: the ascent did not converge");
    return {quotient(result.f), "solver", true};
}

void to_json(nlohmann::json& j, const ELReport& r) {
    j = {{"lambda_fit", r.lambda_fit},     {"lambda_paper", r.lambda_paper}, {"residual_l2", r.residual_l2},
         {"residual_sup", r.residual_sup}, {"quotient", r.quotient},         {"output_bandwidth", r.output_bandwidth}};
}

void to_json(nlohmann::json& j, const ConstantEstimate& c) {
    j = {{"value", c.value}, {"source", c.source}, {"conditional", c.conditional}};
}

void to_json(nlohmann::json& j, const T0Oracle& t) {
    j = {{"regimes", t.regimes}, {"value", t.value}, {"spread", t.spread}};
}

}  // namespace tslab
