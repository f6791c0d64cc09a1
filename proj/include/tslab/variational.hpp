#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tslab/circle_function.hpp"
#include "tslab/quintic.hpp"

namespace tslab {

/// Phi(f) = Re <Q(f, f, f, f~, f~), f>. Throws NumericalError when the
/// imaginary part exceeds 1e-9 of the modulus.
double ts_functional(const CircleFunction& f, const PolarOptions& options = {});

/// ||(f sigma)^||_{L6} / ||f||_{L2}. Throws PreconditionError for f = 0.
double quotient(const CircleFunction& f);

struct ELReport {
    double lambda_fit = 0.0;     // Re <Q(f), f> / ||f||^2
    double lambda_paper = 0.0;   // (2 pi)^{-2} R^6 ||f||^4 with R = quotient(1)
    double residual_l2 = 0.0;    // ||Q(f) - lambda_fit f||
    double residual_sup = 0.0;
    double quotient = 0.0;
    int output_bandwidth = 0;
};

/// Residual of Q(f, f, f, f~, f~) = lambda f on the modes |m| <= N of f
/// unless `options.output_bandwidth` asks for more.
ELReport el_residual(const CircleFunction& f, const PolarOptions& options = {});

struct AscentResult;

struct ConstantEstimate {
    double value = 0.0;
    std::string source;          // "constants" or "solver"
    bool conditional = false;    // relies on constants being the extremizers
};

/// T0 = int_0^inf J0(rho)^6 rho d rho in three quadrature regimes (cutoff and
/// panel width varied); `value` is the finest one.
struct T0Oracle {
    std::vector<double> regimes;
    double value = 0.0;
    double spread = 0.0;   // max relative deviation from `value`
};
T0Oracle t0_oracle();

ConstantEstimate constant_from_constants();
/// ((2 pi)^7 T0)^{1/6} / sqrt(2 pi).
ConstantEstimate constant_from_t0();
/// Throws PreconditionError unless the ascent converged.
ConstantEstimate constant_from_solver(const AscentResult& result);

void to_json(nlohmann::json& j, const ELReport& r);
void to_json(nlohmann::json& j, const ConstantEstimate& c);
void to_json(nlohmann::json& j, const T0Oracle& t);

}  // namespace tslab
