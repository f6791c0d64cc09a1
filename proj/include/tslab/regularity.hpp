#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tslab/circle_function.hpp"
#include "tslab/quintic.hpp"

namespace tslab {

/// Finite surrogate for sup over 0 < |t| <= 1: t = 1, 1/2, ..., 2^-12.
inline constexpr int kDyadicLevels = 12;
std::vector<double> dyadic_grid();

/// Sample-space Hoelder quotients q(t) = sup_theta |f(theta+t) - f(theta)| / t^alpha
/// over the dyadic grid, with theta on M equispaced points (M = 4N by default).
struct HolderEstimate {
    double alpha = 0.0;
    int grid_size = 0;
    double sup_norm = 0.0;
    std::vector<double> steps;
    std::vector<double> quotients;
    double value = 0.0;          // sup_norm + max quotient
    double growth_slope = 0.0;   // d log2 q / d level over the resolved levels
    bool diverging = false;      // growth_slope > alpha / 2
};

/// alpha in (0, 1]; alpha = 1 gives the Lipschitz estimate.
HolderEstimate holder_profile(const CircleFunction& f, double alpha, int grid_size = 0);
double holder_estimate(const CircleFunction& f, double alpha, int grid_size = 0);
double lipschitz_estimate(const CircleFunction& f, int grid_size = 0);

/// Difference-quotient norm for s = k + alpha (s = 0 or s not an integer):
///     ||f|| + sum_{m=0}^{k} sup_t ||R_t f^(m) - f^(m)|| / t^alpha,
/// all L2 norms computed exactly from coefficients.
struct CalHEstimate {
    double s = 0.0;
    int derivatives = 0;
    double l2 = 0.0;
    std::vector<double> seminorms;   // one per derivative order m = 0..k
    double value = 0.0;
    bool bandwidth_warning = false;  // f^(k) keeps > 10% of its energy in |n| > N/2
};

CalHEstimate calH_profile(const CircleFunction& f, double s);
double calH_estimate(const CircleFunction& f, double s);

struct DecaySlope {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;   // RMS of the log-log fit
    int points = 0;
};

/// Least-squares fit of log|c_n| against log|n| for lo <= |n| <= hi, both
/// signs of n; magnitudes below 1e-14 are skipped.
DecaySlope decay_slope(const CircleFunction& f, int lo, int hi);

/// C in ||f||_{H^beta} <= C ||f||^{1-beta/alpha} ||f||_{H^alpha}^{beta/alpha}.
double interpolation_constant(const CircleFunction& f, double beta, double alpha);

struct SplitReport {
    double eta = 0.0;
    double scale = 0.0;          // s of the norm used
    double norm = 0.0;           // calH_estimate(f, s)
    int cutoff = 0;              // f_sharp keeps |n| <= cutoff
    double flat_l2 = 0.0;
    double flat_bound = 0.0;     // eta * norm
    double sharp_l2 = 0.0;
    double sharp_constant = 0.0; // sharp_l2 / norm
    double sharp_lipschitz = 0.0;
    bool bounds_hold = false;
};

struct SharpFlatSplit {
    CircleFunction sharp;
    CircleFunction flat;
    SplitReport report;
};

/// Smallest cutoff K with ||f_flat|| <= eta calH(f, s); f_sharp = low_pass(K).
SharpFlatSplit sharp_flat_split(const CircleFunction& f, double eta, double scale);

/// Repeated splits at eta_0 / 2^j. Fits K ~ eta^{-p_cutoff} and
/// Lip(f_sharp) ~ C eta^{-p}, then minimizes C t eta^{-p} + 2 eta over a fine
/// eta-grid for each dyadic t and fits the bound as t^delta.
struct EtaOptimization {
    std::vector<SplitReport> splits;
    double cutoff_exponent = 0.0;
    double lipschitz_exponent = 0.0;  // p
    double lipschitz_constant = 0.0;  // C
    std::vector<double> steps;
    std::vector<double> optimal_eta;
    std::vector<double> optimal_bound;
    double delta_fit = 0.0;
    double delta_predicted = 0.0;     // 1 / (1 + p)
};

EtaOptimization eta_optimization(const CircleFunction& f, double scale, double eta0 = 0.1, int halvings = 5);

struct SmoothingOptions {
    int band_lo = 0;          // default N / 8
    int band_hi = 0;          // default N
    double min_gain = 0.25;
    PolarOptions polar;
};

struct SmoothingReport {
    int bandwidth = 0;
    DecaySlope input_slope;
    DecaySlope output_slope;
    double gain = 0.0;        // input slope - output slope
    bool gain_ok = false;
    CircleFunction output;
};

/// F = Q(f, f, f, f, f) for a rough input. Throws PreconditionError unless
/// the input decay slope lies in (-1.6, -0.9).
SmoothingReport smoothing_experiment(const CircleFunction& f_rough, const SmoothingOptions& options = {});

/// F = Q(1, 1, 1, 1, h) for an L2 input h. The sup-norm Lipschitz estimate of
/// F is measured on a base grid and on doubled sample and radial grids; the
/// same input at twice the bandwidth (`h_doubled`) gives the resolution
/// dependence. l2_quotient is sup_t ||R_t F - F|| / t.
struct LipschitzReport {
    int bandwidth = 0;
    double h_l2 = 0.0;
    std::vector<double> steps;
    std::vector<double> quotients;
    double lipschitz = 0.0;
    double lipschitz_grid_doubled = 0.0;
    double grid_change = 0.0;
    double lipschitz_resolution_doubled = 0.0;
    double resolution_change = 0.0;
    double l2_quotient = 0.0;
    double l2_quotient_resolution_doubled = 0.0;
    double l2_resolution_change = 0.0;
    double constant = 0.0;    // max quotient / ||h||
};

LipschitzReport lipschitz_experiment(const CircleFunction& h, const CircleFunction& h_doubled,
                                     const PolarOptions& options = {});

struct RegularityProfile {
    int bandwidth = 0;
    DecaySlope slope;
    int band_lo = 0;
    int band_hi = 0;
    std::vector<HolderEstimate> holder;
    std::vector<CalHEstimate> calH;
    bool diverging = false;
};

RegularityProfile regularity_profile(const CircleFunction& f, const std::vector<double>& alphas,
                                     const std::vector<double>& scales);

/// Lines "n,abs_c" for n = -N..N.
std::string coefficient_csv(const CircleFunction& f);

void to_json(nlohmann::json& j, const HolderEstimate& h);
void to_json(nlohmann::json& j, const CalHEstimate& c);
void to_json(nlohmann::json& j, const DecaySlope& d);
void to_json(nlohmann::json& j, const SplitReport& r);
void to_json(nlohmann::json& j, const EtaOptimization& e);
void to_json(nlohmann::json& j, const SmoothingReport& r);
void to_json(nlohmann::json& j, const LipschitzReport& r);
void to_json(nlohmann::json& j, const RegularityProfile& p);

}  // namespace tslab
