#pragma once

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "tslab/circle_function.hpp"
#include "tslab/quintic.hpp"

namespace tslab {

struct AscentConfig {
    int max_iterations = 200;
    double step = 1.0;               // relative to lambda_fit; 1 is the normalized power step
    double halving = 0.5;
    double min_step = 1e-6;
    double tolerance = 1e-14;        // relative quotient increment
    double residual_tolerance = 1e-10;  // ||Q(f) - lambda f|| / lambda
    int bandwidth = -1;              // working bandwidth, default that of f0
    bool normalize = true;           // unit L2 norm after each step
    PolarOptions polar;
};

struct TraceRecord {
    int k = 0;
    double quotient = 0.0;
    double step = 0.0;
    double residual = 0.0;
    bool accepted = false;
};

struct AscentResult {
    CircleFunction f;
    double quotient = 0.0;
    double residual = 0.0;
    std::vector<TraceRecord> trace;
    bool converged = false;
    int accepted_steps = 0;
};

/// Projected gradient ascent of the quotient on the unit sphere of the
/// band-limited functions. The gradient direction is Q(f,f,f,f~,f~) - lambda f,
/// a step is accepted only if the quotient does not decrease, and rejected
/// steps are shrunk by `halving`. Throws PreconditionError for f0 = 0.
AscentResult ascend(const CircleFunction& f0, const AscentConfig& config = {});

/// c f with |c| = lambda_fit^{-1/4}, so that Q(f) = f up to the residual.
CircleFunction lambda_normalize(const CircleFunction& f, const PolarOptions& options = {});

/// Removes the modulation and phase of a modulated constant: xi is fitted
/// from the log-derivative f'/f, refined from c_{+-1} / c_0 until the fit stops
/// changing, then c_0 is made real and positive. The result keeps the bandwidth of f.
struct Canonical {
    CircleFunction f;
    std::array<double, 2> modulation{0.0, 0.0};
    double phase = 0.0;
    int iterations = 0;
};
Canonical canonicalize(const CircleFunction& f, int max_iterations = 50);

struct Decomposition {
    CircleFunction phi;   // modes |n| <= cutoff
    CircleFunction g;     // the rest, ||g|| < eps
    int cutoff = 0;
    double g_l2 = 0.0;
    bool zero_branch = false;
    std::string warning;
};

/// Smallest cutoff K with sum_{|n|>K} |c_n|^2 < eps^2 / (2 pi). When eps
/// exceeds ||f|| the split is phi = 0, g = f with a warning.
Decomposition decompose(const CircleFunction& f, double eps);
/// Same split at a given cutoff.
Decomposition decompose_at(const CircleFunction& f, int cutoff);

/// Quintic terms of L and N over the inputs {phi, phi~, g, g~} (slots 0..3).
const std::vector<QuinticTerm>& linear_terms();
const std::vector<QuinticTerm>& nonlinear_terms();

/// L(phi, g) = -phi + Q(phi,phi,phi,phi~,phi~) + 2 Q(phi,phi,phi,phi~,g~) + 3 Q(phi,phi,g,phi~,phi~).
CircleFunction linear_part(const CircleFunction& phi, const CircleFunction& g, const PolarOptions& options = {});
/// The 26 monomials of (phi+g)^3 (phi~+g~)^2 of degree >= 2 in g, grouped into nine terms.
CircleFunction nonlinear_part(const CircleFunction& phi, const CircleFunction& h, const PolarOptions& options = {});

struct PicardConfig {
    double eps = 0.05;
    double ball_exponent = 0.75;     // r_B = eps^{3/4}
    double s_scale = 0.25;           // s(eps) of the calH ratios
    double tolerance = 1e-13;        // on ||h_{k+1} - h_k||
    double divergence_factor = 10.0;
    PolarOptions polar;
};

struct PicardState {
    PicardConfig config;
    CircleFunction phi;
    CircleFunction g;
    CircleFunction center;           // L(phi, g)
    CircleFunction h;
    double ball_radius = 0.0;
    int cutoff = 0;
    std::vector<double> norms;       // ||h_k||
    std::vector<double> step_sizes;  // ||h_{k+1} - h_k||
    std::vector<double> ratios;      // ||L_eps(h_{k+1}) - L_eps(h_k)|| / ||h_{k+1} - h_k||
    std::vector<double> calH_ratios; // the same ratio in the calH^{s} scale
    bool converged = false;
    bool in_ball = true;             // every iterate within r_B of the center
    int steps = 0;
};

/// Splits f (assumed lambda-normalized) with decompose(f, eps) and starts from h = 0.
PicardState picard_init(const CircleFunction& f, const PicardConfig& config = {});
/// h <- L(phi, g) + N(phi, h). Throws DivergenceError when ||h|| exceeds
/// divergence_factor times its first value.
PicardState picard_iterate(PicardState state, int steps);
/// Ratios with denominators below this are rounding noise and not reported.
double picard_max_ratio(const PicardState& state, double floor = 1e-11);

void to_json(nlohmann::json& j, const TraceRecord& r);
void to_json(nlohmann::json& j, const AscentResult& r);
void to_json(nlohmann::json& j, const Decomposition& d);
void to_json(nlohmann::json& j, const PicardState& s);

}  // namespace tslab
