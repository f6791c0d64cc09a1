#pragma once

#include <vector>

#include <json.hpp>

#include "tslab/quintic.hpp"

namespace tslab {

/// Q(f1..f5) at its full bandwidth N1 + ... + N5.
CircleFunction quintic_full(const Quintuple& f, const PolarOptions& options = {});

/// ||Q(f1..f5)||_s / prod ||f_i||_s with ||.||_0 the L2 norm and
/// ||.||_s = calH_estimate for s > 0. Throws PreconditionError on a zero input.
double quintilinear_bound_ratio(const Quintuple& f, double s, const PolarOptions& options = {});

/// <Q(|f1|^2, ..., |f5|^2), 1>.
double squared_pairing(const Quintuple& f);

/// Pointwise Cauchy-Schwarz |Q(x)|^2 <= mu_5(x) Q(|f1|^2..|f5|^2)(x) integrated
/// over the circle, with mu_5 replaced by a measured sup constant C5:
///     ||Q||^2 <= C5 <Q(|f1|^2, ..., |f5|^2), 1>.
/// For 0 < s < 1 the rotation difference is telescoped,
///     R_t Q - Q = sum_j Q(f1..f_{j-1}, R_t f_j - f_j, R_t f_{j+1}..R_t f5),
/// and each term is bounded the same way.
struct BoundCheck {
    double s = 0.0;
    double constant = 0.0;          // C5
    double numerator = 0.0;         // ||Q||_s
    double denominator = 0.0;       // prod ||f_i||_s
    double ratio = 0.0;
    double bound_numerator = 0.0;
    double bound_ratio = 0.0;
    bool holds = false;
};

BoundCheck quintilinear_bound_check(const Quintuple& f, double s, double sup_constant,
                                    const PolarOptions& options = {});

/// Several scales sharing one evaluation of Q and of the pairings.
std::vector<BoundCheck> quintilinear_bound_checks(const Quintuple& f, const std::vector<double>& scales,
                                                  double sup_constant, const PolarOptions& options = {});

void to_json(nlohmann::json& j, const BoundCheck& b);

}  // namespace tslab
