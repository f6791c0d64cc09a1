#pragma once

#include <optional>
#include <vector>

#include <json.hpp>

#include "tslab/radial.hpp"

namespace tslab {

/// Radial profile of the k-fold convolution sigma^{*k}, 2 <= k <= 5.
struct RadialDensity {
    int order = 0;
    std::vector<double> radii;
    std::vector<double> values;      // NaN where flagged
    std::vector<bool> singular;      // within kSingularMargin of a singular radius
    std::vector<double> singular_radii;
    double mass = 0.0;               // 2 pi int mu(r) r dr
};

inline constexpr double kSingularMargin = 1e-3;

/// Radii where mu_k is unbounded or not continuous: {0, 2} for k = 2,
/// {1, 3} for k = 3, {0, 2, 4} for k = 4, none inside [0, 5) for k = 5.
std::vector<double> singular_radii(int order);
bool near_singular(int order, double r);

/// Single value of mu_k(r). k = 2: 4 / (r sqrt(4 - r^2)); k = 3: mu_2 averaged
/// against sigma; k = 4, 5: (2 pi)^{k-1} int J_0^k J_0(r rho) rho d rho.
/// Returns nullopt at flagged radii. `grid` applies to k = 4, 5.
std::optional<double> density_value(int order, double r, const RadialGrid& grid = RadialGrid(200.0, 0.5));

/// Total mass 2 pi int_0^k mu_k(r) r dr by graded Gauss-Legendre panels.
double density_mass(int order, const RadialGrid& grid = RadialGrid(200.0, 0.5));

RadialDensity auto_density(int order, const std::vector<double>& radii, const RadialGrid& grid = RadialGrid(200.0, 0.5));

struct SupBoundReport {
    int order;
    double radius;         // region [0, radius]
    int points;
    int excluded;          // flagged points left out
    double sup;            // C_k estimate
    double argmax;
    bool finite;
};

/// Max of mu_k over `points` equispaced radii in [0, radius], flagged radii excluded.
SupBoundReport sup_bound_check(int order, double radius, int points = 500,
                               const RadialGrid& grid = RadialGrid(200.0, 0.5));

void to_json(nlohmann::json& j, const RadialDensity& d);
void to_json(nlohmann::json& j, const SupBoundReport& r);

}  // namespace tslab
