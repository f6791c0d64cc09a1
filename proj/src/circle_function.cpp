#include "tslab/circle_function.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <json.hpp>

#include "tslab/errors.hpp"

namespace tslab {
namespace {

std::size_t wrap(int n, int size) {
    const int r = n % size;
    return static_cast<std::size_t>(r < 0 ? r + size : r);
}

}  // namespace

CircleFunction::CircleFunction(int bandwidth)
    : bandwidth_(bandwidth), coeffs_(static_cast<std::size_t>(2 * bandwidth + 1)) {
    if (bandwidth < 0) throw SizeError("negative bandwidth");
}

CircleFunction::CircleFunction(std::vector<cplx> coeffs) : bandwidth_(0), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() % 2 == 0) throw SizeError("coefficient sequence must have odd length 2N+1");
    bandwidth_ = static_cast<int>(coeffs_.size() / 2);
}

CircleFunction CircleFunction::constant(cplx value) { return CircleFunction(std::vector<cplx>{value}); }

CircleFunction CircleFunction::mode(int n, cplx amplitude) {
    CircleFunction f(std::abs(n));
    f.coeffs_[static_cast<std::size_t>(n + f.bandwidth_)] = amplitude;
    return f;
}

CircleFunction CircleFunction::square_wave(int bandwidth) {
    CircleFunction f(bandwidth);
    for (int n = -bandwidth; n <= bandwidth; ++n) {
        if (n % 2 == 0) continue;
        // (1/2pi) int sign(cos t) e^{-int} dt = 2 sin(n pi/2) / (n pi)
        const double s = (((std::abs(n) - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
        f.coeffs_[static_cast<std::size_t>(n + bandwidth)] = 2.0 * s / (kPi * std::abs(n));
    }
    return f;
}

CircleFunction CircleFunction::from_samples(std::vector<cplx> samples, int bandwidth) {
    CircleFunction f = analyze(samples, bandwidth);
    f.samples_ = std::move(samples);
    return f;
}

cplx CircleFunction::coeff(int n) const {
    if (n < -bandwidth_ || n > bandwidth_) return 0.0;
    return coeffs_[static_cast<std::size_t>(n + bandwidth_)];
}

std::vector<cplx> CircleFunction::samples(int grid_size) const {
    if (samples_ && static_cast<int>(samples_->size()) == grid_size) return *samples_;
    return synthesize(coeffs_, grid_size);
}

cplx CircleFunction::operator()(double theta) const {
    cplx sum = 0.0;
    for (int n = -bandwidth_; n <= bandwidth_; ++n) sum += coeff(n) * std::polar(1.0, n * theta);
    return sum;
}

CircleFunction CircleFunction::padded(int bandwidth) const {
    CircleFunction out(bandwidth);
    const int lim = std::min(bandwidth, bandwidth_);
    for (int n = -lim; n <= lim; ++n) out.coeffs_[static_cast<std::size_t>(n + bandwidth)] = coeff(n);
    return out;
}

CircleFunction CircleFunction::low_pass(int cutoff) const {
    CircleFunction out(bandwidth_);
    for (int n = -bandwidth_; n <= bandwidth_; ++n)
        if (std::abs(n) <= cutoff) out.coeffs_[static_cast<std::size_t>(n + bandwidth_)] = coeff(n);
    return out;
}

CircleFunction CircleFunction::high_pass(int cutoff) const {
    CircleFunction out(bandwidth_);
    for (int n = -bandwidth_; n <= bandwidth_; ++n)
        if (std::abs(n) > cutoff) out.coeffs_[static_cast<std::size_t>(n + bandwidth_)] = coeff(n);
    return out;
}

CircleFunction CircleFunction::conj_reflect() const {
    CircleFunction out(bandwidth_);
    for (int n = -bandwidth_; n <= bandwidth_; ++n) {
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        out.coeffs_[static_cast<std::size_t>(n + bandwidth_)] = sign * std::conj(coeff(-n));
    }
    return out;
}

CircleFunction CircleFunction::rotated(double t) const {
    CircleFunction out(bandwidth_);
    for (int n = -bandwidth_; n <= bandwidth_; ++n)
        out.coeffs_[static_cast<std::size_t>(n + bandwidth_)] = coeff(n) * std::polar(1.0, n * t);
    return out;
}

CircleFunction CircleFunction::derivative(int order) const {
    CircleFunction out(bandwidth_);
    for (int n = -bandwidth_; n <= bandwidth_; ++n)
        out.coeffs_[static_cast<std::size_t>(n + bandwidth_)] = coeff(n) * std::pow(cplx(0.0, n), order);
    return out;
}

CircleFunction CircleFunction::conj() const {
    CircleFunction out(bandwidth_);
    for (int n = -bandwidth_; n <= bandwidth_; ++n)
        out.coeffs_[static_cast<std::size_t>(n + bandwidth_)] = std::conj(coeff(-n));
    return out;
}

CircleFunction CircleFunction::operator+(const CircleFunction& other) const {
    const int nb = std::max(bandwidth_, other.bandwidth_);
    CircleFunction out(nb);
    for (int n = -nb; n <= nb; ++n) out.coeffs_[static_cast<std::size_t>(n + nb)] = coeff(n) + other.coeff(n);
    return out;
}

CircleFunction CircleFunction::operator-(const CircleFunction& other) const {
    const int nb = std::max(bandwidth_, other.bandwidth_);
    CircleFunction out(nb);
    for (int n = -nb; n <= nb; ++n) out.coeffs_[static_cast<std::size_t>(n + nb)] = coeff(n) - other.coeff(n);
    return out;
}

CircleFunction CircleFunction::operator*(cplx scale) const {
    CircleFunction out(bandwidth_);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) out.coeffs_[k] = coeffs_[k] * scale;
    return out;
}

bool CircleFunction::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](cplx c) { return c == cplx(0.0); });
}

std::vector<cplx> synthesize(std::span<const cplx> coeffs, int grid_size) {
    const int bandwidth = static_cast<int>(coeffs.size() / 2);
    if (grid_size < min_grid_size(bandwidth))
        throw SizeError("grid of " + std::to_string(grid_size) + " points too small for bandwidth " +
                        std::to_string(bandwidth));
    std::vector<cplx> buf(static_cast<std::size_t>(grid_size));
    for (int n = -bandwidth; n <= bandwidth; ++n) buf[wrap(n, grid_size)] += coeffs[static_cast<std::size_t>(n + bandwidth)];
    fft::backward(buf);
    return buf;
}

Analysis analyze_checked(std::span<const cplx> samples, int bandwidth) {
    const int grid_size = static_cast<int>(samples.size());
    if (grid_size < min_grid_size(bandwidth))
        throw SizeError("grid of " + std::to_string(grid_size) + " points too small for bandwidth " +
                        std::to_string(bandwidth));
    std::vector<cplx> buf(samples.begin(), samples.end());
    fft::forward(buf);
    const double inv = 1.0 / grid_size;
    std::vector<cplx> coeffs(static_cast<std::size_t>(2 * bandwidth + 1));
    double kept = 0.0;
    for (int n = -bandwidth; n <= bandwidth; ++n) {
        const cplx c = buf[wrap(n, grid_size)] * inv;
        coeffs[static_cast<std::size_t>(n + bandwidth)] = c;
        kept += std::norm(c);
    }
    double total = 0.0;
    for (const cplx& v : buf) total += std::norm(v * inv);
    Analysis result{CircleFunction(std::move(coeffs))};
    result.aliased_fraction = total > 0.0 ? std::max(0.0, total - kept) / total : 0.0;
    result.aliasing_warning = result.aliased_fraction > 1e-8;
    return result;
}

CircleFunction analyze(std::span<const cplx> samples, int bandwidth) {
    return analyze_checked(samples, bandwidth).function;
}

cplx inner_product(const CircleFunction& f, const CircleFunction& g) {
    const int nb = std::max(f.bandwidth(), g.bandwidth());
    cplx sum = 0.0;
    for (int n = -nb; n <= nb; ++n) sum += f.coeff(n) * std::conj(g.coeff(n));
    return kTwoPi * sum;
}

double l2_norm(const CircleFunction& f) { return weighted_norm(f, 0.0); }

double weighted_norm(const CircleFunction& f, double s) {
    if (s < 0.0) throw DomainError("weighted_norm requires s >= 0");
    double sum = 0.0;
    for (int n = -f.bandwidth(); n <= f.bandwidth(); ++n) {
        const double w = s == 0.0 ? 1.0 : std::pow(1.0 + double(n) * n, s);
        sum += w * std::norm(f.coeff(n));
    }
    return std::sqrt(kTwoPi * sum);
}

double sup_norm(const CircleFunction& f, int oversample) {
    const int m = std::max(8, oversample * (2 * f.bandwidth() + 1));
    double best = 0.0;
    for (const cplx& v : f.samples(m)) best = std::max(best, std::abs(v));
    return best;
}

double max_coeff_distance(const CircleFunction& f, const CircleFunction& g) {
    const int nb = std::max(f.bandwidth(), g.bandwidth());
    double d = 0.0;
    for (int n = -nb; n <= nb; ++n) d = std::max(d, std::abs(f.coeff(n) - g.coeff(n)));
    return d;
}

CircleFunction product(const CircleFunction& f, const CircleFunction& g) {
    const int a = f.bandwidth(), b = g.bandwidth();
    std::vector<cplx> out(static_cast<std::size_t>(2 * (a + b) + 1));
    for (int n = -a; n <= a; ++n)
        for (int m = -b; m <= b; ++m) out[static_cast<std::size_t>(n + m + a + b)] += f.coeff(n) * g.coeff(m);
    return CircleFunction(std::move(out));
}

CircleFunction abs_squared(const CircleFunction& f) { return product(f, f.conj()); }

void to_json(nlohmann::json& j, const CircleFunction& f) {
    auto arr = nlohmann::json::array();
    for (const cplx& c : f.coeffs()) arr.push_back({c.real(), c.imag()});
    j = nlohmann::json{{"N", f.bandwidth()}, {"coeffs", std::move(arr)}};
}

void from_json(const nlohmann::json& j, CircleFunction& f) {
    const int n = j.at("N").get<int>();
    const auto& arr = j.at("coeffs");
    if (n < 0 || arr.size() != static_cast<std::size_t>(2 * n + 1))
        throw ConfigError("CircleFunction JSON: coeffs must hold 2N+1 entries");
    std::vector<cplx> coeffs;
    coeffs.reserve(arr.size());
    for (const auto& c : arr) coeffs.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
    f = CircleFunction(std::move(coeffs));
}

}  // namespace tslab
