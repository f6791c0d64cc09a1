#include "tslab/extension.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>

#include "tslab/bessel.hpp"
#include "tslab/errors.hpp"
#include "tslab/fft.hpp"
#include "tslab/parallel.hpp"

namespace tslab {
namespace {

constexpr std::size_t kRadialChunk = 256;

cplx minus_i_pow(int n) {
    static constexpr cplx table[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    return table[((n % 4) + 4) % 4];
}

std::vector<cplx> field_scale(const CircleFunction& f) {
    const int n = f.bandwidth();
    std::vector<cplx> scale(static_cast<std::size_t>(2 * n + 1));
    for (int m = -n; m <= n; ++m) scale[static_cast<std::size_t>(m + n)] = kTwoPi * minus_i_pow(m) * f.coeff(m);
    return scale;
}

void check_compatible(const PolarSamples& a, const PolarSamples& b) {
    if (a.angles != b.angles || a.grid.size() != b.grid.size() || a.grid.cutoff() != b.grid.cutoff())
        throw SizeError("PolarSamples: grids differ");
}

}  // namespace

PolarSamples PolarSamples::operator*(const PolarSamples& other) const {
    check_compatible(*this, other);
    PolarSamples out{grid, angles, values, {}};
    for (std::size_t i = 0; i < values.size(); ++i) out.values[i] *= other.values[i];
    if (has_tail() && other.has_tail()) {
        out.tails.reserve(tails.size());
        for (std::size_t j = 0; j < tails.size(); ++j) out.tails.push_back(tails[j] * other.tails[j]);
    }
    return out;
}

PolarSamples PolarSamples::conj() const {
    PolarSamples out{grid, angles, values, {}};
    for (cplx& v : out.values) v = std::conj(v);
    for (const auto& t : tails) out.tails.push_back(t.conj());
    return out;
}

PlaneIntegral plane_integral(const PolarSamples& s) {
    if (!s.has_tail() && s.grid.tail()) throw PreconditionError("plane integral: tail required");
    const auto nodes = s.grid.nodes();
    const auto weights = s.grid.weights();
    const double dphi = kTwoPi / s.angles;
    cplx sum = 0.0;
    double magnitude = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        cplx ring = 0.0;
        for (int j = 0; j < s.angles; ++j) ring += s.at(k, j);
        const cplx v = weights[k] * nodes[k] * dphi * ring;
        sum += v;
        magnitude += std::abs(v);
    }
    PlaneIntegral out{sum, 1e-15 * magnitude};
    if (s.grid.tail()) {
        AsymptoticSeries mean;
        for (const auto& t : s.tails) mean = mean + t;
        const auto tail = (mean * AsymptoticSeries::power(1.0)).integrate_tail(s.grid.cutoff());
        out.value += dphi * tail.value;
        out.error += dphi * tail.error;
    }
    return out;
}

int default_angles(int bandwidth) { return std::max(6 * bandwidth + 2, 64); }

std::vector<AsymptoticSeries> angular_tails(std::span<const cplx> scale, int bandwidth, int angles, double cutoff) {
    std::vector<AsymptoticSeries> modes;
    std::size_t terms = 0;
    for (int n = -bandwidth; n <= bandwidth; ++n) {
        modes.push_back(AsymptoticSeries::bessel(n, 1.0, cutoff));
        terms = std::max(terms, modes.back().terms()[0].coeffs.size());
    }
    // plus[k][j], minus[k][j]: amplitude of rho^{-1/2-k} e^{+-i rho} at angle j.
    std::vector<std::vector<cplx>> plus(terms), minus(terms);
    std::vector<cplx> a(scale.size()), b(scale.size());
    for (std::size_t k = 0; k < terms; ++k) {
        for (std::size_t i = 0; i < scale.size(); ++i) {
            const auto& t = modes[i].terms();
            a[i] = k < t[0].coeffs.size() ? scale[i] * t[0].coeffs[k] : 0.0;
            b[i] = k < t[1].coeffs.size() ? scale[i] * t[1].coeffs[k] : 0.0;
        }
        plus[k] = synthesize(a, angles);
        minus[k] = synthesize(b, angles);
    }
    std::vector<AsymptoticSeries> out;
    out.reserve(static_cast<std::size_t>(angles));
    for (int j = 0; j < angles; ++j) {
        AsymptoticSeries::Term p{1.0, std::vector<cplx>(terms)}, m{-1.0, std::vector<cplx>(terms)};
        for (std::size_t k = 0; k < terms; ++k) {
            p.coeffs[k] = plus[k][static_cast<std::size_t>(j)];
            m.coeffs[k] = minus[k][static_cast<std::size_t>(j)];
        }
        out.emplace_back(0.5, std::vector<AsymptoticSeries::Term>{std::move(p), std::move(m)});
    }
    return out;
}

ExtensionBasis::ExtensionBasis(int bandwidth, const RadialGrid& grid, int angles)
    : bandwidth_(bandwidth), grid_(grid), angles_(angles > 0 ? angles : default_angles(bandwidth)) {
    if (bandwidth < 0) throw SizeError("extension basis: negative bandwidth");
    if (angles_ < min_grid_size(bandwidth)) throw SizeError("extend: angular grid too small for the bandwidth");
    const auto nodes = grid.nodes();
    const auto width = static_cast<std::size_t>(bandwidth + 1);
    table_.resize(nodes.size() * width);
    parallel_chunks(nodes.size(), kRadialChunk, [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) bessel_j_orders(bandwidth, nodes[k], std::span(table_).subspan(k * width, width));
    });
}

PolarSamples ExtensionBasis::samples(const CircleFunction& f) const {
    const int n = f.bandwidth();
    if (n > bandwidth_) throw SizeError("extension basis: function wider than the basis");
    const int j = angles_;
    const auto width = static_cast<std::size_t>(bandwidth_ + 1);
    PolarSamples out;
    out.grid = grid_;
    out.angles = j;
    out.values.resize(grid_.size() * static_cast<std::size_t>(j));
    const auto scale = field_scale(f);
    parallel_chunks(grid_.size(), kRadialChunk, [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            const double* jn = table_.data() + k * width;
            cplx* row = out.values.data() + k * static_cast<std::size_t>(j);
            for (int m = -n; m <= n; ++m) {
                const double v = (m < 0 && (-m) % 2 == 1) ? -jn[-m] : jn[std::abs(m)];
                row[(m % j + j) % j] += scale[static_cast<std::size_t>(m + n)] * v;
            }
        }
        fft::backward_rows(std::span(out.values).subspan(begin * static_cast<std::size_t>(j),
                                                         (end - begin) * static_cast<std::size_t>(j)),
                           j);
    });
    if (grid_.tail()) out.tails = angular_tails(scale, n, j, grid_.cutoff());
    return out;
}

ExtensionField::ExtensionField(const CircleFunction& f, const RadialGrid& grid, int angles)
    : source_(f), samples_(ExtensionBasis(f.bandwidth(), grid, angles).samples(f)) {}

cplx ExtensionField::mode(int n, double rho) const {
    if (std::abs(n) > bandwidth()) return 0.0;
    return kTwoPi * minus_i_pow(n) * source_.coeff(n) * bessel_j_signed(n, rho);
}

cplx ExtensionField::evaluate(double rho, double phi) const {
    cplx sum = 0.0;
    for (int n = -bandwidth(); n <= bandwidth(); ++n) sum += mode(n, rho) * std::polar(1.0, n * phi);
    return sum;
}

ExtensionField ExtensionField::conj() const {
    ExtensionField out;
    out.source_ = source_.conj_reflect();
    out.samples_ = samples_.conj();
    return out;
}

ExtensionField ExtensionField::without_tail() const {
    ExtensionField out;
    out.source_ = source_;
    out.samples_ = samples_;
    out.samples_.tails.clear();
    out.samples_.grid = samples_.grid.without_tail();
    return out;
}

ExtensionField extend(const CircleFunction& f, const RadialGrid& grid, int angles) {
    return ExtensionField(f, grid, angles);
}

ExtensionField extend(const CircleFunction& f) { return ExtensionField(f, RadialGrid::for_bandwidth(f.bandwidth())); }

DecayReport decay_check(const ExtensionField& field, double rho0, double step) {
    if (!(step > 0.0)) throw DomainError("decay_check: step must be positive");
    const double cutoff = field.grid().cutoff();
    const int n = field.bandwidth(), angles = field.angles();
    DecayReport report{rho0, cutoff, 0.0, rho0, true};
    std::vector<cplx> modes(static_cast<std::size_t>(2 * n + 1));
    const auto count = static_cast<long>(std::floor((cutoff - rho0) / step + 1e-9));
    for (long i = 0; i <= count; ++i) {
        const double rho = rho0 + static_cast<double>(i) * step;
        for (int m = -n; m <= n; ++m) modes[static_cast<std::size_t>(m + n)] = field.mode(m, rho);
        for (int j = 0; j < angles; ++j) {
            const double phi = kTwoPi * j / angles;
            cplx sum = 0.0;
            for (int m = -n; m <= n; ++m) sum += modes[static_cast<std::size_t>(m + n)] * std::polar(1.0, m * phi);
            const double v = std::sqrt(rho) * std::abs(sum) / kTwoPi;
            if (v > report.sup) {
                report.sup = v;
                report.argmax = rho;
            }
        }
    }
    report.bounded = report.sup <= 1.0;
    return report;
}

PlaneIntegral l6_power(const ExtensionField& field) {
    if (!field.has_tail()) throw PreconditionError("l6_norm: tail required (field was built without tail metadata)");
    const PolarSamples& f = field.samples();
    const PolarSamples sq = f * f.conj();
    const PlaneIntegral out = plane_integral(sq * sq * sq);
    return {cplx(out.value.real(), 0.0), out.error};
}

double l6_norm(const ExtensionField& field) { return std::pow(std::max(0.0, l6_power(field).value.real()), 1.0 / 6.0); }

void write_field_csv(const ExtensionField& field, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw StorageError("cannot open CSV for writing: " + path.string());
    out << std::setprecision(17) << "rho,phi,re,im\n";
    const auto nodes = field.grid().nodes();
    for (std::size_t k = 0; k < nodes.size(); ++k)
        for (int j = 0; j < field.angles(); ++j) {
            const cplx v = field.samples().at(k, j);
            out << nodes[k] << ',' << kTwoPi * j / field.angles() << ',' << v.real() << ',' << v.imag() << '\n';
        }
    if (!out) throw StorageError("failed writing CSV: " + path.string());
}

}  // namespace tslab
