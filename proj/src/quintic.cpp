#include "tslab/quintic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tslab/bessel.hpp"
#include "tslab/errors.hpp"
#include "tslab/extension.hpp"
#include "tslab/parallel.hpp"

namespace tslab {
namespace {

constexpr std::size_t kRadialChunk = 128;

cplx i_pow(int n) {
    static constexpr cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[((n % 4) + 4) % 4];
}

std::size_t wrap(int n, int size) {
    const int r = n % size;
    return static_cast<std::size_t>(r < 0 ? r + size : r);
}

std::vector<cplx> field_scale(const CircleFunction& f) {
    const int n = f.bandwidth();
    std::vector<cplx> scale(static_cast<std::size_t>(2 * n + 1));
    for (int m = -n; m <= n; ++m) scale[static_cast<std::size_t>(m + n)] = kTwoPi * std::conj(i_pow(m)) * f.coeff(m);
    return scale;
}

}  // namespace

CircleFunction quintic_convolve(const Quintuple& f, const BesselTensor& tensor) {
    const int nt = tensor.bandwidth();
    std::array<int, 5> nb{};
    for (int i = 0; i < 5; ++i) {
        nb[i] = f[i].bandwidth();
        if (nb[i] > nt) throw SizeError("quintic_convolve: input bandwidth exceeds the tensor bandwidth");
    }
    const double scale = std::pow(kTwoPi, 4);
    std::vector<cplx> out(static_cast<std::size_t>(2 * nt + 1));
    parallel_chunks(out.size(), 1, [&](std::size_t, std::size_t begin, std::size_t) {
        const int m = static_cast<int>(begin) - nt;
        cplx sum = 0.0;
        for (int a = -nb[0]; a <= nb[0]; ++a) {
            const cplx ca = f[0].coeff(a);
            if (ca == 0.0) continue;
            for (int b = -nb[1]; b <= nb[1]; ++b) {
                const cplx cb = ca * f[1].coeff(b);
                if (cb == 0.0) continue;
                for (int c = -nb[2]; c <= nb[2]; ++c) {
                    const cplx cc = cb * f[2].coeff(c);
                    if (cc == 0.0) continue;
                    for (int d = -nb[3]; d <= nb[3]; ++d) {
                        const int e = m - a - b - c - d;
                        if (std::abs(e) > nb[4]) continue;
                        const cplx cd = cc * f[3].coeff(d) * f[4].coeff(e);
                        if (cd == 0.0) continue;
                        sum += cd * tensor.product_integral({a, b, c, d, e, m});
                    }
                }
            }
        }
        out[begin] = scale * sum;
    });
    return CircleFunction(std::move(out));
}

CircleFunction quintic_polar(const Quintuple& f, const PolarOptions& options) {
    std::vector<CircleFunction> functions;
    QuinticTerm term{1.0, {}};
    for (int i = 0; i < 5; ++i) {
        auto it = std::find_if(functions.begin(), functions.end(), [&](const CircleFunction& g) {
            return g.bandwidth() == f[i].bandwidth() && std::equal(g.coeffs().begin(), g.coeffs().end(), f[i].coeffs().begin());
        });
        if (it == functions.end()) {
            functions.push_back(f[i]);
            it = std::prev(functions.end());
        }
        term.slots[static_cast<std::size_t>(i)] = static_cast<int>(it - functions.begin());
    }
    return quintic_polar_sum(functions, {term}, options);
}

CircleFunction quintic_polar_sum(const std::vector<CircleFunction>& functions, const std::vector<QuinticTerm>& terms,
                                 const PolarOptions& options) {
    if (terms.empty()) throw DomainError("quintic_polar_sum: no terms");
    const std::size_t nf = functions.size();
    int total = 0, widest = 0;
    for (const QuinticTerm& t : terms) {
        int sum = 0;
        for (int idx : t.slots) {
            if (idx < 0 || static_cast<std::size_t>(idx) >= nf) throw DomainError("quintic_polar_sum: slot index out of range");
            sum += functions[static_cast<std::size_t>(idx)].bandwidth();
        }
        total = std::max(total, sum);
    }
    for (const auto& g : functions) widest = std::max(widest, g.bandwidth());
    const int out_n = options.output_bandwidth >= 0 ? options.output_bandwidth : widest;
    int angles = options.angles;
    if (angles == 0) {
        angles = std::max({16, total + out_n + 1, 2 * out_n + 2});
        angles = (angles + 7) / 8 * 8;
    }
    if (angles <= total + out_n) throw SizeError("quintic_polar: angular grid aliases the requested modes");
    if (angles < 2 * out_n + 2) throw SizeError("quintic_polar: angular grid too small for the output bandwidth");
    const RadialGrid grid = options.grid ? *options.grid : RadialGrid::for_bandwidth(std::max(widest, out_n));
    const int top = std::max(widest, out_n);

    std::vector<std::vector<cplx>> scales(nf);
    for (std::size_t i = 0; i < nf; ++i) scales[i] = field_scale(functions[i]);

    const auto nodes = grid.nodes();
    const auto weights = grid.weights();
    const std::size_t modes = static_cast<std::size_t>(2 * out_n + 1);
    const std::size_t chunks = chunk_count(nodes.size(), kRadialChunk);
    const std::size_t na = static_cast<std::size_t>(angles);
    std::vector<std::vector<cplx>> partial(chunks, std::vector<cplx>(modes));

    parallel_chunks(
        nodes.size(), kRadialChunk,
        [&](std::size_t chunk, std::size_t begin, std::size_t end) {
            std::vector<double> jn(static_cast<std::size_t>(top + 1));
            std::vector<cplx> prod(na), term(na), rings(nf * na);
            auto& acc = partial[chunk];
            for (std::size_t k = begin; k < end; ++k) {
                const double rho = nodes[k];
                bessel_j_orders(top, rho, jn);
                auto signed_j = [&](int n) {
                    const double v = jn[static_cast<std::size_t>(std::abs(n))];
                    return (n < 0 && (-n) % 2 == 1) ? -v : v;
                };
                for (std::size_t i = 0; i < nf; ++i) {
                    const int n = functions[i].bandwidth();
                    std::span<cplx> ring(rings.data() + i * na, na);
                    std::fill(ring.begin(), ring.end(), cplx(0.0));
                    for (int m = -n; m <= n; ++m) ring[wrap(m, angles)] += scales[i][static_cast<std::size_t>(m + n)] * signed_j(m);
                    fft::backward(ring);
                }
                std::fill(prod.begin(), prod.end(), cplx(0.0));
                for (const QuinticTerm& t : terms) {
                    std::fill(term.begin(), term.end(), t.coefficient);
                    for (int idx : t.slots) {
                        const cplx* ring = rings.data() + static_cast<std::size_t>(idx) * na;
                        for (std::size_t j = 0; j < na; ++j) term[j] *= ring[j];
                    }
                    for (std::size_t j = 0; j < na; ++j) prod[j] += term[j];
                }
                fft::forward(prod);
                const double w = weights[k] * rho / angles;
                for (int m = -out_n; m <= out_n; ++m)
                    acc[static_cast<std::size_t>(m + out_n)] += w * signed_j(m) * prod[wrap(m, angles)];
            }
        },
        options.threads);

    std::vector<cplx> q(modes);
    for (const auto& acc : partial)
        for (std::size_t m = 0; m < modes; ++m) q[m] += acc[m];

    if (grid.tail()) {
        // Per-angle tail of the summed products, then its angular Fourier modes.
        std::vector<std::vector<AsymptoticSeries>> tails(nf);
        for (std::size_t i = 0; i < nf; ++i)
            tails[i] = angular_tails(scales[i], functions[i].bandwidth(), angles, grid.cutoff());
        std::vector<AsymptoticSeries> product(na);
        for (std::size_t j = 0; j < na; ++j) {
            for (const QuinticTerm& t : terms) {
                AsymptoticSeries p = tails[static_cast<std::size_t>(t.slots[0])][j];
                for (std::size_t s = 1; s < 5; ++s) p = p * tails[static_cast<std::size_t>(t.slots[s])][j];
                product[j] = product[j] + p * t.coefficient;
            }
        }
        const auto shape = product.front().terms();
        std::vector<std::vector<AsymptoticSeries::Term>> mode_terms(modes);
        for (auto& mt : mode_terms)
            for (const auto& t : shape) mt.push_back({t.omega, std::vector<cplx>(t.coeffs.size())});
        std::vector<cplx> buf(na);
        for (std::size_t t = 0; t < shape.size(); ++t)
            for (std::size_t c = 0; c < shape[t].coeffs.size(); ++c) {
                for (std::size_t j = 0; j < na; ++j) {
                    const auto pt = product[j].terms();
                    if (pt.size() != shape.size() || pt[t].coeffs.size() != shape[t].coeffs.size() ||
                        pt[t].omega != shape[t].omega)
                        throw NumericalError("quintic_polar: inconsistent tail structure across angles");
                    buf[j] = pt[t].coeffs[c];
                }
                fft::forward(buf);
                for (int m = -out_n; m <= out_n; ++m)
                    mode_terms[static_cast<std::size_t>(m + out_n)][t].coeffs[c] = buf[wrap(m, angles)] / double(angles);
            }
        const double order = product.front().order();
        for (int m = -out_n; m <= out_n; ++m) {
            const AsymptoticSeries pi_m(order, std::move(mode_terms[static_cast<std::size_t>(m + out_n)]));
            const auto integrand = pi_m * AsymptoticSeries::bessel(m, 1.0, grid.cutoff()) * AsymptoticSeries::power(1.0);
            q[static_cast<std::size_t>(m + out_n)] += integrand.integrate_tail(grid.cutoff()).value;
        }
    }
    for (int m = -out_n; m <= out_n; ++m) q[static_cast<std::size_t>(m + out_n)] *= i_pow(m) / kTwoPi;
    return CircleFunction(std::move(q));
}

CircleFunction quintic_self(const CircleFunction& f, const PolarOptions& options) {
    const CircleFunction r = f.conj_reflect();
    return quintic_polar({f, f, f, r, r}, options);
}

CircleFunction quintic_self(const CircleFunction& f, const BesselTensor& tensor) {
    const CircleFunction r = f.conj_reflect();
    return quintic_convolve({f, f, f, r, r}, tensor);
}

PairingResult quintic_pairing(const Quintuple& f, const CircleFunction& g, std::optional<RadialGrid> grid) {
    int widest = g.bandwidth(), total = g.bandwidth();
    for (const auto& h : f) {
        widest = std::max(widest, h.bandwidth());
        total += h.bandwidth();
    }
    const RadialGrid radial = grid ? *grid : RadialGrid::for_bandwidth(widest);
    const int angles = std::max(64, (total + 2 + 7) / 8 * 8);
    PolarSamples prod = extend(g, radial, angles).samples().conj();
    for (const auto& h : f) prod = prod * extend(h, radial, angles).samples();
    const auto integral = plane_integral(prod);
    const double scale = 1.0 / (kTwoPi * kTwoPi);
    return {integral.value * scale, integral.error * scale};
}

}  // namespace tslab
