#include "tslab/bessel_tensor.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

#include <boost/crc.hpp>

#include "tslab/bessel.hpp"
#include "tslab/errors.hpp"

namespace tslab {
namespace {

constexpr char kMagic[4] = {'B', '6', 'T', '1'};
constexpr std::size_t kHeaderBytes = 4 + 4 + 8 + 8 + 4;
constexpr std::size_t kRecordBytes = 6 * 2 + 8 + 8;

using Magnitudes = std::array<int, 6>;

std::uint64_t magnitude_key(const Index6& n) {
    Magnitudes m;
    for (int i = 0; i < 6; ++i) m[i] = std::abs(n[i]);
    std::sort(m.begin(), m.end());
    std::uint64_t key = 0;
    for (int v : m) key = (key << 10) | static_cast<std::uint64_t>(v);
    return key;
}

std::uint64_t orbit_key(const Index6& canonical) {
    std::uint64_t key = 0;
    for (int v : canonical) key = (key << 10) | static_cast<std::uint64_t>(v + 512);
    return key;
}

// J_{-n} = (-1)^n J_n.
double parity_sign(const Index6& n) {
    int odd = 0;
    for (int v : n)
        if (v < 0) odd += -v;
    return odd % 2 == 0 ? 1.0 : -1.0;
}

Magnitudes sorted_magnitudes(const Index6& n) {
    Magnitudes m;
    for (int i = 0; i < 6; ++i) m[i] = std::abs(n[i]);
    std::sort(m.begin(), m.end());
    return m;
}

// Bessel values on the grid for orders 0..N plus their Hankel tails.
struct BesselTable {
    int top;
    const RadialGrid* grid;
    std::vector<double> values;  // node-major
    std::vector<AsymptoticSeries> tails;

    BesselTable(int bandwidth, const RadialGrid& g) : top(bandwidth), grid(&g) {
        const auto nodes = g.nodes();
        values.resize(nodes.size() * static_cast<std::size_t>(top + 1));
        for (std::size_t k = 0; k < nodes.size(); ++k)
            bessel_j_orders(top, nodes[k], std::span<double>(values).subspan(k * (top + 1), top + 1));
        if (g.tail())
            for (int n = 0; n <= top; ++n) tails.push_back(AsymptoticSeries::bessel(n, 1.0, g.cutoff()));
    }

    BesselIntegral integrate(const Magnitudes& m) const {
        const auto weights = grid->weights();
        const auto nodes = grid->nodes();
        const std::size_t stride = static_cast<std::size_t>(top + 1);
        double sum = 0.0, magnitude = 0.0;
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            const double* j = values.data() + k * stride;
            const double v = weights[k] * nodes[k] * j[m[0]] * j[m[1]] * j[m[2]] * j[m[3]] * j[m[4]] * j[m[5]];
            sum += v;
            magnitude += std::fabs(v);
        }
        BesselIntegral out{sum, 1e-15 * magnitude};
        if (!tails.empty()) {
            AsymptoticSeries product = AsymptoticSeries::power(1.0);
            for (int v : m) product = product * tails[static_cast<std::size_t>(v)];
            const auto tail = product.integrate_tail(grid->cutoff());
            out.value += tail.value.real();
            out.error += tail.error;
        }
        return out;
    }
};

template <class T>
void put(std::string& buf, T value) {
    using U = std::conditional_t<sizeof(T) == 2, std::uint16_t,
                                 std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>>;
    U bits = std::bit_cast<U>(value);
    for (std::size_t i = 0; i < sizeof(U); ++i) buf.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

template <class T>
T get(const char* p) {
    using U = std::conditional_t<sizeof(T) == 2, std::uint16_t,
                                 std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>>;
    U bits = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) bits |= static_cast<U>(static_cast<unsigned char>(p[i])) << (8 * i);
    return std::bit_cast<T>(bits);
}

std::string encode_records(const std::vector<BesselTensor::Entry>& entries) {
    std::string buf;
    buf.reserve(entries.size() * kRecordBytes);
    for (const auto& e : entries) {
        for (int v : e.index) put(buf, static_cast<std::int16_t>(v));
        put(buf, e.integral.value);
        put(buf, e.integral.error);
    }
    return buf;
}

std::uint32_t crc32(const std::string& bytes) {
    boost::crc_32_type crc;
    crc.process_bytes(bytes.data(), bytes.size());
    return crc.checksum();
}

}  // namespace

bool admissible(const Index6& n) { return n[0] + n[1] + n[2] == n[3] + n[4] + n[5]; }

Index6 canonical_index(const Index6& n) {
    auto arrange = [](std::array<int, 3> a, std::array<int, 3> b) {
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        return Index6{a[0], a[1], a[2], b[0], b[1], b[2]};
    };
    const std::array<int, 3> a{n[0], n[1], n[2]}, b{n[3], n[4], n[5]};
    const std::array<int, 3> na{-n[0], -n[1], -n[2]}, nb{-n[3], -n[4], -n[5]};
    return std::min({arrange(a, b), arrange(b, a), arrange(na, nb), arrange(nb, na)});
}

BesselIntegral six_bessel_integral(const Index6& n, const RadialGrid& grid) {
    if (!admissible(n)) throw AdmissibilityError("six_bessel_integral: n1+n2+n3 != n4+n5+n6");
    const Magnitudes m = sorted_magnitudes(n);
    if (m[5] > kMaxBesselOrder) throw DomainError("six_bessel_integral: order above 256");
    const BesselTable table(m[5], grid);
    BesselIntegral out = table.integrate(m);
    out.value *= parity_sign(n);
    return out;
}

BesselTensor::BesselTensor(int bandwidth, double cutoff, std::vector<Entry> entries)
    : bandwidth_(bandwidth), cutoff_(cutoff), entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const Index6& idx = entries_[i].index;
        if (!admissible(idx)) throw AdmissibilityError("BesselTensor: inadmissible record");
        if (canonical_index(idx) != idx) throw DomainError("BesselTensor: record is not an orbit representative");
        for (int v : idx)
            if (std::abs(v) > bandwidth_) throw SizeError("BesselTensor: record exceeds bandwidth");
        by_orbit_.emplace(orbit_key(idx), i);
        by_magnitudes_.emplace(magnitude_key(idx), entries_[i].integral.value * parity_sign(idx));
    }
}

BesselIntegral BesselTensor::at(const Index6& n) const {
    if (!admissible(n)) throw AdmissibilityError("BesselTensor: inadmissible tuple");
    for (int v : n)
        if (std::abs(v) > bandwidth_) throw SizeError("BesselTensor: index outside tensor bandwidth");
    const auto it = by_orbit_.find(orbit_key(canonical_index(n)));
    if (it == by_orbit_.end()) throw DomainError("BesselTensor: missing entry");
    return entries_[it->second].integral;
}

double BesselTensor::product_integral(const Index6& orders) const {
    for (int v : orders)
        if (std::abs(v) > bandwidth_) throw SizeError("BesselTensor: order outside tensor bandwidth");
    const auto it = by_magnitudes_.find(magnitude_key(orders));
    if (it == by_magnitudes_.end()) throw AdmissibilityError("BesselTensor: orders admit no admissible arrangement");
    return it->second * parity_sign(orders);
}

std::uint32_t BesselTensor::checksum() const { return crc32(encode_records(entries_)); }

double BesselTensor::max_error() const {
    double e = 0.0;
    for (const auto& entry : entries_) e = std::max(e, entry.integral.error);
    return e;
}

std::vector<Index6> admissible_tuples(int bandwidth) {
    std::vector<Index6> out;
    const int n = bandwidth;
    for (int a = -n; a <= n; ++a)
        for (int b = -n; b <= n; ++b)
            for (int c = -n; c <= n; ++c)
                for (int d = -n; d <= n; ++d)
                    for (int e = -n; e <= n; ++e) {
                        const int f = a + b + c - d - e;
                        if (std::abs(f) <= n) out.push_back({a, b, c, d, e, f});
                    }
    return out;
}

BesselTensor build_tensor(int bandwidth, const TensorBuildOptions& options) {
    if (bandwidth < 0 || bandwidth > kMaxBesselOrder) throw DomainError("build_tensor: bandwidth out of range");
    const RadialGrid grid = options.grid ? *options.grid : RadialGrid::for_bandwidth(bandwidth);

    std::vector<std::array<int, 3>> triples;
    for (int a = -bandwidth; a <= bandwidth; ++a)
        for (int b = a; b <= bandwidth; ++b)
            for (int c = b; c <= bandwidth; ++c) triples.push_back({a, b, c});
    std::map<int, std::vector<std::size_t>> by_sum;
    for (std::size_t i = 0; i < triples.size(); ++i)
        by_sum[triples[i][0] + triples[i][1] + triples[i][2]].push_back(i);

    std::vector<Index6> orbits;
    for (const auto& [sum, members] : by_sum)
        for (std::size_t i : members)
            for (std::size_t j : members) {
                const Index6 idx{triples[i][0], triples[i][1], triples[i][2], triples[j][0], triples[j][1], triples[j][2]};
                if (canonical_index(idx) == idx) orbits.push_back(idx);
            }
    std::sort(orbits.begin(), orbits.end());

    std::map<std::uint64_t, std::size_t> slot;
    std::vector<Magnitudes> classes;
    for (const Index6& idx : orbits)
        if (slot.emplace(magnitude_key(idx), classes.size()).second) classes.push_back(sorted_magnitudes(idx));

    const BesselTable table(bandwidth, grid);
    std::vector<BesselIntegral> values(classes.size());
    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, classes.size())));
    std::vector<std::jthread> workers;
    std::vector<std::exception_ptr> failures(threads);
    for (unsigned t = 0; t < threads; ++t)
        workers.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < classes.size(); i += threads) values[i] = table.integrate(classes[i]);
            } catch (...) {
                failures[t] = std::current_exception();
            }
        });
    workers.clear();
    for (const auto& f : failures)
        if (f) std::rethrow_exception(f);

    std::vector<BesselTensor::Entry> entries;
    entries.reserve(orbits.size());
    for (const Index6& idx : orbits) {
        BesselIntegral v = values[slot.at(magnitude_key(idx))];
        v.value *= parity_sign(idx);
        entries.push_back({idx, v});
    }
    return BesselTensor(bandwidth, grid.cutoff(), std::move(entries));
}

void write_tensor(const BesselTensor& tensor, const std::filesystem::path& path) {
    const std::string records = encode_records(tensor.entries());
    std::string buf(kMagic, 4);
    put(buf, static_cast<std::int32_t>(tensor.bandwidth()));
    put(buf, tensor.cutoff());
    put(buf, static_cast<std::uint64_t>(tensor.size()));
    put(buf, crc32(records));
    buf += records;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw StorageError("cannot open tensor cache for writing: " + path.string());
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw StorageError("failed writing tensor cache: " + path.string());
}

BesselTensor read_tensor(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StorageError("cannot open tensor cache: " + path.string());
    const std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (buf.size() < kHeaderBytes || std::memcmp(buf.data(), kMagic, 4) != 0)
        throw ChecksumError("tensor cache header is corrupt: " + path.string());
    const char* p = buf.data() + 4;
    const int bandwidth = get<std::int32_t>(p);
    const double cutoff = get<double>(p + 4);
    const std::uint64_t count = get<std::uint64_t>(p + 12);
    const std::uint32_t checksum = get<std::uint32_t>(p + 20);
    if (buf.size() != kHeaderBytes + count * kRecordBytes)
        throw ChecksumError("tensor cache size does not match its entry count: " + path.string());
    const std::string records = buf.substr(kHeaderBytes);
    if (crc32(records) != checksum) throw ChecksumError("tensor cache checksum mismatch: " + path.string());
    std::vector<BesselTensor::Entry> entries(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const char* r = records.data() + i * kRecordBytes;
        for (int k = 0; k < 6; ++k) entries[i].index[k] = get<std::int16_t>(r + 2 * k);
        entries[i].integral = {get<double>(r + 12), get<double>(r + 20)};
    }
    return BesselTensor(bandwidth, cutoff, std::move(entries));
}

void write_tensor_csv(const BesselTensor& tensor, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw StorageError("cannot open CSV for writing: " + path.string());
    out << std::setprecision(17);
    out << "# B6T1 N=" << tensor.bandwidth() << " P=" << tensor.cutoff() << " count=" << tensor.size() << '\n';
    out << "n1,n2,n3,n4,n5,n6,value,error\n";
    for (const auto& e : tensor.entries()) {
        for (int v : e.index) out << v << ',';
        out << e.integral.value << ',' << e.integral.error << '\n';
    }
    if (!out) throw StorageError("failed writing CSV: " + path.string());
}

BesselTensor read_tensor_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw StorageError("cannot open CSV: " + path.string());
    std::string line;
    int bandwidth = -1;
    double cutoff = 0.0;
    std::vector<BesselTensor::Entry> entries;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream meta(line.substr(1));
            std::string token;
            while (meta >> token) {
                if (token.rfind("N=", 0) == 0) bandwidth = std::stoi(token.substr(2));
                if (token.rfind("P=", 0) == 0) cutoff = std::stod(token.substr(2));
            }
            continue;
        }
        if (line[0] == 'n') continue;
        std::istringstream row(line);
        std::string cell;
        BesselTensor::Entry e;
        for (int k = 0; k < 6; ++k) {
            std::getline(row, cell, ',');
            e.index[k] = std::stoi(cell);
        }
        std::getline(row, cell, ',');
        e.integral.value = std::stod(cell);
        std::getline(row, cell, ',');
        e.integral.error = std::stod(cell);
        entries.push_back(e);
    }
    if (bandwidth < 0) throw StorageError("CSV tensor is missing its metadata line: " + path.string());
    return BesselTensor(bandwidth, cutoff, std::move(entries));
}

}  // namespace tslab
