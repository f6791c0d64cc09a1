#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tslab/radial.hpp"

namespace tslab {

using Index6 = std::array<int, 6>;

/// n1 + n2 + n3 == n4 + n5 + n6.
bool admissible(const Index6& n);

struct BesselIntegral {
    double value = 0.0;
    double error = 0.0;
};

/// int_0^inf prod_i J_{n_i}(rho) rho d rho with the Hankel tail beyond the
/// grid cutoff. Throws AdmissibilityError for inadmissible tuples.
BesselIntegral six_bessel_integral(const Index6& n, const RadialGrid& grid = RadialGrid());

/// Representative of the orbit of `n` under permutations inside each triple,
/// exchange of the triples and global negation (lexicographically smallest).
Index6 canonical_index(const Index6& n);

/// Cached six-Bessel integrals for all admissible tuples with |n_i| <= N,
/// one record per symmetry orbit. Immutable after construction.
class BesselTensor {
public:
    struct Entry {
        Index6 index;
        BesselIntegral integral;
    };

    BesselTensor() = default;
    BesselTensor(int bandwidth, double cutoff, std::vector<Entry> entries);

    int bandwidth() const { return bandwidth_; }
    double cutoff() const { return cutoff_; }
    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

    /// Integral for any admissible tuple within the bandwidth.
    BesselIntegral at(const Index6& n) const;
    /// Integral of the six Bessel functions with arbitrary signed orders
    /// (the product is fully symmetric, so only |n_i| and the parity sign matter).
    double product_integral(const Index6& orders) const;

    std::uint32_t checksum() const;
    double max_error() const;

private:
    int bandwidth_ = -1;
    double cutoff_ = 0.0;
    std::vector<Entry> entries_;
    std::unordered_map<std::uint64_t, std::size_t> by_orbit_;
    std::unordered_map<std::uint64_t, double> by_magnitudes_;
};

/// All admissible tuples with |n_i| <= N (every ordering).
std::vector<Index6> admissible_tuples(int bandwidth);

struct TensorBuildOptions {
    unsigned threads = 0;  // 0: hardware concurrency
    std::optional<RadialGrid> grid;  // default RadialGrid::for_bandwidth(N)
};

BesselTensor build_tensor(int bandwidth, const TensorBuildOptions& options = {});

/// Little-endian binary cache: "B6T1", N, P, count, CRC-32 of the records,
/// then count x (6 x int16, f64 value, f64 error). Throws StorageError on I/O
/// failure and ChecksumError on corrupted or truncated files.
void write_tensor(const BesselTensor& tensor, const std::filesystem::path& path);
BesselTensor read_tensor(const std::filesystem::path& path);

/// CSV mirror with 17 significant digits.
void write_tensor_csv(const BesselTensor& tensor, const std::filesystem::path& path);
BesselTensor read_tensor_csv(const std::filesystem::path& path);

}  // namespace tslab
