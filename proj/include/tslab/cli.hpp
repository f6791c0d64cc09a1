#pragma once

#include <cstdint>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tslab/bessel_tensor.hpp"

namespace tslab {

inline constexpr const char* kArtifactVersion = "0.1.0";
/// Largest bandwidth for which a command may build a tensor on its own.
inline constexpr int kImplicitTensorLimit = 16;

struct ExperimentConfig {
    std::string command;
    int bandwidth = 8;
    double cutoff = 0.0;        // 0: RadialGrid::for_bandwidth
    int angles = 0;             // 0: default angular grid
    int points = 200;           // radii for density / sup-bound
    int order = 5;              // density order k
    double eps = 0.05;
    double eta = 0.1;
    double s = 0.25;
    double alpha = 0.5;
    std::uint64_t seed = 1;
    std::string input;  // constant | perturbed | random | square | JSON file; empty: per-command default
    std::string tensor;              // tensor cache path
    std::string out;                 // output path, stdout when empty
    bool verify = false;
    std::string format = "json";     // json | csv
};

/// Throws ConfigError for an unknown command or out-of-range parameter.
void validate(const ExperimentConfig& config);
const std::vector<std::string>& command_names();

struct VerifyCheck {
    std::string name;
    double value = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;    // relative unless `absolute`
    bool absolute = false;
    bool pass = false;
};

struct ResultEnvelope {
    std::string command;
    std::string version = kArtifactVersion;
    ExperimentConfig config;
    double wall_clock = 0.0;
    nlohmann::json payload;
    std::vector<VerifyCheck> checks;
    std::optional<std::string> csv;   // tabular export for --format csv

    bool verified() const;
};

/// Dispatches one command. Errors: ConfigError (unknown command, bad
/// parameters, schema violation), StorageError (missing cache),
/// PreconditionError (implicit tensor above N = 16), and module errors.
ResultEnvelope run(const std::string& command, const ExperimentConfig& config);

/// Throws ConfigError("schema violation: ...") when provenance fields or the
/// command's required payload keys are missing.
void validate_envelope(const nlohmann::json& envelope);

/// Write then read back; throws ChecksumError on mismatch.
BesselTensor cache_roundtrip(const BesselTensor& tensor, const std::filesystem::path& path);

/// 0 success, 2 config, 3 numerical (divergence, checksum, failed verify), 4 precondition.
int exit_code(const std::exception& e);

void to_json(nlohmann::json& j, const ExperimentConfig& c);
void from_json(const nlohmann::json& j, ExperimentConfig& c);
void to_json(nlohmann::json& j, const VerifyCheck& c);
void to_json(nlohmann::json& j, const ResultEnvelope& e);

}  // namespace tslab
