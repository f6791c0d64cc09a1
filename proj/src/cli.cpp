#include "tslab/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "tslab/bessel.hpp"
#include "tslab/bounds.hpp"
#include "tslab/density.hpp"
#include "tslab/errors.hpp"
#include "tslab/extension.hpp"
#include "tslab/quintic.hpp"
#include "tslab/regularity.hpp"
#include "tslab/solver.hpp"
#include "tslab/variational.hpp"

namespace tslab {
namespace {

using nlohmann::json;

VerifyCheck relative_check(std::string name, double value, double expected, double tolerance) {
    VerifyCheck c{std::move(name), value, expected, tolerance, false, false};
    const double scale = std::max(std::fabs(expected), 1e-300);
    c.pass = std::fabs(value - expected) <= tolerance * scale;
    return c;
}

VerifyCheck absolute_check(std::string name, double value, double expected, double tolerance) {
    VerifyCheck c{std::move(name), value, expected, tolerance, true, false};
    c.pass = std::fabs(value - expected) <= tolerance;
    return c;
}

CircleFunction random_input(std::uint64_t seed, int bandwidth) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::vector<cplx> c(static_cast<std::size_t>(2 * bandwidth + 1));
    for (int n = -bandwidth; n <= bandwidth; ++n) {
        const double re = gauss(rng), im = gauss(rng);
        c[static_cast<std::size_t>(n + bandwidth)] = std::exp(-0.5 * std::abs(n)) * cplx(re, im);
    }
    return CircleFunction(std::move(c));
}

CircleFunction make_input(const ExperimentConfig& c, const std::string& fallback) {
    const std::string& name = c.input.empty() ? fallback : c.input;
    const int n = c.bandwidth;
    if (name == "constant") return CircleFunction::constant(1.0).padded(n);
    if (name == "perturbed") return (CircleFunction::constant(1.0) + CircleFunction::mode(1, 0.3)).padded(n);
    if (name == "random") return random_input(c.seed, n);
    if (name == "square") return CircleFunction::square_wave(n);
    std::ifstream in(name);
    if (!in) throw ConfigError("input is neither a generator name nor a readable file: " + name);
    try {
        return json::parse(in).get<CircleFunction>();
    } catch (const json::exception& e) {
        throw ConfigError("cannot parse input function " + name + ": " + e.what());
    }
}

PolarOptions polar_options(const ExperimentConfig& c) {
    PolarOptions o;
    if (c.cutoff > 0.0) o.grid = RadialGrid(c.cutoff);
    o.angles = c.angles;
    return o;
}

std::optional<BesselTensor> load_tensor(const ExperimentConfig& c) {
    if (c.tensor.empty()) return std::nullopt;
    if (!std::filesystem::exists(c.tensor)) throw StorageError("missing tensor cache: " + c.tensor);
    BesselTensor t = read_tensor(c.tensor);
    if (t.bandwidth() < c.bandwidth)
        throw PreconditionError("tensor cache bandwidth " + std::to_string(t.bandwidth()) + " is below N = " +
                                std::to_string(c.bandwidth));
    return t;
}

/// The cache when given, otherwise an implicit build for N <= 16.
BesselTensor tensor_for(const ExperimentConfig& c) {
    if (auto t = load_tensor(c)) return *t;
    if (c.bandwidth > kImplicitTensorLimit)
        throw PreconditionError("N = " + std::to_string(c.bandwidth) +
                                " needs an explicit tensor-build and --tensor (no implicit tensor above N = 16)");
    return build_tensor(c.bandwidth);
}

using Handler = std::function<void(const ExperimentConfig&, ResultEnvelope&)>;

void cmd_tensor_build(const ExperimentConfig& c, ResultEnvelope& e) {
    if (c.tensor.empty()) throw ConfigError("tensor-build requires --tensor <path>");
    TensorBuildOptions opts;
    if (c.cutoff > 0.0) opts.grid = RadialGrid(c.cutoff);
    const BesselTensor t = build_tensor(c.bandwidth, opts);
    write_tensor(t, c.tensor);
    e.payload = {{"bandwidth", t.bandwidth()}, {"cutoff", t.cutoff()},       {"entries", t.size()},
                 {"checksum", t.checksum()},   {"max_error", t.max_error()}, {"path", c.tensor}};
    if (c.format == "csv") {
        const std::filesystem::path csv = c.out.empty() ? std::filesystem::path(c.tensor + ".csv") : std::filesystem::path(c.out);
        write_tensor_csv(t, csv);
        e.payload["csv_path"] = csv.string();
    }
    if (c.verify) {
        const BesselTensor back = read_tensor(c.tensor);
        bool same = back.size() == t.size();
        for (std::size_t k = 0; same && k < t.size(); ++k)
            same = back.entries()[k].index == t.entries()[k].index &&
                   back.entries()[k].integral.value == t.entries()[k].integral.value;
        e.checks.push_back(absolute_check("cache_roundtrip_identical", same ? 0.0 : 1.0, 0.0, 0.0));
        if (c.bandwidth >= 5) {
            e.checks.push_back(relative_check("lattice_oracle_(5,0,0,5,0,0)", t.at({5, 0, 0, 5, 0, 0}).value,
                                              0.0151231236, 1e-7));
        }
    }
}

void cmd_extend(const ExperimentConfig& c, ResultEnvelope& e) {
    const CircleFunction f = make_input(c, "constant");
    const RadialGrid grid = c.cutoff > 0.0 ? RadialGrid(c.cutoff) : RadialGrid::for_bandwidth(c.bandwidth);
    const ExtensionField field = extend(f, grid, c.angles);
    const double work = (grid.cutoff() - 10.0) * field.angles() * (2.0 * f.bandwidth() + 1.0);
    const DecayReport d = decay_check(field, 10.0, std::max(0.005, work / 2e8));
    const double l6 = l6_norm(field);
    e.payload = {{"bandwidth", f.bandwidth()},
                 {"cutoff", grid.cutoff()},
                 {"angles", field.angles()},
                 {"l2_norm", l2_norm(f)},
                 {"l6_norm", l6},
                 {"quotient", l6 / l2_norm(f)},
                 {"decay", {{"rho0", d.rho0}, {"sup", d.sup}, {"argmax", d.argmax}, {"bounded", d.bounded}}},
                 {"input", f}};
    if (c.format == "csv") {
        if (c.out.empty()) throw ConfigError("extend --format csv requires --out");
        write_field_csv(field, c.out);
        e.payload["csv_path"] = c.out;
    }
    if (c.verify) {
        const double pairing = ts_functional(f, polar_options(c));
        e.checks.push_back(relative_check("duality_l6_vs_pairing", std::pow(l6, 6) / (kTwoPi * kTwoPi), pairing, 1e-6));
    }
}

void cmd_density(const ExperimentConfig& c, ResultEnvelope& e) {
    std::vector<double> radii;
    for (int i = 0; i < c.points; ++i) radii.push_back(c.order * (i + 0.5) / c.points);
    const RadialDensity d = auto_density(c.order, radii);
    e.payload = d;
    std::ostringstream csv;
    csv.precision(17);
    csv << "r,mu,singular\n";
    for (std::size_t i = 0; i < d.radii.size(); ++i) csv << d.radii[i] << ',' << d.values[i] << ',' << d.singular[i] << '\n';
    e.csv = csv.str();
    if (c.verify) e.checks.push_back(relative_check("mass", d.mass, std::pow(kTwoPi, c.order), 1e-4));
}

void cmd_sup_bound(const ExperimentConfig& c, ResultEnvelope& e) {
    const double radius = c.order - 0.01;
    const SupBoundReport r = sup_bound_check(c.order, radius, c.points);
    e.payload = r;
    if (c.verify) {
        const SupBoundReport fine = sup_bound_check(c.order, radius, c.points, RadialGrid(200.0, 0.25));
        e.checks.push_back(relative_check("sup_grid_doubling", fine.sup, r.sup, 1e-3));
        if (c.order == 5) {
            const double lambda0 = std::pow(kTwoPi, 4) * t0_oracle().value;
            e.checks.push_back(absolute_check("sup_excess_over_mu5(1)", std::max(0.0, r.sup - lambda0) / lambda0, 0.0, 1e-5));
        }
    }
}

void cmd_functional(const ExperimentConfig& c, ResultEnvelope& e) {
    const CircleFunction f = make_input(c, "random");
    const double value = ts_functional(f, polar_options(c));
    const double q = quotient(f);
    e.payload = {{"functional", value}, {"quotient", q}, {"l2_norm", l2_norm(f)}, {"input", f}};
    e.csv = coefficient_csv(f);
    if (c.verify) {
        const double l6 = l6_norm(extend(f));
        e.checks.push_back(relative_check("duality_l6_vs_pairing", value, std::pow(l6, 6) / (kTwoPi * kTwoPi), 1e-6));
        const BesselTensor t = tensor_for(c);
        const double via_tensor = inner_product(quintic_self(f, t), f).real();
        e.checks.push_back(relative_check("tensor_vs_polar", via_tensor, value, 1e-6));
    }
}

void cmd_el_residual(const ExperimentConfig& c, ResultEnvelope& e) {
    const CircleFunction f = make_input(c, "constant");
    const ELReport r = el_residual(f, polar_options(c));
    e.payload = r;
    e.payload["relative_residual"] = r.residual_l2 / (r.lambda_fit * l2_norm(f));
    e.payload["input"] = f;
    e.csv = coefficient_csv(f);
    if (c.verify) {
        const BesselTensor t = tensor_for(c);
        const CircleFunction qt = quintic_self(f, t).padded(f.bandwidth()).low_pass(f.bandwidth());
        const double lt = inner_product(qt, f).real() / std::pow(l2_norm(f), 2);
        e.checks.push_back(relative_check("lambda_tensor_vs_polar", lt, r.lambda_fit, 1e-6));
        if (c.input.empty() || c.input == "constant")
            e.checks.push_back(absolute_check("constant_relative_residual", e.payload["relative_residual"], 0.0, 1e-8));
    }
}

AscentResult solve_from(const ExperimentConfig& c) {
    AscentConfig cfg;
    cfg.bandwidth = c.bandwidth;
    cfg.polar = polar_options(c);
    return ascend(make_input(c, "random"), cfg);
}

void cmd_solve(const ExperimentConfig& c, ResultEnvelope& e) {
    const AscentResult r = solve_from(c);
    const Canonical canon = canonicalize(r.f);
    double tail = 0.0;
    for (int n = 4; n <= canon.f.bandwidth(); ++n)
        tail = std::max({tail, std::abs(canon.f.coeff(n)), std::abs(canon.f.coeff(-n))});
    e.payload = r;
    e.payload["canonical"] = {{"f", canon.f},
                              {"modulation", canon.modulation},
                              {"phase", canon.phase},
                              {"tail_beyond_3", tail}};
    e.csv = coefficient_csv(canon.f);
    if (c.verify) {
        const double q1 = constant_from_constants().value;
        e.checks.push_back(relative_check("quotient_vs_constants", r.quotient, q1, 1e-4));
        // A modulated constant cut at |n| <= N leaves about |c_0 J_{N+1}(|xi|)| after demodulation.
        const double xi = std::hypot(canon.modulation[0], canon.modulation[1]);
        const double floor = 2.0 * std::abs(canon.f.coeff(0)) * std::fabs(bessel_j(canon.f.bandwidth() + 1, xi));
        e.payload["canonical"]["truncation_floor"] = floor;
        e.checks.push_back(absolute_check("canonical_tail_beyond_3", tail, 0.0, std::max(1e-10, floor)));
    }
}

void cmd_picard(const ExperimentConfig& c, ResultEnvelope& e) {
    const AscentResult r = solve_from(c);
    if (!r.converged) throw PreconditionError("picard: the ascent did not converge");
    PicardConfig pc;
    pc.eps = c.eps;
    pc.s_scale = c.s;
    pc.polar = polar_options(c);
    PicardState state = picard_iterate(picard_init(lambda_normalize(r.f, pc.polar), pc), 100);
    e.payload = state;
    e.payload["ascent_quotient"] = r.quotient;
    e.csv = coefficient_csv(state.h);
    if (c.verify) {
        e.checks.push_back(absolute_check("fixed_point_matches_g", e.payload["h_minus_g_l2"], 0.0, 1e-6));
        e.checks.push_back(absolute_check("max_step_ratio_below_one", picard_max_ratio(state), 0.0, 1.0 - 1e-12));
    }
}

void cmd_split(const ExperimentConfig& c, ResultEnvelope& e) {
    const CircleFunction f = make_input(c, "square");
    const SharpFlatSplit split = sharp_flat_split(f, c.eta, c.s);
    e.payload = {{"split", split.report}, {"optimization", eta_optimization(f, c.s, c.eta)}};
    e.csv = coefficient_csv(split.sharp);
    if (c.verify) e.checks.push_back(absolute_check("split_bounds_hold", split.report.bounds_hold ? 0.0 : 1.0, 0.0, 0.0));
}

void cmd_smoothing(const ExperimentConfig& c, ResultEnvelope& e) {
    const CircleFunction f = make_input(c, "square");
    SmoothingOptions so;
    so.polar = polar_options(c);
    const SmoothingReport r = smoothing_experiment(f, so);
    e.payload = r;
    e.csv = coefficient_csv(r.output);
    if (c.verify) e.checks.push_back(absolute_check("gain_at_least_0.25", r.gain_ok ? 0.0 : 1.0, 0.0, 0.0));
}

void cmd_constant(const ExperimentConfig& c, ResultEnvelope& e) {
    const T0Oracle t0 = t0_oracle();
    const ConstantEstimate from_t0 = constant_from_t0();
    const ConstantEstimate from_constants = constant_from_constants();
    e.payload = {{"value", from_t0.value},
                 {"t0", t0},
                 {"lambda0", std::pow(kTwoPi, 4) * t0.value},
                 {"estimates", {from_t0, from_constants}}};
    if (c.verify) {
        e.checks.push_back(absolute_check("t0_regimes_agree", t0.spread, 0.0, 1e-6));
        e.checks.push_back(relative_check("t0_vs_extension", from_constants.value, from_t0.value, 1e-6));
        const double mu5 = density_value(5, 1.0).value_or(NAN);
        e.checks.push_back(relative_check("mu5(1)_vs_lambda0", mu5, std::pow(kTwoPi, 4) * t0.value, 1e-5));
    }
}

void cmd_regularity_profile(const ExperimentConfig& c, ResultEnvelope& e) {
    const CircleFunction f = make_input(c, "square");
    const RegularityProfile p = regularity_profile(f, {c.alpha}, {c.s});
    e.payload = p;
    e.csv = coefficient_csv(f);
    if (c.verify && (c.input.empty() || c.input == "square"))
        e.checks.push_back(relative_check("square_wave_decay_slope", p.slope.slope, -1.0, 0.05));
}

const std::map<std::string, Handler>& handlers() {
    static const std::map<std::string, Handler> table{
        {"tensor-build", cmd_tensor_build}, {"extend", cmd_extend},       {"density", cmd_density},
        {"sup-bound", cmd_sup_bound},       {"functional", cmd_functional}, {"el-residual", cmd_el_residual},
        {"solve", cmd_solve},               {"picard", cmd_picard},       {"split", cmd_split},
        {"smoothing", cmd_smoothing},       {"constant", cmd_constant},   {"regularity-profile", cmd_regularity_profile},
    };
    return table;
}

const std::map<std::string, std::vector<std::string>>& payload_schema() {
    static const std::map<std::string, std::vector<std::string>> schema{
        {"tensor-build", {"bandwidth", "cutoff", "entries", "checksum", "max_error", "path"}},
        {"extend", {"bandwidth", "l6_norm", "quotient", "decay", "input"}},
        {"density", {"order", "radii", "values", "mass"}},
        {"sup-bound", {"order", "radius", "sup", "argmax", "finite"}},
        {"functional", {"functional", "quotient", "input"}},
        {"el-residual", {"lambda_fit", "lambda_paper", "residual_l2", "relative_residual", "input"}},
        {"solve", {"f", "quotient", "residual", "converged", "trace", "canonical"}},
        {"picard", {"eps", "ball_radius", "norms", "ratios", "max_ratio", "converged", "h_minus_g_l2"}},
        {"split", {"split", "optimization"}},
        {"smoothing", {"bandwidth", "input_slope", "output_slope", "gain", "gain_ok"}},
        {"constant", {"value", "t0", "lambda0", "estimates"}},
        {"regularity-profile", {"bandwidth", "slope", "holder", "calH", "diverging"}},
    };
    return schema;
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, handler] : handlers()) v.push_back(name);
        return v;
    }();
    return names;
}

void validate(const ExperimentConfig& c) {
    if (!handlers().contains(c.command)) throw ConfigError("unknown command: " + c.command);
    auto require = [](bool ok, const std::string& what) {
        if (!ok) throw ConfigError("parameter out of range: " + what);
    };
    require(c.bandwidth >= 0 && c.bandwidth <= 4096, "--n in [0, 4096]");
    require(c.cutoff == 0.0 || (c.cutoff >= 10.0 && c.cutoff <= 1e4), "--cutoff 0 or in [10, 1e4]");
    require(c.angles >= 0, "angles >= 0");
    require(c.points >= 1 && c.points <= 100000, "points in [1, 1e5]");
    require(c.order >= 2 && c.order <= 5, "order in [2, 5]");
    require(c.eps > 0.0 && c.eps < 1.0, "--eps in (0, 1)");
    require(c.eta > 0.0 && c.eta <= 1.0, "--eta in (0, 1]");
    require(c.s >= 0.0 && c.s < 2.0 && (c.s == 0.0 || c.s != std::floor(c.s)), "--s in [0, 2), not a positive integer");
    require(c.alpha > 0.0 && c.alpha < 1.0, "--alpha in (0, 1)");
    require(c.format == "json" || c.format == "csv", "--format json or csv");
}

bool ResultEnvelope::verified() const {
    for (const VerifyCheck& c : checks)
        if (!c.pass) return false;
    return true;
}

ResultEnvelope run(const std::string& command, const ExperimentConfig& config) {
    ExperimentConfig c = config;
    c.command = command;
    validate(c);
    const auto start = std::chrono::steady_clock::now();
    ResultEnvelope e;
    e.command = command;
    e.config = c;
    handlers().at(command)(c, e);
    e.wall_clock = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    validate_envelope(e);
    return e;
}

void validate_envelope(const json& envelope) {
    for (const char* key : {"command", "version", "config", "seed", "wall_clock", "payload"})
        if (!envelope.contains(key)) throw ConfigError(std::string("schema violation: missing field ") + key);
    const std::string command = envelope.at("command").get<std::string>();
    const auto it = payload_schema().find(command);
    if (it == payload_schema().end()) throw ConfigError("schema violation: unknown command " + command);
    const json& payload = envelope.at("payload");
    if (!payload.is_object()) throw ConfigError("schema violation: payload is not an object");
    for (const std::string& key : it->second)
        if (!payload.contains(key)) throw ConfigError("schema violation: payload of " + command + " lacks " + key);
    if (!envelope.at("config").contains("seed")) throw ConfigError("schema violation: config lacks seed");
}

BesselTensor cache_roundtrip(const BesselTensor& tensor, const std::filesystem::path& path) {
    write_tensor(tensor, path);
    BesselTensor back = read_tensor(path);
    if (back.checksum() != tensor.checksum() || back.size() != tensor.size())
        throw ChecksumError("tensor cache round trip changed the entries: " + path.string());
    return back;
}

int exit_code(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return 2;
    if (dynamic_cast<const NumericalError*>(&e)) return 3;
    if (dynamic_cast<const Error*>(&e)) return 4;
    return 1;
}

void to_json(json& j, const ExperimentConfig& c) {
    j = {{"command", c.command}, {"n", c.bandwidth}, {"cutoff", c.cutoff}, {"angles", c.angles},
         {"points", c.points},   {"order", c.order}, {"eps", c.eps},       {"eta", c.eta},
         {"s", c.s},             {"alpha", c.alpha}, {"seed", c.seed},     {"input", c.input},
         {"tensor", c.tensor},   {"out", c.out},     {"verify", c.verify}, {"format", c.format}};
}

void from_json(const json& j, ExperimentConfig& c) {
    ExperimentConfig d;
    c.command = j.value("command", d.command);
    c.bandwidth = j.value("n", d.bandwidth);
    c.cutoff = j.value("cutoff", d.cutoff);
    c.angles = j.value("angles", d.angles);
    c.points = j.value("points", d.points);
    c.order = j.value("order", d.order);
    c.eps = j.value("eps", d.eps);
    c.eta = j.value("eta", d.eta);
    c.s = j.value("s", d.s);
    c.alpha = j.value("alpha", d.alpha);
    c.seed = j.value("seed", d.seed);
    c.input = j.value("input", d.input);
    c.tensor = j.value("tensor", d.tensor);
    c.out = j.value("out", d.out);
    c.verify = j.value("verify", d.verify);
    c.format = j.value("format", d.format);
}

void to_json(json& j, const VerifyCheck& c) {
    j = {{"name", c.name},           {"value", c.value},       {"expected", c.expected},
         {"tolerance", c.tolerance}, {"absolute", c.absolute}, {"pass", c.pass}};
}

void to_json(json& j, const ResultEnvelope& e) {
    j = {{"command", e.command},       {"version", e.version}, {"config", e.config},
         {"seed", e.config.seed},      {"wall_clock", e.wall_clock}, {"payload", e.payload}};
    if (!e.checks.empty()) {
        j["verify"] = e.checks;
        j["verified"] = e.verified();
    }
}

}  // namespace tslab
