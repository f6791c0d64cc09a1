#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "tslab/cli.hpp"
#include "tslab/errors.hpp"

int main(int argc, char** argv) {
    tslab::ExperimentConfig config;
    CLI::App app{"Numerical experiments for the circle extension inequality"};
    app.set_version_flag("--version", std::string(tslab::kArtifactVersion));
    app.add_option("command", config.command, "Experiment to run")
        ->required()
        ->check(CLI::IsMember(tslab::command_names()));
    app.add_option("--n", config.bandwidth, "Bandwidth N");
    app.add_option("--cutoff", config.cutoff, "Radial cutoff P (0: automatic)");
    app.add_option("--angles", config.angles, "Angular samples (0: automatic)");
    app.add_option("--points", config.points, "Radii for density and sup-bound");
    app.add_option("--order", config.order, "Convolution order k for density and sup-bound");
    app.add_option("--eps", config.eps, "Rough-part size for picard");
    app.add_option("--eta", config.eta, "Split parameter");
    app.add_option("--s", config.s, "Smoothness index");
    app.add_option("--alpha", config.alpha, "Hoelder exponent");
    app.add_option("--seed", config.seed, "Random seed");
    app.add_option("--input", config.input, "constant, perturbed, random, square, or a JSON function file");
    app.add_option("--tensor", config.tensor, "Tensor cache path");
    app.add_option("--out", config.out, "Output path (stdout when omitted)");
    app.add_flag("--verify", config.verify, "Run oracle cross-checks");
    app.add_option("--format", config.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const tslab::ResultEnvelope envelope = tslab::run(config.command, config);
        std::string text;
        if (config.format == "csv" && envelope.csv) {
            text = *envelope.csv;
        } else {
            text = nlohmann::json(envelope).dump(2) + "\n";
        }
        const bool csv_written_by_command = config.format == "csv" && !envelope.csv;
        if (config.out.empty() || csv_written_by_command) {
            std::cout << text;
        } else {
            std::ofstream out(config.out);
            if (!out) throw tslab::StorageError("cannot open output: " + config.out);
            out << text;
        }
        if (!envelope.verified()) {
            std::cerr << "verification failed\n";
            return 3;
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return tslab::exit_code(e);
    }
}
