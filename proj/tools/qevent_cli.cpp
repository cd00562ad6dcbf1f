// qevent: command-line front end to the undecidability toolkit.

#include <iostream>

#include <CLI11.hpp>

#include "qevent/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Spin-environment measurement model: exact/closed-form evolution, angular limits and "
                 "collapse-vs-unitary undecidability"};

    std::string config_path;
    std::string command = "decide";
    std::string out_path;
    std::string sweep;
    std::size_t n_cap = 12;
    bool dephasing = false;

    app.add_option("--config", config_path, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
    app.add_option("--command", command, "simulate | analytic | limits | feasibility | decide | crossover | sweep");
    app.add_option("--out", out_path, "Write results here (plus <out>.meta.json) instead of stdout");
    app.add_option("--sweep", sweep, "PARAM:START:STOP:POINTS:SCALE with PARAM in N, tau, dtheta, f, B_dgamma");
    app.add_option("--n-cap", n_cap, "Largest N the exact engine will simulate")->check(CLI::Range(0, 24));
    app.add_flag("--dephasing-mode", dephasing, "Use the sz sz coupling only in the exact engine");

    CLI11_PARSE(app, argc, argv);

    qevent::cli::RunManifest manifest;
    try {
        manifest.config_path = config_path;
        manifest.command = qevent::cli::parse_command(command);
        if (!out_path.empty()) manifest.output_path = out_path;
        if (!sweep.empty()) manifest.sweep_axis = qevent::cli::parse_sweep(sweep);
        manifest.n_cap = n_cap;
        manifest.dephasing_mode = dephasing;
    } catch (const qevent::cli::UsageError& e) {
        std::cerr << R"({"error":{"kind":"usage","message":")" << e.what() << "\"}}\n";
        return 2;
    }
    return qevent::cli::run(manifest, std::cout, std::cerr);
}
