#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sa/cli/csv.hpp"
#include "sa/cli/experiments.hpp"
#include "sa/cli/svg.hpp"

using namespace sa::cli;

namespace {

int report(const RunArtifacts& a) {
    std::cout << a.summary.dump(2) << "\n";
    if (a.exit_code == ok) {
        std::cerr << "wrote " << a.trajectory_csv.string() << ", " << a.plot_svg.string() << ", "
                  << a.summary_json.string() << "\n";
    } else {
        std::cerr << "error: " << a.summary.value("failure", std::string("run failed")) << "\n";
    }
    return a.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"stochastic approximation with averaging innovations"};
    app.require_subcommand(1);

    std::string config_path;
    auto* run = app.add_subcommand("run", "run one experiment from a JSON config");
    run->add_option("config", config_path, "config file")->required();
    std::optional<std::uint64_t> run_seed;
    std::optional<std::string> run_out;
    run->add_option("--seed", run_seed, "override config seed");
    run->add_option("-o,--output-dir", run_out, "override output directory");

    auto* list = app.add_subcommand("list", "list registered experiments");

    std::string csv_path, channel, out_path;
    std::optional<double> target;
    bool logx = false;
    auto* plot = app.add_subcommand("plot", "render one channel of a trajectory CSV as SVG");
    plot->add_option("csv", csv_path, "trajectory CSV")->required();
    plot->add_option("--channel", channel, "column to plot")->required();
    plot->add_option("--target", target, "horizontal target line");
    plot->add_flag("--logx", logx, "log-scaled x axis");
    plot->add_option("-o,--output", out_path, "output SVG (default: stdout)");

    std::string sweep_config, seeds;
    auto* sweep = app.add_subcommand("sweep", "run a config over a range of seeds in parallel");
    sweep->add_option("config", sweep_config, "config file")->required();
    sweep->add_option("--seeds", seeds, "seed range a..b")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? ok : usage_error;
    }

    try {
        if (*list) {
            for (const auto& e : list_experiments()) std::printf("%-22s %s\n", e.name.c_str(), e.description.c_str());
            return ok;
        }
        if (*run) {
            if (!run_seed && !run_out) return report(run_experiment(std::filesystem::path(config_path)));
            return report(run_experiment(load_json_file(config_path), run_seed, run_out));
        }
        if (*plot) {
            const std::string svg = plot_channel(read_csv_file(csv_path), channel, target, logx);
            if (out_path.empty()) {
                std::cout << svg;
            } else {
                std::ofstream out(out_path, std::ios::binary);
                if (!(out << svg)) {
                    std::cerr << "error: cannot write " << out_path << "\n";
                    return io_error;
                }
            }
            return ok;
        }
        if (*sweep) {
            const auto [first, last] = parse_seed_range(seeds);
            const int rc = run_sweep(load_json_file(sweep_config), first, last);
            std::cerr << "sweep finished, worst exit code " << rc << "\n";
            return rc;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return config_error;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return io_error;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return io_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage_error;
    }
    return usage_error;
}
