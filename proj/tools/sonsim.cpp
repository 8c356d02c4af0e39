#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sonsim/errors.hpp"
#include "sonsim/harness.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw sonsim::SimError("config-error", "cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw sonsim::SimError("io-error", "cannot write: " + path);
    out << text;
}

std::vector<long> parse_values(const std::string &csv) {
    std::vector<long> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stol(tok));
    }
    if (out.empty())
        throw sonsim::SimError("config-error", "--values needs at least one number");
    return out;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Super-peer overlay simulator with decision-tree query routing"};
    app.require_subcommand(1);

    std::string config_path, out_path, log_path, snapshot_path;
    std::string axis, values_csv, tree_in;
    long seed_override = -1;
    int min_rows = 1;

    auto *simulate = app.add_subcommand("simulate", "run one scenario");
    simulate->add_option("--config", config_path, "scenario config file")->required();
    simulate->add_option("--seed", seed_override, "override the config seed");
    simulate->add_option("--out", out_path, "metrics CSV destination (default stdout)");
    simulate->add_option("--log", log_path, "write the global query log CSV here");
    simulate->add_option("--snapshot", snapshot_path, "write the final topology snapshot here");

    auto *sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep");
    sweep_cmd->add_option("--config", config_path, "scenario config file")->required();
    sweep_cmd->add_option("--axis", axis, "n_peers | n_super_peers | queries_per_peer")
        ->required();
    sweep_cmd->add_option("--values", values_csv, "comma-separated axis values")->required();
    sweep_cmd->add_option("--seed", seed_override, "override the config seed");
    sweep_cmd->add_option("--out", out_path, "metrics CSV destination")->required();

    auto *induce_cmd = app.add_subcommand("induce", "induce a tree from a log CSV");
    induce_cmd->add_option("--log", log_path, "query log CSV")->required();
    induce_cmd->add_option("--out", out_path, "tree text destination (default stdout)");
    induce_cmd->add_option("--min-rows", min_rows, "minimum rows per split");

    auto *render_cmd = app.add_subcommand("render-tree", "parse and re-render a tree text");
    render_cmd->add_option("--in", tree_in, "tree text file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            sonsim::ScenarioConfig cfg = sonsim::parse_config_file(config_path);
            if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
            sonsim::ScenarioReport report = sonsim::run_scenario(cfg);
            write_output(out_path, sonsim::metrics_csv(sonsim::rows_from_report(report)));
            if (!log_path.empty())
                write_output(log_path, sonsim::log_to_csv(report.global_log,
                                                          cfg.k_components));
            if (!snapshot_path.empty())
                write_output(snapshot_path, sonsim::export_snapshot(report.final_state));
        } else if (sweep_cmd->parsed()) {
            sonsim::ScenarioConfig cfg = sonsim::parse_config_file(config_path);
            if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
            auto rows = sonsim::sweep(cfg, axis, parse_values(values_csv));
            write_output(out_path, sonsim::metrics_csv(rows));
        } else if (induce_cmd->parsed()) {
            std::size_t k = 0;
            auto log = sonsim::log_from_csv(read_file(log_path), &k);
            sonsim::DecisionTree tree =
                sonsim::induce(sonsim::dataset_from_log(log, k), min_rows);
            write_output(out_path, sonsim::render(tree));
        } else if (render_cmd->parsed()) {
            std::string text = read_file(tree_in);
            sonsim::DecisionTree tree = sonsim::parse_tree(text);
            std::string again = sonsim::render(tree);
            std::cout << again;
            if (again != text) {
                std::cerr << "round-trip mismatch\n";
                return kExitRuntime;
            }
        }
    } catch (const sonsim::SimError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == "config-error" || e.code() == "unknown-axis" ? kExitConfig
                                                                        : kExitRuntime;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return 0;
}
