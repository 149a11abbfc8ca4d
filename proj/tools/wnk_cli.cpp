// wnk: seeded, configuration-driven experiment runner.
//
// Subcommands: donsker | tightness | minlos | hemicompact | tables.
// Each takes a JSON config file plus flag overrides (flags win) and writes
// <out>/report.json and <out>/table.csv. Exit codes: 0 all configured
// assertions passed, 1 assertion failures (listed on stderr), 2 config or
// usage error, 3 I/O error.
//
// The binary is a pure client of the C API in wnk.h.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wnk.h"

namespace {

struct Overrides {
    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::vector<int> n_schedule;
    std::optional<std::int64_t> n_mc;
};

int fail_usage(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    return 2;
}

int run(const std::string& command, const Overrides& opts) {
    nlohmann::json cfg = nlohmann::json::object();
    if (!opts.config_path.empty()) {
        std::ifstream in(opts.config_path);
        if (!in) {
            std::cerr << "error: cannot open config file: " << opts.config_path << "\n";
            return 3;
        }
        try {
            in >> cfg;
        } catch (const nlohmann::json::exception& e) {
            return fail_usage(std::string("config file is not valid JSON: ") + e.what());
        }
        if (!cfg.is_object()) return fail_usage("config file must hold a JSON object");
    }
    if (cfg.contains("command") && cfg["command"] != command)
        return fail_usage("config file is for command '" + cfg["command"].get<std::string>() +
                          "', invoked as '" + command + "'");
    cfg["command"] = command;
    if (opts.seed) cfg["seed"] = *opts.seed;
    if (!opts.n_schedule.empty()) cfg["n_schedule"] = opts.n_schedule;
    if (opts.n_mc) cfg["n_mc"] = *opts.n_mc;

    wnk_run_result* result = nullptr;
    const wnk_status status = wnk_run(cfg.dump().c_str(), &result);
    if (status != WNK_OK) {
        std::cerr << "error: " << wnk_last_error() << "\n";
        switch (status) {
            case WNK_ERR_IO:
                return 3;
            case WNK_ERR_INTERNAL:
                return 3;
            default:
                return 2;
        }
    }

    std::error_code ec;
    std::filesystem::create_directories(opts.out_dir, ec);
    if (ec) {
        std::cerr << "error: cannot create output directory: " << opts.out_dir << "\n";
        wnk_run_result_free(result);
        return 3;
    }
    const auto report_path = std::filesystem::path(opts.out_dir) / "report.json";
    const auto table_path = std::filesystem::path(opts.out_dir) / "table.csv";
    for (const auto& [path, text] :
         {std::pair{report_path, std::string(wnk_run_report_json(result))},
          std::pair{table_path, std::string(wnk_run_table_csv(result))}}) {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << text;
        if (!out) {
            std::cerr << "error: cannot write " << path << "\n";
            wnk_run_result_free(result);
            return 3;
        }
    }

    const size_t failures = wnk_run_failure_count(result);
    for (size_t i = 0; i < failures; ++i)
        std::cerr << "assertion failed: " << wnk_run_failure(result, i) << "\n";
    std::cout << "wrote " << report_path.string() << " and " << table_path.string() << " ("
              << failures << " failed assertion" << (failures == 1 ? "" : "s") << ")\n";
    wnk_run_result_free(result);
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hermite-scale white noise experiments (library version " +
                 std::string(wnk_version()) + ")"};
    app.require_subcommand(1);

    const std::vector<std::string> commands = {"donsker", "tightness", "minlos", "hemicompact",
                                               "tables"};
    const std::string descriptions[] = {
        "invariance-principle convergence to the white noise functional",
        "equicontinuity modulus scans over (m, delta) grids",
        "Fubini identity, M constant, and Gram positive-definiteness checks",
        "exhaustion indices and nested-ball membership for sampled distributions",
        "reference tables: Hermite values, quadrature rules, embedding norms",
    };

    Overrides opts;
    std::string chosen;
    for (std::size_t i = 0; i < commands.size(); ++i) {
        CLI::App* sub = app.add_subcommand(commands[i], descriptions[i]);
        sub->add_option("--config", opts.config_path, "JSON config file");
        sub->add_option("--out", opts.out_dir, "output directory (default: out)");
        sub->add_option("--seed", opts.seed, "override the master seed");
        if (commands[i] == "donsker") {
            sub->add_option("--n", opts.n_schedule, "override n_schedule")->delimiter(',');
            sub->add_option("--mc", opts.n_mc, "override the Monte-Carlo replicate count");
        }
        sub->callback([&chosen, name = commands[i]] { chosen = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return run(chosen, opts);
}
