#include "fracsem_cli/config.hpp"
#include "fracsem_cli/run.hpp"

#include "fracsem/field_io.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using namespace fracsem::cli;
    CLI::App app{"fracsem: fractional Laplacian, extension and regularity runs"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    bool print_config = false;
    const std::pair<const char*, const char*> commands[] = {
        {"apply", "(-Delta)^s u on a grid, with route probes"},
        {"invert", "(-Delta)^{-s} f, spectral and semigroup, Riesz probes"},
        {"extend", "extension U(x, y), boundary limits and energy"},
        {"limits", "s -> 1 and s -> 0 sweeps"},
        {"regularity", "Holder-Zygmund exponent estimate"},
        {"verify", "mapping-theorem ratio tables"},
        {"selftest", "fixed invariant suite"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "JSON run configuration");
        sub->add_option("--out", out_dir, "output directory (default: the config's output.path)");
        sub->add_flag("--print-config", print_config, "print the complete config and exit");
    }
    CLI11_PARSE(app, argc, argv);

    try {
        const std::string command = app.get_subcommands().front()->get_name();
        nlohmann::json doc = nlohmann::json::object();
        if (!config_path.empty()) {
            const auto bytes = fracsem::read_file(config_path);
            try {
                doc = nlohmann::json::parse(bytes.begin(), bytes.end());
            } catch (const nlohmann::json::parse_error& e) {
                throw fracsem::Error(fracsem::ErrorCode::config, std::string("config is not valid JSON: ") + e.what());
            }
        }
        if (doc.contains("command") && doc["command"] != command) {
            throw fracsem::Error(fracsem::ErrorCode::config,
                                 "field 'command': config says '" + doc["command"].dump() + "' but '" + command +
                                     "' was requested");
        }
        doc["command"] = command;
        const RunConfig config = parse_config(doc);
        if (print_config) {
            std::cout << to_json(config).dump(2) << "\n";
            return 0;
        }
        const RunOutcome outcome = run(config, out_dir.empty() ? config.output : out_dir);
        for (const auto& path : outcome.artifacts) {
            std::cout << path.string() << "\n";
        }
        if (outcome.exit_code != 0) {
            std::cerr << "fracsem: " << command << " reported failures\n";
        }
        return outcome.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "fracsem: " << e.what() << "\n";
        return exit_status_for(e);
    }
}
