#pragma once

#include "fracsem/quadrature.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace fracsem::cli {

enum class Command { apply, invert, extend, limits, regularity, verify, selftest };
enum class OutputFormat { csv, json };

/// Builtin fixture by name, or a field file written by save_field.
struct FixtureRef {
    std::string name;
    std::map<std::string, double> params;
    std::string file;

    [[nodiscard]] bool is_file() const { return !file.empty(); }
};

struct RunConfig {
    Command command = Command::selftest;
    FixtureRef fixture{"gaussian", {}, {}};
    double s = 0.5;
    int n = 1;
    double half_width = 12.0;
    int points_per_axis = 256;
    QuadratureSpec quadrature;
    OutputFormat format = OutputFormat::csv;
    std::string output = "out";
    std::uint64_t seed = 0;

    // apply / invert
    std::vector<std::string> routes{"spectral", "semigroup", "pointwise"};
    int probes = 5;
    // limits
    std::vector<double> s_to_1{0.9, 0.99, 0.999};
    std::vector<double> s_to_0{0.1, 0.01, 0.001};
    std::vector<double> x0;
    // extend
    std::string extension_route = "semigroup_dirichlet";
    int y_count = 48;
    double y_min = 1e-3;
    double y_max = 20.0;
    // regularity
    std::vector<int> k{1, 2};
    // verify
    std::string mode = "holder_forward";
    double alpha = 0.8;
    std::vector<FixtureRef> fixtures;
    bool refine = true;
};

/// Throws Error(config) naming the offending field. Missing fields take the
/// defaults above; unknown fields are rejected.
RunConfig parse_config(const nlohmann::json& doc);
/// Complete config, defaults filled in; parse_config(to_json(c)) == c.
nlohmann::json to_json(const RunConfig& config);

std::string to_string(Command command);
Command parse_command(const std::string& name);

}  // namespace fracsem::cli
