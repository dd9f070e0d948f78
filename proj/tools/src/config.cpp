#include "fracsem_cli/config.hpp"

#include "fracsem/error.hpp"
#include "fracsem/field.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace fracsem::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw Error(ErrorCode::config, "field '" + field + "': " + what);
}

void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
    if (!obj.is_object()) {
        fail(where.empty() ? "<root>" : where, "expected an object");
    }
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) {
            fail(where.empty() ? key : where + "." + key, "unknown field");
        }
    }
}

std::string join(const std::string& where, const char* key) { return where.empty() ? key : where + "." + key; }

double number(const json& obj, const std::string& where, const char* key, double fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_number()) {
        fail(join(where, key), "expected a number");
    }
    const double d = v.get<double>();
    if (!std::isfinite(d)) {
        fail(join(where, key), "must be finite");
    }
    return d;
}

long long integer(const json& obj, const std::string& where, const char* key, long long fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_number_integer()) {
        fail(join(where, key), "expected an integer");
    }
    return v.get<long long>();
}

std::string text(const json& obj, const std::string& where, const char* key, const std::string& fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_string()) {
        fail(join(where, key), "expected a string");
    }
    return v.get<std::string>();
}

std::vector<double> numbers(const json& obj, const std::string& where, const char* key,
                            const std::vector<double>& fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_array()) {
        fail(join(where, key), "expected an array of numbers");
    }
    std::vector<double> out;
    for (const json& e : v) {
        if (!e.is_number()) {
            fail(join(where, key), "expected an array of numbers");
        }
        out.push_back(e.get<double>());
    }
    return out;
}

FixtureRef parse_fixture(const json& obj, const std::string& where) {
    only_keys(obj, where, {"name", "params", "file"});
    FixtureRef f;
    f.name = text(obj, where, "name", "");
    f.file = text(obj, where, "file", "");
    if (f.name.empty() == f.file.empty()) {
        fail(where, "give exactly one of 'name' or 'file'");
    }
    if (obj.contains("params")) {
        const json& p = obj.at("params");
        if (!p.is_object()) {
            fail(where + ".params", "expected an object of numbers");
        }
        for (const auto& [key, value] : p.items()) {
            if (!value.is_number()) {
                fail(where + ".params." + key, "expected a number");
            }
            f.params[key] = value.get<double>();
        }
    }
    return f;
}

json fixture_json(const FixtureRef& f) {
    json j = json::object();
    if (f.is_file()) {
        j["file"] = f.file;
    } else {
        j["name"] = f.name;
        j["params"] = json::object();
        for (const auto& [key, value] : f.params) {
            j["params"][key] = value;
        }
    }
    return j;
}

const std::set<std::string> kRoutes{"spectral", "semigroup", "pointwise"};
const std::set<std::string> kExtensionRoutes{"semigroup_dirichlet", "subordination", "semigroup_frac",
                                             "poisson_kernel"};
const std::set<std::string> kModes{"holder_forward", "schauder_inverse", "schauder_bounded"};

}  // namespace

std::string to_string(Command command) {
    switch (command) {
        case Command::apply:
            return "apply";
        case Command::invert:
            return "invert";
        case Command::extend:
            return "extend";
        case Command::limits:
            return "limits";
        case Command::regularity:
            return "regularity";
        case Command::verify:
            return "verify";
        case Command::selftest:
            return "selftest";
    }
    return "unknown";
}

Command parse_command(const std::string& name) {
    for (Command c : {Command::apply, Command::invert, Command::extend, Command::limits, Command::regularity,
                      Command::verify, Command::selftest}) {
        if (to_string(c) == name) {
            return c;
        }
    }
    fail("command", "unknown command '" + name + "'");
}

RunConfig parse_config(const json& doc) {
    only_keys(doc, "", {"command", "fixture", "s", "n", "grid", "quadrature", "output", "seed", "apply", "limits",
                        "extend", "regularity", "verify"});
    RunConfig c;
    c.command = parse_command(text(doc, "", "command", "selftest"));
    if (doc.contains("fixture")) {
        c.fixture = parse_fixture(doc.at("fixture"), "fixture");
    }
    c.s = number(doc, "", "s", c.s);
    c.n = static_cast<int>(integer(doc, "", "n", c.n));
    if (c.n < 1 || c.n > 3) {
        fail("n", "dimension must be 1, 2 or 3");
    }
    if (doc.contains("grid")) {
        const json& g = doc.at("grid");
        only_keys(g, "grid", {"L", "M"});
        c.half_width = number(g, "grid", "L", c.half_width);
        c.points_per_axis = static_cast<int>(integer(g, "grid", "M", c.points_per_axis));
    }
    if (!(c.half_width > 0.0)) {
        fail("grid.L", "half-width must be positive");
    }
    if (c.points_per_axis < 4 || !is_power_of_two(c.points_per_axis)) {
        fail("grid.M", "must be a power of two, at least 4");
    }
    if (doc.contains("quadrature")) {
        const json& q = doc.at("quadrature");
        only_keys(q, "quadrature", {"tau_min", "tau_max", "nodes_per_decade", "rule"});
        c.quadrature.tau_min = number(q, "quadrature", "tau_min", c.quadrature.tau_min);
        c.quadrature.tau_max = number(q, "quadrature", "tau_max", c.quadrature.tau_max);
        c.quadrature.nodes_per_decade =
            static_cast<int>(integer(q, "quadrature", "nodes_per_decade", c.quadrature.nodes_per_decade));
        const std::string rule = text(q, "quadrature", "rule", "gauss-legendre-panels");
        if (rule == "trapezoid") {
            c.quadrature.rule = QuadratureRule::trapezoid;
        } else if (rule == "gauss-legendre-panels") {
            c.quadrature.rule = QuadratureRule::gauss_legendre_panels;
        } else {
            fail("quadrature.rule", "expected 'trapezoid' or 'gauss-legendre-panels'");
        }
        try {
            c.quadrature.validate();
        } catch (const Error& e) {
            fail("quadrature", e.what());
        }
    }
    if (doc.contains("output")) {
        const json& o = doc.at("output");
        only_keys(o, "output", {"path", "format"});
        c.output = text(o, "output", "path", c.output);
        const std::string format = text(o, "output", "format", "csv");
        if (format == "csv") {
            c.format = OutputFormat::csv;
        } else if (format == "json") {
            c.format = OutputFormat::json;
        } else {
            fail("output.format", "expected 'csv' or 'json'");
        }
    }
    if (doc.contains("seed")) {
        const json& sv = doc.at("seed");
        if (!sv.is_number_integer() || (!sv.is_number_unsigned() && sv.get<long long>() < 0)) {
            fail("seed", "expected a non-negative integer");
        }
        c.seed = doc.at("seed").get<std::uint64_t>();
    }
    if (doc.contains("apply")) {
        const json& a = doc.at("apply");
        only_keys(a, "apply", {"routes", "probes"});
        if (a.contains("routes")) {
            if (!a.at("routes").is_array() || a.at("routes").empty()) {
                fail("apply.routes", "expected a non-empty array of route names");
            }
            c.routes.clear();
            for (const json& r : a.at("routes")) {
                if (!r.is_string() || !kRoutes.count(r.get<std::string>())) {
                    fail("apply.routes", "routes are spectral, semigroup, pointwise");
                }
                c.routes.push_back(r.get<std::string>());
            }
        }
        c.probes = static_cast<int>(integer(a, "apply", "probes", c.probes));
        if (c.probes < 0) {
            fail("apply.probes", "must be non-negative");
        }
    }
    if (doc.contains("limits")) {
        const json& l = doc.at("limits");
        only_keys(l, "limits", {"s_to_1", "s_to_0", "x0"});
        c.s_to_1 = numbers(l, "limits", "s_to_1", c.s_to_1);
        c.s_to_0 = numbers(l, "limits", "s_to_0", c.s_to_0);
        c.x0 = numbers(l, "limits", "x0", c.x0);
    }
    if (!c.x0.empty() && static_cast<int>(c.x0.size()) != c.n) {
        fail("limits.x0", "needs n coordinates");
    }
    if (doc.contains("extend")) {
        const json& e = doc.at("extend");
        only_keys(e, "extend", {"route", "y_count", "y_min", "y_max"});
        c.extension_route = text(e, "extend", "route", c.extension_route);
        if (!kExtensionRoutes.count(c.extension_route)) {
            fail("extend.route", "unknown route '" + c.extension_route + "'");
        }
        c.y_count = static_cast<int>(integer(e, "extend", "y_count", c.y_count));
        c.y_min = number(e, "extend", "y_min", c.y_min);
        c.y_max = number(e, "extend", "y_max", c.y_max);
        if (c.y_count < 5 || !(c.y_min > 0.0) || !(c.y_max > c.y_min)) {
            fail("extend", "need y_count >= 5 and 0 < y_min < y_max");
        }
    }
    if (doc.contains("regularity")) {
        const json& r = doc.at("regularity");
        only_keys(r, "regularity", {"k"});
        if (r.contains("k")) {
            if (!r.at("k").is_array() || r.at("k").empty()) {
                fail("regularity.k", "expected a non-empty array of integers");
            }
            c.k.clear();
            for (const json& v : r.at("k")) {
                if (!v.is_number_integer() || v.get<int>() < 1) {
                    fail("regularity.k", "orders must be integers >= 1");
                }
                c.k.push_back(v.get<int>());
            }
        }
    }
    if (doc.contains("verify")) {
        const json& v = doc.at("verify");
        only_keys(v, "verify", {"mode", "alpha", "fixtures", "refine"});
        c.mode = text(v, "verify", "mode", c.mode);
        if (!kModes.count(c.mode)) {
            fail("verify.mode", "unknown mode '" + c.mode + "'");
        }
        c.alpha = number(v, "verify", "alpha", c.alpha);
        if (v.contains("fixtures")) {
            if (!v.at("fixtures").is_array()) {
                fail("verify.fixtures", "expected an array of fixtures");
            }
            for (std::size_t i = 0; i < v.at("fixtures").size(); ++i) {
                c.fixtures.push_back(parse_fixture(v.at("fixtures")[i], "verify.fixtures[" + std::to_string(i) + "]"));
            }
        }
        if (v.contains("refine")) {
            if (!v.at("refine").is_boolean()) {
                fail("verify.refine", "expected true or false");
            }
            c.refine = v.at("refine").get<bool>();
        }
    }
    return c;
}

json to_json(const RunConfig& c) {
    json j;
    j["command"] = to_string(c.command);
    j["fixture"] = fixture_json(c.fixture);
    j["s"] = c.s;
    j["n"] = c.n;
    j["grid"] = {{"L", c.half_width}, {"M", c.points_per_axis}};
    j["quadrature"] = {{"tau_min", c.quadrature.tau_min},
                       {"tau_max", c.quadrature.tau_max},
                       {"nodes_per_decade", c.quadrature.nodes_per_decade},
                       {"rule", c.quadrature.rule == QuadratureRule::trapezoid ? "trapezoid" : "gauss-legendre-panels"}};
    j["output"] = {{"path", c.output}, {"format", c.format == OutputFormat::csv ? "csv" : "json"}};
    j["seed"] = c.seed;
    j["apply"] = {{"routes", c.routes}, {"probes", c.probes}};
    j["limits"] = {{"s_to_1", c.s_to_1}, {"s_to_0", c.s_to_0}, {"x0", c.x0}};
    j["extend"] = {{"route", c.extension_route}, {"y_count", c.y_count}, {"y_min", c.y_min}, {"y_max", c.y_max}};
    j["regularity"] = {{"k", c.k}};
    json fixtures = json::array();
    for (const FixtureRef& f : c.fixtures) {
        fixtures.push_back(fixture_json(f));
    }
    j["verify"] = {{"mode", c.mode}, {"alpha", c.alpha}, {"fixtures", fixtures}, {"refine", c.refine}};
    return j;
}

}  // namespace fracsem::cli
