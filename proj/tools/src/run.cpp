#include "fracsem_cli/run.hpp"

#include "fracsem/error.hpp"
#include "fracsem/extension.hpp"
#include "fracsem/field_io.hpp"
#include "fracsem/fixtures.hpp"
#include "fracsem/frac_operator.hpp"
#include "fracsem/inverse.hpp"
#include "fracsem/limits.hpp"
#include "fracsem/regularity.hpp"
#include "fracsem_cli/table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <random>

namespace fracsem::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string label(const FixtureRef& f) {
    if (f.is_file()) {
        return fs::path(f.file).filename().string();
    }
    std::string out = f.name;
    if (!f.params.empty()) {
        out += '(';
        bool first = true;
        for (const auto& [key, value] : f.params) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%s%s=%g", first ? "" : ";", key.c_str(), value);
            out += buf;
            first = false;
        }
        out += ')';
    }
    return out;
}

GridField input_grid(const RunConfig& c, const FixtureRef& f, int points) {
    if (f.is_file()) {
        return load_field(f.file);
    }
    return sample(fixtures::by_name(f.name, c.n, f.params), c.half_width, points);
}

std::optional<AnalyticField> analytic(const RunConfig& c) {
    if (c.fixture.is_file()) {
        return std::nullopt;
    }
    return fixtures::by_name(c.fixture.name, c.n, c.fixture.params);
}

// The 2L-periodic field whose samples the grid routes see.
AnalyticField on_torus(const AnalyticField& f, double half_width) {
    if (f.period) {
        const double cells = 2.0 * half_width / *f.period;
        if (std::abs(cells - std::round(cells)) < 1e-12 && cells >= 1.0) {
            return f;
        }
    }
    return fixtures::periodized(f, half_width);
}

std::vector<std::string> coordinate_columns(int n) {
    std::vector<std::string> cols;
    for (int a = 0; a < n; ++a) {
        cols.push_back("x" + std::to_string(a + 1));
    }
    return cols;
}

void push_point(std::vector<Cell>& row, const GridField& g, std::size_t i) {
    const Point p = g.point(i);
    for (int a = 0; a < g.n(); ++a) {
        row.emplace_back(p[a]);
    }
}

// Grid indices inside the middle half of the box, drawn without replacement.
std::vector<std::size_t> pick_probes(const GridField& g, int count, std::uint64_t seed) {
    std::vector<std::size_t> pool;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Point p = g.point(i);
        bool inside = true;
        for (int a = 0; a < g.n(); ++a) {
            inside = inside && std::abs(p[a]) < 0.5 * g.half_width();
        }
        if (inside) {
            pool.push_back(i);
        }
    }
    std::mt19937_64 rng(seed);
    const std::size_t take = std::min<std::size_t>(count, pool.size());
    for (std::size_t i = 0; i < take; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
        std::swap(pool[i], pool[pick(rng)]);
    }
    pool.resize(take);
    std::sort(pool.begin(), pool.end());
    return pool;
}

bool wants(const RunConfig& c, const std::string& route) {
    return std::find(c.routes.begin(), c.routes.end(), route) != c.routes.end();
}

double max_abs_diff(const GridField& a, const GridField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

std::span<const double> coords(const Point& p, int n) { return std::span<const double>(p.data(), n); }

RunOutcome run_apply(const RunConfig& c, const fs::path& dir) {
    const FracOrder s(c.s);
    const GridField u = input_grid(c, c.fixture, c.points_per_axis);
    RunOutcome out;
    json summary;

    std::optional<GridField> spectral;
    std::optional<GridField> semigroup;
    if (wants(c, "spectral")) {
        spectral = frac_apply_spectral(u, s);
    }
    if (wants(c, "semigroup")) {
        const GridRouteResult r = frac_apply_semigroup(u, s, c.quadrature);
        semigroup = r.field;
        summary["semigroup_quadrature_error"] = r.quadrature_error;
    }
    auto cols = coordinate_columns(u.n());
    cols.push_back("u");
    if (spectral) {
        cols.push_back("spectral");
    }
    if (semigroup) {
        cols.push_back("semigroup");
    }
    if (spectral && semigroup) {
        cols.push_back("delta_spectral_semigroup");
        summary["max_delta_spectral_semigroup"] = max_abs_diff(*spectral, *semigroup);
    }
    Table grid(cols);
    for (std::size_t i = 0; i < u.size(); ++i) {
        std::vector<Cell> row;
        push_point(row, u, i);
        row.emplace_back(u[i]);
        if (spectral) {
            row.emplace_back((*spectral)[i]);
        }
        if (semigroup) {
            row.emplace_back((*semigroup)[i]);
        }
        if (spectral && semigroup) {
            row.emplace_back(std::abs((*spectral)[i] - (*semigroup)[i]));
        }
        grid.add(std::move(row));
    }
    out.artifacts.push_back(write_table(grid, c, dir, "apply"));
    const GridField& image = spectral ? *spectral : *semigroup;
    save_field(image, dir / "apply.fsgf", c.s);
    out.artifacts.push_back(dir / "apply.fsgf");

    const auto f = analytic(c);
    if (f && c.probes > 0) {
        const AnalyticField per = on_torus(*f, c.half_width);
        std::vector<std::string> names;
        for (const char* r : {"spectral", "semigroup", "pointwise"}) {
            if (wants(c, r)) {
                names.push_back(r);
            }
        }
        auto pcols = coordinate_columns(u.n());
        pcols.insert(pcols.begin(), "index");
        for (const auto& r : names) {
            pcols.push_back(r);
        }
        for (std::size_t a = 0; a < names.size(); ++a) {
            for (std::size_t b = a + 1; b < names.size(); ++b) {
                pcols.push_back("delta_" + names[a] + "_" + names[b]);
            }
        }
        Table probes(pcols);
        double worst = 0.0;
        for (std::size_t i : pick_probes(u, c.probes, c.seed)) {
            const Point p = u.point(i);
            std::vector<double> vals;
            for (const auto& r : names) {
                if (r == "spectral") {
                    vals.push_back((*spectral)[i]);
                } else if (r == "semigroup") {
                    vals.push_back(frac_apply_semigroup(per, coords(p, u.n()), s, c.quadrature).value);
                } else {
                    vals.push_back(frac_apply_pointwise(per, coords(p, u.n()), s).value);
                }
            }
            std::vector<Cell> row;
            row.emplace_back(static_cast<long long>(i));
            push_point(row, u, i);
            for (double v : vals) {
                row.emplace_back(v);
            }
            for (std::size_t a = 0; a < vals.size(); ++a) {
                for (std::size_t b = a + 1; b < vals.size(); ++b) {
                    row.emplace_back(std::abs(vals[a] - vals[b]));
                    worst = std::max(worst, std::abs(vals[a] - vals[b]));
                }
            }
            probes.add(std::move(row));
        }
        summary["max_probe_delta"] = worst;
        out.artifacts.push_back(write_table(probes, c, dir, "apply_probes"));
    }
    out.artifacts.push_back(write_summary(summary, c, dir, "apply_summary"));
    return out;
}

RunOutcome run_invert(const RunConfig& c, const fs::path& dir) {
    const GridField f = input_grid(c, c.fixture, c.points_per_axis);
    RunOutcome out;
    const InverseGridResult spec = frac_inverse_spectral(f, c.s);
    const InverseGridResult semi = frac_inverse_semigroup(f, c.s, c.quadrature);
    std::vector<double> centred(f.values().begin(), f.values().end());
    for (double& v : centred) {
        v -= spec.removed_mean;
    }
    const GridField target = f.with_values(std::move(centred));
    const GridField back = frac_apply_spectral(spec.field, FracOrder(c.s));
    const GridField back_semi = frac_apply_spectral(semi.field, FracOrder(c.s));

    auto cols = coordinate_columns(f.n());
    for (const char* name : {"f", "spectral", "semigroup", "delta_spectral_semigroup", "round_trip_residual"}) {
        cols.emplace_back(name);
    }
    Table grid(cols);
    for (std::size_t i = 0; i < f.size(); ++i) {
        std::vector<Cell> row;
        push_point(row, f, i);
        row.emplace_back(f[i]);
        row.emplace_back(spec.field[i]);
        row.emplace_back(semi.field[i]);
        row.emplace_back(std::abs(spec.field[i] - semi.field[i]));
        row.emplace_back(std::abs(back[i] - target[i]));
        grid.add(std::move(row));
    }
    out.artifacts.push_back(write_table(grid, c, dir, "invert"));
    save_field(spec.field, dir / "invert.fsgf", -c.s);
    out.artifacts.push_back(dir / "invert.fsgf");

    json summary;
    summary["removed_mean"] = spec.removed_mean;
    summary["round_trip_residual_spectral"] = max_abs_diff(back, target);
    summary["round_trip_residual_semigroup"] = max_abs_diff(back_semi, target);
    summary["max_delta_spectral_semigroup"] = max_abs_diff(spec.field, semi.field);
    summary["semigroup_quadrature_error"] = semi.quadrature_error;

    // on R^n: the Riesz potential against the semigroup formula
    const auto a = analytic(c);
    if (a && c.probes > 0 && 2.0 * c.s <= c.n) {
        auto pcols = coordinate_columns(f.n());
        pcols.insert(pcols.begin(), "index");
        for (const char* name : {"riesz", "semigroup_rn", "delta"}) {
            pcols.emplace_back(name);
        }
        Table probes(pcols);
        double worst = 0.0;
        for (std::size_t i : pick_probes(f, c.probes, c.seed)) {
            const Point p = f.point(i);
            const double r = riesz_convolve(*a, coords(p, f.n()), c.s).value;
            const double g = frac_inverse_semigroup(*a, coords(p, f.n()), c.s, c.quadrature).value;
            std::vector<Cell> row;
            row.emplace_back(static_cast<long long>(i));
            push_point(row, f, i);
            row.emplace_back(r);
            row.emplace_back(g);
            row.emplace_back(std::abs(r - g));
            worst = std::max(worst, std::abs(r - g));
            probes.add(std::move(row));
        }
        summary["max_riesz_delta"] = worst;
        out.artifacts.push_back(write_table(probes, c, dir, "invert_probes"));
    }
    out.artifacts.push_back(write_summary(summary, c, dir, "invert_summary"));
    return out;
}

ExtensionRoute extension_route(const std::string& name) {
    if (name == "subordination") {
        return ExtensionRoute::subordination;
    }
    if (name == "semigroup_frac") {
        return ExtensionRoute::semigroup_frac;
    }
    if (name == "poisson_kernel") {
        return ExtensionRoute::poisson_kernel;
    }
    return ExtensionRoute::semigroup_dirichlet;
}

RunOutcome run_extend(const RunConfig& c, const fs::path& dir) {
    const FracOrder s(c.s);
    const GridField u = input_grid(c, c.fixture, c.points_per_axis);
    const auto y = log_y_nodes(c.y_count, c.y_min, c.y_max);
    const ExtensionField ext = extend(u, s, y, extension_route(c.extension_route), c.quadrature);
    RunOutcome out;
    save_extension(ext, dir / "extension.fsgf");
    out.artifacts.push_back(dir / "extension.fsgf");

    const BoundaryLimit nl = neumann_limit(ext, c.quadrature);
    const BoundaryLimit ql = quotient_limit(ext);
    auto cols = coordinate_columns(u.n());
    for (const char* name :
         {"u", "neumann_measured", "neumann_target", "quotient_measured", "quotient_target"}) {
        cols.emplace_back(name);
    }
    Table limits(cols);
    for (std::size_t i = 0; i < u.size(); ++i) {
        std::vector<Cell> row;
        push_point(row, u, i);
        row.emplace_back(u[i]);
        row.emplace_back(nl.measured[i]);
        row.emplace_back(nl.target[i]);
        row.emplace_back(ql.measured[i]);
        row.emplace_back(ql.target[i]);
        limits.add(std::move(row));
    }
    out.artifacts.push_back(write_table(limits, c, dir, "extend_limits"));

    Table slices({"j", "y", "max_abs", "boundary_gap"});
    for (std::size_t j = 0; j < ext.y_count(); ++j) {
        const GridField sl = ext.slice(j);
        slices.add({static_cast<long long>(j), ext.y_nodes()[j], sl.max_abs(), max_abs_diff(sl, u)});
    }
    out.artifacts.push_back(write_table(slices, c, dir, "extend_slices"));

    const ExtensionEnergy energy = extension_energy(ext);
    const HsSeminorm hs = hs_seminorm(u, s);
    json summary;
    summary["neumann_constant_ratio"] = nl.constant_ratio;
    summary["cs_neumann"] = cs_neumann(s);
    summary["neumann_fit_residual"] = nl.residual;
    summary["quotient_constant_ratio"] = ql.constant_ratio;
    summary["cs_quotient"] = cs_quotient(s);
    summary["quotient_fit_residual"] = ql.residual;
    summary["pde_residual"] = pde_residual(ext);
    summary["energy"] = energy.value;
    summary["energy_refinement_change"] = energy.refinement_change;
    summary["y_grid_too_coarse"] = energy.y_grid_too_coarse;
    summary["hs_seminorm_spectral"] = hs.spectral;
    summary["cs_neumann_times_hs"] = cs_neumann(s) * hs.spectral;
    out.artifacts.push_back(write_summary(summary, c, dir, "extend_summary"));
    return out;
}

RunOutcome run_limits(const RunConfig& c, const fs::path& dir) {
    const auto f = analytic(c);
    if (!f) {
        throw Error(ErrorCode::config, "field 'fixture': limits needs a builtin fixture, not a field file");
    }
    std::vector<double> x0 = c.x0;
    if (x0.empty()) {
        x0.assign(c.n, 0.0);
    }
    Table table({"direction", "route", "s", "value", "target", "gap", "monotone"});
    json summary;
    for (LimitDirection d : {LimitDirection::s_to_1, LimitDirection::s_to_0}) {
        const auto& seq = d == LimitDirection::s_to_1 ? c.s_to_1 : c.s_to_0;
        if (seq.empty()) {
            continue;
        }
        const std::string dname = d == LimitDirection::s_to_1 ? "s_to_1" : "s_to_0";
        for (LimitRoute r : {LimitRoute::semigroup, LimitRoute::closed_form}) {
            if (r == LimitRoute::closed_form && !f->exact_frac_image) {
                continue;
            }
            const std::string rname = r == LimitRoute::semigroup ? "semigroup" : "closed_form";
            const LimitTable t = limit_diagnostics(*f, x0, d, seq, r, c.quadrature);
            for (const LimitRow& row : t.rows) {
                table.add({dname, rname, row.s, row.value, row.target, row.gap,
                           static_cast<long long>(t.monotone ? 1 : 0)});
            }
            summary[dname + "_" + rname] = {{"final_gap", t.rows.back().gap},
                                            {"target", t.rows.back().target},
                                            {"monotone", t.monotone}};
        }
    }
    RunOutcome out;
    out.artifacts.push_back(write_table(table, c, dir, "limits"));
    out.artifacts.push_back(write_summary(summary, c, dir, "limits_summary"));
    return out;
}

RunOutcome run_regularity(const RunConfig& c, const fs::path& dir) {
    const GridField u = input_grid(c, c.fixture, c.points_per_axis);
    Table table({"k", "alpha_est", "seminorm_semigroup", "seminorm_zygmund", "fit_t_min", "fit_t_max",
                 "fit_points", "fit_residual", "saturated"});
    json summary;
    for (int k : c.k) {
        const RegularityReport r = estimate_alpha(u, k);
        table.add({static_cast<long long>(k), r.alpha_est, r.seminorm_semigroup, r.seminorm_zygmund, r.fit_t_min,
                   r.fit_t_max, static_cast<long long>(r.fit_points), r.fit_residual,
                   static_cast<long long>(r.saturated ? 1 : 0)});
        summary["alpha_est_k" + std::to_string(k)] = r.alpha_est;
    }
    if (c.k.size() >= 2) {
        double lo = summary["alpha_est_k" + std::to_string(c.k.front())].get<double>();
        double hi = lo;
        for (int k : c.k) {
            const double a = summary["alpha_est_k" + std::to_string(k)].get<double>();
            lo = std::min(lo, a);
            hi = std::max(hi, a);
        }
        summary["k_spread"] = hi - lo;
    }
    RunOutcome out;
    out.artifacts.push_back(write_table(table, c, dir, "regularity"));
    out.artifacts.push_back(write_summary(summary, c, dir, "regularity_summary"));
    return out;
}

MappingMode mapping_mode(const std::string& name) {
    if (name == "schauder_inverse") {
        return MappingMode::schauder_inverse;
    }
    if (name == "schauder_bounded") {
        return MappingMode::schauder_bounded;
    }
    return MappingMode::holder_forward;
}

RunOutcome run_verify(const RunConfig& c, const fs::path& dir) {
    std::vector<FixtureRef> refs = c.fixtures;
    if (refs.empty()) {
        refs.push_back(c.fixture);
    }
    const MappingMode mode = mapping_mode(c.mode);
    const auto table_at = [&](int points) {
        std::vector<GridField> fields;
        for (const FixtureRef& f : refs) {
            fields.push_back(input_grid(c, f, points));
        }
        return verify_mapping(fields, c.s, c.alpha, mode);
    };
    const MappingTable base = table_at(c.points_per_axis);
    const bool refine = c.refine && std::none_of(refs.begin(), refs.end(), [](const FixtureRef& f) {
        return f.is_file();
    });
    std::optional<MappingTable> fine;
    if (refine) {
        fine = table_at(2 * c.points_per_axis);
    }
    std::vector<std::string> cols{"mode",           "s",     "fixture",        "alpha_in", "alpha_out",
                                  "input_seminorm", "output_seminorm", "ratio", "output_zygmund"};
    if (fine) {
        for (const char* name : {"ratio_2M", "ratio_change", "output_zygmund_2M"}) {
            cols.emplace_back(name);
        }
    }
    Table table(cols);
    double worst_change = 0.0;
    for (std::size_t i = 0; i < base.rows.size(); ++i) {
        const MappingRow& r = base.rows[i];
        std::vector<Cell> row{to_string(mode), c.s, label(refs[i]), r.alpha_in, r.alpha_out,
                              r.input_seminorm, r.output_seminorm, r.ratio, r.output_zygmund};
        if (fine) {
            const MappingRow& q = fine->rows[i];
            const double change = std::abs(q.ratio / r.ratio - 1.0);
            worst_change = std::max(worst_change, change);
            row.emplace_back(q.ratio);
            row.emplace_back(change);
            row.emplace_back(q.output_zygmund);
        }
        table.add(std::move(row));
    }
    json summary;
    summary["sup_ratio"] = base.sup_ratio;
    if (fine) {
        summary["sup_ratio_2M"] = fine->sup_ratio;
        summary["max_ratio_change"] = worst_change;
    }
    RunOutcome out;
    out.artifacts.push_back(write_table(table, c, dir, "verify"));
    out.artifacts.push_back(write_summary(summary, c, dir, "verify_summary"));
    return out;
}

RunOutcome run_selftest(const RunConfig& c, const fs::path& dir) {
    const auto scratch = dir / "selftest_scratch";
    fs::create_directories(scratch);
    const std::vector<Invariant> inv = selftest_invariants(c.seed, scratch);
    fs::remove_all(scratch);
    Table table({"invariant", "value", "tolerance", "passed"});
    json list = json::array();
    bool all = true;
    for (const Invariant& i : inv) {
        table.add({i.name, i.value, i.tolerance, static_cast<long long>(i.passed ? 1 : 0)});
        list.push_back({{"name", i.name}, {"value", i.value}, {"tolerance", i.tolerance}, {"passed", i.passed}});
        all = all && i.passed;
    }
    RunOutcome out;
    out.artifacts.push_back(write_table(table, c, dir, "selftest"));
    out.artifacts.push_back(write_summary({{"passed", all}, {"invariants", list}}, c, dir, "selftest_summary"));
    out.exit_code = all ? 0 : 1;
    return out;
}

}  // namespace

RunOutcome run(const RunConfig& config, const fs::path& out_dir) {
    fs::create_directories(out_dir);
    switch (config.command) {
        case Command::apply:
            return run_apply(config, out_dir);
        case Command::invert:
            return run_invert(config, out_dir);
        case Command::extend:
            return run_extend(config, out_dir);
        case Command::limits:
            return run_limits(config, out_dir);
        case Command::regularity:
            return run_regularity(config, out_dir);
        case Command::verify:
            return run_verify(config, out_dir);
        case Command::selftest:
            return run_selftest(config, out_dir);
    }
    throw Error(ErrorCode::config, "field 'command': unknown command");
}

int exit_status_for(const std::exception& e) {
    if (const auto* err = dynamic_cast<const Error*>(&e)) {
        return err->code() == ErrorCode::config ? 2 : 3;
    }
    return 4;
}

}  // namespace fracsem::cli
