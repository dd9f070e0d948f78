#include "fracsem_cli/table.hpp"

#include "fracsem/error.hpp"
#include "fracsem/field_io.hpp"

namespace fracsem::cli {

void Table::add(std::vector<Cell> row) {
    if (row.size() != columns_.size()) {
        throw Error(ErrorCode::validation, "table row has " + std::to_string(row.size()) + " cells, expected " +
                                               std::to_string(columns_.size()));
    }
    rows_.push_back(std::move(row));
}

std::string Table::csv(const nlohmann::json& config) const {
    std::string out = "# config: " + config.dump() + "\n";
    for (std::size_t c = 0; c < columns_.size(); ++c) {
        out += (c ? "," : "") + columns_[c];
    }
    out += '\n';
    for (const auto& row : rows_) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) {
                out += ',';
            }
            if (const auto* d = std::get_if<double>(&row[c])) {
                out += format_double(*d);
            } else if (const auto* i = std::get_if<long long>(&row[c])) {
                out += std::to_string(*i);
            } else {
                out += std::get<std::string>(row[c]);
            }
        }
        out += '\n';
    }
    return out;
}

nlohmann::json Table::json(const nlohmann::json& config) const {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : rows_) {
        nlohmann::json r = nlohmann::json::array();
        for (const Cell& cell : row) {
            std::visit([&](const auto& v) { r.push_back(v); }, cell);
        }
        rows.push_back(std::move(r));
    }
    return {{"config", config}, {"columns", columns_}, {"rows", rows}};
}

std::filesystem::path write_table(const Table& table, const RunConfig& config, const std::filesystem::path& dir,
                                  const std::string& stem) {
    const nlohmann::json echo = to_json(config);
    if (config.format == OutputFormat::csv) {
        const auto path = dir / (stem + ".csv");
        write_text_atomic(path, table.csv(echo));
        return path;
    }
    const auto path = dir / (stem + ".json");
    write_text_atomic(path, table.json(echo).dump(2) + "\n");
    return path;
}

std::filesystem::path write_summary(nlohmann::json summary, const RunConfig& config,
                                    const std::filesystem::path& dir, const std::string& stem) {
    summary["config"] = to_json(config);
    const auto path = dir / (stem + ".json");
    write_text_atomic(path, summary.dump(2) + "\n");
    return path;
}

}  // namespace fracsem::cli
