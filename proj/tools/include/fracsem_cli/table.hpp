#pragma once

#include "fracsem_cli/config.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace fracsem::cli {

using Cell = std::variant<double, long long, std::string>;

/// Column-named rows written as CSV (first line "# config: <json>") or as a
/// JSON document {"config", "columns", "rows"}.
class Table {
public:
    explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void add(std::vector<Cell> row);

    [[nodiscard]] const std::vector<std::string>& columns() const noexcept { return columns_; }
    [[nodiscard]] std::size_t rows() const noexcept { return rows_.size(); }

    [[nodiscard]] std::string csv(const nlohmann::json& config) const;
    [[nodiscard]] nlohmann::json json(const nlohmann::json& config) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

/// Writes <dir>/<stem>.csv or <dir>/<stem>.json per the configured format,
/// atomically. Returns the path written.
std::filesystem::path write_table(const Table& table, const RunConfig& config, const std::filesystem::path& dir,
                                  const std::string& stem);

/// Writes <dir>/<stem>.json holding {"config", ...summary} atomically.
std::filesystem::path write_summary(nlohmann::json summary, const RunConfig& config,
                                    const std::filesystem::path& dir, const std::string& stem);

}  // namespace fracsem::cli
