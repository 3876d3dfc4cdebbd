#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace qorrelate::cli {

using Json = nlohmann::ordered_json;

// A rectangular result plus provenance lines. Cells are JSON scalars so the
// CSV and JSON renderings share one source; null renders as an empty CSV cell.
struct Document {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<Json>> rows;
    Json extra = Json::object();  // JSON-only fields appended after the rows

    void meta(std::string key, std::string value) { metadata.emplace_back(std::move(key), std::move(value)); }
};

std::string render_csv(const Document& doc);
std::string render_json(const Document& doc);

// Writes `text` to `path` through a sibling temporary file and a rename, so
// a failed run never leaves a partial file behind.
void write_atomically(const std::string& path, const std::string& text);

}  // namespace qorrelate::cli
