#include "output.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include <unistd.h>

#include "qorrelate/cli.hpp"

namespace qorrelate::cli {

std::string format_number(double value) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
    if (result.ec != std::errc{}) throw std::runtime_error("number formatting failed");
    return {buffer, result.ptr};
}

namespace {

std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string quoted = "\"";
    for (char ch : text) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    return quoted + '"';
}

std::string csv_cell(const Json& cell) {
    switch (cell.type()) {
        case Json::value_t::null: return "";
        case Json::value_t::string: return csv_field(cell.get<std::string>());
        case Json::value_t::boolean: return cell.get<bool>() ? "true" : "false";
        case Json::value_t::number_integer: return std::to_string(cell.get<std::int64_t>());
        case Json::value_t::number_unsigned: return std::to_string(cell.get<std::uint64_t>());
        case Json::value_t::number_float: return format_number(cell.get<double>());
        default: return csv_field(cell.dump());
    }
}

}  // namespace

std::string render_csv(const Document& doc) {
    std::string out;
    for (const auto& [key, value] : doc.metadata) out += "# " + key + ": " + value + "\n";
    for (std::size_t c = 0; c < doc.columns.size(); ++c) out += (c ? "," : "") + csv_field(doc.columns[c]);
    out += "\n";
    for (const auto& row : doc.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + csv_cell(row[c]);
        out += "\n";
    }
    return out;
}

std::string render_json(const Document& doc) {
    Json root = Json::object();
    Json meta = Json::object();
    for (const auto& [key, value] : doc.metadata) meta[key] = value;
    root["metadata"] = std::move(meta);
    Json rows = Json::array();
    for (const auto& row : doc.rows) {
        Json obj = Json::object();
        for (std::size_t c = 0; c < row.size() && c < doc.columns.size(); ++c) obj[doc.columns[c]] = row[c];
        rows.push_back(std::move(obj));
    }
    root["rows"] = std::move(rows);
    for (const auto& [key, value] : doc.extra.items()) root[key] = value;
    return root.dump(2) + "\n";
}

void write_atomically(const std::string& path, const std::string& text) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path temp = target;
    temp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream file(temp, std::ios::binary | std::ios::trunc);
        if (!file) throw std::runtime_error("cannot open " + temp.string() + " for writing");
        file << text;
        file.flush();
        if (!file) {
            file.close();
            std::error_code ignored;
            fs::remove(temp, ignored);
            throw std::runtime_error("write to " + temp.string() + " failed");
        }
    }
    std::error_code ec;
    fs::rename(temp, target, ec);
    if (ec) {
        std::error_code ignored;
        fs::remove(temp, ignored);
        throw std::runtime_error("cannot move output into place at " + path + ": " + ec.message());
    }
}

}  // namespace qorrelate::cli
