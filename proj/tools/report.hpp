// Copyright 2026 The sdsdirac Authors
// SPDX-License-Identifier: Apache-2.0

// JSON / CSV serialization for the command-line tool. Documents are built as
// nlohmann::ordered_json (key order preserved); numbers are written with
// %.17g so identical runs produce byte-identical files.

#pragma once

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <system_error>

namespace sds::report {

using Json = nlohmann::ordered_json;

inline std::string format_number(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail {

inline void indent_to(std::string& out, int level) { out.append(static_cast<std::size_t>(2 * level), ' '); }

inline void dump(const Json& j, std::string& out, int level) {
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                indent_to(out, level + 1);
                out += Json(it.key()).dump();
                out += ": ";
                dump(it.value(), out, level + 1);
            }
            out += "\n";
            indent_to(out, level);
            out += "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ",\n";
                indent_to(out, level + 1);
                dump(j[i], out, level + 1);
            }
            out += "\n";
            indent_to(out, level);
            out += "]";
            return;
        }
        case Json::value_t::number_float: out += format_number(j.get<double>()); return;
        default: out += j.dump(); return;
    }
}

inline std::string csv_cell(const Json& v) {
    if (v.is_number_float()) return format_number(v.get<double>());
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) {
            if (c == '"') q += '"';
            q += c;
        }
        return q + "\"";
    }
    if (v.is_null()) return "";
    return v.dump();
}

}  // namespace detail

/// Pretty JSON with 17-significant-digit numbers and a trailing newline.
inline std::string to_json(const Json& doc) {
    std::string out;
    detail::dump(doc, out, 0);
    out += "\n";
    return out;
}

/// Header line from the first row's keys, then one line per row.
inline std::string to_csv(const Json& rows) {
    std::string out;
    if (!rows.is_array() || rows.empty()) return out;
    bool first = true;
    for (auto it = rows[0].begin(); it != rows[0].end(); ++it) {
        if (!first) out += ",";
        first = false;
        out += it.key();
    }
    out += "\n";
    for (const auto& row : rows) {
        first = true;
        for (auto it = rows[0].begin(); it != rows[0].end(); ++it) {
            if (!first) out += ",";
            first = false;
            out += row.contains(it.key()) ? detail::csv_cell(row[it.key()]) : std::string();
        }
        out += "\n";
    }
    return out;
}

/// Writes to a temporary sibling and renames it over the target.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
    const auto dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    const auto tmp = dir / ("." + path.filename().string() + ".tmp");
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        f << content;
        f.flush();
        if (!f) throw std::runtime_error("write to '" + tmp.string() + "' failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("cannot rename onto '" + path.string() + "': " + ec.message());
    }
}

}  // namespace sds::report
