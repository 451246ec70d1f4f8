#pragma once

#include <string>
#include <utility>

#include "json.hpp"

#include "modtrace/matrix.hpp"

namespace modtrace::io {

inline constexpr const char* k_report_schema = "modtrace.report/1";

using ordered_json = nlohmann::ordered_json;

/* {"rows": R, "cols": C, "entries": [[r, c, v], ...]} */
inline ordered_json matrix_json(const Mat& m) {
    ordered_json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    ordered_json entries = ordered_json::array();
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            if (m.at(r, c) != 0) entries.push_back({r, c, m.at(r, c)});
    j["entries"] = std::move(entries);
    return j;
}

/* [[i, v], ...] for a single row or column. */
inline ordered_json vector_json(const Mat& m) {
    ordered_json j = ordered_json::array();
    int n = m.rows() == 1 ? m.cols() : m.rows();
    for (int k = 0; k < n; ++k) {
        std::uint64_t v = m.rows() == 1 ? m.at(0, k) : m.at(k, 0);
        if (v != 0) j.push_back({k, v});
    }
    return j;
}

/* One sparse vector per column of m. */
inline ordered_json columns_json(const Mat& m) {
    ordered_json j = ordered_json::array();
    for (int c = 0; c < m.cols(); ++c) j.push_back(vector_json(m.col(c)));
    return j;
}

namespace detail {

inline bool all_scalars(const ordered_json& j) {
    for (const auto& e : j)
        if (e.is_array() || e.is_object()) return false;
    return true;
}

inline std::string scalar_text(const ordered_json& j) {
    if (j.is_string()) return j.get<std::string>();
    return j.dump();
}

inline void render_text(const ordered_json& j, std::string& out, int depth) {
    std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            const ordered_json& v = it.value();
            if (v.is_object() || (v.is_array() && !v.empty() && !all_scalars(v))) {
                out += pad + it.key() + ":\n";
                render_text(v, out, depth + 1);
            } else if (v.is_array()) {
                out += pad + it.key() + ": [";
                for (std::size_t i = 0; i < v.size(); ++i) {
                    if (i) out += ", ";
                    out += scalar_text(v[i]);
                }
                out += "]\n";
            } else {
                out += pad + it.key() + ": " + scalar_text(v) + "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& e : j) {
            if (e.is_object() || (e.is_array() && !all_scalars(e))) {
                out += pad + "-\n";
                render_text(e, out, depth + 1);
            } else if (e.is_array()) {
                out += pad + "- [";
                for (std::size_t i = 0; i < e.size(); ++i) {
                    if (i) out += ", ";
                    out += scalar_text(e[i]);
                }
                out += "]\n";
            } else {
                out += pad + "- " + scalar_text(e) + "\n";
            }
        }
    } else {
        out += pad + scalar_text(j) + "\n";
    }
}

}  // namespace detail

/* Accumulates one command's report. Field order is insertion order, so a
 * fixed build sequence yields byte-identical output. */
struct Report {
    ordered_json doc;

    explicit Report(std::string command) {
        doc["schema"] = k_report_schema;
        doc["command"] = std::move(command);
    }

    std::string json_text() const { return doc.dump(2) + "\n"; }

    std::string plain_text() const {
        std::string out;
        detail::render_text(doc, out, 0);
        return out;
    }
};

}  // namespace modtrace::io
