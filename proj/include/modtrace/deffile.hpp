#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "modtrace/algebra.hpp"
#include "modtrace/hopf.hpp"
#include "modtrace/projective.hpp"

namespace modtrace::io {

inline constexpr const char* k_def_schema = "modtrace.def/1";

namespace detail {
/* Mat has no default constructor; declarations start from this stand-in. */
inline Mat no_mat() { return Mat(Fp::make(2, 1), 0, 0); }
}  // namespace detail

/* Raw declarations as they appear in a definition document. Construction of
 * validated library objects is deferred to Instances so that a validate run
 * can report every axiom verdict instead of stopping at the first failure. */
struct AlgebraDef {
    std::string name;
    int dim = 0;
    std::vector<std::uint64_t> structure;  /* dense dim^3, (i*dim+j)*dim+k */
    Mat unit = detail::no_mat();
    bool operator==(const AlgebraDef&) const = default;
};

struct HopfDef {
    std::string name;
    std::string algebra;
    Mat delta = detail::no_mat();
    Mat counit = detail::no_mat();
    Mat antipode = detail::no_mat();
    bool operator==(const HopfDef&) const = default;
};

struct ComoduleDef {
    std::string name;
    std::string algebra;
    std::string hopf;
    Mat coaction = detail::no_mat();
    bool operator==(const ComoduleDef&) const = default;
};

struct BimoduleDef {
    std::string name;
    std::string left_algebra, right_algebra;
    int dim = 0;
    std::vector<Mat> left, right;
    bool operator==(const BimoduleDef&) const = default;
};

struct ElementDef {
    std::string name;
    std::string algebra;
    Mat coords = detail::no_mat();  /* dim x 1 */
    bool operator==(const ElementDef&) const = default;
};

struct FormDef {
    std::string name;
    std::string algebra;
    Mat coords = detail::no_mat();  /* 1 x dim */
    bool operator==(const FormDef&) const = default;
};

struct ProjectiveDef {
    std::string name;
    std::string algebra;
    int rank = 0;
    Mat idempotent = detail::no_mat();  /* (rank*dim) square */
    bool operator==(const ProjectiveDef&) const = default;
};

struct MapDef {
    std::string name;
    Mat entries = detail::no_mat();
    bool operator==(const MapDef&) const = default;
};

struct Definition {
    Fp field = Fp::make(2, 1);
    std::vector<AlgebraDef> algebras;
    std::vector<HopfDef> hopf_algebras;
    std::vector<ComoduleDef> comodule_algebras;
    std::vector<BimoduleDef> bimodules;
    std::vector<ElementDef> elements;
    std::vector<FormDef> forms;
    std::vector<ProjectiveDef> projectives;
    std::vector<MapDef> maps;
    bool operator==(const Definition&) const = default;

    int max_declared_dim() const {
        int m = 0;
        for (const auto& a : algebras) m = std::max(m, a.dim);
        for (const auto& b : bimodules) m = std::max(m, b.dim);
        for (const auto& p : projectives) m = std::max(m, p.idempotent.rows());
        return m;
    }
};

namespace detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
    throw parse_error(path + ": " + what);
}

inline const nlohmann::json& member(const nlohmann::json& j, const char* key,
                                    const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path, "missing required key \"" + std::string(key) + "\"");
    return *it;
}

inline const nlohmann::json* opt_member(const nlohmann::json& j, const char* key,
                                        const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

inline std::int64_t get_int(const nlohmann::json& j, const std::string& path,
                            std::int64_t lo, std::int64_t hi) {
    if (!j.is_number_integer() || j.is_number_float())
        fail(path, "expected an integer");
    std::int64_t v = j.get<std::int64_t>();
    if (v < lo || v > hi)
        fail(path, "value " + std::to_string(v) + " outside [" + std::to_string(lo) +
                       ", " + std::to_string(hi) + "]");
    return v;
}

inline std::uint64_t get_scalar(const nlohmann::json& j, const Fp& f,
                                const std::string& path) {
    return static_cast<std::uint64_t>(
        get_int(j, path, 0, static_cast<std::int64_t>(f.p()) - 1));
}

inline std::string get_name(const nlohmann::json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a name string");
    std::string s = j.get<std::string>();
    if (s.empty() || s.size() > 64) fail(path, "name must have 1 to 64 characters");
    for (char c : s) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                  (c >= '0' && c <= '9') || c == '_' || c == '.' || c == '-';
        if (!ok) fail(path, "name \"" + s + "\" has characters outside [A-Za-z0-9_.-]");
    }
    return s;
}

inline const nlohmann::json& entry_at(const nlohmann::json& j, std::size_t i,
                                      std::size_t width, const std::string& path) {
    const nlohmann::json& e = j[i];
    std::string epath = path + "[" + std::to_string(i) + "]";
    if (!e.is_array() || e.size() != width)
        fail(epath, "expected a " + std::to_string(width) + "-entry array");
    return e;
}

/* [row, col, value] triples into a fixed-shape matrix. */
inline Mat sparse_matrix(const nlohmann::json& j, const Fp& f, int rows, int cols,
                         const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of [row, col, value] triples");
    Mat m(f, rows, cols);
    std::vector<bool> seen(static_cast<std::size_t>(rows) * cols, false);
    for (std::size_t i = 0; i < j.size(); ++i) {
        const nlohmann::json& e = entry_at(j, i, 3, path);
        std::string epath = path + "[" + std::to_string(i) + "]";
        int r = static_cast<int>(get_int(e[0], epath + "[0]", 0, rows - 1));
        int c = static_cast<int>(get_int(e[1], epath + "[1]", 0, cols - 1));
        std::uint64_t v = get_scalar(e[2], f, epath + "[2]");
        std::size_t flat = static_cast<std::size_t>(r) * cols + c;
        if (seen[flat]) fail(epath, "duplicate entry for position (" + std::to_string(r) +
                                        ", " + std::to_string(c) + ")");
        seen[flat] = true;
        m.at(r, c) = v;
    }
    return m;
}

/* [index, value] pairs into a single row or column. */
inline Mat sparse_vector(const nlohmann::json& j, const Fp& f, int rows, int cols,
                         const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of [index, value] pairs");
    int n = rows == 1 ? cols : rows;
    Mat m(f, rows, cols);
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (std::size_t i = 0; i < j.size(); ++i) {
        const nlohmann::json& e = entry_at(j, i, 2, path);
        std::string epath = path + "[" + std::to_string(i) + "]";
        int k = static_cast<int>(get_int(e[0], epath + "[0]", 0, n - 1));
        std::uint64_t v = get_scalar(e[1], f, epath + "[1]");
        if (seen[static_cast<std::size_t>(k)])
            fail(epath, "duplicate entry for index " + std::to_string(k));
        seen[static_cast<std::size_t>(k)] = true;
        if (rows == 1)
            m.at(0, k) = v;
        else
            m.at(k, 0) = v;
    }
    return m;
}

template <typename T>
inline void check_unique_name(const std::vector<T>& defs, const std::string& name,
                              const std::string& path) {
    for (const T& d : defs)
        if (d.name == name) fail(path, "duplicate name \"" + name + "\"");
}

template <typename T>
inline const T& find_named(const std::vector<T>& defs, const std::string& name,
                           const char* kind) {
    for (const T& d : defs)
        if (d.name == name) return d;
    throw domain_error(std::string("unknown ") + kind + " \"" + name + "\"");
}

template <typename T>
inline void check_resolves(const std::vector<T>& defs, const std::string& name,
                           const char* kind, const std::string& path) {
    for (const T& d : defs)
        if (d.name == name) return;
    fail(path, "reference to unknown " + std::string(kind) + " \"" + name + "\"");
}

inline void line_column(const std::string& text, std::size_t byte, int& line, int& col) {
    std::size_t pos = byte == 0 ? 0 : byte - 1;
    if (pos > text.size()) pos = text.size();
    line = 1;
    std::size_t bol = 0;
    for (std::size_t i = 0; i < pos; ++i)
        if (text[i] == '\n') {
            ++line;
            bol = i + 1;
        }
    col = static_cast<int>(pos - bol) + 1;
}

}  // namespace detail

/* max_dim bounds every declared dimension; documents beyond it are refused
 * as a resource cap, before any large allocation. */
inline Definition parse_definition(const std::string& text, int max_dim = 256) {
    if (max_dim > k_dim_cap) max_dim = k_dim_cap;
    auto cap_dim = [max_dim](int dim, const char* what) {
        if (dim > max_dim)
            throw size_cap_error(std::string(what) + " dimension " + std::to_string(dim) +
                                 " exceeds the cap " + std::to_string(max_dim));
    };
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        int line = 0, col = 0;
        detail::line_column(text, e.byte, line, col);
        std::string reason = e.what();
        std::size_t cut = reason.find("] ");
        if (cut != std::string::npos) reason = reason.substr(cut + 2);
        if (reason.rfind("parse error at line ", 0) == 0) {
            std::size_t colon = reason.find(": ");
            if (colon != std::string::npos) reason = reason.substr(colon + 2);
        }
        throw parse_error("line " + std::to_string(line) + ", column " +
                          std::to_string(col) + ": " + reason);
    }

    if (!j.is_object()) detail::fail("document", "expected a top-level object");
    const nlohmann::json& schema = detail::member(j, "schema", "document");
    if (!schema.is_string() || schema.get<std::string>() != k_def_schema)
        detail::fail("schema", std::string("expected \"") + k_def_schema + "\"");

    Definition d;
    {
        const nlohmann::json& fj = detail::member(j, "field", "document");
        std::int64_t p = detail::get_int(detail::member(fj, "p", "field"), "field.p", 2,
                                         (std::int64_t{1} << 31) - 1);
        std::int64_t n = detail::get_int(detail::member(fj, "root_order", "field"),
                                         "field.root_order", 1, p - 1);
        try {
            d.field = Fp::make(static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(n));
        } catch (const error& e) {
            detail::fail("field", e.what());
        }
    }
    const Fp& f = d.field;

    if (const nlohmann::json* arr = detail::opt_member(j, "algebras", "document")) {
        if (!arr->is_array()) detail::fail("algebras", "expected an array");
        for (std::size_t i = 0; i < arr->size(); ++i) {
            std::string path = "algebras[" + std::to_string(i) + "]";
            const nlohmann::json& a = (*arr)[i];
            AlgebraDef def;
            def.name = detail::get_name(detail::member(a, "name", path), path + ".name");
            detail::check_unique_name(d.algebras, def.name, path + ".name");
            def.dim = static_cast<int>(detail::get_int(detail::member(a, "dim", path),
                                                       path + ".dim", 0, k_dim_cap));
            cap_dim(def.dim, "algebra");
            def.structure.assign(
                static_cast<std::size_t>(def.dim) * def.dim * def.dim, 0);
            def.unit = detail::sparse_vector(detail::member(a, "unit", path), f, def.dim, 1,
                                             path + ".unit");
            const nlohmann::json& prod = detail::member(a, "products", path);
            std::string ppath = path + ".products";
            if (!prod.is_array())
                detail::fail(ppath, "expected an array of [i, j, k, value] entries");
            for (std::size_t t = 0; t < prod.size(); ++t) {
                const nlohmann::json& e = detail::entry_at(prod, t, 4, ppath);
                std::string epath = ppath + "[" + std::to_string(t) + "]";
                int pi = static_cast<int>(detail::get_int(e[0], epath + "[0]", 0, def.dim - 1));
                int pj = static_cast<int>(detail::get_int(e[1], epath + "[1]", 0, def.dim - 1));
                int pk = static_cast<int>(detail::get_int(e[2], epath + "[2]", 0, def.dim - 1));
                std::uint64_t v = detail::get_scalar(e[3], f, epath + "[3]");
                std::size_t flat =
                    (static_cast<std::size_t>(pi) * def.dim + pj) * def.dim + pk;
                if (def.structure[flat] != 0)
                    detail::fail(epath, "duplicate entry for product (" + std::to_string(pi) +
                                            ", " + std::to_string(pj) + ", " +
                                            std::to_string(pk) + ")");
                def.structure[flat] = v;
            }
            d.algebras.push_back(std::move(def));
        }
    }

    if (const nlohmann::json* arr = detail::opt_member(j, "hopf_algebras", "document")) {
        if (!arr->is_array()) detail::fail("hopf_algebras", "expected an array");
        for (std::size_t i = 0; i < arr->size(); ++i) {
            std::string path = "hopf_algebras[" + std::to_string(i) + "]";
            const nlohmann::json& h = (*arr)[i];
            HopfDef def;
            def.name = detail::get_name(detail::member(h, "name", path), path + ".name");
            detail::check_unique_name(d.hopf_algebras, def.name, path + ".name");
            def.algebra =
                detail::get_name(detail::member(h, "algebra", path), path + ".algebra");
            detail::check_resolves(d.algebras, def.algebra, "algebra", path + ".algebra");
            int dim = detail::find_named(d.algebras, def.algebra, "algebra").dim;
            def.delta = detail::sparse_matrix(detail::member(h, "delta", path), f, dim * dim,
                                              dim, path + ".delta");
            def.counit = detail::sparse_vector(detail::member(h, "counit", path), f, 1, dim,
                                               path + ".counit");
            def.antipode = detail::sparse_matrix(detail::member(h, "antipode", path), f, dim,
                                                 dim, path + ".antipode");
            d.hopf_algebras.push_back(std::move(def));
        }
    }

    if (const nlohmann::json* arr = detail::opt_member(j, "comodule_algebras", "document")) {
        if (!arr->is_array()) detail::fail("comodule_algebras", "expected an array");
        for (std::size_t i = 0; i < arr->size(); ++i) {
            std::string path = "comodule_algebras[" + std::to_string(i) + "]";
            const nlohmann::json& c = (*arr)[i];
            ComoduleDef def;
            def.name = detail::get_name(detail::member(c, "name", path), path + ".name");
            detail::check_unique_name(d.comodule_algebras, def.name, path + ".name");
            def.algebra =
                detail::get_name(detail::member(c, "algebra", path), path + ".algebra");
            detail::check_resolves(d.algebras, def.algebra, "algebra", path + ".algebra");
            def.hopf = detail::get_name(detail::member(c, "hopf", path), path + ".hopf");
            detail::check_resolves(d.hopf_algebras, def.hopf, "hopf algebra", path + ".hopf");
            int da = detail::find_named(d.algebras, def.algebra, "algebra").dim;
            const HopfDef& hd = detail::find_named(d.hopf_algebras, def.hopf, "hopf algebra");
            int dh = detail::find_named(d.algebras, hd.algebra, "algebra").dim;
            def.coaction = detail::sparse_matrix(detail::member(c, "coaction", path), f,
                                                 da * dh, da, path + ".coaction");
            d.comodule_algebras.push_back(std::move(def));
        }
    }

    if (const nlohmann::json* arr = detail::opt_member(j, "bimodules", "document")) {
        if (!arr->is_array()) detail::fail("bimodules", "expected an array");
        for (std::size_t i = 0; i < arr->size(); ++i) {
            std::string path = "bimodules[" + std::to_string(i) + "]";
            const nlohmann::json& b = (*arr)[i];
            BimoduleDef def;
            def.name = detail::get_name(detail::member(b, "name", path), path + ".name");
            detail::check_unique_name(d.bimodules, def.name, path + ".name");
            def.left_algebra = detail::get_name(detail::member(b, "left_algebra", path),
                                                path + ".left_algebra");
            detail::check_resolves(d.algebras, def.left_algebra, "algebra",
                                   path + ".left_algebra");
            def.right_algebra = detail::get_name(detail::member(b, "right_algebra", path),
                                                 path + ".right_algebra");
            detail::check_resolves(d.algebras, def.right_algebra, "algebra",
                                   path + ".right_algebra");
            def.dim = static_cast<int>(detail::get_int(detail::member(b, "dim", path),
                                                       path + ".dim", 0, k_dim_cap));
            cap_dim(def.dim, "bimodule");
            int dl = detail::find_named(d.algebras, def.left_algebra, "algebra").dim;
            int dr = detail::find_named(d.algebras, def.right_algebra, "algebra").dim;
            auto actions = [&](const char* key, int count) {
                std::vector<Mat> out(static_cast<std::size_t>(count),
                                     Mat(f, def.dim, def.dim));
                const nlohmann::json& arr2 = detail::member(b, key, path);
                std::string apath = path + "." + key;
                if (!arr2.is_array())
                    detail::fail(apath, "expected an array of [basis, row, col, value] entries");
                for (std::size_t t = 0; t < arr2.size(); ++t) {
                    const nlohmann::json& e = detail::entry_at(arr2, t, 4, apath);
                    std::string epath = apath + "[" + std::to_string(t) + "]";
                    int bi = static_cast<int>(detail::get_int(e[0], epath + "[0]", 0, count - 1));
                    int r = static_cast<int>(detail::get_int(e[1], epath + "[1]", 0, def.dim - 1));
                    int c = static_cast<int>(detail::get_int(e[2], epath + "[2]", 0, def.dim - 1));
                    std::uint64_t v = detail::get_scalar(e[3], f, epath + "[3]");
                    if (out[static_cast<std::size_t>(bi)].at(r, c) != 0)
                        detail::fail(epath, "duplicate entry");
                    out[static_cast<std::size_t>(bi)].at(r, c) = v;
                }
                return out;
            };
            def.left = actions("left_actions", dl);
            def.right = actions("right_actions", dr);
            d.bimodules.push_back(std::move(def));
        }
    }

    if (const nlohmann::json* arr = detail::opt_member(j, "elements", "document")) {
        if (!arr->is_array()) detail::fail("elements", "expected an array");
        for (std::size_t i = 0; i < arr->size(); ++i) {
            std::string path = "elements[" + std::to_string(i) + "]";
            const nlohmann::json& e = (*arr)[i];
            ElementDef def;
            def.name = detail::get_name(detail::member(e, "name", path), path + ".name");
            detail::check_unique_name(d.elements, def.name, path + ".name");
            def.algebra =
                detail::get_name(detail::member(e, "algebra", path), path + ".algebra");
            detail::check_resolves(d.algebras, def.algebra, "algebra", path + ".algebra");
            int dim = detail::find_named(d.algebras, def.algebra, "algebra").dim;
            def.coords = detail::sparse_vector(detail::member(e, "coords", path), f, dim, 1,
                                               path + ".coords");
            d.elements.push_back(std::move(def));
        }
    }

    if (const nlohmann::json* arr = detail::opt_member(j, "forms", "document")) {
        if (!arr->is_array()) detail::fail("forms", "expected an array");
        for (std::size_t i = 0; i < arr->size(); ++i) {
            std::string path = "forms[" + std::to_string(i) + "]";
            const nlohmann::json& e = (*arr)[i];
            FormDef def;
            def.name = detail::get_name(detail::member(e, "name", path), path + ".name");
            detail::check_unique_name(d.forms, def.name, path + ".name");
            def.algebra =
                detail::get_name(detail::member(e, "algebra", path), path + ".algebra");
            detail::check_resolves(d.algebras, def.algebra, "algebra", path + ".algebra");
            int dim = detail::find_named(d.algebras, def.algebra, "algebra").dim;
            def.coords = detail::sparse_vector(detail::member(e, "coords", path), f, 1, dim,
                                               path + ".coords");
            d.forms.push_back(std::move(def));
        }
    }

    if (const nlohmann::json* arr = detail::opt_member(j, "projectives", "document")) {
        if (!arr->is_array()) detail::fail("projectives", "expected an array");
        for (std::size_t i = 0; i < arr->size(); ++i) {
            std::string path = "projectives[" + std::to_string(i) + "]";
            const nlohmann::json& e = (*arr)[i];
            ProjectiveDef def;
            def.name = detail::get_name(detail::member(e, "name", path), path + ".name");
            detail::check_unique_name(d.projectives, def.name, path + ".name");
            def.algebra =
                detail::get_name(detail::member(e, "algebra", path), path + ".algebra");
            detail::check_resolves(d.algebras, def.algebra, "algebra", path + ".algebra");
            int dim = detail::find_named(d.algebras, def.algebra, "algebra").dim;
            def.rank = static_cast<int>(detail::get_int(detail::member(e, "rank", path),
                                                        path + ".rank", 0, k_dim_cap));
            int amb = def.rank * dim;
            cap_dim(amb, "projective presentation");
            def.idempotent = detail::sparse_matrix(detail::member(e, "idempotent", path), f,
                                                   amb, amb, path + ".idempotent");
            d.projectives.push_back(std::move(def));
        }
    }

    if (const nlohmann::json* arr = detail::opt_member(j, "maps", "document")) {
        if (!arr->is_array()) detail::fail("maps", "expected an array");
        for (std::size_t i = 0; i < arr->size(); ++i) {
            std::string path = "maps[" + std::to_string(i) + "]";
            const nlohmann::json& e = (*arr)[i];
            MapDef def;
            def.name = detail::get_name(detail::member(e, "name", path), path + ".name");
            detail::check_unique_name(d.maps, def.name, path + ".name");
            int rows = static_cast<int>(detail::get_int(detail::member(e, "rows", path),
                                                        path + ".rows", 0, k_dim_cap));
            int cols = static_cast<int>(detail::get_int(detail::member(e, "cols", path),
                                                        path + ".cols", 0, k_dim_cap));
            cap_dim(rows, "map");
            cap_dim(cols, "map");
            def.entries = detail::sparse_matrix(detail::member(e, "entries", path), f, rows,
                                                cols, path + ".entries");
            d.maps.push_back(std::move(def));
        }
    }

    return d;
}

/* Emitter; one sparse entry per line so documents diff cleanly. The output
 * re-parses to an equal Definition. */
namespace detail {

inline void emit_entries(std::string& out, const Mat& m, const char* indent) {
    bool first = true;
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) {
            if (m.at(r, c) == 0) continue;
            if (!first) out += ",\n";
            first = false;
            out += indent;
            out += "[" + std::to_string(r) + ", " + std::to_string(c) + ", " +
                   std::to_string(m.at(r, c)) + "]";
        }
    if (!first) out += "\n";
}

inline void emit_vector(std::string& out, const Mat& m) {
    out += "[";
    bool first = true;
    int n = m.rows() == 1 ? m.cols() : m.rows();
    for (int k = 0; k < n; ++k) {
        std::uint64_t v = m.rows() == 1 ? m.at(0, k) : m.at(k, 0);
        if (v == 0) continue;
        if (!first) out += ", ";
        first = false;
        out += "[" + std::to_string(k) + ", " + std::to_string(v) + "]";
    }
    out += "]";
}

inline void emit_matrix_field(std::string& out, const char* key, const Mat& m,
                              const char* pad) {
    out += pad;
    out += "\"";
    out += key;
    out += "\": [\n";
    emit_entries(out, m, (std::string(pad) + "  ").c_str());
    out += pad;
    out += "]";
}

}  // namespace detail

inline std::string emit_definition(const Definition& d) {
    std::string out;
    out += "{\n";
    out += "  \"schema\": \"" + std::string(k_def_schema) + "\",\n";
    out += "  \"field\": {\"p\": " + std::to_string(d.field.p()) +
           ", \"root_order\": " + std::to_string(d.field.root_order()) + "}";

    auto open_section = [&](const char* key) { out += ",\n  \"" + std::string(key) + "\": [\n"; };
    auto close_section = [&]() { out += "\n  ]"; };
    auto sep = [&](std::size_t i) { if (i) out += ",\n"; };

    if (!d.algebras.empty()) {
        open_section("algebras");
        for (std::size_t i = 0; i < d.algebras.size(); ++i) {
            const AlgebraDef& a = d.algebras[i];
            sep(i);
            out += "    {\n";
            out += "      \"name\": \"" + a.name + "\",\n";
            out += "      \"dim\": " + std::to_string(a.dim) + ",\n";
            out += "      \"unit\": ";
            detail::emit_vector(out, a.unit);
            out += ",\n";
            out += "      \"products\": [\n";
            {
                bool first = true;
                for (int pi = 0; pi < a.dim; ++pi)
                    for (int pj = 0; pj < a.dim; ++pj)
                        for (int pk = 0; pk < a.dim; ++pk) {
                            std::uint64_t v =
                                a.structure[(static_cast<std::size_t>(pi) * a.dim + pj) *
                                                a.dim + pk];
                            if (v == 0) continue;
                            if (!first) out += ",\n";
                            first = false;
                            out += "        [" + std::to_string(pi) + ", " +
                                   std::to_string(pj) + ", " + std::to_string(pk) + ", " +
                                   std::to_string(v) + "]";
                        }
                if (!first) out += "\n";
            }
            out += "      ]\n    }";
        }
        close_section();
    }

    if (!d.hopf_algebras.empty()) {
        open_section("hopf_algebras");
        for (std::size_t i = 0; i < d.hopf_algebras.size(); ++i) {
            const HopfDef& h = d.hopf_algebras[i];
            sep(i);
            out += "    {\n";
            out += "      \"name\": \"" + h.name + "\",\n";
            out += "      \"algebra\": \"" + h.algebra + "\",\n";
            detail::emit_matrix_field(out, "delta", h.delta, "      ");
            out += ",\n";
            out += "      \"counit\": ";
            detail::emit_vector(out, h.counit);
            out += ",\n";
            detail::emit_matrix_field(out, "antipode", h.antipode, "      ");
            out += "\n    }";
        }
        close_section();
    }

    if (!d.comodule_algebras.empty()) {
        open_section("comodule_algebras");
        for (std::size_t i = 0; i < d.comodule_algebras.size(); ++i) {
            const ComoduleDef& c = d.comodule_algebras[i];
            sep(i);
            out += "    {\n";
            out += "      \"name\": \"" + c.name + "\",\n";
            out += "      \"algebra\": \"" + c.algebra + "\",\n";
            out += "      \"hopf\": \"" + c.hopf + "\",\n";
            detail::emit_matrix_field(out, "coaction", c.coaction, "      ");
            out += "\n    }";
        }
        close_section();
    }

    if (!d.bimodules.empty()) {
        open_section("bimodules");
        for (std::size_t i = 0; i < d.bimodules.size(); ++i) {
            const BimoduleDef& b = d.bimodules[i];
            sep(i);
            out += "    {\n";
            out += "      \"name\": \"" + b.name + "\",\n";
            out += "      \"left_algebra\": \"" + b.left_algebra + "\",\n";
            out += "      \"right_algebra\": \"" + b.right_algebra + "\",\n";
            out += "      \"dim\": " + std::to_string(b.dim) + ",\n";
            auto emit_actions = [&](const char* key, const std::vector<Mat>& acts) {
                out += "      \"" + std::string(key) + "\": [\n";
                bool first = true;
                for (std::size_t bi = 0; bi < acts.size(); ++bi)
                    for (int r = 0; r < b.dim; ++r)
                        for (int c = 0; c < b.dim; ++c) {
                            std::uint64_t v = acts[bi].at(r, c);
                            if (v == 0) continue;
                            if (!first) out += ",\n";
                            first = false;
                            out += "        [" + std::to_string(bi) + ", " +
                                   std::to_string(r) + ", " + std::to_string(c) + ", " +
                                   std::to_string(v) + "]";
                        }
                if (!first) out += "\n";
                out += "      ]";
            };
            emit_actions("left_actions", b.left);
            out += ",\n";
            emit_actions("right_actions", b.right);
            out += "\n    }";
        }
        close_section();
    }

    if (!d.elements.empty()) {
        open_section("elements");
        for (std::size_t i = 0; i < d.elements.size(); ++i) {
            const ElementDef& e = d.elements[i];
            sep(i);
            out += "    {\"name\": \"" + e.name + "\", \"algebra\": \"" + e.algebra +
                   "\", \"coords\": ";
            detail::emit_vector(out, e.coords);
            out += "}";
        }
        close_section();
    }

    if (!d.forms.empty()) {
        open_section("forms");
        for (std::size_t i = 0; i < d.forms.size(); ++i) {
            const FormDef& e = d.forms[i];
            sep(i);
            out += "    {\"name\": \"" + e.name + "\", \"algebra\": \"" + e.algebra +
                   "\", \"coords\": ";
            detail::emit_vector(out, e.coords);
            out += "}";
        }
        close_section();
    }

    if (!d.projectives.empty()) {
        open_section("projectives");
        for (std::size_t i = 0; i < d.projectives.size(); ++i) {
            const ProjectiveDef& e = d.projectives[i];
            sep(i);
            out += "    {\n";
            out += "      \"name\": \"" + e.name + "\",\n";
            out += "      \"algebra\": \"" + e.algebra + "\",\n";
            out += "      \"rank\": " + std::to_string(e.rank) + ",\n";
            detail::emit_matrix_field(out, "idempotent", e.idempotent, "      ");
            out += "\n    }";
        }
        close_section();
    }

    if (!d.maps.empty()) {
        open_section("maps");
        for (std::size_t i = 0; i < d.maps.size(); ++i) {
            const MapDef& e = d.maps[i];
            sep(i);
            out += "    {\n";
            out += "      \"name\": \"" + e.name + "\",\n";
            out += "      \"rows\": " + std::to_string(e.entries.rows()) + ",\n";
            out += "      \"cols\": " + std::to_string(e.entries.cols()) + ",\n";
            detail::emit_matrix_field(out, "entries", e.entries, "      ");
            out += "\n    }";
        }
        close_section();
    }

    out += "\n}\n";
    return out;
}

/* Constructs validated library objects from raw declarations on demand,
 * sharing algebra instances so cross references agree. Axiom failures
 * surface as the library's own error types. */
class Instances {
public:
    explicit Instances(const Definition& d) : def_(d) {}

    const Definition& definition() const { return def_; }

    AlgebraPtr algebra(const std::string& name) {
        auto it = algebras_.find(name);
        if (it != algebras_.end()) return it->second;
        const AlgebraDef& a = detail::find_named(def_.algebras, name, "algebra");
        AlgebraPtr built = Algebra::make(def_.field, a.dim, a.structure, a.unit);
        algebras_.emplace(name, built);
        return built;
    }

    HopfPtr hopf(const std::string& name) {
        auto it = hopfs_.find(name);
        if (it != hopfs_.end()) return it->second;
        const HopfDef& h = detail::find_named(def_.hopf_algebras, name, "hopf algebra");
        HopfPtr built = HopfAlgebra::make(algebra(h.algebra), h.delta, h.counit, h.antipode);
        hopfs_.emplace(name, built);
        return built;
    }

    ComodulePtr comodule(const std::string& name) {
        auto it = comodules_.find(name);
        if (it != comodules_.end()) return it->second;
        const ComoduleDef& c =
            detail::find_named(def_.comodule_algebras, name, "comodule algebra");
        ComodulePtr built = ComoduleAlgebra::make(algebra(c.algebra), hopf(c.hopf), c.coaction);
        comodules_.emplace(name, built);
        return built;
    }

    Bimodule bimodule(const std::string& name) {
        const BimoduleDef& b = detail::find_named(def_.bimodules, name, "bimodule");
        return Bimodule::make(algebra(b.left_algebra), algebra(b.right_algebra), b.left,
                              b.right);
    }

    Projective projective(const std::string& name) {
        const ProjectiveDef& p = detail::find_named(def_.projectives, name, "projective");
        return projective_from_idempotent(algebra(p.algebra), p.rank, p.idempotent);
    }

    const ElementDef& element(const std::string& name) const {
        return detail::find_named(def_.elements, name, "element");
    }

    const FormDef& form(const std::string& name) const {
        return detail::find_named(def_.forms, name, "form");
    }

    const MapDef& map(const std::string& name) const {
        return detail::find_named(def_.maps, name, "map");
    }

private:
    const Definition& def_;
    std::map<std::string, AlgebraPtr> algebras_;
    std::map<std::string, HopfPtr> hopfs_;
    std::map<std::string, ComodulePtr> comodules_;
};

/* Raw declarations from live library objects, for emitting documents. */
inline AlgebraDef describe_algebra(std::string name, const AlgebraPtr& a) {
    return AlgebraDef{std::move(name), a->dim(), a->structure(), a->unit()};
}

inline HopfDef describe_hopf(std::string name, std::string algebra_name,
                             const HopfAlgebra& h) {
    return HopfDef{std::move(name), std::move(algebra_name), h.delta(), h.counit(),
                   h.antipode()};
}

inline ComoduleDef describe_comodule(std::string name, std::string algebra_name,
                                     std::string hopf_name, const ComoduleAlgebra& c) {
    return ComoduleDef{std::move(name), std::move(algebra_name), std::move(hopf_name),
                       c.coaction()};
}

inline BimoduleDef describe_bimodule(std::string name, std::string left_name,
                                     std::string right_name, const Bimodule& b) {
    std::vector<Mat> lact, ract;
    for (int i = 0; i < b.left_algebra()->dim(); ++i) lact.push_back(b.left_basis_action(i));
    for (int i = 0; i < b.right_algebra()->dim(); ++i)
        ract.push_back(b.right_basis_action(i));
    return BimoduleDef{std::move(name), std::move(left_name), std::move(right_name),
                       b.dim(), std::move(lact), std::move(ract)};
}

}  // namespace modtrace::io
