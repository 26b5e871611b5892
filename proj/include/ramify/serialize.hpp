#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ramify/character.hpp"
#include "ramify/conductor.hpp"
#include "ramify/constant.hpp"
#include "ramify/counting.hpp"
#include "ramify/group.hpp"
#include "ramify/ramification.hpp"

namespace ramify {

using Json = nlohmann::json;  // std::map objects: keys always sorted

// ---------------------------------------------------------------------------
// Loading

inline std::vector<Element> element_list(const Json& j, const char* what) {
    if (!j.is_array()) throw ComputationError(std::string(what) + " must be an array of element indices");
    std::vector<Element> out;
    for (const auto& x : j) {
        if (!x.is_number_integer() || x.get<std::int64_t>() < 0)
            throw ComputationError(std::string(what) + " must hold nonnegative integers");
        out.push_back(x.get<Element>());
    }
    return out;
}

inline Rational rational_from_json(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw ComputationError("rational values must be strings \"p/q\" or integers");
}

/// {"kind":"named","name":...} | {"kind":"table","table":[[...]]} |
/// {"kind":"perm","degree":d,"generators":[[...]]}
inline FiniteGroup load_group(const Json& spec, std::size_t order_bound = kDefaultOrderBound) {
    if (!spec.is_object() || !spec.contains("kind")) throw ComputationError("group spec needs a \"kind\" field");
    const auto kind = spec.at("kind").get<std::string>();
    const std::string name = spec.value("name", std::string{});
    if (kind == "named") return named_group(name);
    if (kind == "table") {
        FiniteGroup::Table table;
        for (const auto& row : spec.at("table")) table.push_back(element_list(row, "table row"));
        if (spec.contains("order") && spec.at("order").get<std::size_t>() != table.size())
            throw ComputationError("declared order differs from the table size");
        if (table.size() > order_bound) throw ComputationError("group order exceeds the bound");
        return FiniteGroup::from_table(std::move(table), name);
    }
    if (kind == "perm") {
        const auto degree = spec.at("degree").get<std::size_t>();
        std::vector<Permutation> gens;
        for (const auto& g : spec.at("generators")) gens.push_back(element_list(g, "generator"));
        return group_from_permutations(degree, gens, name, order_bound);
    }
    throw ComputationError("unknown group spec kind '" + kind + "'");
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ComputationError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ComputationError("malformed JSON in " + path + ": " + e.what());
    }
}

/// A preset name, or a path to a group-spec JSON file.
inline FiniteGroup resolve_group(const std::string& arg, std::size_t order_bound = kDefaultOrderBound) {
    if (arg.size() > 5 && arg.substr(arg.size() - 5) == ".json") return load_group(read_json_file(arg), order_bound);
    return named_group(arg);
}

/// {"inertia":[...], "tame_generator":g, "chain":[{"start":"1","group":[...]}, ...]}
/// or {"tame_element": g}.
inline RamificationDatum load_datum(const Json& spec, const FiniteGroup& g) {
    if (spec.contains("tame_element")) return make_tame_datum(g, spec.at("tame_element").get<Element>());
    std::vector<WildSegment> chain;
    for (const auto& s : spec.at("chain"))
        chain.push_back({rational_from_json(s.at("start")), element_list(s.at("group"), "chain group")});
    std::optional<Element> gen;
    if (spec.contains("tame_generator")) gen = spec.at("tame_generator").get<Element>();
    return make_datum(g, element_list(spec.at("inertia"), "inertia"), std::move(chain), gen);
}

// ---------------------------------------------------------------------------
// JSON emission

inline Json to_json(const Rational& q) { return to_string(q); }

inline Json to_json(const Cyclotomic& x) {
    Json coeffs = Json::array();
    for (const auto& c : x.coefficients()) coeffs.push_back(to_string(c));
    return {{"level", x.level()}, {"coeffs", coeffs}};
}

inline Json to_json(const std::vector<Rational>& v) {
    Json out = Json::array();
    for (const auto& q : v) out.push_back(to_string(q));
    return out;
}

inline Json to_json(const RamificationType& t) {
    return {{"id", t.id},
            {"e", t.e},
            {"representative", t.representative},
            {"class_orbit", t.class_orbit},
            {"stabilizer_A", t.stabilizer_A},
            {"index_U_A", t.index_U_A}};
}

inline Json to_json(const std::vector<RamificationType>& types) {
    Json out = Json::array();
    for (const auto& t : types) out.push_back(to_json(t));
    return out;
}

inline Json group_summary(const FiniteGroup& g) {
    Json classes = Json::array();
    for (const auto& c : g.classes())
        classes.push_back({{"id", c.id},
                           {"size", c.size()},
                           {"representative", c.representative},
                           {"element_order", c.element_order}});
    return {{"name", g.name()}, {"order", g.order()}, {"exponent", g.exponent()}, {"classes", classes}};
}

inline Json to_json(const Character& chi) {
    Json values = Json::array();
    for (const auto& v : chi.values) values.push_back(to_json(v));
    return values;
}

inline Json to_json(const CharacterTable& t) {
    Json rows = Json::array();
    for (const auto& r : t.rows) rows.push_back(to_json(r));
    return {{"group", group_summary(t.group)}, {"prime", t.prime}, {"rows", rows}};
}

inline Json to_json(const ConductorMatrix& m) {
    Json entries = Json::array();
    for (const auto& row : m.entries) entries.push_back(to_json(row));
    Json chars = Json::array();
    for (const auto& c : m.characters) chars.push_back(to_json(c));
    return {{"group", m.group.name()},
            {"profile", m.profile.label},
            {"types", to_json(m.types)},
            {"characters", chars},
            {"entries", entries},
            {"determinant", to_string(m.determinant)}};
}

inline Json to_json(const LocalFactor& f) {
    return {{"prime", f.prime}, {"norm", f.norm}, {"primes_above", f.primes_above}, {"b", to_string(f.b)},
            {"c", to_json(f.c)}};
}

inline Json to_json(const ConstantEstimate& c) {
    return {{"value", c.value},
            {"error_bound", c.error_bound},
            {"residues", c.residues},
            {"residue_errors", c.residue_errors},
            {"finite_product", c.finite_product},
            {"tail_product", c.tail_product},
            {"wild_factor", c.wild_factor},
            {"E0", c.e0},
            {"caveats", c.caveats}};
}

// ---------------------------------------------------------------------------
// CSV and text helpers

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string csv() const {
        std::ostringstream out;
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_escape(cells[i]);
            out << "\n";
        };
        line(header);
        for (const auto& r : rows) line(r);
        return out.str();
    }

    /// Left-aligned columns separated by two spaces.
    std::string text() const {
        std::vector<std::size_t> width(header.size(), 0);
        auto measure = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size() && i < width.size(); ++i)
                width[i] = std::max(width[i], cells[i].size());
        };
        measure(header);
        for (const auto& r : rows) measure(r);
        std::ostringstream out;
        auto line = [&](const std::vector<std::string>& cells) {
            std::string s;
            for (std::size_t i = 0; i < cells.size(); ++i) {
                s += cells[i];
                if (i + 1 < cells.size()) s += std::string(width[i] - cells[i].size() + 2, ' ');
            }
            out << s << "\n";
        };
        line(header);
        for (const auto& r : rows) line(r);
        return out.str();
    }
};

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
    return out;
}

template <class T>
std::string join_numbers(const std::vector<T>& v, const std::string& sep = " ") {
    std::vector<std::string> parts;
    for (const auto& x : v) parts.push_back(std::to_string(x));
    return join(parts, sep);
}

}  // namespace ramify
