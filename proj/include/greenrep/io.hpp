#pragma once

// Strict line-oriented parsers for the three file formats (.grp, .mod, .scn)
// and the loaders that resolve them into library objects. Unknown lines,
// out-of-range values, and missing sections are input errors; nothing is
// silently defaulted.

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "green.hpp"
#include "grp.hpp"
#include "repmod.hpp"

namespace greenrep {

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) out.push_back(trim(line));
    return out;
}

inline u32 parse_u32(const std::string& s, const std::string& what) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw InputError("expected a nonnegative integer for " + what + ", got '" + s + "'");
    unsigned long long v = 0;
    try {
        v = std::stoull(s);
    } catch (const std::exception&) {
        throw InputError("integer out of range for " + what + ": '" + s + "'");
    }
    if (v > 0xffffffffull) throw InputError("integer out of range for " + what + ": '" + s + "'");
    return static_cast<u32>(v);
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace detail

// .grp: `degree N`, then `gen (a b)(c d)` lines (identity as `gen ()`).
inline GroupPtr parse_group(const std::string& text, u32 order_cap = kDefaultOrderCap) {
    auto lines = detail::split_lines(text);
    std::optional<u32> degree;
    std::vector<Perm> gens;
    for (const std::string& line : lines) {
        if (line.empty()) continue;
        if (line.rfind("degree ", 0) == 0) {
            if (degree) throw InputError(".grp: duplicate degree line");
            degree = detail::parse_u32(detail::trim(line.substr(7)), "degree");
            continue;
        }
        if (line.rfind("gen ", 0) == 0 || line == "gen") {
            if (!degree) throw InputError(".grp: gen line before degree line");
            std::string cyc = line.size() > 4 ? detail::trim(line.substr(4)) : "";
            if (cyc.empty()) throw InputError(".grp: gen line without a permutation");
            gens.push_back(Perm::parse_cycles(cyc, *degree));
            continue;
        }
        throw InputError(".grp: unrecognized line '" + line + "'");
    }
    if (!degree) throw InputError(".grp: missing degree line");
    return PermGroup::enumerate(*degree, gens, order_cap);
}

inline GroupPtr load_group(const std::filesystem::path& path, u32 order_cap = kDefaultOrderCap) {
    return parse_group(detail::read_file(path), order_cap);
}

// .mod: `prime P`, `dim D`, then one `mat` block of D x D entries per group
// generator, in generator order.
inline ModulePtr parse_module(const std::string& text, const GroupPtr& g, const std::string& label) {
    auto lines = detail::split_lines(text);
    std::size_t i = 0;
    auto next_line = [&]() -> std::optional<std::string> {
        while (i < lines.size() && lines[i].empty()) ++i;
        if (i == lines.size()) return std::nullopt;
        return lines[i++];
    };
    auto expect = [&](const std::string& key) {
        auto line = next_line();
        if (!line || line->rfind(key + " ", 0) != 0)
            throw InputError(".mod: expected '" + key + "' line" + (line ? ", got '" + *line + "'" : ""));
        return detail::trim(line->substr(key.size() + 1));
    };
    u32 p = detail::parse_u32(expect("prime"), "prime");
    check_prime(p);
    u32 d = detail::parse_u32(expect("dim"), "dim");
    std::vector<Mat> act;
    for (std::size_t gi = 0; gi < g->generators().size(); ++gi) {
        auto head = next_line();
        if (!head || *head != "mat")
            throw InputError(".mod: expected 'mat' block " + std::to_string(gi + 1) + " of " +
                             std::to_string(g->generators().size()));
        Mat a(d, d, p);
        for (u32 r = 0; r < d; ++r) {
            auto row = next_line();
            if (!row) throw InputError(".mod: truncated mat block");
            std::istringstream in(*row);
            std::string tok;
            u32 c = 0;
            while (in >> tok) {
                if (c >= d) throw InputError(".mod: too many entries in a matrix row");
                u32 v = detail::parse_u32(tok, "matrix entry");
                if (v >= p) throw InputError(".mod: matrix entry " + tok + " not reduced mod " +
                                             std::to_string(p));
                a(r, c++) = v;
            }
            if (c != d) throw InputError(".mod: matrix row has " + std::to_string(c) +
                                         " entries, expected " + std::to_string(d));
        }
        act.push_back(std::move(a));
    }
    if (next_line()) throw InputError(".mod: trailing content after the last matrix");
    return Module::make(g, p, std::move(act), label);
}

inline ModulePtr load_module(const std::filesystem::path& path, const GroupPtr& g) {
    return parse_module(detail::read_file(path), g, path.stem().string());
}

// .scn: `prime P`, `group FILE.grp`, `subgroup_h g1; g2; ...`,
// `vertex_d g1; g2; ...`, optional `basket auto|FILE.mod,...`.
struct ScenarioText {
    u32 prime = 0;
    std::string group_file;
    std::string h_gens;
    std::string d_gens;
    std::string basket = "auto";
};

inline ScenarioText parse_scenario(const std::string& text) {
    ScenarioText out;
    bool saw_prime = false, saw_group = false, saw_h = false, saw_d = false, saw_basket = false;
    for (const std::string& line : detail::split_lines(text)) {
        if (line.empty()) continue;
        auto value_of = [&](const std::string& key) { return detail::trim(line.substr(key.size() + 1)); };
        if (line.rfind("prime ", 0) == 0) {
            if (saw_prime) throw InputError(".scn: duplicate prime line");
            out.prime = detail::parse_u32(value_of("prime"), "prime");
            saw_prime = true;
        } else if (line.rfind("group ", 0) == 0) {
            if (saw_group) throw InputError(".scn: duplicate group line");
            out.group_file = value_of("group");
            saw_group = true;
        } else if (line.rfind("subgroup_h ", 0) == 0) {
            if (saw_h) throw InputError(".scn: duplicate subgroup_h line");
            out.h_gens = value_of("subgroup_h");
            saw_h = true;
        } else if (line.rfind("vertex_d ", 0) == 0) {
            if (saw_d) throw InputError(".scn: duplicate vertex_d line");
            out.d_gens = value_of("vertex_d");
            saw_d = true;
        } else if (line.rfind("basket ", 0) == 0) {
            if (saw_basket) throw InputError(".scn: duplicate basket line");
            out.basket = value_of("basket");
            saw_basket = true;
        } else {
            throw InputError(".scn: unrecognized line '" + line + "'");
        }
    }
    if (!saw_prime) throw InputError(".scn: missing prime line");
    if (!saw_group) throw InputError(".scn: missing group line");
    if (!saw_h) throw InputError(".scn: missing subgroup_h line");
    if (!saw_d) throw InputError(".scn: missing vertex_d line");
    check_prime(out.prime);
    return out;
}

inline std::vector<Perm> parse_generator_list(const std::string& spec, u32 degree) {
    std::vector<Perm> out;
    std::string cur;
    std::istringstream in(spec);
    while (std::getline(in, cur, ';')) {
        cur = detail::trim(cur);
        if (cur.empty()) throw InputError("empty generator in list '" + spec + "'");
        out.push_back(Perm::parse_cycles(cur, degree));
    }
    if (out.empty()) throw InputError("empty generator list");
    return out;
}

struct LoadedScenario {
    Scenario scenario;
    std::vector<ModulePtr> basket; // empty means "auto": harvest at use time
    bool basket_auto = true;
};

inline LoadedScenario load_scenario(const std::filesystem::path& path,
                                    u32 order_cap = kDefaultOrderCap) {
    ScenarioText st = parse_scenario(detail::read_file(path));
    std::filesystem::path dir = path.parent_path();
    GroupPtr g = load_group(dir / st.group_file, order_cap);
    Subgroup h = Subgroup::generated(g, parse_generator_list(st.h_gens, g->degree()), order_cap);
    Subgroup d = Subgroup::generated(g, parse_generator_list(st.d_gens, g->degree()), order_cap);
    Scenario s = build_scenario(g, st.prime, d, h, path.stem().string());
    LoadedScenario out{std::move(s), {}, true};
    if (st.basket != "auto") {
        out.basket_auto = false;
        std::string item;
        std::istringstream in(st.basket);
        while (std::getline(in, item, ',')) {
            item = detail::trim(item);
            if (item.empty()) throw InputError(".scn: empty basket entry");
            out.basket.push_back(load_module(dir / item, out.scenario.h.group));
        }
        if (out.basket.empty()) throw InputError(".scn: basket list is empty");
    }
    return out;
}

} // namespace greenrep
