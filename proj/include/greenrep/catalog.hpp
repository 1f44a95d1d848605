#pragma once

// Built-in verification scenarios. These mirror the .scn files shipped under
// data/ but are constructed in code so the CLI's --catalog mode has no file
// dependencies and the acceptance run is self-contained.

#include <string>
#include <vector>

#include "green.hpp"
#include "grp.hpp"

namespace greenrep {

struct CatalogEntry {
    std::string name;
    u32 prime;
    u32 degree;
    std::vector<std::string> group_gens;
    std::vector<std::string> h_gens;
    std::vector<std::string> d_gens;
};

inline const std::vector<CatalogEntry>& catalog_entries() {
    static const std::vector<CatalogEntry> entries = {
        // S_3, p = 2: D = H = <(0 1)>, trivial intersection with its conjugates
        {"s3_p2", 2, 3, {"(0 1 2)", "(0 1)"}, {"(0 1)"}, {"(0 1)"}},
        // S_4, p = 3: D = C_3, H = N_G(D) = S_3 on {0,1,2}
        {"s4_p3", 3, 4, {"(0 1 2 3)", "(0 1)"}, {"(0 1 2)", "(0 1)"}, {"(0 1 2)"}},
        // S_4, p = 2: D = H = a Sylow 2-subgroup (dihedral of order 8)
        {"s4_p2", 2, 4, {"(0 1 2 3)", "(0 1)"}, {"(0 1 2 3)", "(0 2)"}, {"(0 1 2 3)", "(0 2)"}},
        // A_4, p = 2, H = G: degenerate case with empty families
        {"a4_p2_degenerate", 2, 4, {"(0 1 2)", "(1 2 3)"}, {"(0 1 2)", "(1 2 3)"},
         {"(0 1)(2 3)", "(0 2)(1 3)"}},
        // S_5, p = 5: D = C_5, H = N_G(D) = F_20
        {"f20_in_s5_p5", 5, 5, {"(0 1 2 3 4)", "(0 1)"}, {"(0 1 2 3 4)", "(1 2 4 3)"},
         {"(0 1 2 3 4)"}},
    };
    return entries;
}

inline std::vector<std::string> catalog_names() {
    std::vector<std::string> out;
    for (const CatalogEntry& e : catalog_entries()) out.push_back(e.name);
    return out;
}

inline Scenario catalog_scenario(const CatalogEntry& e, u32 order_cap = kDefaultOrderCap) {
    std::vector<Perm> ggens, hgens, dgens;
    for (const std::string& s : e.group_gens) ggens.push_back(Perm::parse_cycles(s, e.degree));
    for (const std::string& s : e.h_gens) hgens.push_back(Perm::parse_cycles(s, e.degree));
    for (const std::string& s : e.d_gens) dgens.push_back(Perm::parse_cycles(s, e.degree));
    GroupPtr g = PermGroup::enumerate(e.degree, ggens, order_cap);
    Subgroup h = Subgroup::generated(g, hgens, order_cap);
    Subgroup d = Subgroup::generated(g, dgens, order_cap);
    return build_scenario(g, e.prime, d, h, e.name);
}

inline Scenario catalog_scenario(const std::string& name, u32 order_cap = kDefaultOrderCap) {
    for (const CatalogEntry& e : catalog_entries())
        if (e.name == name) return catalog_scenario(e, order_cap);
    throw InputError("unknown catalog scenario '" + name + "'");
}

} // namespace greenrep
