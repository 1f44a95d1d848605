// greenrep: batch CLI over the library. Commands: group-info, decompose,
// vertex, green, verify. Exit codes: 0 = all checks pass, 1 = mathematical
// verification failure or undecided, 2 = input error. Reports are
// deterministic given (inputs, seed); the seed is always printed.

#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "greenrep/catalog.hpp"
#include "greenrep/green.hpp"
#include "greenrep/io.hpp"

using namespace greenrep;

namespace {

struct Out {
    bool quiet = false;
    // human-readable lines; suppressed by --quiet
    void human(const std::string& line) const {
        if (!quiet) std::cout << line << "\n";
    }
    // machine-readable key=value trailer lines; always printed
    void kv(const std::string& key, const std::string& value) const {
        std::cout << key << "=" << value << "\n";
    }
    void kv(const std::string& key, u64 value) const { kv(key, std::to_string(value)); }
};

std::string gens_string(const GroupPtr& g) {
    std::string out;
    for (const Perm& s : g->generators()) {
        if (!out.empty()) out += " ";
        out += s.cycle_string();
    }
    return out.empty() ? "()" : out;
}

// ---------------------------------------------------------------- group-info

int cmd_group_info(const std::string& path, u32 prime, u32 max_order, u64 seed, const Out& out) {
    GroupPtr g = load_group(path, max_order);
    out.human("group " + path);
    out.human("  degree " + std::to_string(g->degree()) + ", order " + std::to_string(g->order()));
    out.human("  generators: " + gens_string(g));
    out.kv("seed", seed);
    out.kv("degree", g->degree());
    out.kv("order", g->order());
    out.kv("generators", g->generators().size());
    if (prime) {
        check_prime(prime);
        u32 count = 0;
        for (const Subgroup& s : all_subgroups(Subgroup::whole(g)))
            if (s.order() > 1 && is_p_group(s, prime)) ++count;
        u32 syl = p_part(g->order(), prime);
        out.human("  nontrivial " + std::to_string(prime) + "-subgroups: " + std::to_string(count) +
                  " (Sylow order " + std::to_string(syl) + ")");
        out.kv("p_subgroups", count);
        out.kv("sylow_order", syl);
    }
    return 0;
}

// ----------------------------------------------------------------- decompose

int cmd_decompose(const std::string& gpath, const std::string& mpath, u32 max_order, u64 seed,
                  const Out& out) {
    GroupPtr g = load_group(gpath, max_order);
    ModulePtr m = load_module(mpath, g);
    auto dec = indecomposable_summands(m, seed);
    ClassRegistry reg;
    auto classes = classify(dec, reg, seed);
    out.human("module " + mpath + " over " + gpath + ": dim " + std::to_string(m->dim()) +
              ", GF(" + std::to_string(m->prime()) + ")");
    out.human("  class  dim  mult");
    for (const ClassCount& c : classes) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "  %5u  %3u  %4u", c.class_id,
                      reg.representative(c.class_id)->dim(), c.multiplicity);
        out.human(buf);
    }
    out.kv("seed", seed);
    out.kv("classes", classes.size());
    for (std::size_t i = 0; i < classes.size(); ++i) {
        out.kv("class." + std::to_string(i) + ".dim", reg.representative(classes[i].class_id)->dim());
        out.kv("class." + std::to_string(i) + ".mult", classes[i].multiplicity);
    }
    return 0;
}

// -------------------------------------------------------------------- vertex

int cmd_vertex(const std::string& gpath, const std::string& mpath, u32 max_order, u64 seed,
               const Out& out) {
    GroupPtr g = load_group(gpath, max_order);
    ModulePtr m = load_module(mpath, g);
    auto dec = indecomposable_summands(m, seed);
    if (dec.summands.size() != 1) {
        std::string dims;
        for (const Summand& s : dec.summands) {
            if (!dims.empty()) dims += " ";
            dims += std::to_string(s.module->dim());
        }
        throw InputError("module is decomposable (summand dims: " + dims +
                         "); run decompose and pass one summand");
    }
    VertexReport vr = vertex(m, seed);
    out.human("vertex of " + mpath + " (dim " + std::to_string(m->dim()) + ", GF(" +
              std::to_string(m->prime()) + "))");
    out.human("  vertex order " + std::to_string(vr.vertex.order()) + ", generators: " +
              gens_string(vr.vertex.group));
    out.human("  descent certificate (subgroup order : relatively projective):");
    for (const VertexStep& st : vr.certificate)
        out.human("    " + std::to_string(st.subgroup.order()) + " : " +
                  (st.projective ? "yes" : "no"));
    out.kv("seed", seed);
    out.kv("vertex_order", vr.vertex.order());
    out.kv("vertex_generators", gens_string(vr.vertex.group));
    out.kv("certificate_steps", vr.certificate.size());
    return 0;
}

// --------------------------------------------------------------------- green

void report_pair(const Out& out, const std::string& tag, const GreenPair& gp, const Scenario& s,
                 u64 seed) {
    VertexReport vn = vertex(gp.over_h, seed);
    VertexReport vm = vertex(gp.over_g, seed);
    std::string disc;
    for (const DiscardedSummand& d : gp.discarded) {
        if (!disc.empty()) disc += " ";
        disc += std::to_string(d.module->dim()) + "x" + std::to_string(d.multiplicity) + "(v" +
                std::to_string(d.vertex_order) + ")";
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "  %-12s dim_H=%-3u dim_G=%-3u vtx_H=%-3u vtx_G=%-3u discarded: %s",
                  tag.c_str(), gp.over_h->dim(), gp.over_g->dim(), vn.vertex.order(),
                  vm.vertex.order(), disc.empty() ? "-" : disc.c_str());
    out.human(buf);
    out.kv("pair." + tag + ".dim_h", gp.over_h->dim());
    out.kv("pair." + tag + ".dim_g", gp.over_g->dim());
    out.kv("pair." + tag + ".vertex_h", vn.vertex.order());
    out.kv("pair." + tag + ".vertex_g", vm.vertex.order());
    out.kv("pair." + tag + ".discarded", gp.discarded.size());
    (void)s;
}

int cmd_green(const std::string& spath, const std::string& mpath, u32 max_order, u64 seed,
              const Out& out) {
    LoadedScenario ls = load_scenario(spath, max_order);
    Scenario& s = ls.scenario;
    out.human("scenario " + s.name + ": |G|=" + std::to_string(s.g->order()) + " |H|=" +
              std::to_string(s.h.order()) + " |D|=" + std::to_string(s.d.order()) + " p=" +
              std::to_string(s.p) + " |Y|=" + std::to_string(s.yfam.members.size()) + " |X|=" +
              std::to_string(s.xfam.members.size()));
    DaggerReport dag = check_dagger(s, {}, seed);
    if (!dag.ok) throw VerificationError("condition (dagger) failed for scenario " + s.name);
    out.human("  condition (dagger): ok over " + std::to_string(dag.items.size()) + " test modules");
    std::vector<ModulePtr> basket;
    if (!mpath.empty())
        basket.push_back(load_module(mpath, s.h.group));
    else if (!ls.basket.empty())
        basket = ls.basket;
    else
        basket = harvest_basket(s, 12, seed);
    out.kv("seed", seed);
    out.kv("scenario", s.name);
    out.kv("dagger", "ok");
    out.kv("basket", basket.size());
    u32 idx = 0;
    for (const ModulePtr& n : basket) {
        GreenPair gp = green_g(n, s, seed);
        GreenPair fp = green_f(gp.over_g, s, seed);
        if (!is_isomorphic(fp.over_h, n, seed))
            throw VerificationError("CORRESPONDENCE VIOLATION: f(g(N)) != N for '" + n->label() +
                                    "' — this falsifies the theorem and indicates a bug");
        report_pair(out, "n" + std::to_string(idx++), gp, s, seed);
    }
    out.kv("pairs", basket.size());
    out.kv("verdict", "pass");
    return 0;
}

// -------------------------------------------------------------------- verify

// Small-dimensional test modules over A for Mackey checks: the trivial
// module, heads of the regular module modulo the first two radical layers
// (when the Sylow subgroup of A is normal, so the layers are computable as
// I(P)-cuts), the regular module's own summands, padded with direct sums of
// the trivial module. Everything is capped so dim * [G:A] stays small.
std::vector<ModulePtr> mackey_fixtures(const Subgroup& a, u32 p, u32 index, u64 seed) {
    u32 cap = 48 / std::max<u32>(index, 1);
    if (cap == 0) cap = 1;
    std::vector<ModulePtr> cands;
    cands.push_back(trivial_module(a.group, p));
    ModulePtr ka = regular_module(a.group, p);
    Subgroup pa = sylow(a.group, p);
    bool normal = pa.order() > 1;
    for (const Perm& x : a.group->generators())
        if (!normalizes(x, pa)) normal = false;
    if (normal) {
        auto r1 = detail::radical_cut(ka, pa);
        if (r1.submodule->dim() > 0 && r1.submodule->dim() < ka->dim()) {
            for (const Summand& sm :
                 indecomposable_summands(quotient(ka, r1.inclusion).quotient, seed).summands)
                cands.push_back(sm.module);
            auto r2 = detail::radical_cut(r1.submodule, pa);
            if (r2.submodule->dim() > 0 && r2.submodule->dim() < r1.submodule->dim()) {
                ModuleMap incl2 = r1.inclusion.compose(r2.inclusion);
                for (const Summand& sm :
                     indecomposable_summands(quotient(ka, incl2).quotient, seed).summands)
                    cands.push_back(sm.module);
            }
        }
    }
    for (const Summand& sm : indecomposable_summands(ka, seed).summands) cands.push_back(sm.module);
    std::vector<ModulePtr> out;
    for (const ModulePtr& c : cands) {
        if (c->dim() == 0 || c->dim() > cap || out.size() >= 3) continue;
        bool dup = false;
        for (const ModulePtr& o : out)
            if (o->dim() == c->dim() && is_isomorphic(o, c, seed)) { dup = true; break; }
        if (!dup) out.push_back(c);
    }
    for (u32 copies = 2; out.size() < 3 && copies * out[0]->dim() <= cap; ++copies)
        out.push_back(direct_sum(std::vector<ModulePtr>(copies, out[0])).module);
    return out;
}

Subgroup second_sylow(const GroupPtr& g, const Subgroup& p1) {
    for (const Perm& x : g->elements()) {
        Subgroup c = conjugate_subgroup(p1, x);
        if (!c.same_elements(p1)) return c;
    }
    return p1; // normal (unique) Sylow subgroup
}

void check_cone(const ModuleMap& f, const Subgroup& h, u64 seed, bool canonical_zero,
                bool canonical_id) {
    auto cr = relative_cone(f, h);
    u32 dm = f.source->dim(), dn = f.target->dim();
    u32 index = static_cast<u32>(left_coset_reps(f.source->group(), h).size());
    if (cr.cone->dim() != dn + dm * (index - 1))
        throw VerificationError("cone: dimension formula violated");
    if (rank(cr.c1.matrix) != dn) throw VerificationError("cone: c1 is not injective");
    if (rank(cr.c2.matrix) != cr.omega->dim()) throw VerificationError("cone: c2 is not surjective");
    if (!cr.c2.compose(cr.c1).matrix.is_zero()) throw VerificationError("cone: c2 o c1 != 0");
    // injective c1, surjective c2, zero composite and matching dimensions
    // force im(c1) = ker(c2), so the row is exact; splitting is checked
    // after restriction to h.
    if (!is_relatively_split_epi(cr.c2, h))
        throw VerificationError("cone: sequence does not split after restriction");
    if (canonical_zero) {
        ModulePtr expect = direct_sum({f.target, cr.omega}).module;
        if (!is_isomorphic(cr.cone, expect, seed))
            throw VerificationError("cone: C(0) is not N + Omega^{-1}(M)");
    }
    if (canonical_id && !is_relatively_projective(cr.cone, h).projective)
        throw VerificationError("cone: C(id) is not relatively projective");
}

struct SuiteStats {
    u64 basket = 0, round_trips = 0, stable_pairs = 0, mackey_checks = 0, higman_pairs = 0,
        vertex_checks = 0, cone_checks = 0, split_checks = 0;
};

SuiteStats verify_scenario(Scenario& s, std::vector<ModulePtr> basket, u64 seed, u32 cone_count,
                           u32 vertex_seeds, const Out& out) {
    SuiteStats st;
    out.human("scenario " + s.name + ": |G|=" + std::to_string(s.g->order()) + " |H|=" +
              std::to_string(s.h.order()) + " |D|=" + std::to_string(s.d.order()) + " p=" +
              std::to_string(s.p));

    DaggerReport dag = check_dagger(s, {}, seed);
    if (!dag.ok) throw VerificationError("condition (dagger) failed for scenario " + s.name);
    if (basket.empty()) basket = harvest_basket(s, 12, seed);
    st.basket = basket.size();
    out.human("  dagger ok; basket of " + std::to_string(basket.size()) + " modules");

    // Mackey checks over (A, B) pairs from {H, D, Sylow(G)}
    std::vector<Subgroup> subs = {s.h, s.d, sylow(s.g, s.p)};
    std::vector<Subgroup> uniq;
    for (const Subgroup& a : subs) {
        bool dup = false;
        for (const Subgroup& b : uniq)
            if (a.same_elements(b)) { dup = true; break; }
        if (!dup) uniq.push_back(a);
    }
    for (const Subgroup& a : uniq) {
        u32 index = s.g->order() / a.order();
        auto mods = mackey_fixtures(a, s.p, index, seed);
        for (const Subgroup& b : uniq)
            for (const ModulePtr& m : mods) {
                MackeyReport mr = mackey_check(m, a, b, seed);
                if (!mr.ok) throw VerificationError("Mackey check failed in scenario " + s.name);
                ++st.mackey_checks;
            }
    }
    out.human("  mackey: " + std::to_string(st.mackey_checks) + " checks over " +
              std::to_string(uniq.size() * uniq.size()) + " subgroup pairs");

    // Higman decider agreement (both deciders run inside, disagreement throws)
    // plus the splitting identities p1 o eps = id for every induction built.
    std::vector<ModulePtr> hmods = basket;
    hmods.push_back(trivial_module(s.h.group, s.p));
    std::vector<Subgroup> hsubs = all_subgroups(sylow(s.h.group, s.p));
    hsubs.push_back(Subgroup::whole(s.h.group));
    for (const ModulePtr& m : hmods)
        for (const Subgroup& e : hsubs) {
            is_relatively_projective(m, e);
            ++st.higman_pairs;
            InductionData ind = induce(restrict_module(m, e.group), e);
            ModuleMap eps = unit_map(ind);
            ModuleMap p1 = unit_retraction(ind, eps.target);
            if (!p1.compose(eps).matrix.is_identity())
                throw VerificationError("p1 o eps != id in scenario " + s.name);
            ++st.split_checks;
        }
    out.human("  higman: " + std::to_string(st.higman_pairs) + " (module, subgroup) pairs agree");

    // Vertex conjugacy invariance across Sylow starting points and seeds
    Subgroup p1 = sylow(s.h.group, s.p);
    Subgroup p2 = second_sylow(s.h.group, p1);
    for (const ModulePtr& n : basket) {
        std::vector<Subgroup> vertices;
        for (const Subgroup& start : {p1, p2})
            for (u64 ds = 0; ds < vertex_seeds; ++ds)
                vertices.push_back(vertex_from(n, start, seed + ds).vertex);
        for (std::size_t i = 0; i < vertices.size(); ++i)
            for (std::size_t j = i + 1; j < vertices.size(); ++j)
                if (!conjugate_in(s.h.group, vertices[i], vertices[j]))
                    throw VerificationError("vertex not invariant for '" + n->label() + "'");
        ++st.vertex_checks;
    }
    out.human("  vertex invariance: " + std::to_string(st.vertex_checks) + " basket modules, " +
              std::to_string(2 * vertex_seeds) + " computations each");

    // Round trips f(g(N)) = N and g(f(g(N))) = g(N)
    RoundTripReport rt = verify_round_trip(s, basket, seed);
    if (!rt.ok) throw VerificationError("round trip failed in scenario " + s.name);
    st.round_trips = rt.entries.size();
    out.human("  round trips: " + std::to_string(st.round_trips) + " ok");

    // Stable-hom dimension and map-level agreement over all basket pairs
    for (std::size_t i = 0; i < basket.size(); ++i)
        for (std::size_t j = i; j < basket.size(); ++j) {
            auto rep = stable_hom_correspondence(s, basket[i], basket[j], seed);
            if (!rep.ok) throw VerificationError("stable hom check failed in " + s.name);
            ++st.stable_pairs;
        }
    out.human("  stable homs: " + std::to_string(st.stable_pairs) + " basket pairs, d_H = d_G");

    // Relative triangles: canonical zero/identity cones plus random maps
    std::vector<ModulePtr> pool = {trivial_module(s.g, s.p)};
    for (const Summand& sm : indecomposable_summands(permutation_module(s.g, s.p), seed).summands) {
        bool dup = false;
        for (const ModulePtr& o : pool)
            if (is_isomorphic(o, sm.module, seed)) { dup = true; break; }
        if (!dup) pool.push_back(sm.module);
    }
    ModulePtr t = pool[0];
    check_cone(ModuleMap(t, t, Mat::identity(t->dim(), s.p)), s.h, seed, false, true);
    check_cone(ModuleMap(t, pool.back(), Mat(pool.back()->dim(), t->dim(), s.p)), s.h, seed, true,
               false);
    st.cone_checks = 2;
    std::mt19937_64 rng(seed ^ 0x636f6e65u ^ (u64(s.g->order()) << 20));
    while (st.cone_checks < cone_count) {
        const ModulePtr& m = pool[rng() % pool.size()];
        const ModulePtr& n = pool[rng() % pool.size()];
        Mat phi(n->dim(), m->dim(), s.p);
        for (const ModuleMap& b : hom_space(m, n)) {
            u32 c = static_cast<u32>(rng() % s.p);
            if (c) phi = phi.add(b.matrix.scale(c));
        }
        check_cone(ModuleMap(m, n, phi), s.h, seed, phi.is_zero(), false);
        ++st.cone_checks;
    }
    out.human("  relative triangles: " + std::to_string(st.cone_checks) + " cone sequences exact");

    std::string pre = "scenario." + s.name + ".";
    out.kv(pre + "dagger", "ok");
    out.kv(pre + "basket", st.basket);
    out.kv(pre + "mackey_checks", st.mackey_checks);
    out.kv(pre + "higman_pairs", st.higman_pairs);
    out.kv(pre + "split_checks", st.split_checks);
    out.kv(pre + "vertex_modules", st.vertex_checks);
    out.kv(pre + "round_trips", st.round_trips);
    out.kv(pre + "stable_pairs", st.stable_pairs);
    out.kv(pre + "cone_checks", st.cone_checks);
    out.kv(pre + "verdict", "pass");
    return st;
}

int cmd_verify(const std::vector<std::string>& paths, bool catalog, u32 max_order, u64 seed,
               u32 cone_count, u32 vertex_seeds, const Out& out) {
    if (!catalog && paths.empty())
        throw InputError("verify: pass a scenario file or --catalog");
    out.kv("seed", seed);
    SuiteStats total;
    auto accumulate = [&](const SuiteStats& st) {
        total.basket += st.basket;
        total.round_trips += st.round_trips;
        total.stable_pairs += st.stable_pairs;
        total.mackey_checks += st.mackey_checks;
        total.higman_pairs += st.higman_pairs;
        total.vertex_checks += st.vertex_checks;
        total.cone_checks += st.cone_checks;
        total.split_checks += st.split_checks;
    };
    if (catalog) {
        for (const CatalogEntry& e : catalog_entries()) {
            Scenario s = catalog_scenario(e, max_order);
            accumulate(verify_scenario(s, {}, seed, cone_count, vertex_seeds, out));
        }
    }
    for (const std::string& path : paths) {
        LoadedScenario ls = load_scenario(path, max_order);
        accumulate(verify_scenario(ls.scenario, ls.basket, seed, cone_count, vertex_seeds, out));
    }
    out.human("all checks passed");
    out.kv("round_trips", total.round_trips);
    out.kv("mackey_checks", total.mackey_checks);
    out.kv("higman_pairs", total.higman_pairs);
    out.kv("verify", "pass");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Green correspondence engine for group algebras kG in characteristic p"};
    app.require_subcommand(1);
    app.fallthrough(); // allow global flags (--seed etc.) after the subcommand

    u64 seed = 42;
    bool quiet = false;
    u32 max_order = kDefaultOrderCap;
    app.add_option("--seed", seed, "RNG seed for decomposition searches")->capture_default_str();
    app.add_flag("--quiet", quiet, "suppress human-readable output (key=value lines remain)");
    app.add_option("--max-order", max_order, "group order cap for enumeration")
        ->capture_default_str();

    std::function<int(const Out&)> task;

    auto* gi = app.add_subcommand("group-info", "print order and generators of a .grp file");
    static std::string gi_path;
    static u32 gi_prime = 0;
    gi->add_option("group", gi_path, "path to a .grp file")->required();
    gi->add_option("--prime", gi_prime, "also count nontrivial p-subgroups for this prime");
    gi->callback([&] {
        task = [&](const Out& o) { return cmd_group_info(gi_path, gi_prime, max_order, seed, o); };
    });

    auto* dc = app.add_subcommand("decompose", "decompose a .mod file into indecomposables");
    static std::string dc_gpath, dc_mpath;
    dc->add_option("group", dc_gpath, "path to a .grp file")->required();
    dc->add_option("module", dc_mpath, "path to a .mod file")->required();
    dc->callback([&] {
        task = [&](const Out& o) { return cmd_decompose(dc_gpath, dc_mpath, max_order, seed, o); };
    });

    auto* vx = app.add_subcommand("vertex", "compute the vertex of an indecomposable module");
    static std::string vx_gpath, vx_mpath;
    vx->add_option("group", vx_gpath, "path to a .grp file")->required();
    vx->add_option("module", vx_mpath, "path to a .mod file")->required();
    vx->callback([&] {
        task = [&](const Out& o) { return cmd_vertex(vx_gpath, vx_mpath, max_order, seed, o); };
    });

    auto* gr = app.add_subcommand("green", "run the Green correspondence over a scenario");
    static std::string gr_spath, gr_mpath;
    gr->add_option("scenario", gr_spath, "path to a .scn file")->required();
    gr->add_option("module", gr_mpath, "optional .mod file over H (default: scenario basket)");
    gr->callback([&] {
        task = [&](const Out& o) { return cmd_green(gr_spath, gr_mpath, max_order, seed, o); };
    });

    auto* vf = app.add_subcommand("verify", "run the full verification suite");
    static std::vector<std::string> vf_paths;
    static bool vf_catalog = false;
    static u32 vf_cones = 10, vf_vseeds = 2;
    vf->add_option("scenario", vf_paths, "paths to .scn files");
    vf->add_flag("--catalog", vf_catalog, "run all built-in scenarios");
    vf->add_option("--cones", vf_cones, "relative-triangle checks per scenario")
        ->capture_default_str();
    vf->add_option("--vertex-seeds", vf_vseeds, "seeds per Sylow start in the vertex check")
        ->capture_default_str();
    vf->callback([&] {
        task = [&](const Out& o) {
            return cmd_verify(vf_paths, vf_catalog, max_order, seed, vf_cones, vf_vseeds, o);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2; // usage problems are input errors
    }

    Out out{quiet};
    try {
        return task(out);
    } catch (const InputError& e) {
        std::cout << "input error: " << e.what() << "\n";
        std::cout << "verdict=input-error\n";
        return 2;
    } catch (const ResourceError& e) {
        std::cout << "input error (resource cap): " << e.what() << "\n";
        std::cout << "verdict=input-error\n";
        return 2;
    } catch (const UndecidedError& e) {
        std::cout << "undecided: " << e.what() << "\n";
        std::cout << "seed=" << seed << "\n";
        std::cout << "verdict=undecided\n";
        return 1;
    } catch (const VerificationError& e) {
        std::cout << "VERIFICATION FAILURE: " << e.what() << "\n";
        std::cout << "seed=" << seed << "\n";
        std::cout << "verdict=fail\n";
        return 1;
    }
}
