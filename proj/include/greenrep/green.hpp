#pragma once

// The Green correspondence: scenario construction with the families Y and X,
// the finite-basket check of condition (dagger), the correspondents f and g
// with their uniqueness law, round-trip verification, and the stable-hom
// comparison between the two sides.

#include <string>
#include <utility>
#include <vector>

#include "adjfun.hpp"
#include "decomp.hpp"
#include "errors.hpp"
#include "relhom.hpp"
#include "repmod.hpp"

namespace greenrep {

struct Scenario {
    std::string name;
    GroupPtr g;
    u32 p;
    Subgroup d;        // p-subgroup of G
    Subgroup h;        // N_G(D) <= H <= G
    Subgroup d_in_h;   // D viewed as a subgroup of H
    SubgroupFamily yfam; // {H n gDg^-1 : g in G \ H}, closed, over H
    SubgroupFamily xfam; // {D n gDg^-1 : g in G \ H}, closed, over G
    bool d_is_p_group = false;
    bool h_contains_normalizer = false;
    bool dagger_checked = false;
};

// The families are built by scanning every g outside H; closure and
// conjugacy deduplication happen inside SubgroupFamily::closure.
inline Scenario build_scenario(const GroupPtr& g, u32 p, const Subgroup& d, const Subgroup& h,
                               std::string name = "scenario") {
    check_prime(p);
    require_subgroup(g, d);
    require_subgroup(g, h);
    if (!is_p_group(d, p)) throw InputError("scenario: D is not a p-group");
    if (!d.subset_of(h)) throw InputError("scenario: D is not contained in H");
    if (!normalizer(g, d).subset_of(h)) throw InputError("scenario: H does not contain N_G(D)");
    Subgroup d_in_h(h.group, d.group);
    std::vector<Subgroup> yseeds, xseeds;
    for (const Perm& x : g->elements()) {
        if (h.contains(x)) continue;
        Subgroup gd = conjugate_subgroup(d, x);
        yseeds.emplace_back(h.group, intersect(h, gd).group);
        xseeds.push_back(intersect(d, gd));
    }
    SubgroupFamily yfam = SubgroupFamily::closure(h.group, yseeds);
    SubgroupFamily xfam = SubgroupFamily::closure(g, xseeds);
    return Scenario{std::move(name), g,    p,    d,    h,    std::move(d_in_h),
                    std::move(yfam), std::move(xfam), true, true, false};
}

struct DaggerItem {
    ModulePtr w;
    u32 y0_dim = 0;
    std::vector<std::pair<u32, bool>> final_summands; // (dim, yfam-projective)
};

struct DaggerReport {
    bool ok = true;
    std::vector<DaggerItem> items;
};

// Finite-basket verification of (dagger): for each test kD-module W, strip
// W^H to its yfam-projective part Y0, push Y0 through T S S' T' (decomposing
// after every stage and processing one representative per isomorphism class),
// and require every resulting indecomposable to be yfam-projective again.
inline DaggerReport check_dagger(Scenario& s, std::vector<ModulePtr> basket = {}, u64 seed = 42) {
    if (basket.empty())
        basket = {trivial_module(s.d.group, s.p), regular_module(s.d.group, s.p)};
    DaggerReport rep;
    auto class_reps = [&](const std::vector<ModulePtr>& mods) {
        std::vector<ModulePtr> out;
        for (const ModulePtr& m : mods) {
            if (m->dim() == 0) continue;
            bool seen = false;
            for (const ModulePtr& o : out)
                if (is_isomorphic(o, m, seed)) { seen = true; break; }
            if (!seen) out.push_back(m);
        }
        return out;
    };
    auto split = [&](const ModulePtr& m) {
        std::vector<ModulePtr> out;
        for (const Summand& sm : indecomposable_summands(m, seed).summands) out.push_back(sm.module);
        return class_reps(out);
    };
    for (const ModulePtr& w : basket) {
        DaggerItem item{w, 0, {}};
        std::vector<ModulePtr> y0;
        for (const ModulePtr& m : split(induce(w, s.d_in_h).induced))
            if (is_family_projective(m, s.yfam)) {
                y0.push_back(m);
                item.y0_dim += m->dim();
            }
        std::vector<ModulePtr> stage = y0;
        // T' then S' then S then T, decomposing between stages
        std::vector<ModulePtr> next;
        for (const ModulePtr& m : stage)
            for (const ModulePtr& z : split(restrict_module(m, s.d.group)))
                next.push_back(z);
        stage = class_reps(next);
        next.clear();
        for (const ModulePtr& m : stage)
            for (const ModulePtr& z : split(induce(m, s.d_in_h).induced)) next.push_back(z);
        stage = class_reps(next);
        next.clear();
        for (const ModulePtr& m : stage)
            for (const ModulePtr& z : split(induce(m, s.h).induced)) next.push_back(z);
        stage = class_reps(next);
        next.clear();
        for (const ModulePtr& m : stage)
            for (const ModulePtr& z : split(restrict_module(m, s.h.group))) next.push_back(z);
        stage = class_reps(next);
        for (const ModulePtr& m : stage) {
            bool ok = is_family_projective(m, s.yfam);
            item.final_summands.emplace_back(m->dim(), ok);
            if (!ok) rep.ok = false;
        }
        rep.items.push_back(std::move(item));
    }
    if (rep.ok) s.dagger_checked = true;
    return rep;
}

struct DiscardedSummand {
    ModulePtr module;
    u32 multiplicity = 0;
    u32 vertex_order = 0;
};

struct GreenPair {
    ModulePtr over_h;
    ModulePtr over_g;
    bool via_induction; // true: produced by green_g, false: by green_f
    ModulePtr transported; // n^G resp. m|_H
    Summand surviving;     // the correspondent inside `transported`
    std::vector<DiscardedSummand> discarded;
};

namespace detail {

// Decide family projectivity of a certified-indecomposable summand twice:
// joint trace system, and vertex subconjugacy into the family. The verdicts
// must agree.
inline bool family_projective_checked(const ModulePtr& m, const SubgroupFamily& fam,
                                      const GroupPtr& over, u64 seed, u32& vertex_order) {
    bool ftest = is_family_projective(m, fam);
    VertexReport vr = vertex(m, seed);
    vertex_order = vr.vertex.order();
    bool vtest = false;
    for (const Subgroup& e : fam.members)
        if (is_subconjugate(over, vr.vertex, e)) { vtest = true; break; }
    if (ftest != vtest)
        throw VerificationError("family-projectivity deciders disagree on '" + m->label() + "'");
    return ftest;
}

inline std::vector<DiscardedSummand> group_discarded(const std::vector<std::pair<ModulePtr, u32>>& dropped,
                                                     u64 seed) {
    std::vector<DiscardedSummand> out;
    for (const auto& [m, vo] : dropped) {
        bool merged = false;
        for (DiscardedSummand& d : out)
            if (d.module->dim() == m->dim() && d.vertex_order == vo && is_isomorphic(d.module, m, seed)) {
                ++d.multiplicity;
                merged = true;
                break;
            }
        if (!merged) out.push_back({m, 1, vo});
    }
    return out;
}

} // namespace detail

// g(N): the unique non-xfam-projective indecomposable summand of N^G.
inline GreenPair green_g(const ModulePtr& n, const Scenario& s, u64 seed = 42) {
    if (n->group() != s.h.group) throw InputError("green_g: module is not over H");
    VertexReport vn = vertex(n, seed); // throws if decomposable
    if (!conjugate_in(s.g, Subgroup(s.g, vn.vertex.group), s.d))
        throw InputError("green_g: vertex of N is not conjugate to D");
    auto ind = induce(n, s.h);
    auto dec = indecomposable_summands(ind.induced, seed);
    std::vector<Summand> survivors;
    std::vector<std::pair<ModulePtr, u32>> dropped;
    for (const Summand& sm : dec.summands) {
        u32 vo = 0;
        if (detail::family_projective_checked(sm.module, s.xfam, s.g, seed, vo))
            dropped.emplace_back(sm.module, vo);
        else
            survivors.push_back(sm);
    }
    if (survivors.size() != 1)
        throw VerificationError("green_g: " + std::to_string(survivors.size()) +
                                " non-xfam-projective summands of '" + n->label() + "^G' (expected 1)");
    VertexReport vs = vertex(survivors[0].module, seed);
    if (!conjugate_in(s.g, vs.vertex, s.d))
        throw VerificationError("green_g: vertex of g(N) is not conjugate to D");
    return GreenPair{n,        survivors[0].module,        true, ind.induced,
                     survivors[0], detail::group_discarded(dropped, seed)};
}

// f(M): the unique non-yfam-projective indecomposable summand of M|_H.
inline GreenPair green_f(const ModulePtr& m, const Scenario& s, u64 seed = 42) {
    if (m->group() != s.g) throw InputError("green_f: module is not over G");
    VertexReport vm = vertex(m, seed);
    if (!conjugate_in(s.g, vm.vertex, s.d))
        throw InputError("green_f: vertex of M is not conjugate to D");
    ModulePtr down = restrict_module(m, s.h.group);
    auto dec = indecomposable_summands(down, seed);
    std::vector<Summand> survivors;
    std::vector<std::pair<ModulePtr, u32>> dropped;
    for (const Summand& sm : dec.summands) {
        u32 vo = 0;
        if (detail::family_projective_checked(sm.module, s.yfam, s.h.group, seed, vo))
            dropped.emplace_back(sm.module, vo);
        else
            survivors.push_back(sm);
    }
    if (survivors.size() != 1)
        throw VerificationError("green_f: " + std::to_string(survivors.size()) +
                                " non-yfam-projective summands of '" + m->label() + "|_H' (expected 1)");
    VertexReport vs = vertex(survivors[0].module, seed);
    if (!conjugate_in(s.g, Subgroup(s.g, vs.vertex.group), s.d))
        throw VerificationError("green_f: vertex of f(M) is not conjugate to D");
    return GreenPair{survivors[0].module, m,          false, down,
                     survivors[0],        detail::group_discarded(dropped, seed)};
}

struct RoundTripEntry {
    ModulePtr n;   // basket member over H
    ModulePtr gn;  // g(N) over G
    ModulePtr fgn; // f(g(N)) over H
    u32 g_discarded = 0;
    u32 f_discarded = 0;
};

struct RoundTripReport {
    bool ok = true;
    std::vector<RoundTripEntry> entries;
};

// f(g(N)) = N and g(f(g(N))) = g(N) for every basket member; any failure is
// a correspondence violation and aborts.
inline RoundTripReport verify_round_trip(const Scenario& s, const std::vector<ModulePtr>& basket,
                                         u64 seed = 42) {
    RoundTripReport rep;
    for (const ModulePtr& n : basket) {
        GreenPair gp = green_g(n, s, seed);
        GreenPair fp = green_f(gp.over_g, s, seed);
        if (!is_isomorphic(fp.over_h, n, seed))
            throw VerificationError("round trip: f(g(N)) is not isomorphic to N for '" + n->label() + "'");
        GreenPair gp2 = green_g(fp.over_h, s, seed);
        if (!is_isomorphic(gp2.over_g, gp.over_g, seed))
            throw VerificationError("round trip: g(f(M)) is not isomorphic to M for '" +
                                    gp.over_g->label() + "'");
        rep.entries.push_back({n, gp.over_g, fp.over_h,
                               static_cast<u32>(gp.discarded.size()),
                               static_cast<u32>(fp.discarded.size())});
    }
    return rep;
}

struct StableCorrReport {
    u32 d_h = 0;
    u32 d_g = 0;
    u32 maps_checked = 0;
    bool ok = false;
};

// dim stable Hom_H(n1, n2) mod yfam-traces equals dim stable Hom_G(g(n1),
// g(n2)) mod xfam-traces, and the induced-and-corrected map sends nonzero
// classes to nonzero classes and ideal elements into the ideal.
inline StableCorrReport stable_hom_correspondence(const Scenario& s, const ModulePtr& n1,
                                                  const ModulePtr& n2, u64 seed = 42) {
    StableCorrReport rep;
    StableHom sh_h = stable_hom(n1, n2, IdealSpec::trace(s.yfam));
    GreenPair g1 = green_g(n1, s, seed);
    GreenPair g2 = green_g(n2, s, seed);
    StableHom sh_g = stable_hom(g1.over_g, g2.over_g, IdealSpec::trace(s.xfam));
    rep.d_h = sh_h.dimension;
    rep.d_g = sh_g.dimension;
    if (rep.d_h != rep.d_g)
        throw VerificationError("stable hom dimensions differ: H side " + std::to_string(rep.d_h) +
                                ", G side " + std::to_string(rep.d_g));
    // S(phi) is block diagonal over the coset reps; correct it through the
    // surviving summand's inclusion/projection.
    auto reps = left_coset_reps(s.g, s.h);
    u32 nc = static_cast<u32>(reps.size()), p = s.p;
    u32 d1 = n1->dim(), d2 = n2->dim();
    auto corrected = [&](const Mat& phi) {
        Mat sphi(nc * d2, nc * d1, p);
        for (u32 b = 0; b < nc; ++b)
            for (u32 r = 0; r < d2; ++r)
                for (u32 c = 0; c < d1; ++c) sphi(b * d2 + r, b * d1 + c) = phi(r, c);
        return g2.surviving.projection.matrix.mul(sphi).mul(g1.surviving.inclusion.matrix);
    };
    for (const ModuleMap& phi : sh_h.basis) {
        Mat img = corrected(phi.matrix);
        Mat row(1, img.rows() * img.cols(), p);
        auto v = img.vec();
        for (u32 j = 0; j < v.size(); ++j) row(0, j) = v[j];
        if (sh_g.ideal.contains_row(row))
            throw VerificationError("stable hom: nonzero class maps into the ideal");
        ++rep.maps_checked;
    }
    const Mat& irows = sh_h.ideal.basis_rows();
    for (u32 i = 0; i < irows.rows(); ++i) {
        Mat psi(d2, d1, p);
        for (u32 r = 0; r < d2; ++r)
            for (u32 c = 0; c < d1; ++c) psi(r, c) = irows(i, r * d1 + c);
        Mat img = corrected(psi);
        Mat row(1, img.rows() * img.cols(), p);
        auto v = img.vec();
        for (u32 j = 0; j < v.size(); ++j) row(0, j) = v[j];
        if (!sh_g.ideal.contains_row(row))
            throw VerificationError("stable hom: ideal class maps outside the ideal");
        ++rep.maps_checked;
    }
    rep.ok = true;
    return rep;
}

namespace detail {

// Submodule I(P) M for a normal p-subgroup P: spanned by (rho(u) - 1) e_j.
inline SpinResult radical_cut(const ModulePtr& m, const Subgroup& psub) {
    u32 d = m->dim(), p = m->prime();
    std::vector<Mat> vs;
    for (const Perm& u : psub.group->generators()) {
        Mat a = m->act(u).sub(Mat::identity(d, p));
        for (u32 j = 0; j < d; ++j) vs.push_back(a.col_vector(j));
    }
    return spin(m, vs);
}

// P-fixed points, the kernel of all rho(u) - 1.
inline SpinResult socle_cut(const ModulePtr& m, const Subgroup& psub) {
    u32 d = m->dim(), p = m->prime();
    Mat stacked(0, d, p);
    for (const Perm& u : psub.group->generators())
        stacked = stacked.vstack(m->act(u).sub(Mat::identity(d, p)));
    std::vector<Mat> vs = nullspace(stacked);
    return spin(m, vs);
}

} // namespace detail

// Indecomposable kH-modules with vertex conjugate to D, harvested from the
// regular module, its radical/socle cuts through the normal Sylow subgroup
// (when it is normal), and inductions from D.
inline std::vector<ModulePtr> harvest_basket(const Scenario& s, u32 cap = 12, u64 seed = 42) {
    std::vector<ModulePtr> candidates;
    auto add_summands = [&](const ModulePtr& m) {
        for (const Summand& sm : indecomposable_summands(m, seed).summands)
            candidates.push_back(sm.module);
    };
    ModulePtr kh = regular_module(s.h.group, s.p);
    auto kh_dec = indecomposable_summands(kh, seed);
    Subgroup php = sylow(s.h.group, s.p);
    bool normal_sylow = php.order() > 1;
    for (const Perm& x : s.h.group->generators())
        if (!normalizes(x, php)) normal_sylow = false;
    for (const Summand& sm : kh_dec.summands) {
        candidates.push_back(sm.module);
        if (!normal_sylow) continue;
        auto rad = detail::radical_cut(sm.module, php);
        if (rad.submodule->dim() > 0 && rad.submodule->dim() < sm.module->dim()) {
            add_summands(rad.submodule);
            add_summands(quotient(sm.module, rad.inclusion).quotient);
        }
        auto soc = detail::socle_cut(sm.module, php);
        if (soc.submodule->dim() > 0 && soc.submodule->dim() < sm.module->dim())
            add_summands(soc.submodule);
    }
    add_summands(induce(trivial_module(s.d.group, s.p), s.d_in_h).induced);
    add_summands(induce(regular_module(s.d.group, s.p), s.d_in_h).induced);

    std::vector<ModulePtr> out;
    for (const ModulePtr& cand : candidates) {
        if (cand->dim() == 0 || out.size() >= cap) continue;
        bool dup = false;
        for (const ModulePtr& o : out)
            if (is_isomorphic(o, cand, seed)) { dup = true; break; }
        if (dup) continue;
        VertexReport vr = vertex(cand, seed);
        if (!conjugate_in(s.g, Subgroup(s.g, vr.vertex.group), s.d)) continue;
        out.push_back(cand);
    }
    return out;
}

} // namespace greenrep
