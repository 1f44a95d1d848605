#pragma once

// The restriction/induction adjoint pair in the group-algebra setting:
// induced modules in block-permutation form, unit and counit maps, the
// complement summand U with TS = id (+) U, and Mackey's double-coset
// decomposition as a verifier.
//
// Coset representatives are always BFS-least with the identity first; every
// block formula below is pinned to that choice, so all maps are
// bit-reproducible.

#include <string>
#include <vector>

#include "decomp.hpp"
#include "errors.hpp"
#include "ffmat.hpp"
#include "grp.hpp"
#include "repmod.hpp"

namespace greenrep {

// Restriction to a subgroup given by its own PermGroup (elements must lie in
// the module's group). Same underlying space.
inline ModulePtr restrict_module(const ModulePtr& m, const GroupPtr& sub) {
    std::vector<Mat> act;
    for (const Perm& s : sub->generators()) {
        if (!m->group()->contains(s)) throw InputError("restrict: not a subgroup of the module's group");
        act.push_back(m->act(s));
    }
    return Module::with_dim(sub, m->prime(), m->dim(), std::move(act),
                            m->label() + "|res" + std::to_string(sub->order()));
}

struct InductionData {
    Subgroup sub;            // H <= G; source lives over sub.group
    std::vector<Perm> reps;  // left coset reps, identity first
    ModulePtr source;        // over H
    ModulePtr induced;       // over G = sub.parent
    // bookkeeping per G-generator: s * reps[i] = reps[sigma[i]] * hpart[i]
    std::vector<std::vector<u32>> sigma;
    std::vector<std::vector<Perm>> hpart;
};

// Induced module in block form: block (sigma(i), i) of the action of a
// generator s equals rho_M(h_i), where s g_i = g_{sigma(i)} h_i with h_i in H.
inline InductionData induce(const ModulePtr& m, const Subgroup& h) {
    if (h.group != m->group()) {
        // accept a different Subgroup value over the same element set
        if (h.group->order() != m->group()->order())
            throw InputError("induce: subgroup does not match the module's group");
        for (const Perm& x : m->group()->elements())
            if (!h.group->contains(x)) throw InputError("induce: subgroup does not match the module's group");
    }
    const GroupPtr& g = h.parent;
    auto reps = left_coset_reps(g, h);
    u32 nc = static_cast<u32>(reps.size());
    u32 d = m->dim(), p = m->prime();
    InductionData out{h, reps, m, nullptr, {}, {}};
    std::vector<Mat> act;
    for (const Perm& s : g->generators()) {
        Mat a(nc * d, nc * d, p);
        std::vector<u32> sig(nc);
        std::vector<Perm> hp;
        for (u32 i = 0; i < nc; ++i) {
            Perm sgi = s * reps[i];
            // find the coset of s g_i
            u32 target = nc;
            Perm hi = Perm::identity(g->degree());
            for (u32 j = 0; j < nc; ++j) {
                Perm cand = reps[j].inverse() * sgi;
                if (h.group->contains(cand)) {
                    target = j;
                    hi = cand;
                    break;
                }
            }
            if (target == nc) throw VerificationError("induce: coset cover broken");
            sig[i] = target;
            hp.push_back(hi);
            Mat blk = m->dim() ? m->act(hi) : Mat(0, 0, p);
            for (u32 r = 0; r < d; ++r)
                for (u32 c = 0; c < d; ++c) a(target * d + r, i * d + c) = blk(r, c);
        }
        act.push_back(std::move(a));
        out.sigma.push_back(std::move(sig));
        out.hpart.push_back(std::move(hp));
    }
    out.induced = Module::with_dim(g, p, nc * d, std::move(act),
                                   m->label() + "^up" + std::to_string(g->order()));
    return out;
}

// Unit eps_M : M -> (M^up)|_H, the identity-coset block embedding.
inline ModuleMap unit_map(const InductionData& ind) {
    ModulePtr down = restrict_module(ind.induced, ind.sub.group);
    u32 d = ind.source->dim(), p = ind.source->prime();
    Mat e(down->dim(), d, p);
    for (u32 i = 0; i < d; ++i) e(i, i) = 1 % p;
    return ModuleMap(ind.source, down, std::move(e));
}

// p_1 : (M^up)|_H -> M, the identity-coset block projection; p_1 o eps = id.
inline ModuleMap unit_retraction(const InductionData& ind, const ModulePtr& down) {
    u32 d = ind.source->dim(), p = ind.source->prime();
    Mat r(d, down->dim(), p);
    for (u32 i = 0; i < d; ++i) r(i, i) = 1 % p;
    return ModuleMap(down, ind.source, std::move(r));
}

// Counit eta_M : (M|_H)^up -> M for a module M over G: block i acts by g_i.
struct CounitData {
    InductionData ind; // induction of M|_H back up to G
    ModuleMap counit;  // ind.induced -> M
};

inline CounitData counit_map(const ModulePtr& m, const Subgroup& h) {
    ModulePtr down = restrict_module(m, h.group);
    InductionData ind = induce(down, h);
    u32 d = m->dim(), p = m->prime();
    u32 nc = static_cast<u32>(ind.reps.size());
    Mat eta(d, nc * d, p);
    for (u32 i = 0; i < nc; ++i) {
        Mat gi = m->act(ind.reps[i]);
        for (u32 r = 0; r < d; ++r)
            for (u32 c = 0; c < d; ++c) eta(r, i * d + c) = gi(r, c);
    }
    ModuleMap map(ind.induced, m, std::move(eta));
    return CounitData{std::move(ind), std::move(map)};
}

// The other unit iota_M : M -> (M|_H)^up: block i is the action of g_i^{-1}.
struct GUnitData {
    InductionData ind;
    ModuleMap gunit; // m -> ind.induced
};

inline GUnitData g_unit_map(const ModulePtr& m, const Subgroup& h) {
    ModulePtr down = restrict_module(m, h.group);
    InductionData ind = induce(down, h);
    u32 d = m->dim(), p = m->prime();
    u32 nc = static_cast<u32>(ind.reps.size());
    Mat io(nc * d, d, p);
    for (u32 i = 0; i < nc; ++i) {
        Mat gi = m->act(ind.reps[i].inverse());
        for (u32 r = 0; r < d; ++r)
            for (u32 c = 0; c < d; ++c) io(i * d + r, c) = gi(r, c);
    }
    ModuleMap map(m, ind.induced, std::move(io));
    return GUnitData{std::move(ind), std::move(map)};
}

// U(M): the complement of eps_M(M) inside (M^up)|_H spanned by the
// non-identity coset blocks, with biproduct maps.
struct USummand {
    ModulePtr u;         // over H
    ModuleMap inclusion; // u -> (M^up)|_H
    ModuleMap projection;
    ModulePtr down;      // (M^up)|_H itself
};

inline USummand u_summand(const InductionData& ind) {
    ModulePtr down = restrict_module(ind.induced, ind.sub.group);
    u32 d = ind.source->dim(), p = ind.source->prime();
    u32 nc = static_cast<u32>(ind.reps.size());
    u32 ud = (nc - 1) * d;
    // Action of H on the non-identity blocks: sub-square of the restricted
    // action (sigma fixes block 0, so the span is stable).
    std::vector<Mat> act;
    for (const Mat& a : down->gen_action()) {
        Mat b(ud, ud, p);
        for (u32 i = 0; i < ud; ++i)
            for (u32 j = 0; j < ud; ++j) b(i, j) = a(d + i, d + j);
        act.push_back(std::move(b));
    }
    ModulePtr u = Module::with_dim(ind.sub.group, p, ud, std::move(act), "U(" + ind.source->label() + ")");
    Mat in(down->dim(), ud, p), pr(ud, down->dim(), p);
    for (u32 i = 0; i < ud; ++i) {
        in(d + i, i) = 1 % p;
        pr(i, d + i) = 1 % p;
    }
    return USummand{u, ModuleMap(u, down, std::move(in)), ModuleMap(down, u, std::move(pr)), down};
}

// Conjugate module over xHx^{-1}: the conjugated group's generators are
// x s x^{-1} in order, so the generator matrices carry over unchanged.
inline std::pair<Subgroup, ModulePtr> conjugate_module(const ModulePtr& m, const Subgroup& h, const Perm& x) {
    Subgroup xh = conjugate_subgroup(h, x);
    ModulePtr xm = Module::with_dim(xh.group, m->prime(), m->dim(), m->gen_action(),
                                    "c(" + m->label() + ")");
    return {xh, xm};
}

struct MackeyReport {
    bool ok = false;
    u32 lhs_dim = 0;
    u32 rhs_dim = 0;
    std::vector<ClassCount> lhs_classes;
    std::vector<ClassCount> rhs_classes;
    std::vector<Perm> dcoset_reps;
};

// Verifies (M^up_G)|_K  =~  (+)_{KxH} ((xM)|_{xH n K})^up_K by comparing
// certified decompositions class by class. A verifier only: no other code
// depends on this identity.
inline MackeyReport mackey_check(const ModulePtr& m, const Subgroup& h, const Subgroup& k, u64 seed = 42) {
    const GroupPtr& g = h.parent;
    require_subgroup(g, k);
    MackeyReport rep;
    InductionData up = induce(m, h);
    ModulePtr lhs = restrict_module(up.induced, k.group);
    rep.lhs_dim = lhs->dim();
    rep.dcoset_reps = double_coset_reps(g, h, k);

    std::vector<ModulePtr> pieces;
    u32 dim_formula = 0;
    for (const Perm& x : rep.dcoset_reps) {
        auto [xh, xm] = conjugate_module(m, h, x);
        Subgroup j_in_g = intersect(xh, k); // xH n K as subgroup of G
        Subgroup j_in_k(k.group, j_in_g.group);
        ModulePtr xm_res = restrict_module(xm, j_in_g.group);
        pieces.push_back(induce(xm_res, j_in_k).induced);
        dim_formula += (k.order() / j_in_g.order()) * m->dim();
    }
    u32 rhs_dim = 0;
    for (const ModulePtr& piece : pieces) rhs_dim += piece->dim();
    rep.rhs_dim = rhs_dim;
    if (rhs_dim != dim_formula || rhs_dim != rep.lhs_dim) return rep;

    ClassRegistry reg;
    auto lhs_dec = indecomposable_summands(lhs, seed);
    rep.lhs_classes = classify(lhs_dec, reg, seed);
    std::vector<ClassCount> rhs;
    for (const ModulePtr& piece : pieces) {
        auto dec = indecomposable_summands(piece, seed);
        for (const ClassCount& c : classify(dec, reg, seed)) {
            bool merged = false;
            for (ClassCount& r : rhs)
                if (r.class_id == c.class_id) { r.multiplicity += c.multiplicity; merged = true; break; }
            if (!merged) rhs.push_back(c);
        }
    }
    rep.rhs_classes = rhs;
    auto sorted = [](std::vector<ClassCount> v) {
        std::sort(v.begin(), v.end(), [](const ClassCount& a, const ClassCount& b) { return a.class_id < b.class_id; });
        return v;
    };
    auto a = sorted(rep.lhs_classes), b = sorted(rhs);
    if (a.size() != b.size()) return rep;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].class_id != b[i].class_id || a[i].multiplicity != b[i].multiplicity) return rep;
    rep.ok = true;
    return rep;
}

} // namespace greenrep
