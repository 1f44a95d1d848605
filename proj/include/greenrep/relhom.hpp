#pragma once

// Relative projectivity machinery: relative traces, Higman's criterion (run
// as two independent deciders that must agree), vertices with certificate
// chains, ideals of maps factoring through distinguished modules, stable hom
// spaces, and the relative cone / Omega^{-1} construction.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adjfun.hpp"
#include "decomp.hpp"
#include "errors.hpp"
#include "ffmat.hpp"
#include "grp.hpp"
#include "repmod.hpp"

namespace greenrep {

namespace detail {

inline bool subgroup_less(const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    std::vector<std::vector<u32>> ea, eb;
    for (const Perm& x : a.group->elements()) ea.push_back(x.images());
    for (const Perm& x : b.group->elements()) eb.push_back(x.images());
    std::sort(ea.begin(), ea.end());
    std::sort(eb.begin(), eb.end());
    return ea < eb;
}

// Coefficients c with sum c_j * gens[j] = target, if any.
inline std::optional<std::vector<u32>> solve_combination(const std::vector<Mat>& gens, const Mat& target) {
    u32 p = target.prime();
    u32 n = target.rows() * target.cols();
    u32 k = static_cast<u32>(gens.size());
    if (n == 0) return std::vector<u32>(k, 0);
    Mat sys(n, k, p), rhs(n, 1, p);
    auto tv = target.vec();
    for (u32 i = 0; i < n; ++i) rhs(i, 0) = tv[i];
    for (u32 j = 0; j < k; ++j) {
        auto v = gens[j].vec();
        for (u32 i = 0; i < n; ++i) sys(i, j) = v[i];
    }
    auto x = solve(sys, rhs);
    if (!x) return std::nullopt;
    std::vector<u32> out(k);
    for (u32 j = 0; j < k; ++j) out[j] = (*x)(j, 0);
    return out;
}

inline Mat vec_column(const Mat& m) {
    auto v = m.vec();
    Mat c(static_cast<u32>(v.size()), 1, m.prime());
    for (u32 i = 0; i < v.size(); ++i) c(i, 0) = v[i];
    return c;
}

// Rows expressing rho_n(s) phi = phi rho_m(s) for every generator s of e, on
// the row-major vectorization of phi (n.dim x m.dim). Uses
// vec(A phi B) = (A kron B^T) vec(phi).
inline Mat equivariance_rows(const ModulePtr& m, const ModulePtr& n, const GroupPtr& e) {
    u32 dm = m->dim(), dn = n->dim(), p = m->prime();
    u32 unk = dn * dm;
    u32 ng = static_cast<u32>(e->generators().size());
    Mat rows(ng * unk, unk, p);
    for (u32 s = 0; s < ng; ++s) {
        const Perm& x = e->generators()[s];
        Mat blk = Mat::kron(n->act(x), Mat::identity(dm, p))
                      .sub(Mat::kron(Mat::identity(dn, p), m->act(x).transpose()));
        for (u32 i = 0; i < unk; ++i)
            for (u32 j = 0; j < unk; ++j) rows(s * unk + i, j) = blk(i, j);
    }
    return rows;
}

// Tr_H^G as a matrix on vectorized maps: sum over coset reps of
// rho_n(g_i) kron rho_m(g_i^{-1})^T.
inline Mat trace_operator(const ModulePtr& m, const ModulePtr& n, const Subgroup& h) {
    u32 unk = n->dim() * m->dim(), p = m->prime();
    Mat t(unk, unk, p);
    for (const Perm& gi : left_coset_reps(m->group(), h))
        t = t.add(Mat::kron(n->act(gi), m->act(gi.inverse()).transpose()));
    return t;
}

} // namespace detail

inline bool conjugate_in(const GroupPtr& g, const Subgroup& a, const Subgroup& b) {
    return a.order() == b.order() && is_subconjugate(g, a, b).has_value();
}

// A set of subgroups of a common parent, stored as conjugacy-class
// representatives in a fixed deterministic order. The closure flags assert
// properties of the full (unreduced) family they represent.
struct SubgroupFamily {
    GroupPtr parent;
    std::vector<Subgroup> members;
    bool conjugation_closed = false;
    bool subgroup_closed = false;

    bool empty() const { return members.empty(); }

    bool contains_up_to_conjugacy(const Subgroup& s) const {
        for (const Subgroup& m : members)
            if (conjugate_in(parent, s, m)) return true;
        return false;
    }

    bool covers_up_to_subconjugacy(const Subgroup& s) const {
        for (const Subgroup& m : members)
            if (is_subconjugate(parent, s, m)) return true;
        return false;
    }

    // Close the seeds under taking subgroups and conjugation, keeping one
    // representative per conjugacy class.
    static SubgroupFamily closure(const GroupPtr& parent, const std::vector<Subgroup>& seeds) {
        std::vector<Subgroup> pool;
        for (const Subgroup& s : seeds) {
            require_subgroup(parent, s);
            for (const Subgroup& t : all_subgroups(s)) pool.emplace_back(parent, t.group);
        }
        std::sort(pool.begin(), pool.end(), detail::subgroup_less);
        SubgroupFamily fam{parent, {}, true, true};
        for (const Subgroup& s : pool)
            if (!fam.contains_up_to_conjugacy(s)) fam.members.push_back(s);
        return fam;
    }

    // Exhaustive check of whatever closure flags are set.
    void verify_closure() const {
        for (const Subgroup& m : members) {
            require_subgroup(parent, m);
            if (conjugation_closed)
                for (const Perm& x : parent->elements())
                    if (!contains_up_to_conjugacy(conjugate_subgroup(m, x)))
                        throw VerificationError("family not closed under conjugation");
            if (subgroup_closed)
                for (const Subgroup& s : all_subgroups(m))
                    if (!contains_up_to_conjugacy(Subgroup(parent, s.group)))
                        throw VerificationError("family not closed under subgroups");
        }
    }
};

// Which ideal of Hom(m, n) to quotient by: traces from a subgroup family, or
// maps factoring through an explicit basket of modules.
struct IdealSpec {
    enum class Kind { trace_family, basket };
    Kind kind;
    SubgroupFamily family;
    std::vector<ModulePtr> basket;

    static IdealSpec trace(SubgroupFamily fam) {
        return IdealSpec{Kind::trace_family, std::move(fam), {}};
    }
    static IdealSpec through(std::vector<ModulePtr> mods) {
        return IdealSpec{Kind::basket, SubgroupFamily{}, std::move(mods)};
    }
};

// Tr_H^G(phi) = sum_i rho_N(g_i) phi rho_M(g_i^{-1}) over left coset reps.
// phi must be an H-map M|_H -> N|_H; the result is a G-map (verified).
inline ModuleMap relative_trace(const ModulePtr& m, const ModulePtr& n, const Subgroup& h, const Mat& phi) {
    require_same_setting(*m, *n);
    require_subgroup(m->group(), h);
    if (phi.rows() != n->dim() || phi.cols() != m->dim() || phi.prime() != m->prime())
        throw InputError("relative_trace: map shape mismatch");
    for (const Perm& s : h.group->generators())
        if (n->act(s).mul(phi) != phi.mul(m->act(s)))
            throw InputError("relative_trace: phi is not H-equivariant");
    Mat tr(n->dim(), m->dim(), m->prime());
    for (const Perm& gi : left_coset_reps(m->group(), h))
        tr = tr.add(n->act(gi).mul(phi).mul(m->act(gi.inverse())));
    ModuleMap out(m, n, std::move(tr));
    out.require_equivariant("relative_trace result");
    return out;
}

struct HigmanReport {
    bool projective = false;
    std::optional<Mat> trace_witness; // phi in End_kH(M|_H) with Tr_H^G(phi) = id
    std::optional<Mat> section;       // s : M -> (M|_H)^up with eta o s = id
};

// Above this many unknowns, decider (b) switches from the full section
// search to the Frobenius-reduced candidate space (complete by adjunction).
inline constexpr u64 kSectionSearchCap = 600;

// Higman's criterion, decided twice: (a) solvability of Tr_H^G(phi) = id
// over End_kH(M|_H), and (b) existence of an equivariant section of the
// counit. The verdicts must agree; disagreement is an internal error.
inline HigmanReport is_relatively_projective(const ModulePtr& m, const Subgroup& h) {
    require_subgroup(m->group(), h);
    HigmanReport rep;
    if (m->dim() == 0) {
        rep.projective = true;
        return rep;
    }
    u32 d = m->dim(), p = m->prime();
    Mat id = Mat::identity(d, p);

    // (a) one linear system: phi is H-equivariant and Tr_H^G(phi) = id.
    Mat eq = detail::equivariance_rows(m, m, h.group);
    Mat tr_op = detail::trace_operator(m, m, h);
    Mat sys = eq.vstack(tr_op);
    Mat rhs = Mat(eq.rows(), 1, p).vstack(detail::vec_column(id));
    auto xa = solve(sys, rhs);
    if (xa) {
        Mat phi(d, d, p);
        for (u32 i = 0; i < d; ++i)
            for (u32 j = 0; j < d; ++j) phi(i, j) = (*xa)(i * d + j, 0);
        if (relative_trace(m, m, h, phi).matrix != id)
            throw VerificationError("higman: trace witness fails to reproduce id");
        rep.trace_witness = std::move(phi);
    }

    // (b) section of the counit. Small instances search the full space of
    // equivariant maps M -> (M|_H)^up; large ones search the candidates
    // psi |-> (block_i = psi rho(g_i^{-1})), which exhaust the space by
    // Frobenius reciprocity. Either way the winning section is re-verified.
    auto cu = counit_map(m, h);
    u32 ind_dim = cu.ind.induced->dim();
    std::vector<Mat> cands;
    if (u64(ind_dim) * d <= kSectionSearchCap) {
        for (const ModuleMap& s : hom_space(m, cu.ind.induced)) cands.push_back(s.matrix);
    } else {
        ModulePtr down = restrict_module(m, h.group);
        for (const ModuleMap& psi : hom_space(down, down)) {
            Mat sm(ind_dim, d, p);
            for (u32 b = 0; b < cu.ind.reps.size(); ++b) {
                Mat blk = psi.matrix.mul(m->act(cu.ind.reps[b].inverse()));
                for (u32 r = 0; r < d; ++r)
                    for (u32 c = 0; c < d; ++c) sm(b * d + r, c) = blk(r, c);
            }
            cands.push_back(std::move(sm));
        }
    }
    std::vector<Mat> comps;
    for (const Mat& s : cands) comps.push_back(cu.counit.matrix.mul(s));
    auto cb = detail::solve_combination(comps, id);
    if (cb) {
        Mat sec(ind_dim, d, p);
        for (u32 j = 0; j < cands.size(); ++j)
            if ((*cb)[j]) sec = sec.add(cands[j].scale((*cb)[j]));
        if (!cu.counit.matrix.mul(sec).is_identity())
            throw VerificationError("higman: section fails to split the counit");
        ModuleMap smap(m, cu.ind.induced, sec);
        smap.require_equivariant("higman section");
        rep.section = std::move(sec);
    }

    if (xa.has_value() != cb.has_value())
        throw VerificationError("higman deciders disagree on '" + m->label() + "'");
    rep.projective = xa.has_value();
    return rep;
}

// id in the sum of the trace images over the family members (conjugates
// contribute the same image, so representatives suffice). The empty family
// admits only the zero module.
inline bool is_family_projective(const ModulePtr& m, const SubgroupFamily& fam) {
    if (m->dim() == 0) return true;
    if (fam.members.empty()) return false;
    u32 d = m->dim(), p = m->prime(), unk = d * d;
    u32 k = static_cast<u32>(fam.members.size());
    // Joint system in one unknown map per member: each block E-equivariant,
    // and the traces summing to the identity.
    std::vector<Mat> eqs, ops;
    u32 eq_rows = 0;
    for (const Subgroup& e : fam.members) {
        require_subgroup(m->group(), e);
        eqs.push_back(detail::equivariance_rows(m, m, e.group));
        ops.push_back(detail::trace_operator(m, m, e));
        eq_rows += eqs.back().rows();
    }
    Mat sys(eq_rows + unk, k * unk, p);
    Mat rhs(eq_rows + unk, 1, p);
    u32 row = 0;
    for (u32 b = 0; b < k; ++b) {
        for (u32 i = 0; i < eqs[b].rows(); ++i)
            for (u32 j = 0; j < unk; ++j) sys(row + i, b * unk + j) = eqs[b](i, j);
        row += eqs[b].rows();
    }
    for (u32 b = 0; b < k; ++b)
        for (u32 i = 0; i < unk; ++i)
            for (u32 j = 0; j < unk; ++j) sys(row + i, b * unk + j) = ops[b](i, j);
    Mat idv = detail::vec_column(Mat::identity(d, p));
    for (u32 i = 0; i < unk; ++i) rhs(row + i, 0) = idv(i, 0);
    return solve(sys, rhs).has_value();
}

struct VertexStep {
    Subgroup subgroup;
    bool projective;
};

struct VertexReport {
    ModulePtr module;
    Subgroup vertex;
    Subgroup sylow_start;
    std::vector<VertexStep> certificate;
};

// Vertex by descent: start at a Sylow p-subgroup (relative projectivity there
// is guaranteed, but still verified), and repeatedly move to the first
// maximal subgroup that keeps the module relatively projective.
inline VertexReport vertex_from(const ModulePtr& m, const Subgroup& start, u64 seed = 42) {
    if (m->dim() == 0) throw InputError("vertex: zero module");
    u32 p = m->prime();
    if (!is_p_group(start, p) || start.order() != p_part(m->group()->order(), p))
        throw InputError("vertex: start is not a Sylow p-subgroup");
    if (!is_indecomposable(m, seed)) throw InputError("vertex: module is decomposable");

    VertexReport rep{m, start, start, {}};
    auto top = is_relatively_projective(m, start);
    rep.certificate.push_back({start, top.projective});
    if (!top.projective)
        throw VerificationError("vertex: module not projective relative to a Sylow subgroup");
    Subgroup cur = start;
    bool descended = true;
    while (descended) {
        descended = false;
        for (const Subgroup& q : maximal_subgroups_of_p_group(cur, p)) {
            bool ok = is_relatively_projective(m, q).projective;
            rep.certificate.push_back({q, ok});
            if (ok) {
                cur = q;
                descended = true;
                break;
            }
        }
    }
    if (!is_p_group(cur, p)) throw VerificationError("vertex: endpoint is not a p-group");
    rep.vertex = cur;
    return rep;
}

inline VertexReport vertex(const ModulePtr& m, u64 seed = 42) {
    return vertex_from(m, sylow(m->group(), m->prime()), seed);
}

// Span of { b o a : a in Hom(m, V), b in Hom(V, n), V in basket } inside
// Hom(m, n), as vectorized matrices (row-major, n.dim x m.dim).
inline Subspace factoring_ideal(const ModulePtr& m, const ModulePtr& n, const std::vector<ModulePtr>& basket) {
    require_same_setting(*m, *n);
    u32 ambient = m->dim() * n->dim(), p = m->prime();
    std::vector<std::vector<u32>> rows;
    for (const ModulePtr& v : basket) {
        require_same_setting(*m, *v);
        auto as = hom_space(m, v);
        auto bs = hom_space(v, n);
        for (const ModuleMap& b : bs)
            for (const ModuleMap& a : as) rows.push_back(b.matrix.mul(a.matrix).vec());
    }
    Mat stacked(static_cast<u32>(rows.size()), ambient, p);
    for (u32 i = 0; i < rows.size(); ++i)
        for (u32 j = 0; j < ambient; ++j) stacked(i, j) = rows[i][j];
    return Subspace::span_rows(stacked);
}

// Sum over family members E of the image of Tr_E^G on Hom_kE(m|_E, n|_E);
// equals the subspace of maps factoring through fam-projective modules.
inline Subspace trace_ideal(const ModulePtr& m, const ModulePtr& n, const SubgroupFamily& fam) {
    require_same_setting(*m, *n);
    u32 ambient = m->dim() * n->dim(), p = m->prime();
    std::vector<std::vector<u32>> rows;
    for (const Subgroup& e : fam.members) {
        ModulePtr dm = restrict_module(m, e.group);
        ModulePtr dn = restrict_module(n, e.group);
        for (const ModuleMap& f : hom_space(dm, dn))
            rows.push_back(relative_trace(m, n, e, f.matrix).matrix.vec());
    }
    Mat stacked(static_cast<u32>(rows.size()), ambient, p);
    for (u32 i = 0; i < rows.size(); ++i)
        for (u32 j = 0; j < ambient; ++j) stacked(i, j) = rows[i][j];
    return Subspace::span_rows(stacked);
}

struct StableHom {
    u32 dimension = 0;
    std::vector<ModuleMap> basis; // lifted coset representatives
    Subspace hom;
    Subspace ideal;
};

// Hom(m, n) modulo the chosen ideal, with a lifted basis.
inline StableHom stable_hom(const ModulePtr& m, const ModulePtr& n, const IdealSpec& spec) {
    require_same_setting(*m, *n);
    u32 ambient = m->dim() * n->dim(), p = m->prime();
    auto homs = hom_space(m, n);
    Mat hom_rows(static_cast<u32>(homs.size()), ambient, p);
    for (u32 i = 0; i < homs.size(); ++i) {
        auto v = homs[i].matrix.vec();
        for (u32 j = 0; j < ambient; ++j) hom_rows(i, j) = v[j];
    }
    Subspace hom = Subspace::span_rows(hom_rows);
    Subspace ideal = spec.kind == IdealSpec::Kind::trace_family
                         ? trace_ideal(m, n, spec.family)
                         : factoring_ideal(m, n, spec.basket);
    if (!hom.contains(ideal)) throw VerificationError("stable_hom: ideal escapes the hom space");
    Mat lifted = ideal.complement_in(hom);
    StableHom out{lifted.rows(), {}, std::move(hom), std::move(ideal)};
    for (u32 i = 0; i < lifted.rows(); ++i) {
        Mat f(n->dim(), m->dim(), p);
        for (u32 r = 0; r < n->dim(); ++r)
            for (u32 c = 0; c < m->dim(); ++c) f(r, c) = lifted(i, r * m->dim() + c);
        out.basis.emplace_back(m, n, std::move(f));
    }
    return out;
}

struct OmegaResult {
    ModulePtr module;      // Omega^{-1}(M) = coker(iota)
    ModuleMap projection;  // (M|_h)^up -> Omega^{-1}(M)
    GUnitData gu;
};

inline OmegaResult omega_inverse(const ModulePtr& m, const Subgroup& h) {
    auto gu = g_unit_map(m, h);
    auto q = quotient(gu.ind.induced, gu.gunit);
    return {q.quotient, q.projection, std::move(gu)};
}

struct ConeResult {
    ModulePtr cone;
    ModuleMap c1;        // N -> C(f)
    ModuleMap c2;        // C(f) -> Omega^{-1}(M)
    ModulePtr omega;
    ModuleMap cone_proj; // (M|_h)^up (+) N -> C(f)
};

// C(f) = coker( (iota, -f) : M -> (M|_h)^up (+) N ); the bottom row
// 0 -> N -> C(f) -> Omega^{-1}(M) -> 0 is exact and splits after
// restriction to h.
inline ConeResult relative_cone(const ModuleMap& f, const Subgroup& h) {
    const ModulePtr& m = f.source;
    const ModulePtr& n = f.target;
    f.require_equivariant("relative_cone");
    require_subgroup(m->group(), h);
    u32 p = m->prime();
    auto om = omega_inverse(m, h);
    auto sum = direct_sum({om.gu.ind.induced, n});
    Mat graph = sum.inj[0].matrix.mul(om.gu.gunit.matrix);
    if (n->dim() && m->dim()) graph = graph.add(sum.inj[1].matrix.mul(f.matrix.scale(p - 1)));
    ModuleMap incl(m, sum.module, std::move(graph));
    auto q = quotient(sum.module, incl);
    ModuleMap c1 = q.projection.compose(sum.inj[1]);
    // c2 is the factorization of (omega projection) o (proj onto the induced
    // block) through the cone; it exists because the graph maps into its
    // kernel, and any solution of X * cone_proj = rhs is the factorization.
    Mat rhs = om.projection.matrix.mul(sum.proj[0].matrix);
    auto xt = solve(q.projection.matrix.transpose(), rhs.transpose());
    if (!xt) throw VerificationError("relative_cone: comparison to Omega^{-1} does not factor");
    ModuleMap c2(q.quotient, om.module, xt->transpose());
    c2.require_equivariant("relative_cone c2");
    return {q.quotient, std::move(c1), std::move(c2), om.module, q.projection};
}

// True iff f|_h admits an h-equivariant section.
inline bool is_relatively_split_epi(const ModuleMap& f, const Subgroup& h) {
    f.require_equivariant("is_relatively_split_epi");
    require_subgroup(f.source->group(), h);
    if (f.target->dim() == 0) return true;
    ModulePtr ds = restrict_module(f.source, h.group);
    ModulePtr dt = restrict_module(f.target, h.group);
    std::vector<Mat> comps;
    for (const ModuleMap& s : hom_space(dt, ds)) comps.push_back(f.matrix.mul(s.matrix));
    return detail::solve_combination(comps, Mat::identity(f.target->dim(), f.target->prime())).has_value();
}

} // namespace greenrep
