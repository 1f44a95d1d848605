#pragma once

// kG-modules as matrix representations over GF(p), with hom spaces, direct
// sums, tensor products (diagonal action), submodule spinning, quotients and
// isomorphism testing.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "ffmat.hpp"
#include "grp.hpp"

namespace greenrep {

class Module;
using ModulePtr = std::shared_ptr<const Module>;

class Module : public std::enable_shared_from_this<Module> {
public:
    // Validated construction: checks invertibility of every generator image
    // and full homomorphism consistency rho(g) rho(s) = rho(g s) over all
    // elements g and generators s, using the group's factorization words.
    static ModulePtr make(GroupPtr group, u32 p, std::vector<Mat> gen_action, std::string label) {
        ModulePtr m = unchecked(std::move(group), p, std::move(gen_action), std::move(label));
        m->verify_consistency();
        return m;
    }

    // For modules produced by constructions that are equivariant by design
    // (induction, restriction, sums, spins, quotients). Still validates
    // shapes and generator invertibility.
    static ModulePtr unchecked(GroupPtr group, u32 p, std::vector<Mat> gen_action, std::string label) {
        check_prime(p);
        if (gen_action.size() != group->generators().size())
            throw InputError("module: need one matrix per group generator");
        u32 dim = gen_action.empty() ? 0 : gen_action[0].rows();
        for (const Mat& a : gen_action) {
            if (a.rows() != a.cols() || a.rows() != dim) throw InputError("module: generator matrices must be square of equal size");
            if (a.prime() != p) throw InputError("module: prime mismatch in generator matrix");
            if (!invert(a)) throw InputError("module: non-invertible generator image");
        }
        auto m = std::shared_ptr<Module>(new Module());
        m->group_ = std::move(group);
        m->p_ = p;
        m->dim_ = dim;
        m->gen_action_ = std::move(gen_action);
        m->label_ = std::move(label);
        return m;
    }

    // Dim-0 and generator-free groups need an explicit dimension.
    static ModulePtr with_dim(GroupPtr group, u32 p, u32 dim, std::vector<Mat> gen_action, std::string label) {
        if (!gen_action.empty()) return unchecked(std::move(group), p, std::move(gen_action), std::move(label));
        check_prime(p);
        auto m = std::shared_ptr<Module>(new Module());
        m->group_ = std::move(group);
        m->p_ = p;
        m->dim_ = dim;
        m->label_ = std::move(label);
        return m;
    }

    const GroupPtr& group() const { return group_; }
    u32 prime() const { return p_; }
    u32 dim() const { return dim_; }
    const std::string& label() const { return label_; }
    const std::vector<Mat>& gen_action() const { return gen_action_; }

    Mat act_index(u32 elem_index) const {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = cache_.find(elem_index);
            if (it != cache_.end()) return it->second;
        }
        Mat rho = Mat::identity(dim_, p_);
        for (u32 gi : group_->word(elem_index)) rho = rho.mul(gen_action_[gi]);
        {
            std::lock_guard<std::mutex> lock(mu_);
            cache_.emplace(elem_index, rho);
        }
        return rho;
    }

    Mat act(const Perm& g) const {
        auto idx = group_->index_of(g);
        if (!idx) throw InputError("act: element outside the module's group");
        return act_index(*idx);
    }

    void verify_consistency() const {
        for (u32 i = 0; i < group_->order(); ++i) {
            Mat rg = act_index(i);
            for (u32 gi = 0; gi < gen_action_.size(); ++gi) {
                Perm gs = group_->element(i) * group_->generators()[gi];
                Mat lhs = rg.mul(gen_action_[gi]);
                if (lhs != act(gs))
                    throw InputError("module '" + label_ + "': action is not a homomorphism");
            }
        }
    }

private:
    Module() = default;

    GroupPtr group_;
    u32 p_ = 2;
    u32 dim_ = 0;
    std::vector<Mat> gen_action_;
    std::string label_;
    mutable std::map<u32, Mat> cache_;
    mutable std::mutex mu_;
};

inline ModulePtr trivial_module(const GroupPtr& g, u32 p) {
    std::vector<Mat> act(g->generators().size(), Mat::identity(1, p));
    return Module::with_dim(g, p, 1, std::move(act), "k");
}

inline ModulePtr zero_module(const GroupPtr& g, u32 p) {
    std::vector<Mat> act(g->generators().size(), Mat(0, 0, p));
    return Module::with_dim(g, p, 0, std::move(act), "0");
}

// Natural permutation module: v_i -> v_{s(i)}.
inline ModulePtr permutation_module(const GroupPtr& g, u32 p) {
    std::vector<Mat> act;
    for (const Perm& s : g->generators()) {
        Mat a(g->degree(), g->degree(), p);
        for (u32 i = 0; i < g->degree(); ++i) a(s.apply(i), i) = 1 % p;
        act.push_back(std::move(a));
    }
    return Module::with_dim(g, p, g->degree(), std::move(act), "perm");
}

// Regular module kG: basis indexed by elements in BFS order, e_x -> e_{s x}.
inline ModulePtr regular_module(const GroupPtr& g, u32 p) {
    std::vector<Mat> act;
    for (const Perm& s : g->generators()) {
        Mat a(g->order(), g->order(), p);
        for (u32 x = 0; x < g->order(); ++x) {
            u32 sx = *g->index_of(s * g->element(x));
            a(sx, x) = 1 % p;
        }
        act.push_back(std::move(a));
    }
    return Module::with_dim(g, p, g->order(), std::move(act), "k[" + std::to_string(g->order()) + "]");
}

struct ModuleMap {
    ModulePtr source;
    ModulePtr target;
    Mat matrix; // target.dim x source.dim

    ModuleMap(ModulePtr src, ModulePtr tgt, Mat m)
        : source(std::move(src)), target(std::move(tgt)), matrix(std::move(m)) {
        if (matrix.rows() != target->dim() || matrix.cols() != source->dim())
            throw InputError("module map: matrix shape mismatch");
        if (matrix.prime() != source->prime() || source->prime() != target->prime())
            throw InputError("module map: prime mismatch");
    }

    bool is_equivariant() const {
        for (u32 gi = 0; gi < source->gen_action().size(); ++gi) {
            if (matrix.mul(source->gen_action()[gi]) != target->gen_action()[gi].mul(matrix))
                return false;
        }
        return true;
    }

    void require_equivariant(const char* what) const {
        if (!is_equivariant()) throw InputError(std::string(what) + ": map is not equivariant");
    }

    ModuleMap compose(const ModuleMap& inner) const { // (*this) o inner
        if (inner.target != source) {
            if (inner.target->dim() != source->dim())
                throw InputError("compose: modules do not match");
        }
        return ModuleMap(inner.source, target, matrix.mul(inner.matrix));
    }
};

inline void require_same_setting(const Module& m, const Module& n) {
    if (m.group() != n.group()) throw InputError("modules over different groups");
    if (m.prime() != n.prime()) throw InputError("modules over different primes");
}

// Basis of Hom_kG(m, n): nullspace of the stacked equivariance system
// X rho_m(s) - rho_n(s) X = 0 over the generators. Unknowns X are row-major
// vectors of length dim(n)*dim(m); basis order is the nullspace order.
inline std::vector<ModuleMap> hom_space(const ModulePtr& m, const ModulePtr& n) {
    require_same_setting(*m, *n);
    u32 dm = m->dim(), dn = n->dim(), p = m->prime();
    u32 unknowns = dn * dm;
    if (unknowns == 0) return {};
    u32 ngens = static_cast<u32>(m->gen_action().size());
    Mat sys(ngens * unknowns, unknowns, p);
    for (u32 s = 0; s < ngens; ++s) {
        const Mat& a = m->gen_action()[s]; // dm x dm
        const Mat& b = n->gen_action()[s]; // dn x dn
        u32 base = s * unknowns;
        for (u32 i = 0; i < dn; ++i)
            for (u32 j = 0; j < dm; ++j) {
                u32 r = base + i * dm + j;
                // (X a)_{ij} = sum_k X_{ik} a_{kj};  (b X)_{ij} = sum_k b_{ik} X_{kj}
                for (u32 k = 0; k < dm; ++k)
                    sys(r, i * dm + k) = (sys(r, i * dm + k) + a(k, j)) % p;
                for (u32 k = 0; k < dn; ++k)
                    sys(r, k * dm + j) = (sys(r, k * dm + j) + p - b(i, k)) % p;
            }
    }
    auto ker = nullspace(sys);
    std::vector<ModuleMap> basis;
    for (const Mat& v : ker) {
        Mat x(dn, dm, p);
        for (u32 i = 0; i < dn; ++i)
            for (u32 j = 0; j < dm; ++j) x(i, j) = v(i * dm + j, 0);
        basis.emplace_back(m, n, std::move(x));
    }
    return basis;
}

inline u32 hom_dim(const ModulePtr& m, const ModulePtr& n) {
    return static_cast<u32>(hom_space(m, n).size());
}

struct SumResult {
    ModulePtr module;
    std::vector<ModuleMap> inj;
    std::vector<ModuleMap> proj;
};

inline SumResult direct_sum(const std::vector<ModulePtr>& parts) {
    if (parts.empty()) throw InputError("direct_sum: empty part list");
    const GroupPtr& g = parts[0]->group();
    u32 p = parts[0]->prime();
    u32 total = 0;
    for (const ModulePtr& m : parts) {
        require_same_setting(*parts[0], *m);
        total += m->dim();
    }
    std::vector<Mat> act;
    for (u32 gi = 0; gi < g->generators().size(); ++gi) {
        Mat a(total, total, p);
        u32 off = 0;
        for (const ModulePtr& m : parts) {
            const Mat& b = m->gen_action()[gi];
            for (u32 i = 0; i < m->dim(); ++i)
                for (u32 j = 0; j < m->dim(); ++j) a(off + i, off + j) = b(i, j);
            off += m->dim();
        }
        act.push_back(std::move(a));
    }
    std::string label = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) label += (i ? "+" : "") + parts[i]->label();
    label += ")";
    ModulePtr sum = Module::with_dim(g, p, total, std::move(act), label);
    SumResult out{sum, {}, {}};
    u32 off = 0;
    for (const ModulePtr& m : parts) {
        Mat in(total, m->dim(), p), pr(m->dim(), total, p);
        for (u32 i = 0; i < m->dim(); ++i) {
            in(off + i, i) = 1 % p;
            pr(i, off + i) = 1 % p;
        }
        out.inj.emplace_back(m, sum, std::move(in));
        out.proj.emplace_back(sum, m, std::move(pr));
        off += m->dim();
    }
    return out;
}

inline ModulePtr tensor(const ModulePtr& m, const ModulePtr& n) {
    require_same_setting(*m, *n);
    std::vector<Mat> act;
    for (u32 gi = 0; gi < m->gen_action().size(); ++gi)
        act.push_back(Mat::kron(m->gen_action()[gi], n->gen_action()[gi]));
    return Module::with_dim(m->group(), m->prime(), m->dim() * n->dim(), std::move(act),
                            m->label() + "*" + n->label());
}

inline ModuleMap tensor_map(const ModuleMap& f, const ModuleMap& g) {
    return ModuleMap(tensor(f.source, g.source), tensor(f.target, g.target),
                     Mat::kron(f.matrix, g.matrix));
}

struct SpinResult {
    ModulePtr submodule;
    ModuleMap inclusion;
};

// Smallest G-stable subspace containing the given column vectors.
inline SpinResult spin(const ModulePtr& m, const std::vector<Mat>& vectors) {
    u32 d = m->dim(), p = m->prime();
    Subspace space(d, p);
    std::vector<Mat> queue;
    for (const Mat& v : vectors) {
        if (v.rows() != d || v.cols() != 1 || v.prime() != p)
            throw InputError("spin: vector shape/prime mismatch");
        Mat row = v.transpose();
        if (!space.contains_row(row)) {
            space = space.sum(Subspace::span_rows(row));
            queue.push_back(v);
        }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (const Mat& a : m->gen_action()) {
            Mat w = a.mul(queue[head]);
            Mat row = w.transpose();
            if (!space.contains_row(row)) {
                space = space.sum(Subspace::span_rows(row));
                queue.push_back(w);
            }
        }
    }
    u32 k = space.dimension();
    Mat incl = space.basis_rows().transpose(); // d x k
    std::vector<Mat> sub_act;
    for (const Mat& a : m->gen_action()) {
        auto x = solve(incl, a.mul(incl));
        if (!x) throw VerificationError("spin: closure failed"); // unreachable: space is stable
        sub_act.push_back(std::move(*x));
    }
    ModulePtr sub = Module::with_dim(m->group(), p, k, std::move(sub_act), m->label() + ".sub");
    return {sub, ModuleMap(sub, m, incl)};
}

struct QuotientResult {
    ModulePtr quotient;
    ModuleMap projection;
};

// Quotient by an equivariant injection. Complement basis: submodule image
// basis extended with unit vectors in index order.
inline QuotientResult quotient(const ModulePtr& m, const ModuleMap& inclusion) {
    if (inclusion.target != m) throw InputError("quotient: inclusion target mismatch");
    inclusion.require_equivariant("quotient");
    u32 d = m->dim(), k = inclusion.source->dim(), p = m->prime();
    if (rank(inclusion.matrix) != k) throw InputError("quotient: inclusion is not injective");
    // basis change P = [inclusion columns | complement columns]
    std::vector<Mat> sub_cols;
    for (u32 j = 0; j < k; ++j) sub_cols.push_back(inclusion.matrix.col_vector(j));
    Subspace sub = Subspace::span(sub_cols, d, p);
    Mat comp_rows = sub.complement_in(Subspace::full(d, p)); // (d-k) x d
    Mat pmat(d, d, p);
    for (u32 j = 0; j < k; ++j)
        for (u32 i = 0; i < d; ++i) pmat(i, j) = inclusion.matrix(i, j);
    for (u32 j = 0; j < d - k; ++j)
        for (u32 i = 0; i < d; ++i) pmat(i, k + j) = comp_rows(j, i);
    auto pinv = invert(pmat);
    if (!pinv) throw VerificationError("quotient: basis extension not invertible");
    u32 q = d - k;
    std::vector<Mat> quo_act;
    for (const Mat& a : m->gen_action()) {
        Mat conj = pinv->mul(a.mul(pmat));
        Mat block(q, q, p);
        for (u32 i = 0; i < q; ++i)
            for (u32 j = 0; j < q; ++j) block(i, j) = conj(k + i, k + j);
        quo_act.push_back(std::move(block));
    }
    ModulePtr quo = Module::with_dim(m->group(), p, q, std::move(quo_act), m->label() + "/sub");
    Mat projm(q, d, p);
    for (u32 i = 0; i < q; ++i)
        for (u32 j = 0; j < d; ++j) projm(i, j) = (*pinv)(k + i, j);
    return {quo, ModuleMap(m, quo, std::move(projm))};
}

// Isomorphism search over the hom space: basis elements, then seeded random
// combinations, then exhaustive enumeration when p^k is small. Declares "not
// isomorphic" only after the exhaustive branch or a structural disproof.
inline std::optional<ModuleMap> is_isomorphic(const ModulePtr& m, const ModulePtr& n,
                                              u64 seed = 0x9e3779b97f4a7c15ull,
                                              u32 random_budget = 200,
                                              u64 exhaustive_cap = 50000) {
    require_same_setting(*m, *n);
    if (m->dim() != n->dim()) return std::nullopt;
    if (m->dim() == 0) return ModuleMap(m, n, Mat(0, 0, m->prime()));
    auto basis = hom_space(m, n);
    if (basis.empty()) return std::nullopt;
    if (hom_dim(n, m) != basis.size()) return std::nullopt;
    if (hom_dim(m, m) != hom_dim(n, n)) return std::nullopt;

    u32 p = m->prime(), d = m->dim();
    u32 k = static_cast<u32>(basis.size());
    auto try_mat = [&](const Mat& x) -> std::optional<ModuleMap> {
        if (rank(x) == d) return ModuleMap(m, n, x);
        return std::nullopt;
    };
    for (const ModuleMap& h : basis)
        if (auto iso = try_mat(h.matrix)) return iso;

    std::mt19937_64 rng(seed ^ (u64(d) << 32) ^ k);
    std::uniform_int_distribution<u32> coef(0, p - 1);
    for (u32 t = 0; t < random_budget; ++t) {
        Mat x(d, d, p);
        for (u32 i = 0; i < k; ++i) {
            u32 c = coef(rng);
            if (c) x = x.add(basis[i].matrix.scale(c));
        }
        if (auto iso = try_mat(x)) return iso;
    }

    u64 combos = 1;
    bool small = true;
    for (u32 i = 0; i < k && small; ++i) {
        combos *= p;
        if (combos > exhaustive_cap) small = false;
    }
    if (small) {
        std::vector<u32> c(k, 0);
        for (u64 t = 1; t < combos; ++t) {
            u32 i = 0;
            while (true) {
                c[i] = (c[i] + 1) % p;
                if (c[i]) break;
                ++i;
            }
            Mat x(d, d, p);
            for (u32 j = 0; j < k; ++j)
                if (c[j]) x = x.add(basis[j].matrix.scale(c[j]));
            if (auto iso = try_mat(x)) return iso;
        }
        return std::nullopt; // exhaustive: definitively not isomorphic
    }
    throw UndecidedError("is_isomorphic: search budget exhausted for '" + m->label() +
                         "' vs '" + n->label() + "' (hom dim " + std::to_string(k) + ")");
}

} // namespace greenrep
