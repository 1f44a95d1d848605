#pragma once
#include <algorithm>

// Krull-Schmidt machinery: Fitting splits along endomorphisms, recursive
// decomposition into certified-indecomposable summands, and a registry of
// isomorphism classes.
//
// Certification ladder per module: every endomorphism basis element, then a
// seeded-random budget, then exhaustive enumeration of the endomorphism
// space when p^(dim End) <= 50000. A module is declared indecomposable only
// after the exhaustive branch ran clean; otherwise the answer is an explicit
// UndecidedError, never a guess.

#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "errors.hpp"
#include "ffmat.hpp"
#include "repmod.hpp"

namespace greenrep {

struct Summand {
    ModulePtr module;
    ModuleMap inclusion;  // module -> parent
    ModuleMap projection; // parent -> module
};

struct Decomposition {
    ModulePtr parent;
    std::vector<Summand> summands;

    void check_invariants() const {
        u32 total = 0;
        u32 d = parent->dim(), p = parent->prime();
        Mat resolution(d, d, p);
        for (const Summand& s : summands) {
            total += s.module->dim();
            Mat pi = s.projection.matrix.mul(s.inclusion.matrix);
            if (!pi.is_identity()) throw VerificationError("decomposition: proj o inj != id");
            resolution = resolution.add(s.inclusion.matrix.mul(s.projection.matrix));
        }
        if (total != d) throw VerificationError("decomposition: dimensions do not add up");
        if (d > 0 && !resolution.is_identity())
            throw VerificationError("decomposition: resolution of identity fails");
    }
};

namespace detail {

// V = ker(f) + im(f) once rank(f^2) = rank(f); square until stable.
inline std::optional<Mat> stable_fitting_power(const Mat& e) {
    u32 d = e.rows();
    u32 r = rank(e);
    if (r == 0 || r == d) return std::nullopt;
    Mat f = e;
    while (true) {
        Mat f2 = f.mul(f);
        u32 r2 = rank(f2);
        if (r2 == r) break;
        f = std::move(f2);
        r = r2;
        if (r == 0) return std::nullopt; // nilpotent
    }
    return f;
}

inline Summand make_summand_from_basis(const ModulePtr& parent, const Mat& incl_cols,
                                       const Mat& pinv, u32 row_offset, const std::string& tag) {
    u32 d = parent->dim(), k = incl_cols.cols(), p = parent->prime();
    Mat projm(k, d, p);
    for (u32 i = 0; i < k; ++i)
        for (u32 j = 0; j < d; ++j) projm(i, j) = pinv(row_offset + i, j);
    std::vector<Mat> act;
    for (const Mat& a : parent->gen_action()) {
        auto x = solve(incl_cols, a.mul(incl_cols));
        if (!x) throw VerificationError("fitting: subspace not stable");
        act.push_back(std::move(*x));
    }
    ModulePtr sub = Module::with_dim(parent->group(), p, k, std::move(act), parent->label() + tag);
    return Summand{sub, ModuleMap(sub, parent, incl_cols), ModuleMap(parent, sub, projm)};
}

} // namespace detail

// Fitting split along an endomorphism: m = ker(e^d) (+) im(e^d) when the
// stable power has intermediate rank; otherwise no split (e is nilpotent or
// invertible).
inline std::optional<std::pair<Summand, Summand>> fitting_split(const ModulePtr& m, const ModuleMap& e) {
    if (e.source->dim() != m->dim() || e.target->dim() != m->dim())
        throw InputError("fitting_split: not an endomorphism of m");
    e.require_equivariant("fitting_split");
    auto f = detail::stable_fitting_power(e.matrix);
    if (!f) return std::nullopt;
    u32 d = m->dim(), p = m->prime();
    // kernel columns
    auto ker = nullspace(*f);
    u32 kk = static_cast<u32>(ker.size());
    Mat ker_cols(d, kk, p);
    for (u32 j = 0; j < kk; ++j)
        for (u32 i = 0; i < d; ++i) ker_cols(i, j) = ker[j](i, 0);
    // image columns: pivot columns of f give independent images; use rref of
    // transpose for a deterministic row-space basis of the image.
    Subspace img = Subspace::span_rows(f->transpose());
    Mat img_cols = img.basis_rows().transpose();
    u32 ki = img_cols.cols();
    if (kk + ki != d) throw VerificationError("fitting: rank/nullity mismatch");
    Mat pmat(d, d, p);
    for (u32 j = 0; j < kk; ++j)
        for (u32 i = 0; i < d; ++i) pmat(i, j) = ker_cols(i, j);
    for (u32 j = 0; j < ki; ++j)
        for (u32 i = 0; i < d; ++i) pmat(i, kk + j) = img_cols(i, j);
    auto pinv = invert(pmat);
    if (!pinv) throw VerificationError("fitting: ker+im not a direct sum");
    Summand a = detail::make_summand_from_basis(m, ker_cols, *pinv, 0, ".a");
    Summand b = detail::make_summand_from_basis(m, img_cols, *pinv, kk, ".b");
    return std::make_pair(std::move(a), std::move(b));
}

inline u64 module_seed(const ModulePtr& m, u64 run_seed) {
    u64 h = run_seed;
    for (char c : m->label()) h = h * 1099511628211ull ^ static_cast<u64>(c);
    h ^= (u64(m->dim()) << 17) ^ m->prime();
    return h;
}

namespace detail {

// One step of the ladder: find any endomorphism that Fitting-splits m.
// certified is set when the exhaustive branch ran to completion.
inline std::optional<std::pair<Summand, Summand>> find_split(const ModulePtr& m, u64 seed,
                                                             bool& certified,
                                                             u32 random_budget = 500,
                                                             u64 exhaustive_cap = 50000) {
    certified = false;
    u32 d = m->dim(), p = m->prime();
    if (d <= 1) { certified = true; return std::nullopt; }
    auto endos = hom_space(m, m);
    u32 k = static_cast<u32>(endos.size());
    if (k == 1) { certified = true; return std::nullopt; } // End = scalars
    auto attempt = [&](const Mat& x) -> std::optional<std::pair<Summand, Summand>> {
        return fitting_split(m, ModuleMap(m, m, x));
    };
    for (const ModuleMap& e : endos)
        if (auto s = attempt(e.matrix)) return s;
    std::mt19937_64 rng(module_seed(m, seed));
    std::uniform_int_distribution<u32> coef(0, p - 1);
    for (u32 t = 0; t < random_budget; ++t) {
        Mat x(d, d, p);
        for (u32 i = 0; i < k; ++i) {
            u32 c = coef(rng);
            if (c) x = x.add(endos[i].matrix.scale(c));
        }
        if (auto s = attempt(x)) return s;
    }
    u64 combos = 1;
    for (u32 i = 0; i < k; ++i) {
        combos *= p;
        if (combos > exhaustive_cap) return std::nullopt; // not certified
    }
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
            if (c[j]) x = x.add(endos[j].matrix.scale(c[j]));
        if (auto s = attempt(x)) return s;
    }
    certified = true;
    return std::nullopt;
}

} // namespace detail

inline bool is_indecomposable(const ModulePtr& m, u64 seed = 42) {
    if (m->dim() == 0) return false;
    bool certified = false;
    auto s = detail::find_split(m, seed, certified);
    if (s) return false;
    if (!certified)
        throw UndecidedError("is_indecomposable: budget exhausted on '" + m->label() + "'");
    return true;
}

inline Decomposition indecomposable_summands(const ModulePtr& m, u64 seed = 42) {
    Decomposition out{m, {}};
    if (m->dim() == 0) return out;
    // Worklist of summands still to be split, with maps into the original m.
    std::vector<Summand> work;
    Mat id = Mat::identity(m->dim(), m->prime());
    work.push_back(Summand{m, ModuleMap(m, m, id), ModuleMap(m, m, id)});
    while (!work.empty()) {
        Summand cur = std::move(work.back());
        work.pop_back();
        bool certified = false;
        auto split = detail::find_split(cur.module, seed, certified);
        if (!split) {
            if (!certified)
                throw UndecidedError("indecomposable_summands: budget exhausted on '" +
                                     cur.module->label() + "'");
            out.summands.push_back(std::move(cur));
            continue;
        }
        for (Summand* part : {&split->first, &split->second}) {
            work.push_back(Summand{part->module,
                                   cur.inclusion.compose(part->inclusion),
                                   part->projection.compose(cur.projection)});
        }
    }
    // Deterministic order: by position of the summand image, proxied by
    // stable sort on dimension then label.
    std::stable_sort(out.summands.begin(), out.summands.end(),
                     [](const Summand& a, const Summand& b) { return a.module->dim() > b.module->dim(); });
    out.check_invariants();
    return out;
}

// Registry of isomorphism classes. Insertions are linearized; ids are stable
// within a run given identical insertion order.
class ClassRegistry {
public:
    u32 find_or_insert(const ModulePtr& m, u64 seed = 42) {
        std::lock_guard<std::mutex> lock(mu_);
        for (u32 i = 0; i < reps_.size(); ++i)
            if (is_isomorphic(reps_[i], m, seed)) return i;
        reps_.push_back(m);
        return static_cast<u32>(reps_.size() - 1);
    }

    std::optional<u32> find(const ModulePtr& m, u64 seed = 42) const {
        std::lock_guard<std::mutex> lock(mu_);
        for (u32 i = 0; i < reps_.size(); ++i)
            if (is_isomorphic(reps_[i], m, seed)) return i;
        return std::nullopt;
    }

    const ModulePtr& representative(u32 id) const { return reps_[id]; }
    u32 size() const { return static_cast<u32>(reps_.size()); }

private:
    mutable std::mutex mu_;
    std::vector<ModulePtr> reps_;
};

struct ClassCount {
    u32 class_id;
    u32 multiplicity;
};

inline std::vector<ClassCount> classify(const Decomposition& d, ClassRegistry& registry, u64 seed = 42) {
    std::vector<ClassCount> out;
    for (const Summand& s : d.summands) {
        u32 id = registry.find_or_insert(s.module, seed);
        bool merged = false;
        for (ClassCount& c : out)
            if (c.class_id == id) { ++c.multiplicity; merged = true; break; }
        if (!merged) out.push_back({id, 1});
    }
    return out;
}

} // namespace greenrep
