#pragma once

// Finite permutation groups with full element tables. No Schreier-Sims:
// every group in scope has order <= a few hundred, and a complete table with
// BFS generator words makes coset arithmetic, factorization and all
// subgroup-lattice scans trivial and exactly reproducible.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace greenrep {

using u32 = std::uint32_t;

class Perm {
public:
    Perm() = default;
    explicit Perm(std::vector<u32> images) : img_(std::move(images)) {
        std::vector<bool> seen(img_.size(), false);
        for (u32 v : img_) {
            if (v >= img_.size() || seen[v]) throw InputError("permutation images not a bijection");
            seen[v] = true;
        }
    }

    static Perm identity(u32 degree) {
        std::vector<u32> img(degree);
        for (u32 i = 0; i < degree; ++i) img[i] = i;
        return Perm(std::move(img));
    }

    u32 degree() const { return static_cast<u32>(img_.size()); }
    u32 apply(u32 pt) const { return img_[pt]; }
    const std::vector<u32>& images() const { return img_; }

    bool is_identity() const {
        for (u32 i = 0; i < img_.size(); ++i)
            if (img_[i] != i) return false;
        return true;
    }

    // (a * b)(x) = a(b(x))
    Perm operator*(const Perm& b) const {
        if (degree() != b.degree()) throw InputError("permutation degree mismatch");
        std::vector<u32> img(degree());
        for (u32 i = 0; i < degree(); ++i) img[i] = img_[b.img_[i]];
        Perm r;
        r.img_ = std::move(img);
        return r;
    }

    Perm inverse() const {
        std::vector<u32> img(degree());
        for (u32 i = 0; i < degree(); ++i) img[img_[i]] = i;
        Perm r;
        r.img_ = std::move(img);
        return r;
    }

    bool operator==(const Perm& o) const { return img_ == o.img_; }
    bool operator!=(const Perm& o) const { return img_ != o.img_; }
    bool operator<(const Perm& o) const { return img_ < o.img_; }

    u32 order() const {
        Perm x = *this;
        u32 n = 1;
        while (!x.is_identity()) {
            x = x * (*this);
            ++n;
        }
        return n;
    }

    // "(0 1 2)(3 4)" 0-based; identity renders as "()".
    std::string cycle_string() const {
        std::string out;
        std::vector<bool> seen(img_.size(), false);
        for (u32 i = 0; i < img_.size(); ++i) {
            if (seen[i] || img_[i] == i) continue;
            out += "(";
            u32 j = i;
            bool first = true;
            while (!seen[j]) {
                seen[j] = true;
                if (!first) out += " ";
                out += std::to_string(j);
                first = false;
                j = img_[j];
            }
            out += ")";
        }
        return out.empty() ? "()" : out;
    }

    // Parse disjoint cycle notation: "(0 1 2)(3 4)" or "()".
    static Perm parse_cycles(const std::string& text, u32 degree) {
        std::vector<u32> img(degree);
        for (u32 i = 0; i < degree; ++i) img[i] = i;
        std::size_t i = 0;
        auto skip_ws = [&] { while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i; };
        skip_ws();
        bool any = false;
        while (i < text.size()) {
            if (text[i] != '(') throw InputError("expected '(' in cycle notation: " + text);
            ++i;
            std::vector<u32> cyc;
            skip_ws();
            while (i < text.size() && text[i] != ')') {
                if (!isdigit(static_cast<unsigned char>(text[i])))
                    throw InputError("expected point in cycle notation: " + text);
                u32 pt = 0;
                while (i < text.size() && isdigit(static_cast<unsigned char>(text[i]))) {
                    pt = pt * 10 + (text[i] - '0');
                    ++i;
                }
                if (pt >= degree) throw InputError("point " + std::to_string(pt) + " out of range");
                cyc.push_back(pt);
                skip_ws();
                if (i < text.size() && text[i] == ',') { ++i; skip_ws(); }
            }
            if (i >= text.size()) throw InputError("unterminated cycle: " + text);
            ++i; // ')'
            for (std::size_t k = 0; k < cyc.size(); ++k) {
                u32 from = cyc[k], to = cyc[(k + 1) % cyc.size()];
                if (img[from] != from && cyc.size() > 1)
                    throw InputError("point repeated across cycles: " + text);
                if (cyc.size() > 1) img[from] = to;
            }
            any = true;
            skip_ws();
        }
        if (!any) throw InputError("empty permutation text");
        return Perm(std::move(img));
    }

private:
    std::vector<u32> img_;
};

class PermGroup;
using GroupPtr = std::shared_ptr<const PermGroup>;

constexpr u32 kDefaultOrderCap = 5000;

class PermGroup {
public:
    // BFS closure from the identity; element order is discovery order with
    // the given generator order, so it is deterministic. words_[i] is a
    // sequence of generator indices whose left-to-right product equals
    // elements_[i].
    static GroupPtr enumerate(u32 degree, std::vector<Perm> gens, u32 order_cap = kDefaultOrderCap) {
        for (const Perm& g : gens)
            if (g.degree() != degree) throw InputError("generator degree mismatch");
        auto grp = std::make_shared<PermGroup>(Private{});
        grp->degree_ = degree;
        grp->gens_ = gens;
        Perm id = Perm::identity(degree);
        grp->elements_.push_back(id);
        grp->words_.push_back({});
        grp->index_[id] = 0;
        for (std::size_t head = 0; head < grp->elements_.size(); ++head) {
            Perm cur = grp->elements_[head]; // copy: vector may reallocate
            for (u32 gi = 0; gi < gens.size(); ++gi) {
                Perm nxt = cur * gens[gi];
                if (grp->index_.count(nxt)) continue;
                if (grp->elements_.size() >= order_cap)
                    throw ResourceError("group order cap " + std::to_string(order_cap) + " exceeded");
                grp->index_[nxt] = static_cast<u32>(grp->elements_.size());
                grp->elements_.push_back(nxt);
                std::vector<u32> w = grp->words_[head];
                w.push_back(gi);
                grp->words_.push_back(std::move(w));
            }
        }
        return grp;
    }

    u32 degree() const { return degree_; }
    u32 order() const { return static_cast<u32>(elements_.size()); }
    const std::vector<Perm>& generators() const { return gens_; }
    const std::vector<Perm>& elements() const { return elements_; }
    const Perm& element(u32 i) const { return elements_[i]; }
    const std::vector<u32>& word(u32 i) const { return words_[i]; }

    std::optional<u32> index_of(const Perm& g) const {
        auto it = index_.find(g);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    bool contains(const Perm& g) const { return index_.count(g) != 0; }

    struct Private { explicit Private() = default; };
    explicit PermGroup(Private) {}

private:
    u32 degree_ = 0;
    std::vector<Perm> gens_;
    std::vector<Perm> elements_;
    std::vector<std::vector<u32>> words_;
    std::map<Perm, u32> index_;
};

// A subgroup remembers its parent; its own PermGroup shares the degree.
struct Subgroup {
    GroupPtr parent;
    GroupPtr group;

    u32 order() const { return group->order(); }

    Subgroup(GroupPtr parent_, GroupPtr group_) : parent(std::move(parent_)), group(std::move(group_)) {
        if (parent->degree() != group->degree()) throw InputError("subgroup degree mismatch");
        for (const Perm& g : group->elements())
            if (!parent->contains(g)) throw InputError("subgroup element not in parent");
    }

    static Subgroup generated(GroupPtr parent, const std::vector<Perm>& gens, u32 cap = kDefaultOrderCap) {
        for (const Perm& g : gens)
            if (!parent->contains(g)) throw InputError("subgroup generator not in parent");
        auto grp = PermGroup::enumerate(parent->degree(), gens, cap);
        return Subgroup(parent, grp);
    }

    static Subgroup trivial(GroupPtr parent) { return generated(parent, {}); }
    static Subgroup whole(GroupPtr parent) {
        return Subgroup(parent, parent);
    }

    bool contains(const Perm& g) const { return group->contains(g); }

    bool same_elements(const Subgroup& o) const {
        if (order() != o.order()) return false;
        for (const Perm& g : group->elements())
            if (!o.contains(g)) return false;
        return true;
    }

    // Subgroup-of test (this <= other), both under the same parent.
    bool subset_of(const Subgroup& o) const {
        for (const Perm& g : group->elements())
            if (!o.contains(g)) return false;
        return true;
    }
};

inline void require_subgroup(const GroupPtr& g, const Subgroup& h) {
    if (h.parent != g) {
        // allow distinct Subgroup values over the same parent object
        for (const Perm& x : h.group->elements())
            if (!g->contains(x)) throw InputError("not a subgroup of the given group");
    }
}

// Left coset representatives g_i with G = disjoint union of g_i H.
// Identity first (elements_[0] = id and BFS order scan).
inline std::vector<Perm> left_coset_reps(const GroupPtr& g, const Subgroup& h) {
    require_subgroup(g, h);
    std::vector<bool> covered(g->order(), false);
    std::vector<Perm> reps;
    for (u32 i = 0; i < g->order(); ++i) {
        if (covered[i]) continue;
        const Perm& rep = g->element(i);
        reps.push_back(rep);
        for (const Perm& x : h.group->elements()) {
            auto idx = g->index_of(rep * x);
            covered[*idx] = true;
        }
    }
    return reps;
}

// One representative per double coset K g H (cosets of the form KgH).
inline std::vector<Perm> double_coset_reps(const GroupPtr& g, const Subgroup& h, const Subgroup& k) {
    require_subgroup(g, h);
    require_subgroup(g, k);
    std::vector<bool> covered(g->order(), false);
    std::vector<Perm> reps;
    for (u32 i = 0; i < g->order(); ++i) {
        if (covered[i]) continue;
        const Perm& rep = g->element(i);
        reps.push_back(rep);
        for (const Perm& a : k.group->elements())
            for (const Perm& b : h.group->elements()) {
                auto idx = g->index_of(a * rep * b);
                covered[*idx] = true;
            }
    }
    return reps;
}

inline Subgroup conjugate_subgroup(const Subgroup& d, const Perm& g) {
    if (!d.parent->contains(g)) throw InputError("conjugating element outside parent group");
    Perm ginv = g.inverse();
    std::vector<Perm> gens;
    for (const Perm& s : d.group->generators()) gens.push_back(g * s * ginv);
    Subgroup out = Subgroup::generated(d.parent, gens);
    if (out.order() != d.order()) throw VerificationError("conjugation changed subgroup order");
    return out;
}

// x D x^{-1} subseteq D suffices for equality at finite order.
inline bool normalizes(const Perm& x, const Subgroup& d) {
    Perm xinv = x.inverse();
    for (const Perm& s : d.group->generators())
        if (!d.contains(x * s * xinv)) return false;
    return true;
}

inline Subgroup normalizer(const GroupPtr& g, const Subgroup& d) {
    require_subgroup(g, d);
    std::vector<Perm> members;
    for (const Perm& x : g->elements())
        if (normalizes(x, d)) members.push_back(x);
    return Subgroup::generated(g, members);
}

inline u32 p_part(u32 n, u32 p) {
    u32 q = 1;
    while (n % p == 0) { n /= p; q *= p; }
    return q;
}

// Sylow p-subgroup by greedy growth: start at the first p-element in BFS
// order, repeatedly adjoin the first element keeping the span a p-group.
// Any proper p-subgroup is properly normalized inside a Sylow overgroup, so
// the scan always finds an extension.
inline Subgroup sylow(const GroupPtr& g, u32 p) {
    u32 target = p_part(g->order(), p);
    Subgroup q = Subgroup::trivial(g);
    while (q.order() < target) {
        bool grown = false;
        for (const Perm& x : g->elements()) {
            if (x.is_identity() || q.contains(x)) continue;
            u32 ord = x.order();
            // p-element test
            if (p_part(ord, p) != ord) continue;
            std::vector<Perm> gens = q.group->generators();
            gens.push_back(x);
            Subgroup cand = Subgroup::generated(g, gens);
            if (p_part(cand.order(), p) != cand.order()) continue;
            q = cand;
            grown = true;
            break;
        }
        if (!grown) throw VerificationError("sylow growth stalled"); // unreachable for correct input
    }
    return q;
}

// Every subgroup of a small group, by closure: extend each known subgroup by
// each element. Deterministic order: sorted by (order, element image lists).
inline std::vector<Subgroup> all_subgroups(const Subgroup& g, u32 size_cap = 256) {
    if (g.order() > size_cap) throw ResourceError("all_subgroups size cap exceeded");
    std::vector<Subgroup> found;
    found.push_back(Subgroup::generated(g.parent, {}));
    auto known = [&](const Subgroup& s) {
        for (const Subgroup& t : found)
            if (t.same_elements(s)) return true;
        return false;
    };
    for (std::size_t head = 0; head < found.size(); ++head) {
        for (const Perm& x : g.group->elements()) {
            if (found[head].contains(x)) continue;
            std::vector<Perm> gens = found[head].group->generators();
            gens.push_back(x);
            Subgroup cand = Subgroup::generated(g.parent, gens);
            if (!cand.subset_of(g)) continue;
            if (!known(cand)) found.push_back(cand);
        }
    }
    std::sort(found.begin(), found.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        std::vector<std::vector<u32>> ea, eb;
        for (const Perm& x : a.group->elements()) ea.push_back(x.images());
        for (const Perm& x : b.group->elements()) eb.push_back(x.images());
        std::sort(ea.begin(), ea.end());
        std::sort(eb.begin(), eb.end());
        return ea < eb;
    });
    return found;
}

// Maximal subgroups of a p-group are exactly those of index p.
inline std::vector<Subgroup> maximal_subgroups_of_p_group(const Subgroup& q, u32 p) {
    std::vector<Subgroup> out;
    for (const Subgroup& s : all_subgroups(q))
        if (s.order() * p == q.order()) out.push_back(s);
    return out;
}

// True iff some x in G conjugates A into B; returns a witness.
inline std::optional<Perm> is_subconjugate(const GroupPtr& g, const Subgroup& a, const Subgroup& b) {
    require_subgroup(g, a);
    require_subgroup(g, b);
    if (a.order() > b.order()) return std::nullopt;
    for (const Perm& x : g->elements()) {
        Perm xinv = x.inverse();
        bool ok = true;
        for (const Perm& s : a.group->generators())
            if (!b.contains(x * s * xinv)) { ok = false; break; }
        if (ok) return x;
    }
    return std::nullopt;
}

inline Subgroup intersect(const Subgroup& h, const Subgroup& k) {
    if (h.parent != k.parent && !(h.parent->order() == k.parent->order()))
        throw InputError("intersect: parent mismatch");
    std::vector<Perm> members;
    for (const Perm& x : h.group->elements())
        if (k.contains(x)) members.push_back(x);
    return Subgroup::generated(h.parent, members);
}

inline bool is_p_group(const Subgroup& s, u32 p) {
    return p_part(s.order(), p) == s.order();
}

} // namespace greenrep
