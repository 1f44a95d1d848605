#include <doctest.h>

#include <set>

#include "greenrep/grp.hpp"

using namespace greenrep;

namespace {

GroupPtr s3() {
    return PermGroup::enumerate(3, {Perm::parse_cycles("(0 1 2)", 3), Perm::parse_cycles("(0 1)", 3)});
}

GroupPtr s4() {
    return PermGroup::enumerate(4, {Perm::parse_cycles("(0 1 2 3)", 4), Perm::parse_cycles("(0 1)", 4)});
}

// Independent oracle: partition G into K g H orbits by brute force.
u32 count_double_cosets(const GroupPtr& g, const Subgroup& h, const Subgroup& k) {
    std::set<Perm> seen;
    u32 count = 0;
    for (const Perm& x : g->elements()) {
        if (seen.count(x)) continue;
        ++count;
        for (const Perm& a : k.group->elements())
            for (const Perm& b : h.group->elements()) seen.insert(a * x * b);
    }
    return count;
}

} // namespace

TEST_CASE("enumerate S_3, S_4, trivial group") {
    CHECK(s3()->order() == 6);
    CHECK(s4()->order() == 24);
    CHECK(PermGroup::enumerate(4, {})->order() == 1);
}

TEST_CASE("words evaluate back to their elements") {
    auto g = s4();
    for (u32 i = 0; i < g->order(); ++i) {
        Perm prod = Perm::identity(4);
        for (u32 gi : g->word(i)) prod = prod * g->generators()[gi];
        CHECK(prod == g->element(i));
    }
}

TEST_CASE("order cap is enforced") {
    CHECK_THROWS_AS(PermGroup::enumerate(4, {Perm::parse_cycles("(0 1 2 3)", 4), Perm::parse_cycles("(0 1)", 4)}, 10),
                    ResourceError);
}

TEST_CASE("generator degree mismatch") {
    CHECK_THROWS_AS(PermGroup::enumerate(3, {Perm::parse_cycles("(0 1 2 3)", 4)}), InputError);
}

TEST_CASE("cycle parsing round trips and rejects junk") {
    Perm p = Perm::parse_cycles("(0 1 2)(3 4)", 5);
    CHECK(p.apply(0) == 1);
    CHECK(p.apply(3) == 4);
    CHECK(Perm::parse_cycles(p.cycle_string(), 5) == p);
    CHECK(Perm::parse_cycles("()", 3).is_identity());
    CHECK_THROWS_AS(Perm::parse_cycles("(0 9)", 3), InputError);
    CHECK_THROWS_AS(Perm::parse_cycles("(0 1", 3), InputError);
    CHECK_THROWS_AS(Perm::parse_cycles("abc", 3), InputError);
}

TEST_CASE("left cosets: identity first, exact cover") {
    auto g = s3();
    SUBCASE("H = G") {
        auto reps = left_coset_reps(g, Subgroup::whole(g));
        REQUIRE(reps.size() == 1);
        CHECK(reps[0].is_identity());
    }
    SUBCASE("H trivial") {
        CHECK(left_coset_reps(g, Subgroup::trivial(g)).size() == 6);
    }
    SUBCASE("H = <(0 1)>") {
        auto h = Subgroup::generated(g, {Perm::parse_cycles("(0 1)", 3)});
        auto reps = left_coset_reps(g, h);
        REQUIRE(reps.size() == 3);
        CHECK(reps[0].is_identity());
        // disjoint cover
        std::set<Perm> all;
        for (const Perm& r : reps)
            for (const Perm& x : h.group->elements()) all.insert(r * x);
        CHECK(all.size() == 6);
    }
}

TEST_CASE("double cosets match the exhaustive oracle") {
    auto g = s3();
    auto h = Subgroup::generated(g, {Perm::parse_cycles("(0 1)", 3)});
    SUBCASE("h = k = G") {
        CHECK(double_coset_reps(g, Subgroup::whole(g), Subgroup::whole(g)).size() == 1);
    }
    SUBCASE("h = k = trivial") {
        CHECK(double_coset_reps(g, Subgroup::trivial(g), Subgroup::trivial(g)).size() == 6);
    }
    SUBCASE("S_3 with h = k = <(0 1)>") {
        auto reps = double_coset_reps(g, h, h);
        CHECK(reps.size() == count_double_cosets(g, h, h));
        CHECK(reps.size() == 2);
        CHECK(reps[0].is_identity());
    }
    SUBCASE("cover of G is exact in S_4") {
        auto g4 = s4();
        auto a = Subgroup::generated(g4, {Perm::parse_cycles("(0 1 2)", 4)});
        auto b = Subgroup::generated(g4, {Perm::parse_cycles("(0 1)", 4), Perm::parse_cycles("(2 3)", 4)});
        auto reps = double_coset_reps(g4, a, b);
        CHECK(reps.size() == count_double_cosets(g4, a, b));
        std::set<Perm> all;
        for (const Perm& r : reps)
            for (const Perm& x : b.group->elements())
                for (const Perm& y : a.group->elements()) all.insert(x * r * y);
        CHECK(all.size() == 24);
    }
}

TEST_CASE("conjugate subgroup") {
    auto g = s4();
    auto d = Subgroup::generated(g, {Perm::parse_cycles("(0 1 2)", 4)});
    SUBCASE("by identity") {
        CHECK(conjugate_subgroup(d, Perm::identity(4)).same_elements(d));
    }
    SUBCASE("three-cycle moves") {
        auto c = conjugate_subgroup(d, Perm::parse_cycles("(2 3)", 4));
        auto expected = Subgroup::generated(g, {Perm::parse_cycles("(0 1 3)", 4)});
        CHECK(c.same_elements(expected));
    }
    SUBCASE("normal subgroup is fixed") {
        auto v4 = Subgroup::generated(g, {Perm::parse_cycles("(0 1)(2 3)", 4), Perm::parse_cycles("(0 2)(1 3)", 4)});
        for (const Perm& x : g->elements()) CHECK(conjugate_subgroup(v4, x).same_elements(v4));
    }
    SUBCASE("element outside parent") {
        CHECK_THROWS_AS(conjugate_subgroup(d, Perm::parse_cycles("(0 1 2)", 5)), InputError);
    }
}

TEST_CASE("normalizer") {
    auto g = s4();
    SUBCASE("whole group") {
        CHECK(normalizer(g, Subgroup::whole(g)).order() == 24);
    }
    SUBCASE("normal subgroup") {
        auto v4 = Subgroup::generated(g, {Perm::parse_cycles("(0 1)(2 3)", 4), Perm::parse_cycles("(0 2)(1 3)", 4)});
        CHECK(normalizer(g, v4).order() == 24);
    }
    SUBCASE("Sylow-3 of S_4 has normalizer of order 6") {
        auto d = Subgroup::generated(g, {Perm::parse_cycles("(0 1 2)", 4)});
        auto n = normalizer(g, d);
        CHECK(n.order() == 6);
        CHECK(d.subset_of(n));
    }
}

TEST_CASE("sylow subgroups") {
    auto g4 = s4();
    CHECK(sylow(g4, 2).order() == 8);
    CHECK(sylow(g4, 3).order() == 3);
    CHECK(sylow(g4, 5).order() == 1);
    auto g3 = s3();
    auto p3 = sylow(g3, 3);
    CHECK(p3.order() == 3);
    CHECK(p3.contains(Perm::parse_cycles("(0 1 2)", 3)));
}

TEST_CASE("all_subgroups") {
    auto g = s4();
    SUBCASE("C_3") {
        auto c3 = Subgroup::generated(g, {Perm::parse_cycles("(0 1 2)", 4)});
        CHECK(all_subgroups(c3).size() == 2);
    }
    SUBCASE("V_4 has 5 subgroups") {
        auto v4 = Subgroup::generated(g, {Perm::parse_cycles("(0 1)(2 3)", 4), Perm::parse_cycles("(0 2)(1 3)", 4)});
        CHECK(all_subgroups(v4).size() == 5);
    }
    SUBCASE("D_8 has 10 subgroups, matching a subset brute force") {
        auto d8 = sylow(g, 2);
        auto subs = all_subgroups(d8);
        CHECK(subs.size() == 10);
        // oracle: count subsets of D_8 closed under product and inverse
        const auto& elems = d8.group->elements();
        u32 oracle = 0;
        for (u32 mask = 0; mask < (1u << 8); ++mask) {
            if (!(mask & 1)) continue; // must contain elems[0] = id
            std::set<Perm> sset;
            for (u32 i = 0; i < 8; ++i)
                if (mask & (1u << i)) sset.insert(elems[i]);
            bool closed = true;
            for (const Perm& a : sset)
                for (const Perm& b : sset)
                    if (!sset.count(a * b)) { closed = false; break; }
            if (closed) ++oracle;
        }
        CHECK(oracle == 10);
        // each listed subgroup divides |D_8| (Lagrange)
        for (const auto& s : subs) CHECK(8 % s.order() == 0);
    }
}

TEST_CASE("is_subconjugate") {
    auto g = s4();
    auto a = Subgroup::generated(g, {Perm::parse_cycles("(0 1 2)", 4)});
    auto b = Subgroup::generated(g, {Perm::parse_cycles("(0 1 3)", 4)});
    SUBCASE("trivial into anything") {
        CHECK(is_subconjugate(g, Subgroup::trivial(g), a));
    }
    SUBCASE("reflexive with identity witness") {
        auto w = is_subconjugate(g, a, a);
        REQUIRE(w);
        CHECK(w->is_identity());
    }
    SUBCASE("Sylow-3 subgroups are conjugate, with verified witness") {
        auto w = is_subconjugate(g, a, b);
        REQUIRE(w);
        CHECK(conjugate_subgroup(a, *w).subset_of(b));
    }
    SUBCASE("order obstruction") {
        auto d8 = sylow(g, 2);
        CHECK_FALSE(is_subconjugate(g, d8, a));
    }
}

TEST_CASE("intersect") {
    auto g = s4();
    auto a = Subgroup::generated(g, {Perm::parse_cycles("(0 1 2)", 4)});
    auto b = Subgroup::generated(g, {Perm::parse_cycles("(0 1 3)", 4)});
    CHECK(intersect(a, a).same_elements(a));
    CHECK(intersect(a, Subgroup::trivial(g)).order() == 1);
    CHECK(intersect(a, b).order() == 1);
}

TEST_CASE("Lagrange on every subgroup of S_4's Sylow-2") {
    auto g = s4();
    for (const auto& s : all_subgroups(sylow(g, 2))) CHECK(g->order() % s.order() == 0);
}
