#include <doctest.h>

#include "greenrep/green.hpp"

using namespace greenrep;

namespace {

GroupPtr s3() {
    return PermGroup::enumerate(3, {Perm::parse_cycles("(0 1 2)", 3), Perm::parse_cycles("(0 1)", 3)});
}
GroupPtr s4() {
    return PermGroup::enumerate(4, {Perm::parse_cycles("(0 1 2 3)", 4), Perm::parse_cycles("(0 1)", 4)});
}
GroupPtr a4() {
    return PermGroup::enumerate(4, {Perm::parse_cycles("(0 1 2)", 4), Perm::parse_cycles("(1 2 3)", 4)});
}

// G = S_4, p = 3, D = C_3, H = N_G(D) = S_3 on {0,1,2}
Scenario s4_scenario() {
    auto g = s4();
    auto d = Subgroup::generated(g, {Perm::parse_cycles("(0 1 2)", 4)});
    auto h = Subgroup::generated(g, {Perm::parse_cycles("(0 1 2)", 4), Perm::parse_cycles("(0 1)", 4)});
    return build_scenario(g, 3, d, h, "s4_p3");
}

// G = S_3, p = 2, D = H = <(0 1)> (trivial intersection / self-normalizing)
Scenario s3_scenario() {
    auto g = s3();
    auto d = Subgroup::generated(g, {Perm::parse_cycles("(0 1)", 3)});
    return build_scenario(g, 2, d, d, "s3_p2");
}

// degenerate: G = H = A_4, D = V_4 normal, p = 2
Scenario a4_scenario() {
    auto g = a4();
    auto d = Subgroup::generated(g, {Perm::parse_cycles("(0 1)(2 3)", 4), Perm::parse_cycles("(0 2)(1 3)", 4)});
    return build_scenario(g, 2, d, Subgroup::whole(g), "a4_p2");
}

} // namespace

TEST_CASE("build_scenario") {
    SUBCASE("S_4 / S_3 / C_3 / p=3: xfam and yfam are the trivial class") {
        auto s = s4_scenario();
        CHECK(s.d_is_p_group);
        CHECK(s.h_contains_normalizer);
        REQUIRE(s.xfam.members.size() == 1);
        CHECK(s.xfam.members[0].order() == 1);
        REQUIRE(s.yfam.members.size() == 1);
        CHECK(s.yfam.members[0].order() == 1);
        CHECK_NOTHROW(s.yfam.verify_closure());
        CHECK_NOTHROW(s.xfam.verify_closure());
    }
    SUBCASE("S_3 / <(0 1)> / p=2: trivial families") {
        auto s = s3_scenario();
        REQUIRE(s.yfam.members.size() == 1);
        CHECK(s.yfam.members[0].order() == 1);
        REQUIRE(s.xfam.members.size() == 1);
        CHECK(s.xfam.members[0].order() == 1);
    }
    SUBCASE("degenerate H = G: empty families") {
        auto s = a4_scenario();
        CHECK(s.yfam.empty());
        CHECK(s.xfam.empty());
    }
    SUBCASE("D not a p-group rejected") {
        auto g = s4();
        auto d = Subgroup::generated(g, {Perm::parse_cycles("(0 1 2)", 4), Perm::parse_cycles("(0 1)", 4)});
        CHECK_THROWS_AS(build_scenario(g, 3, d, Subgroup::whole(g)), InputError);
    }
    SUBCASE("normalizer violation rejected") {
        auto g = s4();
        auto d = Subgroup::generated(g, {Perm::parse_cycles("(0 1)(2 3)", 4)});
        // N_G(D) is a dihedral group of order 8, not contained in D itself
        CHECK_THROWS_AS(build_scenario(g, 2, d, d), InputError);
    }
    SUBCASE("S_4 Sylow-2 scenario: yfam is the closure of V_4") {
        auto g = s4();
        auto d = Subgroup::generated(g, {Perm::parse_cycles("(0 1 2 3)", 4), Perm::parse_cycles("(0 2)", 4)});
        REQUIRE(d.order() == 8);
        auto s = build_scenario(g, 2, d, d, "s4_p2");
        // yfam: 1, the two H-classes of double transpositions (central and
        // not), V_4; xfam fuses the two C_2 classes under G-conjugacy
        CHECK(s.yfam.members.size() == 4);
        CHECK(s.yfam.members.back().order() == 4);
        CHECK(s.xfam.members.size() == 3);
    }
}

TEST_CASE("check_dagger") {
    SUBCASE("S_4 scenario, default basket") {
        auto s = s4_scenario();
        auto rep = check_dagger(s);
        CHECK(rep.ok);
        CHECK(s.dagger_checked);
        REQUIRE(rep.items.size() == 2);
    }
    SUBCASE("S_3 scenario, regular kD") {
        auto s = s3_scenario();
        auto rep = check_dagger(s, {regular_module(s.d.group, 2)});
        CHECK(rep.ok);
        for (const auto& [dim, ok] : rep.items[0].final_summands) CHECK(ok);
    }
    SUBCASE("degenerate scenario: vacuous, Y0 empty") {
        auto s = a4_scenario();
        auto rep = check_dagger(s);
        CHECK(rep.ok);
        for (const auto& item : rep.items) CHECK(item.y0_dim == 0);
    }
}

TEST_CASE("green_g on the S_4 scenario") {
    auto s = s4_scenario();
    SUBCASE("trivial kS_3 corresponds to trivial kS_4") {
        auto n = trivial_module(s.h.group, 3);
        auto gp = green_g(n, s);
        CHECK(gp.over_g->dim() == 1);
        REQUIRE(is_isomorphic(gp.over_g, trivial_module(s.g, 3)));
        REQUIRE(gp.discarded.size() == 1);
        CHECK(gp.discarded[0].module->dim() == 3);
        CHECK(gp.discarded[0].vertex_order == 1); // projective complement
        CHECK(gp.surviving.projection.matrix.mul(gp.surviving.inclusion.matrix).is_identity());
    }
    SUBCASE("sign kS_3: correspondent has vertex C_3, discarded projective") {
        auto n = Module::make(s.h.group, 3,
                              {Mat::from_rows({{1}}, 3), Mat::from_rows({{2}}, 3)}, "sign");
        auto gp = green_g(n, s);
        auto vr = vertex(gp.over_g);
        CHECK(vr.vertex.order() == 3);
        for (const auto& d : gp.discarded) CHECK(d.vertex_order == 1);
    }
    SUBCASE("decomposable input rejected") {
        auto n = direct_sum({trivial_module(s.h.group, 3), trivial_module(s.h.group, 3)}).module;
        CHECK_THROWS_AS(green_g(n, s), InputError);
    }
    SUBCASE("projective input rejected (vertex not conjugate to D)") {
        auto reg = indecomposable_summands(regular_module(s.h.group, 3)).summands;
        CHECK_THROWS_AS(green_g(reg[0].module, s), InputError);
    }
}

TEST_CASE("green_f on the S_4 scenario") {
    auto s = s4_scenario();
    SUBCASE("trivial kS_4 restricts to trivial kS_3 with nothing discarded") {
        auto gp = green_f(trivial_module(s.g, 3), s);
        CHECK(gp.over_h->dim() == 1);
        REQUIRE(is_isomorphic(gp.over_h, trivial_module(s.h.group, 3)));
        CHECK(gp.discarded.empty());
    }
    SUBCASE("f of a green_g output is defined and returns to N") {
        auto n = trivial_module(s.h.group, 3);
        auto gp = green_g(n, s);
        auto fp = green_f(gp.over_g, s);
        REQUIRE(is_isomorphic(fp.over_h, n));
    }
}

TEST_CASE("degenerate scenario: f and g are the identity") {
    auto s = a4_scenario();
    auto n = trivial_module(s.h.group, 2);
    auto gp = green_g(n, s);
    CHECK(gp.over_g->dim() == n->dim());
    REQUIRE(is_isomorphic(gp.over_g, n));
    CHECK(gp.discarded.empty());
    auto fp = green_f(gp.over_g, s);
    REQUIRE(is_isomorphic(fp.over_h, n));
}

TEST_CASE("S_3 scenario (trivial intersection)") {
    auto s = s3_scenario();
    auto n = trivial_module(s.h.group, 2);
    auto gp = green_g(n, s);
    CHECK(gp.transported->dim() == 3);
    CHECK(gp.over_g->dim() == 1);
    REQUIRE(is_isomorphic(gp.over_g, trivial_module(s.g, 2)));
    REQUIRE(gp.discarded.size() == 1);
    CHECK(gp.discarded[0].module->dim() == 2);
    auto rt = verify_round_trip(s, {n});
    CHECK(rt.ok);
}

TEST_CASE("harvest_basket") {
    SUBCASE("S_4 scenario: non-projective kS_3 classes with vertex C_3") {
        auto s = s4_scenario();
        auto basket = harvest_basket(s);
        REQUIRE(!basket.empty());
        CHECK(basket.size() <= 12);
        for (const ModulePtr& n : basket) {
            auto vr = vertex(n);
            CHECK(conjugate_in(s.g, Subgroup(s.g, vr.vertex.group), s.d));
            CHECK(is_indecomposable(n));
        }
        // the four non-projective indecomposables of kS_3 at p = 3
        CHECK(basket.size() == 4);
    }
    SUBCASE("degenerate scenario harvest is nonempty") {
        auto s = a4_scenario();
        CHECK(!harvest_basket(s).empty());
    }
}

TEST_CASE("verify_round_trip over the harvested basket") {
    auto s = s4_scenario();
    auto basket = harvest_basket(s);
    auto rep = verify_round_trip(s, basket);
    CHECK(rep.ok);
    CHECK(rep.entries.size() == basket.size());
    for (const auto& e : rep.entries) {
        CHECK(e.gn->group() == s.g);
        CHECK(e.fgn->group() == s.h.group);
    }
}

TEST_CASE("stable_hom_correspondence") {
    SUBCASE("trivial vs trivial in the S_4 scenario: both dims 1") {
        auto s = s4_scenario();
        auto n = trivial_module(s.h.group, 3);
        auto rep = stable_hom_correspondence(s, n, n);
        CHECK(rep.ok);
        CHECK(rep.d_h == 1);
        CHECK(rep.d_g == 1);
        CHECK(rep.maps_checked >= 1);
    }
    SUBCASE("degenerate scenario: identical computations") {
        auto s = a4_scenario();
        auto n = trivial_module(s.h.group, 2);
        auto rep = stable_hom_correspondence(s, n, n);
        CHECK(rep.ok);
        CHECK(rep.d_h == rep.d_g);
    }
    SUBCASE("zero hom space: both dims 0") {
        auto s = s4_scenario();
        auto k = trivial_module(s.h.group, 3);
        auto sgn = Module::make(s.h.group, 3,
                                {Mat::from_rows({{1}}, 3), Mat::from_rows({{2}}, 3)}, "sign");
        REQUIRE(hom_dim(k, sgn) == 0);
        auto rep = stable_hom_correspondence(s, k, sgn);
        CHECK(rep.d_h == 0);
        CHECK(rep.d_g == 0);
    }
}
