#include <doctest.h>

#include "greenrep/decomp.hpp"

using namespace greenrep;

namespace {

GroupPtr c2() { return PermGroup::enumerate(2, {Perm::parse_cycles("(0 1)", 2)}); }
GroupPtr c3() { return PermGroup::enumerate(3, {Perm::parse_cycles("(0 1 2)", 3)}); }
GroupPtr s3() {
    return PermGroup::enumerate(3, {Perm::parse_cycles("(0 1 2)", 3), Perm::parse_cycles("(0 1)", 3)});
}
GroupPtr s4() {
    return PermGroup::enumerate(4, {Perm::parse_cycles("(0 1 2 3)", 4), Perm::parse_cycles("(0 1)", 4)});
}

ModulePtr sign_s3(const GroupPtr& g, u32 p) {
    return Module::make(g, p, {Mat::from_rows({{1}}, p), Mat::from_rows({{p - 1}}, p)}, "sign");
}

} // namespace

TEST_CASE("fitting_split") {
    auto g = s3();
    auto k = trivial_module(g, 3);
    auto sgn = sign_s3(g, 3);
    auto sum = direct_sum({k, sgn});
    SUBCASE("identity gives no split") {
        Mat id = Mat::identity(2, 3);
        CHECK_FALSE(fitting_split(sum.module, ModuleMap(sum.module, sum.module, id)));
    }
    SUBCASE("zero gives no split") {
        CHECK_FALSE(fitting_split(sum.module, ModuleMap(sum.module, sum.module, Mat(2, 2, 3))));
    }
    SUBCASE("idempotent inj o proj splits its own decomposition") {
        Mat e = sum.inj[0].matrix.mul(sum.proj[0].matrix);
        auto split = fitting_split(sum.module, ModuleMap(sum.module, sum.module, e));
        REQUIRE(split);
        CHECK(split->first.module->dim() == 1);
        CHECK(split->second.module->dim() == 1);
        CHECK(split->first.projection.matrix.mul(split->first.inclusion.matrix).is_identity());
        CHECK(split->first.inclusion.is_equivariant());
        CHECK(split->second.inclusion.is_equivariant());
    }
    SUBCASE("non-endomorphism is rejected") {
        CHECK_THROWS_AS(fitting_split(sum.module, ModuleMap(sum.module, sum.module, Mat::from_rows({{1, 1}, {0, 1}}, 3))),
                        InputError);
    }
}

TEST_CASE("indecomposable_summands") {
    SUBCASE("regular kC_2 over GF(3): Maschke splits into two characters") {
        auto d = indecomposable_summands(regular_module(c2(), 3));
        REQUIRE(d.summands.size() == 2);
        CHECK(d.summands[0].module->dim() == 1);
        CHECK(d.summands[1].module->dim() == 1);
        ClassRegistry reg;
        auto classes = classify(d, reg);
        CHECK(classes.size() == 2); // trivial and sign are distinct
    }
    SUBCASE("regular kC_2 over GF(2): local algebra, indecomposable") {
        auto d = indecomposable_summands(regular_module(c2(), 2));
        REQUIRE(d.summands.size() == 1);
        CHECK(d.summands[0].module->dim() == 2);
    }
    SUBCASE("natural permutation module of S_4 over GF(3): dims {1, 3}") {
        auto g = s4();
        auto m = permutation_module(g, 3);
        // oracle cross-check forcing the shape: dim Hom(perm, trivial) = 1
        CHECK(hom_dim(m, trivial_module(g, 3)) == 1);
        auto d = indecomposable_summands(m);
        REQUIRE(d.summands.size() == 2);
        CHECK(d.summands[0].module->dim() == 3);
        CHECK(d.summands[1].module->dim() == 1);
    }
}

TEST_CASE("is_indecomposable") {
    auto g = s3();
    SUBCASE("dim-1 modules") {
        CHECK(is_indecomposable(trivial_module(g, 3)));
        CHECK(is_indecomposable(sign_s3(g, 3)));
    }
    SUBCASE("trivial + trivial is decomposable") {
        auto sum = direct_sum({trivial_module(g, 3), trivial_module(g, 3)});
        CHECK_FALSE(is_indecomposable(sum.module));
    }
    SUBCASE("regular kC_3 over GF(3) is indecomposable") {
        CHECK(is_indecomposable(regular_module(c3(), 3)));
    }
}

TEST_CASE("Krull-Schmidt stability over seeds") {
    auto g = s3();
    auto m = direct_sum({regular_module(g, 3), permutation_module(g, 3)}).module;
    ClassRegistry reg;
    std::vector<std::vector<ClassCount>> runs;
    for (u64 seed : {1ull, 2ull, 3ull, 5ull, 8ull, 13ull, 21ull, 34ull, 55ull, 89ull}) {
        auto d = indecomposable_summands(m, seed);
        auto classes = classify(d, reg);
        std::sort(classes.begin(), classes.end(),
                  [](const ClassCount& a, const ClassCount& b) { return a.class_id < b.class_id; });
        runs.push_back(classes);
    }
    for (std::size_t i = 1; i < runs.size(); ++i) {
        REQUIRE(runs[i].size() == runs[0].size());
        for (std::size_t j = 0; j < runs[0].size(); ++j) {
            CHECK(runs[i][j].class_id == runs[0][j].class_id);
            CHECK(runs[i][j].multiplicity == runs[0][j].multiplicity);
        }
    }
}

TEST_CASE("reassembly: sum of summands is isomorphic to the parent") {
    auto g = s3();
    for (ModulePtr m : {permutation_module(g, 3), regular_module(g, 2)}) {
        auto d = indecomposable_summands(m);
        std::vector<ModulePtr> parts;
        for (const auto& s : d.summands) parts.push_back(s.module);
        auto sum = direct_sum(parts);
        REQUIRE(is_isomorphic(sum.module, m));
    }
}

TEST_CASE("classify multiplicities") {
    auto g = s3();
    auto k = trivial_module(g, 3);
    SUBCASE("M + M gives one class with multiplicity 2") {
        auto d = indecomposable_summands(direct_sum({k, k}).module);
        ClassRegistry reg;
        auto classes = classify(d, reg);
        REQUIRE(classes.size() == 1);
        CHECK(classes[0].multiplicity == 2);
    }
    SUBCASE("zero module has an empty class list") {
        auto d = indecomposable_summands(zero_module(g, 3));
        ClassRegistry reg;
        CHECK(classify(d, reg).empty());
    }
    SUBCASE("trivial + sign: two classes") {
        auto d = indecomposable_summands(direct_sum({k, sign_s3(g, 3)}).module);
        ClassRegistry reg;
        auto classes = classify(d, reg);
        REQUIRE(classes.size() == 2);
        CHECK(classes[0].multiplicity == 1);
        CHECK(classes[1].multiplicity == 1);
    }
}

TEST_CASE("semisimple endomorphism count: sum of multiplicity^2 = dim End") {
    // GF(3), C_2: p does not divide |G|, simples have 1-dim endo rings
    auto g = c2();
    auto m = direct_sum({regular_module(g, 3), trivial_module(g, 3)}).module;
    auto d = indecomposable_summands(m);
    ClassRegistry reg;
    auto classes = classify(d, reg);
    u32 sum_sq = 0;
    for (const auto& c : classes) sum_sq += c.multiplicity * c.multiplicity;
    CHECK(sum_sq == hom_dim(m, m));
}
