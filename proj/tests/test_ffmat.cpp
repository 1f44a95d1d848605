#include <doctest.h>

#include <random>

#include "greenrep/ffmat.hpp"

using namespace greenrep;

namespace {

Mat random_matrix(u32 rows, u32 cols, u32 p, std::mt19937_64& rng) {
    Mat m(rows, cols, p);
    std::uniform_int_distribution<u32> d(0, p - 1);
    for (u32 i = 0; i < rows; ++i)
        for (u32 j = 0; j < cols; ++j) m(i, j) = d(rng);
    return m;
}

} // namespace

TEST_CASE("rref: identity is already reduced") {
    Mat id = Mat::identity(3, 2);
    auto r = rref(id);
    CHECK(r.reduced == id);
    CHECK(r.pivots == std::vector<u32>{0, 1, 2});
}

TEST_CASE("rref: zero matrix") {
    Mat z(2, 2, 3);
    auto r = rref(z);
    CHECK(r.reduced == z);
    CHECK(r.pivots.empty());
}

TEST_CASE("rref: equal rows collapse over GF(2)") {
    Mat m = Mat::from_rows({{1, 1}, {1, 1}}, 2);
    auto r = rref(m);
    CHECK(r.reduced == Mat::from_rows({{1, 1}, {0, 0}}, 2));
    CHECK(r.pivots == std::vector<u32>{0});
}

TEST_CASE("rref is idempotent") {
    std::mt19937_64 rng(7);
    for (u32 p : {2u, 3u, 5u}) {
        Mat m = random_matrix(6, 9, p, rng);
        Mat once = rref(m).reduced;
        CHECK(rref(once).reduced == once);
    }
}

TEST_CASE("nullspace: single relation over GF(2)") {
    Mat m = Mat::from_rows({{1, 1}}, 2);
    auto b = nullspace(m);
    REQUIRE(b.size() == 1);
    CHECK(b[0](0, 0) == 1);
    CHECK(b[0](1, 0) == 1);
}

TEST_CASE("nullspace: invertible matrix has empty basis") {
    Mat m = Mat::from_rows({{1, 2}, {0, 1}}, 5);
    CHECK(nullspace(m).empty());
}

TEST_CASE("nullspace: zero 2x3 over GF(5) has 3 basis vectors") {
    Mat m(2, 3, 5);
    CHECK(nullspace(m).size() == 3);
}

TEST_CASE("rank-nullity on random matrices") {
    std::mt19937_64 rng(11);
    for (u32 p : {2u, 3u, 7u, 31u}) {
        for (int t = 0; t < 20; ++t) {
            Mat m = random_matrix(5, 8, p, rng);
            auto ker = nullspace(m);
            CHECK(rank(m) + ker.size() == m.cols());
            for (const Mat& v : ker) CHECK(m.mul(v).is_zero());
        }
    }
}

TEST_CASE("solve: identity system") {
    Mat a = Mat::identity(3, 7);
    Mat b = Mat::from_rows({{1}, {4}, {6}}, 7);
    auto x = solve(a, b);
    REQUIRE(x);
    CHECK(*x == b);
}

TEST_CASE("solve: inconsistent rows over GF(2)") {
    Mat a = Mat::from_rows({{1, 1}, {1, 1}}, 2);
    Mat b = Mat::from_rows({{1}, {0}}, 2);
    CHECK_FALSE(solve(a, b));
}

TEST_CASE("solve: 2x = 1 over GF(5)") {
    Mat a = Mat::from_rows({{2}}, 5);
    Mat b = Mat::from_rows({{1}}, 5);
    auto x = solve(a, b);
    REQUIRE(x);
    CHECK((*x)(0, 0) == 3);
}

TEST_CASE("solve postconditions on random systems") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 30; ++t) {
        u32 p = (t % 2) ? 3 : 5;
        Mat a = random_matrix(5, 4, p, rng);
        Mat b = random_matrix(5, 2, p, rng);
        auto x = solve(a, b);
        if (x) {
            CHECK(a.mul(*x) == b);
        } else {
            CHECK(rank(a.hstack(b)) > rank(a));
        }
    }
}

TEST_CASE("invert: identity and involution") {
    CHECK(*invert(Mat::identity(4, 3)) == Mat::identity(4, 3));
    Mat swp = Mat::from_rows({{0, 1}, {1, 0}}, 3);
    CHECK(*invert(swp) == swp);
}

TEST_CASE("invert: singular matrix") {
    Mat m = Mat::from_rows({{1, 1}, {1, 1}}, 2);
    CHECK_FALSE(invert(m));
}

TEST_CASE("invert gives two-sided inverse on random invertibles") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 20; ++t) {
        Mat m = random_matrix(5, 5, 7, rng);
        auto x = invert(m);
        if (!x) continue;
        CHECK(m.mul(*x).is_identity());
        CHECK(x->mul(m).is_identity());
    }
}

TEST_CASE("solve rejects dimension and prime mismatches") {
    Mat a(2, 2, 3), b(3, 1, 3), c(2, 1, 5);
    CHECK_THROWS_AS((void)solve(a, b), InputError);
    CHECK_THROWS_AS((void)solve(a, c), InputError);
    CHECK_THROWS_AS((void)invert(Mat(2, 3, 3)), InputError);
}

TEST_CASE("subspace: coordinate span over GF(2)") {
    auto s = Subspace::span({Mat::from_rows({{1}, {0}}, 2), Mat::from_rows({{0}, {1}}, 2)}, 2, 2);
    CHECK(s.dimension() == 2);
    CHECK(s.contains_row(Mat::from_rows({{1, 1}}, 2)));
}

TEST_CASE("subspace: empty span") {
    Subspace s(4, 3);
    CHECK(s.dimension() == 0);
    CHECK(s.contains_row(Mat(1, 4, 3)));
    CHECK_FALSE(s.contains_row(Mat::from_rows({{1, 0, 0, 0}}, 3)));
}

TEST_CASE("subspace: sum and intersection of coordinate subspaces over GF(3)") {
    auto u = Subspace::span_rows(Mat::from_rows({{1, 0, 0}, {0, 1, 0}}, 3));
    auto v = Subspace::span_rows(Mat::from_rows({{0, 1, 0}, {0, 0, 1}}, 3));
    auto w = u.intersect(v);
    CHECK(w.dimension() == 1);
    CHECK(w.contains_row(Mat::from_rows({{0, 1, 0}}, 3)));
    CHECK(u.sum(v).dimension() == 3);
}

TEST_CASE("dimension formula on random subspaces") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 25; ++t) {
        u32 p = (t % 2) ? 2 : 5;
        auto u = Subspace::span_rows(random_matrix(3, 6, p, rng));
        auto v = Subspace::span_rows(random_matrix(3, 6, p, rng));
        CHECK(u.sum(v).dimension() + u.intersect(v).dimension() == u.dimension() + v.dimension());
    }
}

TEST_CASE("complement extends a basis") {
    auto u = Subspace::span_rows(Mat::from_rows({{1, 1, 0}, {0, 1, 1}}, 2));
    Mat ext = u.complement_in(Subspace::full(3, 2));
    CHECK(ext.rows() == 1);
    auto all = u.sum(Subspace::span_rows(ext));
    CHECK(all.dimension() == 3);
}

TEST_CASE("determinism: identical inputs give identical outputs") {
    std::mt19937_64 rng(29);
    Mat m = random_matrix(7, 7, 31, rng);
    auto a = rref(m);
    auto b = rref(m);
    CHECK(a.reduced == b.reduced);
    CHECK(a.pivots == b.pivots);
}

TEST_CASE("prime validation") {
    CHECK_THROWS_AS(Mat(2, 2, 4), InputError);
    CHECK_THROWS_AS(Mat(2, 2, 37), InputError);
    CHECK_THROWS_AS(Mat(2, 2, 1), InputError);
}
