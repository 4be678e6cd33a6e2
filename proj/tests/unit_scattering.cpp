#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "looij/scattering.hpp"

using namespace looij;

namespace {

// Independent loop oracle: rays ordered by atan2, f^e expanded by repeated
// multiplication (e > 0) or by the alternating geometric series (e < 0).
Series oracle_power(const Series& f, long e, int K) {
    Series r = Series::one();
    if (e >= 0) {
        for (long i = 0; i < e; ++i) r = r.mul(f, K);
        return r;
    }
    Series g = f - Series::one(), inv = Series::one(), term = Series::one();
    for (int i = 1; i <= K; ++i) {
        term = term.mul(g, K).scaled(-1);
        inv += term;
    }
    for (long i = 0; i < -e; ++i) r = r.mul(inv, K);
    return r;
}

Series oracle_loop(const Diagram& d, const Series& g, int K) {
    struct R {
        double ang;
        IV u;
        Series f;
    };
    std::vector<R> rs;
    auto ang = [](IV u) {
        double a = std::atan2(double(u.y), double(u.x));
        return a < 0 ? a + 2 * M_PI : a;
    };
    for (auto& w : d.walls) {
        IV u = primitive(w.dir);
        rs.push_back({ang(u), u, w.fn});
        if (w.incoming) rs.push_back({ang(-u), -u, w.fn});
    }
    std::stable_sort(rs.begin(), rs.end(), [](auto& a, auto& b) { return a.ang < b.ang; });
    Series cur = g;
    for (auto& r : rs) {
        Series next;
        for (auto& [k, c] : cur.terms) {
            long e = iwedge(k.m, r.u);
            Series t = Series::mono(k.m, k.cls, c);
            next += t.mul(oracle_power(r.f, e, K), K);
        }
        cur = next;
    }
    return cur;
}

bool oracle_consistent(const Diagram& d, int K) {
    for (IV e : {IV{1, 0}, IV{0, 1}})
        if (!(oracle_loop(d, Series::mono(e, 0, 1), K) == Series::mono(e, 0, 1))) return false;
    return true;
}

Diagram two_walls() {
    Diagram d;
    d.s = 2;
    d.order = 2;
    d.walls.push_back({{1, 0}, Series::one() + Series::mono({-1, 0}, cls_unit(0), 1), true});
    d.walls.push_back({{0, 1}, Series::one() + Series::mono({0, -1}, cls_unit(1), 1), true});
    return d;
}

}  // namespace

TEST_CASE("class packing") {
    Cls c = cls_pack({1, 0, 3});
    CHECK(cls_order(c) == 4);
    CHECK(cls_unpack(c, 3) == std::vector<int>{1, 0, 3});
    CHECK(c + cls_unit(1) == cls_pack({1, 1, 3}));
    CHECK_THROWS_AS(cls_pack(std::vector<int>(17, 0)), DomainError);
}

TEST_CASE("series inverse and powers") {
    Series f = Series::one() + Series::mono({-1, 0}, cls_unit(0), 1) + Series::mono({-1, 0}, cls_unit(1), 1);
    CHECK(f.mul(f.inverse(5), 5) == Series::one());
    CHECK(f.pow(3, 5) == f.mul(f, 5).mul(f, 5));
    CHECK(f.pow(-2, 5).mul(f.pow(2, 5), 5) == Series::one());
    CHECK_THROWS_AS(Series::mono({1, 0}, 0, 2).inverse(3), DomainError);
}

TEST_CASE("wall crossing examples") {
    Series f = Series::one() + Series::mono({-1, 0}, cls_unit(0), 1);
    Series m = Series::mono({0, 1}, 0, 1);
    auto up = wall_cross(m, {1, 0}, f, {0, 1}, 3);
    CHECK(up == m + Series::mono({-1, 1}, cls_unit(0), 1));
    // the other side gives exponent -1: the geometric series
    auto down = wall_cross(m, {1, 0}, f, {0, -1}, 3);
    Series expect = m;
    for (int k = 1; k <= 3; ++k)
        expect += Series::mono({-k, 1}, cls_unit(0) * k, k % 2 ? -1 : 1);
    CHECK(down == expect);
    // parallel exponent
    CHECK(wall_cross(Series::mono({2, 0}, 0, 1), {1, 0}, f, {0, 1}, 3) == Series::mono({2, 0}, 0, 1));
    // forward then back
    CHECK(wall_cross(up, {1, 0}, f, {0, -1}, 3) == m);
    // algebra map
    Series a = Series::mono({1, 2}, 0, 1), b = Series::mono({-3, 1}, cls_unit(1), 2);
    CHECK(wall_cross(a.mul(b, 4), {1, 0}, f, {0, 1}, 4) ==
          wall_cross(a, {1, 0}, f, {0, 1}, 4).mul(wall_cross(b, {1, 0}, f, {0, 1}, 4), 4));
}

TEST_CASE("initial diagrams") {
    auto c = initial_diagram(fx::cubic(), 3);
    CHECK(c.walls.size() == 3);
    CHECK(c.s == 6);
    for (int i = 0; i < 3; ++i) {
        Series t1 = Series::mono(c.m[i], cls_unit(2 * i), 1), t2 = Series::mono(c.m[i], cls_unit(2 * i + 1), 1);
        CHECK(c.walls[i].fn == (Series::one() + t1).mul(Series::one() + t2, 3));
        CHECK(c.walls[i].dir == -c.m[i]);
        CHECK(c.walls[i].incoming);
    }
    CHECK(initial_diagram(fx::square(), 2).walls.empty());
    auto o = initial_diagram(fx::one_blowup(), 2);
    REQUIRE(o.walls.size() == 1);
    CHECK(o.walls[0].fn == Series::one() + Series::mono(o.m[0], cls_unit(0), 1));
    CHECK_THROWS_AS(initial_diagram(fx::make({{-1, 0}, {-1, 0}, {-1, 0}}), 2), DomainError);
}

TEST_CASE("single wall is already consistent") {
    auto d = initial_diagram(fx::one_blowup(), 4);
    auto c = make_consistent(d, 4);
    CHECK(c.walls.size() == 1);
    CHECK(c.walls[0].fn == d.walls[0].fn);
}

TEST_CASE("two transverse walls complete with the middle ray") {
    auto d = two_walls();
    CHECK_FALSE(oracle_consistent(d, 2));
    auto c = make_consistent(d, 2);
    REQUIRE(c.walls.size() == 3);
    const Wall* mid = nullptr;
    for (auto& w : c.walls)
        if (!w.incoming) mid = &w;
    REQUIRE(mid);
    CHECK(mid->dir == IV{1, 1});
    CHECK(mid->fn == Series::one() + Series::mono({-1, -1}, cls_unit(0) + cls_unit(1), 1));
    CHECK(oracle_consistent(c, 2));
}

TEST_CASE("cubic and other fans are consistent by the loop oracle") {
    for (int K = 1; K <= 3; ++K) {
        auto c = make_consistent(initial_diagram(fx::cubic(), K), K);
        CHECK(oracle_consistent(c, K));
        CHECK(is_consistent(c, K));
    }
    for (auto f : {fx::mixed4(), fx::one_blowup(), fx::make({{0, 1}, {0, 1}, {1, 0}})}) {
        auto c = make_consistent(initial_diagram(f, 3), 3);
        CHECK(oracle_consistent(c, 3));
    }
}

TEST_CASE("grading: exponents equal the signed sum of seed rays") {
    auto c = make_consistent(initial_diagram(fx::cubic(), 3), 3);
    for (auto& w : c.walls)
        for (auto& [k, v] : w.fn.terms) {
            IV s{0, 0};
            for (int i = 0; i < 3; ++i) s = s + c.m[i] * long(cls_get(k.cls, 2 * i) + cls_get(k.cls, 2 * i + 1));
            CHECK(s == k.m);
            CHECK(v > 0);
        }
}

TEST_CASE("stability across orders") {
    auto c2 = make_consistent(initial_diagram(fx::cubic(), 2), 2);
    auto c3 = make_consistent(initial_diagram(fx::cubic(), 3), 3);
    for (auto& w : c2.walls) {
        bool found = false;
        for (auto& x : c3.walls)
            if (x.dir == w.dir && x.incoming == w.incoming) {
                CHECK(x.fn.truncated(2) == w.fn);
                found = true;
            }
        CHECK(found);
    }
}

TEST_CASE("cluster walls") {
    CHECK(cluster_walls(fx::square(), Vec2(1, 0), Vec2(0, 1)).empty());
    // blowups on two rays of the P2 seed: exponents (1,0) and (0,1)
    auto f = fx::make({{0, 1}, {0, 1}, {1, 0}});
    auto w = cluster_walls(f, Vec2(-1, 1), Vec2(1, -1));
    REQUIRE(w.size() == 3);
    CHECK(w[0].seed_dir == IV{-1, 0});
    CHECK(w[1].seed_dir == IV{-1, -1});
    CHECK(w[2].seed_dir == IV{0, -1});
    for (auto& x : w) CHECK(x.mult == 1);
    CHECK(w[1].ray == to_canonical(f, Vec2(-1, -1)));
    auto one = cluster_walls(fx::one_blowup(), Vec2(0, -1), Vec2(0, 1));
    REQUIRE(one.size() == 1);
    CHECK(one[0].mult == 1);
}

TEST_CASE("seed bridge") {
    std::mt19937 g(11);
    for (auto f : {fx::cubic(), fx::mixed4(), fx::e8(), fx::square()}) {
        for (int i = 0; i < 30; ++i) {
            auto p = fx::random_point(g, f, 6);
            CHECK(to_canonical(f, to_seed(f, p)) == p);
        }
        CHECK(to_seed(f, {0, 3, 2}) == Vec2(3, 2));
    }
    // toric: the seed chart is the developed chart
    Developer dev(fx::square());
    CHECK(to_seed(fx::square(), {2, 1, 4}) == dev.at(2, 1, 4));
}
