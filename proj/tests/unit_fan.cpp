#include "doctest.h"
#include "fixtures.hpp"
#include "looij/geometry.hpp"

using namespace looij;

namespace {

// classical toric self-intersection from ray vectors: u_{i-1} + u_{i+1} = -D_i^2 u_i
std::vector<long> classical_self_ints(const std::vector<Vec2>& u) {
    std::vector<long> out;
    size_t n = u.size();
    for (size_t i = 0; i < n; ++i) {
        Vec2 s = u[(i + n - 1) % n] + u[(i + 1) % n];
        Q c = sgn(u[i].x) != 0 ? s.x / u[i].x : s.y / u[i].y;
        CHECK(s == u[i] * c);
        out.push_back(-c.get_num().get_si());
    }
    return out;
}

std::vector<long> self_ints(const Fan& f) {
    std::vector<long> v;
    for (auto& r : f.rays) v.push_back(r.self_int);
    return v;
}

}  // namespace

TEST_CASE("build_fan keeps n>=3 input and refines short cycles") {
    auto c = build_fan({{-1, 2, ""}, {-1, 3, ""}, {-1, 2, ""}});
    CHECK(c.n() == 3);
    CHECK(c.b(1) == 3);
    auto two = build_fan({{0, 0, ""}, {0, 0, ""}});
    CHECK(self_ints(two) == std::vector<long>{-1, -1, -1});
    CHECK_THROWS_AS(build_fan({}), DomainError);
    CHECK_THROWS_AS(build_fan({{0, -1, ""}}), DomainError);
    CHECK_THROWS_AS(build_fan({{0, 0, "x"}, {0, 0, "x"}, {0, 0, ""}}), DomainError);
}

TEST_CASE("the corner blowup of a 2-cycle develops the same rays") {
    // the 2-cycle (0,0) by hand: r = (1,0),(0,1),(-1,0),(0,-1)
    Fan two_raw{{{0, 0, ""}, {0, 0, ""}}};
    Developer raw(two_raw);
    auto f = build_fan({{0, 0, ""}, {0, 0, ""}});
    Developer dev(f);
    // original rays sit at positions 0,1 of each turn of the refined fan
    for (long t = 0; t < 3; ++t) {
        CHECK(dev.r(3 * t) == raw.r(2 * t));
        CHECK(dev.r(3 * t + 1) == raw.r(2 * t + 1));
        CHECK(dev.r(3 * t + 2) == raw.r(2 * t + 1) + raw.r(2 * t + 2));
    }
}

TEST_CASE("single ray input is closed up twice") {
    auto f = build_fan({{5, 1, ""}});
    CHECK(f.n() == 3);
    CHECK(self_ints(f) == std::vector<long>{2, -2, -1});
}

TEST_CASE("refine_to_contain") {
    auto cub = fx::cubic();
    auto r = refine_to_contain(cub, {0, 1, 1});
    CHECK(r.fan.n() == 4);
    CHECK(self_ints(r.fan) == std::vector<long>{-2, -1, -2, -1});
    CHECK(r.index == 1);
    CHECK(r.fan.b(0) == 2);
    CHECK(r.fan.b(1) == 0);
    // the developed recursion of the refined fan passes through v1 + v2
    Developer d0(cub), d1(r.fan);
    Mat2 A{1, 1, 0, 1};  // refined frame (v1, v1+v2) inside the old frame
    CHECK(A * d1.r(1) == d0.r(0) + d0.r(1));
    CHECK(A * d1.r(2) == d0.r(1));
    CHECK(A * d1.r(3) == d0.r(2));
    CHECK(A * d1.r(7) == d0.r(5));
    CHECK(d1.r(3) == -d1.r(1) - d1.r(2) * Q(r.fan.d(2)));

    auto same = refine_to_contain(cub, {2, 3, 0});
    CHECK(same.fan == cub);
    CHECK(same.index == 2);
    auto same2 = refine_to_contain(cub, {1, 0, 2});
    CHECK(same2.index == 2);

    auto p2 = refine_to_contain(fx::p2(), {0, 1, 1});
    CHECK(self_ints(p2.fan) == std::vector<long>{0, -1, 0, 1});
    CHECK(self_ints(p2.fan) == classical_self_ints({Vec2(1, 0), Vec2(1, 1), Vec2(0, 1), Vec2(-1, -1)}));

    // a deeper Stern-Brocot insertion against the classical fan
    auto deep = refine_to_contain(fx::p2(), {1, 2, 5});
    Developer dd(deep.fan);
    std::vector<Vec2> rays;
    for (int i = 0; i < deep.fan.n(); ++i) rays.push_back(dd.r(i));
    CHECK(self_ints(deep.fan) == classical_self_ints(rays));
    CHECK(dd.r(deep.index) == Vec2(0, 1) * Q(2) + Vec2(-1, -1) * Q(5));
    CHECK_THROWS_AS(refine_to_contain(cub, {0, 0, 0}), DomainError);
    CHECK_THROWS_AS(refine_to_contain(cub, {0, Q(1, 2), 1}), DomainError);
}

TEST_CASE("intersection matrix") {
    auto H = intersection_matrix(fx::cubic());
    CHECK(H == std::vector<std::vector<long>>{{-1, 1, 1}, {1, -1, 1}, {1, 1, -1}});
    CHECK(intersection_matrix(fx::p2()) == std::vector<std::vector<long>>{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}});
    CHECK(intersection_matrix(fx::square()) ==
          std::vector<std::vector<long>>{{0, 1, 0, 1}, {1, 0, 1, 0}, {0, 1, 0, 1}, {1, 0, 1, 0}});
}

TEST_CASE("bending parameters of chart-wise PL functions equal Hw") {
    std::mt19937 g(7);
    std::uniform_int_distribution<long> wd(-9, 9);
    for (auto f : {fx::cubic(), fx::p2(), fx::mixed4(), fx::e8(), fx::square()}) {
        Developer dev(f);
        auto H = intersection_matrix(f);
        int n = f.n();
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<long> w(n);
            for (auto& x : w) x = wd(g);
            for (int i = 0; i < n; ++i) {
                // linear function l with l(r_i) = w_i, l(r_{i+1}) = w_{i+1}; bend = w_{i-1} - l(r_{i-1})
                Vec2 ri = dev.r(i + n), rn = dev.r(i + n + 1), rp = dev.r(i + n - 1);
                // rp = alpha ri + beta rn, det(ri, rn) = 1
                Q alpha = wedge(rp, rn), beta = wedge(ri, rp);
                Q l = alpha * w[i] + beta * w[(i + 1) % n];
                Q bend = Q(w[(i + n - 1) % n]) - l;
                long hw = 0;
                for (int j = 0; j < n; ++j) hw += H[i][j] * w[j];
                CHECK(bend == hw);
            }
        }
    }
}

TEST_CASE("monodromy") {
    CHECK(monodromy(fx::cubic()) == Mat2{-1, 0, 0, -1});
    CHECK(monodromy(fx::p2()) == Mat2::identity());
    auto f = fx::make({{0, 0}, {-1, 0}, {-2, 0}, {-1, 0}});
    Mat2 mu = monodromy(f);
    CHECK(mu.det() == 1);
    // developed rays after one turn: [r_n | r_{n+1}] = mu^{-1}
    Developer dev(f);
    Mat2 M{dev.r(4).x, dev.r(5).x, dev.r(4).y, dev.r(5).y};
    CHECK(M * mu == Mat2::identity());
    for (auto g : {fx::e8(), fx::e7(), fx::mixed4(), fx::one_blowup()}) {
        CHECK(monodromy(g).det() == 1);
        // refinement away from the base pair leaves the matrix unchanged
        auto r = refine_to_contain(g, {1, 1, 1});
        CHECK(monodromy(r.fan) == monodromy(g));
    }
}

TEST_CASE("positivity") {
    auto c = is_positive(fx::cubic());
    REQUIRE(c.positive);
    auto H = intersection_matrix(fx::cubic());
    for (int i = 0; i < 3; ++i) {
        Q s = 0;
        for (int j = 0; j < 3; ++j) s += H[i][j] * c.witness[j];
        CHECK(s >= 1);
        CHECK(c.witness[i] >= 0);
    }
    CHECK(is_positive(fx::p2()).positive);
    CHECK_FALSE(is_positive(fx::make({{-3, 1}, {-3, 0}, {-3, 4}})).positive);
    for (auto f : {fx::cubic(), fx::one_blowup(), fx::mixed4(), fx::e7(), fx::e8(), fx::square(),
                   fx::make({{-3, 0}, {-3, 0}, {-3, 0}}), fx::make({{-2, 0}, {-2, 0}, {-2, 0}, {-2, 0}})}) {
        auto r = refine_to_contain(f, {0, 2, 1});
        CHECK(is_positive(f).positive == is_positive(r.fan).positive);
    }
}

TEST_CASE("fourier motzkin witness and certificate") {
    // x + y >= 2, x - y >= 0, y >= 1/2, -x >= -3
    std::vector<std::vector<Q>> A{{1, 1}, {1, -1}, {0, 1}, {-1, 0}};
    auto x = fm_feasible(A, {2, 0, Q(1, 2), -3});
    REQUIRE(x);
    CHECK((*x)[0] + (*x)[1] >= 2);
    CHECK((*x)[0] - (*x)[1] >= 0);
    CHECK((*x)[1] >= Q(1, 2));
    CHECK((*x)[0] <= 3);
    CHECK_FALSE(fm_feasible({{1, 0}, {-1, 0}}, {1, 0}));
}

TEST_CASE("mirror point map is an involution compatible with the reversed fan") {
    auto f = fx::mixed4();
    auto m = mirror(f);
    std::mt19937 g(3);
    for (int i = 0; i < 50; ++i) {
        auto p = fx::random_point(g, f, 5);
        CHECK(mirror_point(m, mirror_point(f, p)) == p);
    }
    CHECK(mirror_point(f, {0, 1, 0}) == TropPoint{3, 1, 0});
}
