// Acceptance run: one line per criterion with its timing. A criterion passes
// when every check holds and it finishes inside its time budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "looij/polytope.hpp"

using namespace looij;

namespace {

struct Run {
    int failed = 0;
    std::string first;
    long checks = 0;
    void expect(bool ok, const std::string& what) {
        ++checks;
        if (ok) return;
        if (!failed) first = what;
        ++failed;
    }
};

ThetaElement th(const TropPoint& q, int K) { return ThetaElement::theta(q, K); }

std::map<TropPoint, Q> spec(const ThetaElement& t) { return specialize(t).terms; }

std::string str(const TropPoint& p) {
    std::ostringstream s;
    s << "(" << p.sector + 1 << "," << p.a.get_str() << "," << p.b.get_str() << ")";
    return s.str();
}

TropPoint random_dir(std::mt19937& g, const Fan& f) {
    std::uniform_int_distribution<int> sd(0, f.n() - 1);
    std::uniform_int_distribution<long> nd(0, 40), dd(1, 7);
    while (true) {
        TropPoint p{sd(g), Q(nd(g), dd(g)), Q(nd(g), dd(g))};
        if (!p.is_zero()) return normalize(f, p);
    }
}

std::vector<TropPoint> random_points(std::mt19937& g, const Fan& f, int n, long c, bool with_origin) {
    std::vector<TropPoint> out;
    if (with_origin) out.push_back({0, 0, 0});
    for (int i = 0; i < n; ++i) out.push_back(fx::random_point(g, f, c));
    return out;
}

// --- 1 ---------------------------------------------------------------------

void monodromy_check(Run& r) {
    r.expect(monodromy(fx::cubic()) == Mat2{-1, 0, 0, -1}, "cubic monodromy is -id");
    r.expect(monodromy(fx::p2()) == Mat2::identity(), "P2 monodromy is id");
}

// --- 2 ---------------------------------------------------------------------

void theta_algebra(Run& r) {
    auto f = fx::cubic();
    int K = 4;
    ThetaEngine E(f, K);
    for (int i = 0; i < 3; ++i) {
        TropPoint q{i, 1, 0};
        auto sq = E.multiply(th(q, K), th(q, K));
        r.expect(spec(sq) == std::map<TropPoint, Q>{{{0, 0, 0}, 2}, {q.scaled(2), 1}}, "square of theta_" + str(q));
        auto cube = E.multiply(sq, th(q, K));
        r.expect(spec(cube) == std::map<TropPoint, Q>{{q, 3}, {q.scaled(3), 1}}, "cube of theta_" + str(q));
    }
}

// --- 3 ---------------------------------------------------------------------

void traces(Run& r) {
    auto f = fx::cubic();
    int K = 4;
    ThetaEngine E(f, K);
    for (int i = 0; i < 3; ++i) {
        TropPoint q{i, 1, 0};
        r.expect(specialize(E.trace(th(q.scaled(3), K), q)) == -1, "Tr_q theta_3q at " + str(q));
    }
    std::mt19937 g(3);
    std::vector<TropPoint> qs{{0, 0, 0}};
    while (qs.size() < 20) qs.push_back(fx::random_point(g, f, 3));
    for (auto& q : qs) {
        ClassPoly t = E.trace0(th(q, K));
        r.expect(t == (q.is_zero() ? Series::one() : Series{}), "Tr_0 theta_" + str(q));
    }
}

// --- 4 ---------------------------------------------------------------------

void cubic_sections(Run& r) {
    auto s = sections(fx::cubic(), {{{{0, 1, 0}, 1}, {{1, 1, 0}, 1}, {{2, 1, 0}, 1}}});
    r.expect(s.dimension == 4, "four lattice points");
    r.expect(s.self_intersection == 3, "D^2 = 3");
    r.expect(s.edges.size() == 3, "three edges");
    for (auto& e : s.edges) {
        r.expect(e.d == 1, "edge count 1 at " + str(e.v));
        r.expect(e.WD == 1, "(HW)_i = 1 at " + str(e.v));
        r.expect(e.applicable && e.equality && e.consistent, "equality flags at " + str(e.v));
    }
}

// --- 5 ---------------------------------------------------------------------

// <q, v> on f equals <v, q> with the roles exchanged across the mirror; on
// the cubic, which is its own mirror up to relabelling, this is literal symmetry
void pairing_symmetry(Run& r) {
    std::mt19937 g(5);
    std::vector<Fan> fans{fx::p2(), fx::cubic(), fx::one_blowup(), fx::mixed4()};
    for (auto& f : fans) {
        auto m = mirror(f);
        for (int i = 0; i < 130; ++i) {
            auto q = fx::random_point(g, f, 6), v = fx::random_point(g, f, 6);
            r.expect(pair(f, q, v) == pair(m, mirror_point(f, v), mirror_point(f, q)),
                     "mirror symmetry " + str(q) + " " + str(v));
        }
    }
    auto c = fx::cubic();
    for (int i = 0; i < 130; ++i) {
        auto q = fx::random_point(g, c, 6), v = fx::random_point(g, c, 6);
        r.expect(pair(c, q, v) == pair(c, v, q), "cubic symmetry " + str(q) + " " + str(v));
    }
}

// --- 6 ---------------------------------------------------------------------

void beta_symmetry(Run& r) {
    auto c = fx::cubic();
    r.expect(beta_and_psi(c, {0, 1, 0}).beta.eval({1, 1, 0}) == Q(-1, 2), "cubic beta_v1(v2) = -1/2");
    std::mt19937 g(6);
    int fans = 0;
    for (auto f : {fx::cubic(), fx::e7(), fx::e8(), fx::p2(), fx::one_blowup(), fx::mixed4()}) {
        try {
            beta_and_psi(f, {0, 1, 0});
        } catch (const DomainError&) {
            continue;  // H singular
        }
        ++fans;
        for (int i = 0; i < 50; ++i) {
            auto v = fx::random_point(g, f, 4), w = fx::random_point(g, f, 4);
            r.expect(beta_and_psi(f, v).beta.eval(w) == beta_and_psi(f, w).beta.eval(v), "beta symmetry " + str(v) + " " + str(w));
        }
    }
    r.expect(fans >= 3, "at least three invertible fans");
}

// --- 7 ---------------------------------------------------------------------

// independent loop: rays sorted by atan2, powers by repeated products and the
// geometric series for the inverse
Series oracle_power(const Series& F, long e, int K) {
    Series out = Series::one();
    if (e >= 0) {
        for (long i = 0; i < e; ++i) out = out.mul(F, K);
        return out;
    }
    Series h = F - Series::one(), inv = Series::one(), term = Series::one();
    for (int i = 1; i <= K; ++i) {
        term = term.mul(h, K).scaled(-1);
        inv += term;
    }
    for (long i = 0; i < -e; ++i) out = out.mul(inv, K);
    return out;
}

Series oracle_loop(const Diagram& d, const Series& g, int K) {
    struct R {
        double ang;
        IV u;
        Series F;
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
    for (auto& x : rs) {
        Series next;
        for (auto& [k, c] : cur.terms) next += Series::mono(k.m, k.cls, c).mul(oracle_power(x.F, iwedge(k.m, x.u), K), K);
        cur = next;
    }
    return cur;
}

void scattering(Run& r) {
    std::vector<Fan> fans{fx::p2(), fx::cubic(), fx::one_blowup(), fx::mixed4(), fx::make({{0, 1}, {0, 1}, {1, 0}}),
                          fx::e7(), fx::e8(), fx::square()};
    for (auto& f : fans)
        for (int K = 1; K <= 4; ++K) {
            const Diagram& d = consistent_diagram(f, K);
            for (IV m : {IV{1, 0}, IV{0, 1}, IV{-1, -1}, IV{2, -1}}) {
                Series z = Series::mono(m, 0, 1);
                r.expect(oracle_loop(d, z, K) == z, "loop at order " + std::to_string(K));
            }
        }
    Diagram d;
    d.s = 2;
    d.order = 2;
    d.walls.push_back({{1, 0}, Series::one() + Series::mono({-1, 0}, cls_unit(0), 1), true});
    d.walls.push_back({{0, 1}, Series::one() + Series::mono({0, -1}, cls_unit(1), 1), true});
    auto c = make_consistent(d, 2);
    int middle = 0;
    for (auto& w : c.walls)
        if (!w.incoming) {
            ++middle;
            r.expect(w.dir == IV{1, 1}, "middle wall direction");
            r.expect(w.fn == Series::one() + Series::mono({-1, -1}, cls_unit(0) + cls_unit(1), 1), "middle wall function");
        }
    r.expect(middle == 1, "one new wall");
}

// --- 8 ---------------------------------------------------------------------

// crossing every ray met when turning the shorter way from A to B
Series transport(const ThetaEngine& E, const Series& s, const Vec2& A, const Vec2& B) {
    int sign = swedge(A, B) > 0 ? 1 : -1;
    const Vec2& lo = sign > 0 ? A : B;
    const Vec2& hi = sign > 0 ? B : A;
    std::vector<const LoopRay*> rays;
    for (auto& x : E.rays())
        if (swedge(lo, x.u.vec()) > 0 && swedge(x.u.vec(), hi) > 0) rays.push_back(&x);
    std::sort(rays.begin(), rays.end(), [&](auto a, auto b) { return swedge(a->u.vec(), b->u.vec()) * sign > 0; });
    Series cur = s;
    for (auto x : rays) cur = x->cross(cur, sign, E.order());
    return cur;
}

void theta_parallelism(Run& r) {
    std::mt19937 g(8);
    int K = 3;
    std::vector<Fan> fans{fx::cubic(), fx::one_blowup(), fx::mixed4()};
    std::vector<std::unique_ptr<ThetaEngine>> engines;
    for (auto& f : fans) engines.push_back(std::make_unique<ThetaEngine>(f, K));
    int done = 0;
    while (done < 50) {
        auto& E = *engines[done % engines.size()];
        const Fan& f = E.fan();
        std::uniform_int_distribution<int> sd(0, f.n() - 1), len(2, 4);
        // a path through chambers, each leg turning by less than pi
        std::vector<Vec2> path;
        path.push_back(E.endpoint_in_sector(sd(g)));
        int legs = len(g);
        while (int(path.size()) <= legs) {
            Vec2 next = E.endpoint_in_sector(sd(g));
            if (swedge(path.back(), next) != 0) path.push_back(next);
        }
        auto q = fx::random_point(g, f, 3);
        Series cur = E.expand(q, path.front());
        for (size_t i = 1; i < path.size(); ++i) cur = transport(E, cur, path[i - 1], path[i]);
        r.expect(cur == E.expand(q, path.back()), "transport of theta_" + str(q));
        ++done;
    }
}

// --- 9 ---------------------------------------------------------------------

void newton_minkowski(Run& r) {
    std::mt19937 g(9);
    auto random_element = [&](const Fan& h, int K) {
        ThetaElement a = th({0, 0, 0}, K);
        for (int j = 0; j < 2; ++j) a = a + th(fx::random_point(g, h, 2), K).scaled(Series::mono({0, 0}, 0, j + 1));
        return a;
    };
    // A vertex coefficient of a product can carry a class monomial of high
    // order, so the truncated product may miss a vertex. At every order the
    // truncated polygon sits inside the sum, and some order must reach it.
    std::vector<Fan> fans{fx::one_blowup(), fx::mixed4(), fx::p2()};
    for (int i = 0; i < 30; ++i) {
        const Fan& f = fans[i % fans.size()];
        auto a = random_element(f, 2), b = random_element(f, 2);
        auto rhs = minkowski(f, {newton(f, a), newton(f, b)});
        bool reached = false;
        for (int K = 2; K <= 6 && !reached; ++K) {
            ThetaEngine E(f, K);
            a.order = b.order = K;
            auto lhs = newton(f, E.multiply(a, b));
            for (auto& v : lhs.vertices) r.expect(contains(f, rhs, v), "truncated product inside the sum");
            reached = same_polytope(f, lhs, rhs);
        }
        r.expect(reached, "newton of a product, pair " + std::to_string(i));
    }
    for (auto f : {fx::cubic(), fx::one_blowup(), fx::mixed4(), fx::square()}) {
        bool seeds_ok = finite_type(f);
        for (int i = 0; i < 3; ++i) {
            auto A = strong_hull(f, random_points(g, f, 2, 2, true));
            auto B = strong_hull(f, random_points(g, f, 2, 2, true));
            auto ref = minkowski(f, {A, B}, MinkowskiMethod::Definition);
            r.expect(same_polytope(f, minkowski(f, {A, B}, MinkowskiMethod::SeparatingRays), ref), "separating rays");
            r.expect(same_polytope(f, minkowski(f, {A, B}, MinkowskiMethod::UniversalCover), ref), "universal cover");
            if (seeds_ok) r.expect(same_polytope(f, minkowski(f, {A, B}, MinkowskiMethod::PerSeed), ref), "per seed");
            for (int k = 2; k <= 3; ++k) {
                std::vector<TropPoint> scaled{{0, 0, 0}};
                for (auto& v : A.vertices) scaled.push_back(v.scaled(k));
                r.expect(same_polytope(f, minkowski(f, std::vector<StrongPolytope>(k, A)), strong_hull(f, scaled)),
                         std::to_string(k) + "Q");
            }
        }
    }
}

// --- 10 --------------------------------------------------------------------

void hull_oracle(Run& r) {
    std::mt19937 g(10);
    for (auto f : {fx::cubic(), fx::one_blowup(), fx::mixed4(), fx::p2(), fx::e7()}) {
        for (int i = 0; i < 2; ++i) {
            auto S = random_points(g, f, 3, 3, i == 0);
            auto P = strong_hull(f, S);
            for (auto& s : S) r.expect(contains(f, P, s), "generator inside its hull");
            for (int k = 0; k < 1000; ++k) {
                auto v = random_dir(g, f);
                Q brute = pair(f, S[0], v);
                for (auto& s : S) brute = std::min(brute, pair(f, s, v));
                r.expect(implied_support(f, P, v) == brute, "facet support at " + str(v));
            }
        }
    }
    // cubic Conv(q) = [0, q]
    auto c = fx::cubic();
    for (int i = 0; i < 3; ++i) {
        TropPoint q{i, 1, 0};
        auto P = strong_hull(c, {q});
        r.expect(lattice_points(c, P) == std::vector<TropPoint>{{0, 0, 0}, q} ||
                     lattice_points(c, P) == std::vector<TropPoint>{q, {0, 0, 0}},
                 "lattice points of [0,q]");
        for (int k = 0; k < 200; ++k) {
            auto x = random_dir(g, c).scaled(Q(k % 4 + 1, 4));
            bool on = x.sector == q.sector && sgn(x.b) == 0 && x.a <= 1;
            r.expect(contains(c, P, x) == on, "[0,q] membership at " + str(x));
        }
    }
    // a self-intersecting line L of <q, .> = -1: Conv(p) is the region Z(L) it bounds
    auto f = fx::make({{-2, 3}, {-1, 2}, {-1, 2}});
    int seen = 0;
    for (int i = 0; i < 60 && seen < 3; ++i) {
        auto q = fx::random_point(g, f, 2);
        auto L = trace_line(f, q, -1);
        if (!L.self_intersects) continue;
        ++seen;
        auto C = strong_hull(f, {L.zero_boundary.front()});
        for (int k = 0; k < 100; ++k) {
            auto x = random_dir(g, f).scaled(Q(k % 5 + 1, 3));
            r.expect(contains(f, C, x) == (pair(f, q, x) >= -1), "Z(L) membership");
        }
    }
    r.expect(seen >= 2, "self-intersecting lines found");
}

// --- 11 --------------------------------------------------------------------

void tropicality(Run& r) {
    std::mt19937 g(11);
    for (auto f : {fx::cubic(), fx::one_blowup(), fx::mixed4(), fx::square(), fx::e7()}) {
        for (int i = 0; i < 3; ++i) {
            std::uniform_int_distribution<int> cnt(1, 4);
            std::vector<TropicalFunction> ts;
            int k = cnt(g);
            for (int j = 0; j < k; ++j) ts.push_back(trop_theta(f, fx::random_point(g, f, 3)).fn);
            auto m = min_of(f, ts);
            r.expect(is_tropical(m), "min of thetas is tropical");
            auto d = decompose(m);
            r.expect(d.ok, "decomposition found");
            if (!d.ok) continue;
            auto value = [&](const TropPoint& x) {
                Q best = pair(f, d.qs.front(), x);
                for (auto& q : d.qs) best = std::min(best, pair(f, q, x));
                return best;
            };
            for (int j = 0; j < m.ref.fan.n(); ++j) {
                TropPoint x = m.ref.unmap({j, 1, 0});
                r.expect(value(x) == m.eval(x), "decomposition on a refinement ray");
            }
            for (int j = 0; j < 200; ++j) {
                auto x = random_dir(g, f);
                r.expect(value(x) == m.eval(x), "decomposition at " + str(x));
            }
            // raising the value on one ray raises the bends of its neighbours
            std::uniform_int_distribution<int> pick(0, m.ref.fan.n() - 1);
            TropicalFunction bad = m;
            int at = pick(g);
            auto positive = [](const TropicalFunction& t) {
                for (auto& b : t.bends())
                    if (b > 0) return true;
                return false;
            };
            while (!positive(bad)) bad.values[at] += 1;
            r.expect(!is_tropical(bad), "positive bend rejected");
            r.expect(!decompose(bad).ok, "positive bend not decomposed");
        }
    }
}

// --- 12 --------------------------------------------------------------------

void toric(Run& r) {
    std::mt19937 g(12);
    auto sq = fx::square(), p2 = fx::p2();
    // 1-2: pairing is the wedge
    for (auto f : {sq, p2}) {
        Developer dev(f);
        for (int i = 0; i < 50; ++i) {
            auto q = fx::random_point(g, f, 5), v = fx::random_point(g, f, 5);
            r.expect(pair(f, q, v) == wedge(dev.lift(v).X, dev.lift(q).X), "toric pairing");
        }
    }
    // 3: thetas are monomials in every chamber
    ThetaEngine E(sq, 3);
    for (int i = 0; i < 10; ++i) {
        auto q = fx::random_point(g, sq, 4);
        for (int s = 0; s < 4; ++s) r.expect(E.expand(q, E.endpoint_in_sector(s)) == Series::mono(E.seed(q), 0, 1), "monomial");
    }
    // 4: products add exponents
    ThetaEngine F(p2, 3);
    Developer dp(p2);
    for (int i = 0; i < 5; ++i) {
        auto a = fx::random_point(g, p2, 3), b = fx::random_point(g, p2, 3);
        Vec2 sum = dp.lift(a).X + dp.lift(b).X;
        TropPoint s = sum.is_zero() ? TropPoint{0, 0, 0} : dp.point({dp.sector_from(sum, 0), sum});
        r.expect(spec(F.multiply(th(a, 3), th(b, 3))) == std::map<TropPoint, Q>{{s, 1}}, "product of monomials");
    }
    // 5: hull of the corners of [-1,1]^2 has 9 points
    std::vector<TropPoint> corners{{0, 1, 1}, {1, 1, 1}, {2, 1, 1}, {3, 1, 1}};
    auto box = strong_hull(sq, corners);
    r.expect(lattice_points(sq, box).size() == 9, "square has 9 points");
    // 6: its polar is the diamond
    auto D = polar(sq, box);
    auto m = mirror(sq);
    std::set<TropPoint> dv(D.vertices.begin(), D.vertices.end());
    std::set<TropPoint> diamond{ray_point(m, 0), ray_point(m, 1), ray_point(m, 2), ray_point(m, 3)};
    r.expect(dv == diamond, "polar of the square is the diamond");
    r.expect(lattice_points(m, D).size() == 5, "diamond has 5 points");
    // 7: segment + segment = square
    auto e1 = strong_hull(sq, {{0, 0, 0}, {0, 1, 0}}), e2 = strong_hull(sq, {{0, 0, 0}, {1, 1, 0}});
    auto S = minkowski(sq, {e1, e2});
    r.expect(S.vertices.size() == 4 && lattice_points(sq, S).size() == 4, "unit square");
    // 8: -K on P2: 10 sections, D^2 = 9
    auto s8 = sections(p2, {{{{0, 1, 0}, 1}, {{1, 1, 0}, 1}, {{2, 1, 0}, 1}}});
    r.expect(s8.dimension == 10 && s8.self_intersection == 9, "P2 anticanonical");
    // 9: -K on the Hirzebruch surface F1: 9 sections, D^2 = 8; O(2) on P2: 6 sections
    auto f1 = fx::make({{0, 0}, {-1, 0}, {0, 0}, {1, 0}});
    std::vector<std::pair<TropPoint, Q>> w;
    for (int i = 0; i < 4; ++i) w.push_back({{i, 1, 0}, 1});
    auto s9 = sections(f1, {w});
    r.expect(s9.dimension == 9 && s9.self_intersection == 8, "F1 anticanonical");
    r.expect(sections(p2, {{{{0, 1, 0}, 2}}}).dimension == 6, "O(2) on P2");
    // 10: toric monodromy is trivial
    r.expect(monodromy(sq) == Mat2::identity() && monodromy(f1) == Mat2::identity(), "toric monodromy");
}

struct Criterion {
    int id;
    const char* name;
    double budget;  // seconds
    std::function<void(Run&)> body;
};

}  // namespace

int main() {
    std::vector<Criterion> cs{
        {1, "monodromy", 1, monodromy_check},
        {2, "cubic theta algebra", 30, theta_algebra},
        {3, "traces", 30, traces},
        {4, "cubic sections", 5, cubic_sections},
        {5, "pairing symmetry", 120, pairing_symmetry},
        {6, "beta symmetry", 10, beta_symmetry},
        {7, "scattering consistency", 120, scattering},
        {8, "theta parallelism", 120, theta_parallelism},
        {9, "Newton and Minkowski", 300, newton_minkowski},
        {10, "hull oracle", 120, hull_oracle},
        {11, "tropicality", 60, tropicality},
        {12, "toric reduction", 30, toric},
    };
    int bad = 0;
    for (auto& c : cs) {
        Run r;
        auto t0 = std::chrono::steady_clock::now();
        std::string err;
        try {
            c.body(r);
        } catch (const std::exception& e) {
            err = e.what();
        }
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool ok = !r.failed && err.empty() && dt < c.budget;
        bad += !ok;
        std::printf("criterion %2d %-24s %s  %8.3f s (budget %g s, %ld checks)", c.id, c.name, ok ? "PASS" : "FAIL", dt,
                    c.budget, r.checks);
        if (!err.empty()) std::printf("  error: %s", err.c_str());
        else if (r.failed) std::printf("  %d failed, first: %s", r.failed, r.first.c_str());
        else if (dt >= c.budget) std::printf("  over budget");
        std::printf("\n");
        std::fflush(stdout);
    }
    return bad ? 1 : 0;
}
