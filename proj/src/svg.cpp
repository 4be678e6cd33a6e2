#include "looij/svg.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace looij {

namespace {

constexpr double kSize = 400, kMid = 200;

struct P2 {
    double x, y;
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", std::abs(v) < 5e-4 ? 0.0 : v);
    return buf;
}

// page coordinates have y pointing down
std::string at(P2 p) { return num(kMid + p.x) + "," + num(kMid - p.y); }

P2 to_p2(const Vec2& v) { return {v.x.get_d(), v.y.get_d()}; }

P2 unit(P2 p) {
    double r = std::hypot(p.x, p.y);
    return r == 0 ? P2{0, 0} : P2{p.x / r, p.y / r};
}

std::string open() {
    std::ostringstream s;
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kSize << "\" height=\"" << kSize
      << "\" viewBox=\"0 0 " << kSize << " " << kSize << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    return s.str();
}

std::string line(P2 a, P2 b, const std::string& style) {
    return "<line x1=\"" + num(kMid + a.x) + "\" y1=\"" + num(kMid - a.y) + "\" x2=\"" + num(kMid + b.x) + "\" y2=\"" +
           num(kMid - b.y) + "\" " + style + "/>\n";
}

std::string text(P2 p, const std::string& s) {
    return "<text x=\"" + num(kMid + p.x) + "\" y=\"" + num(kMid - p.y) +
           "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">" + s + "</text>\n";
}

// the picture map: ray i of an n-gon points at angle 2 pi i / n
P2 spoke(long j, int n) {
    double th = 2 * M_PI * double(j) / n;
    return {std::cos(th), std::sin(th)};
}

P2 picture(long j, int n, double a, double b) {
    P2 u = spoke(j, n), w = spoke(j + 1, n);
    return {a * u.x + b * w.x, a * u.y + b * w.y};
}

std::string spokes(const Fan& f, double R) {
    std::string s;
    for (int i = 0; i < f.n(); ++i) {
        P2 u = spoke(i, f.n());
        s += line({0, 0}, {R * u.x, R * u.y}, "stroke=\"#999\" stroke-width=\"1\"");
        std::string lab = f.rays[i].label.empty() ? "D" + std::to_string(i + 1) : f.rays[i].label;
        s += text({(R + 12) * u.x, (R + 12) * u.y - 3}, lab);
    }
    return s;
}

}  // namespace

std::string svg_frame(const DevelopedFrame& fr) {
    long total = long(fr.rays.size());
    long n = fr.sheets > 0 ? (total - 2) / (2 * fr.sheets) : total;
    if (n <= 0) n = 1;
    std::string s = open();
    for (long k = 0; k < total; ++k) {
        long j = fr.first + k;
        long sheet = (j >= 0 ? j / n : -((-j + n - 1) / n));
        double R = 60 + 18 * double(sheet + fr.sheets);
        if (R > 185) R = 185;
        P2 u = unit(to_p2(fr.rays[k]));
        std::string color = j == 0 ? "#c00" : (sheet == 0 ? "#000" : "#888");
        s += line({0, 0}, {R * u.x, R * u.y}, "stroke=\"" + color + "\" stroke-width=\"1\"");
        if (j >= 0 && j < 2 * n) s += text({(R + 10) * u.x, (R + 10) * u.y - 3}, "r" + std::to_string(j));
    }
    return s + "</svg>\n";
}

std::string svg_diagram(const Diagram& d) {
    std::string s = open();
    for (size_t i = 0; i < d.m.size(); ++i) {
        P2 u = unit({double(d.m[i].x), double(d.m[i].y)});
        s += line({0, 0}, {170 * u.x, 170 * u.y}, "stroke=\"#36c\" stroke-width=\"2\"");
        s += text({182 * u.x, 182 * u.y - 3}, "m" + std::to_string(i + 1));
    }
    for (auto& w : d.walls) {
        P2 u = unit({double(w.dir.x), double(w.dir.y)});
        std::string style = w.incoming ? "stroke=\"#000\" stroke-width=\"1\"" : "stroke=\"#c33\" stroke-width=\"1\"";
        s += line({0, 0}, {160 * u.x, 160 * u.y}, style);
    }
    return s + "</svg>\n";
}

std::string svg_trace(const Fan& f, const LineTrace& L) {
    Developer dev(f);
    const int n = f.n();
    std::string s = open() + spokes(f, 170);
    const auto& cs = L.crossings;

    // a point of the line in a lifted sector near j, in picture coordinates;
    // radius grows by turn so a wrapping line draws as a spiral
    auto place = [&](const Vec2& X, long j, double scale) {
        for (long c : {j, j - 1, j + 1}) {
            if (!dev.in_sector(c, X)) continue;
            auto [a, b] = dev.coords(c, X);
            long turn = c >= 0 ? c / n : -((-c + n - 1) / n);
            P2 p = picture(c, n, a.get_d(), b.get_d());
            double g = scale * (1 + 0.25 * double(turn));
            return P2{p.x * g, p.y * g};
        }
        return P2{0, 0};
    };

    Q t_lo = cs.empty() ? Q(-1) : cs.front().t - 1;
    Q t_hi = cs.empty() ? Q(1) : cs.back().t + 1;
    std::vector<std::pair<Vec2, long>> pts;
    pts.push_back({L.P0 + L.Q0 * t_lo, cs.empty() ? L.k0 : cs.front().j});
    for (auto& c : cs) pts.push_back({c.point, c.j});
    pts.push_back({L.P0 + L.Q0 * t_hi, cs.empty() ? L.k0 : cs.back().j});

    double big = 1e-9;
    for (auto& [X, j] : pts) {
        P2 p = place(X, j, 1);
        big = std::max(big, std::hypot(p.x, p.y));
    }
    double scale = 150 / big;
    std::string poly;
    for (auto& [X, j] : pts) poly += (poly.empty() ? "" : " ") + at(place(X, j, scale));
    s += "<polyline points=\"" + poly + "\" fill=\"none\" stroke=\"#c00\" stroke-width=\"1.5\"/>\n";
    // the singular point
    s += "<circle cx=\"" + num(kMid) + "\" cy=\"" + num(kMid) + "\" r=\"2.5\" fill=\"#000\"/>\n";
    return s + "</svg>\n";
}

std::string svg_polytope(const Fan& f, const StrongPolytope& P) {
    const int n = f.n();
    std::string s = open() + spokes(f, 170);
    auto pic = [&](const TropPoint& p) { return picture(p.sector, n, p.a.get_d(), p.b.get_d()); };

    double big = 1e-9;
    for (auto& v : P.vertices) {
        P2 p = pic(v);
        big = std::max(big, std::hypot(p.x, p.y));
    }
    double scale = 150 / big;
    auto sc = [&](P2 p) { return P2{p.x * scale, p.y * scale}; };

    if (P.bounded) {
        // chart seams are interior: an edge is on the boundary when exactly one piece has it
        std::map<std::pair<std::string, std::string>, int> seen;
        std::vector<std::pair<std::string, std::string>> order;
        for (auto& piece : pieces(f, P)) {
            std::string poly;
            for (size_t i = 0; i < piece.size(); ++i) {
                std::string a = at(sc(pic(piece[i]))), b = at(sc(pic(piece[(i + 1) % piece.size()])));
                poly += (poly.empty() ? "" : " ") + a;
                auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
                if (seen[key]++ == 0) order.push_back(key);
            }
            s += "<polygon points=\"" + poly + "\" fill=\"#9cf\" stroke=\"#9cf\" stroke-width=\"0.5\"/>\n";
        }
        for (auto& e : order)
            if (seen[e] == 1)
                s += "<polyline points=\"" + e.first + " " + e.second + "\" fill=\"none\" stroke=\"#369\" stroke-width=\"1.5\"/>\n";
    }
    for (auto& v : P.vertices) {
        P2 p = sc(pic(v));
        s += "<circle cx=\"" + num(kMid + p.x) + "\" cy=\"" + num(kMid - p.y) + "\" r=\"3\" fill=\"#000\"/>\n";
    }
    return s + "</svg>\n";
}

}  // namespace looij
