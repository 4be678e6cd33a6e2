// looij: JSON in, JSON out. Exit 0 on success, 2 on domain errors, 1 on
// malformed input.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "looij/json_io.hpp"
#include "looij/svg.hpp"

using namespace looij;

namespace {

struct Opts {
    std::string fan, q, v, q1, q2, f, g, r, d, points, polytope, polys, divisor, endpoint, svg;
    std::string method = "separating-rays";
    int order = 4, cut = 1, sheets = 1, sector = 0;
    bool specialize = false;
};

struct Exit {
    int code;
    json body;
};

// an option value is inline JSON when it starts with { or [, otherwise a path
json load(const std::string& text, const std::string& what) {
    size_t i = text.find_first_not_of(" \t\r\n");
    std::string src;
    if (i != std::string::npos && (text[i] == '{' || text[i] == '[')) {
        src = text;
    } else {
        std::ifstream in(text);
        if (!in) throw ParseError("", "cannot read " + what + " file " + text);
        std::stringstream ss;
        ss << in.rdbuf();
        src = ss.str();
    }
    try {
        return json::parse(src);
    } catch (const json::parse_error& e) {
        throw ParseError("", what + ": " + e.what());
    }
}

void need(const std::string& s, const std::string& flag) {
    if (s.empty()) throw ParseError("", "missing option " + flag);
}

Fan load_fan(const Opts& o) {
    need(o.fan, "--fan");
    return fan_from_json(load(o.fan, "fan"));
}

TropPoint load_point(const Fan& f, const std::string& s, const std::string& flag) {
    need(s, flag);
    return point_from_json(f, load(s, flag), "");
}

void write_svg(const Opts& o, const std::string& doc, json& out) {
    if (o.svg.empty()) return;
    std::ofstream f(o.svg, std::ios::binary);
    if (!f) throw ParseError("", "cannot write " + o.svg);
    f << doc;
    out["svg"] = o.svg;
}

json matrix_json(const Mat2& M) {
    return json::array({json::array({q_json(M.a), q_json(M.b)}), json::array({q_json(M.c), q_json(M.d)})});
}

// Farkas certificate for {x >= 0, Hx >= 1} being empty: z >= 0 with
// sum z = 1 and Hz <= 0, since then 0 >= (Hz).x = z.(Hx) >= 1 for any x.
json non_positive_certificate(const Fan& f) {
    int n = f.n();
    auto H = intersection_matrix(f);
    std::vector<std::vector<Q>> A;
    std::vector<Q> c;
    for (int i = 0; i < n; ++i) {
        std::vector<Q> row(n, 0);
        row[i] = 1;
        A.push_back(row);
        c.push_back(0);
    }
    for (int i = 0; i < n; ++i) {
        std::vector<Q> row(n);
        for (int j = 0; j < n; ++j) row[j] = -H[i][j];
        A.push_back(row);
        c.push_back(0);
    }
    A.push_back(std::vector<Q>(n, 1));
    c.push_back(1);
    auto z = fm_feasible(A, c);
    json hj = json::array();
    for (auto& row : H) hj.push_back(row);
    json cert = {{"H", hj}};
    if (!z) return cert;
    Q s = 0;
    for (auto& x : *z) s += x;
    json zj = json::array(), hz = json::array();
    for (auto& x : *z) zj.push_back(q_json(x / s));
    for (int i = 0; i < n; ++i) {
        Q t = 0;
        for (int j = 0; j < n; ++j) t += H[i][j] * (*z)[j] / s;
        hz.push_back(q_json(t));
    }
    cert["z"] = zj;
    cert["Hz"] = hz;
    return cert;
}

Exit cmd_check(const Opts& o) {
    Fan f = load_fan(o);
    auto H = intersection_matrix(f);
    json hj = json::array();
    for (auto& row : H) hj.push_back(row);
    auto pos = is_positive(f);
    if (!pos.positive) return {2, {{"error", "fan not positive"}, {"certificate", non_positive_certificate(f)}}};
    json w = json::array();
    for (auto& x : pos.witness) w.push_back(q_json(x));
    json out = {{"fan", fan_json(f)}, {"H", hj}, {"monodromy", matrix_json(monodromy(f))}, {"positive", true}, {"witness", w}};
    try {
        json m = json::array();
        for (auto& v : seed_rays(f)) m.push_back(iv_json(v));
        out["toric_model"] = true;
        out["seed_rays"] = m;
    } catch (const DomainError&) {
        out["toric_model"] = false;
    }
    return {0, out};
}

Exit cmd_develop(const Opts& o) {
    Fan f = load_fan(o);
    if (o.cut < 1 || o.cut > f.n()) throw ParseError("", "--cut must be in 1.." + std::to_string(f.n()));
    auto fr = develop(f, o.cut - 1, o.sheets);
    json rays = json::array();
    for (size_t k = 0; k < fr.rays.size(); ++k) rays.push_back({{"j", fr.first + long(k)}, {"r", vec_json(fr.rays[k])}});
    json out = {{"cut", fr.cut + 1}, {"sheets", fr.sheets}, {"monodromy", matrix_json(monodromy(f))}, {"rays", rays}};
    write_svg(o, svg_frame(fr), out);
    return {0, out};
}

Exit cmd_pair(const Opts& o) {
    Fan f = load_fan(o);
    TropPoint q = load_point(f, o.q, "--q"), v = load_point(f, o.v, "--v");
    auto r = pair_cert(f, q, v);
    json tr = json::array();
    for (auto& s : r.cert.transcript)
        tr.push_back({{"wall", point_json(s.wall)}, {"mult", s.mult}, {"U", vec_json(s.U)}, {"w", vec_json(s.w)}});
    return {0, {{"value", q_json(r.value)}, {"case", std::string(1, r.cert.kase)}, {"lift", r.cert.lift}, {"k", r.cert.k}, {"transcript", tr}}};
}

Exit cmd_trop_theta(const Opts& o) {
    Fan f = load_fan(o);
    TropPoint q = load_point(f, o.q, "--q");
    auto t = trop_theta(f, q);
    json bends = json::array();
    for (auto& b : t.positive_bends)
        bends.push_back({{"wall", point_json(b.wall)}, {"mult", b.mult}, {"bend", q_json(b.bend)}, {"expected", q_json(b.expected)}});
    return {0, {{"q", point_json(q)}, {"b_q", point_json(t.b_q)}, {"function", function_json(t.fn)}, {"positive_bends", bends}}};
}

void check_order(int k) {
    if (k < 1 || k > kMaxOrder) throw ParseError("", "--order must be in 1..15");
}

Exit cmd_scatter(const Opts& o) {
    Fan f = load_fan(o);
    check_order(o.order);
    const Diagram& d = consistent_diagram(f, o.order);
    json out = diagram_json(d);
    write_svg(o, svg_diagram(d), out);
    return {0, out};
}

Vec2 endpoint_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ParseError("", "expected an endpoint [\"x\",\"y\"]");
    return {q_from_json(j[0], "/0"), q_from_json(j[1], "/1")};
}

Exit cmd_broken_lines(const Opts& o) {
    Fan f = load_fan(o);
    check_order(o.order);
    TropPoint q = load_point(f, o.q, "--q");
    if (!q.integral()) throw ParseError("", "theta functions are indexed by integral points");
    ThetaEngine eng(f, o.order);
    Vec2 Qe;
    if (!o.endpoint.empty()) {
        Qe = endpoint_from_json(load(o.endpoint, "--endpoint"));
        if (eng.on_wall(Qe)) return {2, {{"error", "endpoint lies on a wall"}}};
    } else {
        if (o.sector < 1 || o.sector > f.n()) throw ParseError("", "give --endpoint or --sector in 1.." + std::to_string(f.n()));
        Qe = eng.endpoint_in_sector(o.sector - 1);
    }
    int s = eng.diagram().s;
    json lines = json::array();
    for (auto& bl : eng.broken_lines(q, Qe)) {
        json segs = json::array();
        for (size_t i = 0; i < bl.segs.size(); ++i) {
            auto& sg = bl.segs[i];
            json x = {{"m", iv_json(sg.m)}, {"cls", cls_unpack(sg.cls, s)}, {"coeff", q_json(sg.coeff)}};
            if (i > 0) {
                x["start"] = vec_json(sg.start);
                x["wall"] = iv_json(sg.wall);
            }
            segs.push_back(x);
        }
        lines.push_back({{"bends", bl.bends()}, {"segments", segs}});
    }
    return {0, {{"q", point_json(q)}, {"seed", iv_json(eng.seed(q))}, {"endpoint", vec_json(Qe)}, {"order", o.order}, {"lines", lines},
                {"expansion", series_terms_json(eng.expand(q, Qe), s)}}};
}

ThetaElement load_theta(const Fan& f, const std::string& s, const std::string& flag, int order) {
    need(s, flag);
    ThetaElement t = theta_from_json(f, load(s, flag), "");
    if (t.order != order) throw ParseError("/order", flag + " has order " + std::to_string(t.order) + " but --order is " + std::to_string(order));
    return t;
}

json theta_out(const ThetaElement& t, int nvars, bool spec) { return spec ? specialized_json(specialize(t)) : theta_json(t, nvars); }

Exit cmd_theta_mul(const Opts& o) {
    Fan f = load_fan(o);
    check_order(o.order);
    ThetaElement a, b;
    if (!o.q1.empty() || !o.q2.empty()) {
        TropPoint q1 = load_point(f, o.q1, "--q1"), q2 = load_point(f, o.q2, "--q2");
        if (!q1.integral() || !q2.integral()) throw ParseError("", "theta functions are indexed by integral points");
        a = ThetaElement::theta(q1, o.order);
        b = ThetaElement::theta(q2, o.order);
    } else {
        a = load_theta(f, o.f, "--f", o.order);
        b = load_theta(f, o.g, "--g", o.order);
    }
    ThetaEngine eng(f, o.order);
    return {0, theta_out(eng.multiply(a, b), eng.diagram().s, o.specialize)};
}

json line_trace_json(const LineTrace& L) {
    json cs = json::array();
    for (auto& c : L.crossings) cs.push_back({{"j", c.j}, {"ray", c.ray + 1}, {"point", vec_json(c.point)}, {"t", q_json(c.t)}});
    json out = {{"q", point_json(L.q)}, {"d", q_json(L.d)}, {"wraps", L.wraps}, {"self_parallel", L.self_parallel},
                {"crossings", cs}, {"plus", point_json(L.plus)}, {"minus", point_json(L.minus)},
                {"self_intersects", L.self_intersects}, {"bounded", L.bounded}};
    if (L.self_intersects) out["t"] = json::array({q_json(L.t1), q_json(L.t2)});
    json zb = json::array();
    for (auto& p : L.zero_boundary) zb.push_back(point_json(p));
    out["zero_boundary"] = zb;
    return out;
}

// with --d a straight line through q; otherwise the trace Tr_r of a theta element
Exit cmd_trace(const Opts& o) {
    Fan f = load_fan(o);
    if (!o.d.empty()) {
        TropPoint q = load_point(f, o.q, "--q");
        if (q.is_zero()) throw ParseError("", "a line needs a nonzero point");
        Q d;
        try {
            d = q_from_string(o.d);
        } catch (const std::exception& e) {
            throw ParseError("", std::string("--d: ") + e.what());
        }
        auto L = trace_line(f, q, d);
        json out = line_trace_json(L);
        write_svg(o, svg_trace(f, L), out);
        return {0, out};
    }
    check_order(o.order);
    ThetaElement t;
    if (!o.q.empty()) {
        TropPoint q = load_point(f, o.q, "--q");
        if (!q.integral()) throw ParseError("", "theta functions are indexed by integral points");
        t = ThetaElement::theta(q, o.order);
    } else {
        t = load_theta(f, o.f, "--f", o.order);
    }
    ThetaEngine eng(f, o.order);
    TropPoint r = o.r.empty() ? TropPoint{0, 0, 0} : load_point(f, o.r, "--r");
    if (!r.integral()) throw ParseError("", "traces are indexed by integral points");
    ClassPoly c = r.is_zero() ? eng.trace0(t) : eng.trace(t, r);
    return {0, {{"r", point_json(r)}, {"trace", class_poly_json(c, eng.diagram().s)}, {"specialized", q_json(specialize(c))}}};
}

Exit cmd_to_theta(const Opts& o) {
    Fan f = load_fan(o);
    check_order(o.order);
    need(o.g, "--g");
    json j = load(o.g, "--g");
    if (!j.is_object()) throw ParseError("", "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "sector" && it.key() != "terms") throw ParseError("/" + it.key(), "unknown field");
    if (!j.contains("sector")) throw ParseError("/sector", "missing field");
    if (!j.contains("terms")) throw ParseError("/terms", "missing field");
    long sector = int_from_json(j["sector"], "/sector");
    if (sector < 1 || sector > f.n()) throw ParseError("/sector", "sector out of range 1.." + std::to_string(f.n()));
    const json& ts = j["terms"];
    if (!ts.is_array()) throw ParseError("/terms", "expected an array");
    Series g;
    for (size_t i = 0; i < ts.size(); ++i) {
        std::string p = "/terms/" + std::to_string(i);
        if (!ts[i].is_object() || !ts[i].contains("n") || !ts[i].contains("c")) throw ParseError(p, "expected {\"n\",\"c\"}");
        for (auto it = ts[i].begin(); it != ts[i].end(); ++it)
            if (it.key() != "n" && it.key() != "c" && it.key() != "cls") throw ParseError(p + "/" + it.key(), "unknown field");
        IV m = iv_from_json(ts[i]["n"], p + "/n");
        Cls c = 0;
        if (ts[i].contains("cls")) {
            json one = json::array({{{"c", "1"}, {"cls", ts[i]["cls"]}}});
            c = class_poly_from_json(one, p).terms.begin()->first.cls;
        }
        g.add({m, c}, q_from_json(ts[i]["c"], p + "/c"));
    }
    ThetaEngine eng(f, o.order);
    return {0, theta_out(eng.to_theta_basis(g, eng.endpoint_in_sector(int(sector - 1))), eng.diagram().s, o.specialize)};
}

Exit polytope_out(const Opts& o, const Fan& f, const StrongPolytope& P) {
    json out = polytope_json(P);
    write_svg(o, svg_polytope(f, P), out);
    return {0, out};
}

Exit cmd_hull(const Opts& o) {
    Fan f = load_fan(o);
    need(o.points, "--points");
    return polytope_out(o, f, strong_hull(f, points_from_json(f, load(o.points, "--points"), "")));
}

Exit cmd_polar(const Opts& o) {
    Fan f = load_fan(o);
    StrongPolytope P;
    if (!o.points.empty()) P = polar(f, points_from_json(f, load(o.points, "--points"), ""));
    else {
        need(o.polytope, "--points or --polytope");
        P = polar(f, polytope_from_json(f, load(o.polytope, "--polytope"), ""));
    }
    Fan m = mirror(f);
    Exit e = polytope_out(o, m, P);
    e.body["fan"] = fan_json(m);
    return e;
}

Exit cmd_newton(const Opts& o) {
    Fan f = load_fan(o);
    need(o.f, "--f");
    json j = load(o.f, "--f");
    return polytope_out(o, f, newton(f, theta_from_json(f, j, "")));
}

Exit cmd_minkowski(const Opts& o) {
    Fan f = load_fan(o);
    need(o.polys, "--polys");
    json j = load(o.polys, "--polys");
    if (!j.is_array() || j.empty()) throw ParseError("", "expected a non-empty array of polytopes");
    std::vector<StrongPolytope> ps;
    for (size_t i = 0; i < j.size(); ++i) ps.push_back(polytope_from_json(f, j[i], "/" + std::to_string(i)));
    MinkowskiMethod m;
    try {
        m = minkowski_method(o.method);
    } catch (const std::exception& e) {
        throw ParseError("", e.what());
    }
    return polytope_out(o, f, minkowski(f, ps, m));
}

Exit cmd_sections(const Opts& o) {
    Fan f = load_fan(o);
    need(o.divisor, "--divisor");
    auto R = sections(f, divisor_from_json(f, load(o.divisor, "--divisor"), ""));
    json pts = json::array(), edges = json::array();
    for (auto& p : R.points) pts.push_back(point_json(p));
    for (auto& e : R.edges)
        edges.push_back({{"v", point_json(e.v)}, {"coeff", q_json(e.coeff)}, {"lattice_points", e.lattice_points}, {"d", e.d},
                         {"WD", q_json(e.WD)}, {"meets_prev", e.meets_prev}, {"meets_next", e.meets_next},
                         {"applicable", e.applicable}, {"inequality", e.inequality}, {"equality", e.equality},
                         {"consistent", e.consistent}});
    json out = {{"polytope", polytope_json(R.polytope)}, {"points", pts}, {"dimension", R.dimension}, {"edges", edges},
                {"self_intersection", q_json(R.self_intersection)}, {"effective", R.effective}, {"d_ample", R.d_ample}};
    write_svg(o, svg_polytope(f, R.polytope), out);
    return {0, out};
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
    if (const char* t = std::getenv("LOOIJ_THREADS")) {
        char* end = nullptr;
        long n = std::strtol(t, &end, 10);
        if (end == t || *end || n < 1) {
            emit({{"error", "LOOIJ_THREADS must be a positive integer"}});
            return 1;
        }
    }

    CLI::App app{"looij: exact tropical geometry of log Calabi-Yau surfaces"};
    app.require_subcommand(1);
    Opts o;

    auto fan = [&](CLI::App* s) { s->add_option("--fan", o.fan, "fan JSON (file or inline)")->required(); };
    auto order = [&](CLI::App* s) { s->add_option("--order,-k", o.order, "truncation order")->capture_default_str(); };
    auto svg = [&](CLI::App* s) { s->add_option("--svg", o.svg, "write an SVG picture to this path"); };

    std::map<std::string, std::function<Exit(const Opts&)>> run;
    auto verb = [&](const std::string& name, const std::string& help, std::function<Exit(const Opts&)> fn) {
        run[name] = std::move(fn);
        auto* s = app.add_subcommand(name, help);
        fan(s);
        return s;
    };

    verb("check", "intersection matrix, monodromy and positivity", cmd_check);

    auto* dev = verb("develop", "developed frame of rays", cmd_develop);
    dev->add_option("--cut", o.cut, "ray placed at (1,0), 1-based")->capture_default_str();
    dev->add_option("--sheets", o.sheets, "turns developed on each side")->capture_default_str();
    svg(dev);

    auto* pr = verb("pair", "canonical pairing <q, v>", cmd_pair);
    pr->add_option("--q", o.q)->required();
    pr->add_option("--v", o.v)->required();

    verb("trop-theta", "tropical theta function of q", cmd_trop_theta)->add_option("--q", o.q)->required();

    auto* sc = verb("scatter", "consistent scattering diagram", cmd_scatter);
    order(sc);
    svg(sc);

    auto* bl = verb("broken-lines", "broken lines for q ending at a point", cmd_broken_lines);
    bl->add_option("--q", o.q)->required();
    auto* ep = bl->add_option("--endpoint", o.endpoint, "seed coordinates [\"x\",\"y\"]");
    bl->add_option("--sector", o.sector, "generic endpoint in this chamber, 1-based")->excludes(ep);
    order(bl);

    auto* tm = verb("theta-mul", "product of two theta elements", cmd_theta_mul);
    auto* q1 = tm->add_option("--q1", o.q1);
    auto* q2 = tm->add_option("--q2", o.q2);
    tm->add_option("--f", o.f)->excludes(q1)->excludes(q2);
    tm->add_option("--g", o.g)->excludes(q1)->excludes(q2);
    tm->add_flag("--specialize", o.specialize, "set class variables to 1");
    order(tm);

    auto* tr = verb("trace", "line trace (with --d) or theta trace Tr_r", cmd_trace);
    tr->add_option("--q", o.q);
    tr->add_option("--d", o.d, "line parameter <q, .> level");
    tr->add_option("--f", o.f);
    tr->add_option("--r", o.r);
    order(tr);
    svg(tr);

    auto* tt = verb("to-theta", "expand a Laurent polynomial in the theta basis", cmd_to_theta);
    tt->add_option("--g", o.g)->required();
    tt->add_flag("--specialize", o.specialize);
    order(tt);

    auto* hu = verb("hull", "strong convex hull of points", cmd_hull);
    hu->add_option("--points", o.points)->required();
    svg(hu);

    auto* po = verb("polar", "polar polytope, on the mirror fan", cmd_polar);
    auto* pp = po->add_option("--points", o.points);
    po->add_option("--polytope", o.polytope)->excludes(pp);
    svg(po);

    auto* ne = verb("newton", "Newton polytope of a theta element", cmd_newton);
    ne->add_option("--f", o.f)->required();
    svg(ne);

    auto* mi = verb("minkowski", "Minkowski sum", cmd_minkowski);
    mi->add_option("--polys", o.polys)->required();
    mi->add_option("--method", o.method, "definition | separating-rays | universal-cover | per-seed")->capture_default_str();
    svg(mi);

    auto* se = verb("sections", "sections of a boundary divisor", cmd_sections);
    se->add_option("--divisor", o.divisor)->required();
    svg(se);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        emit({{"error", e.what()}});
        return 1;
    }

    std::string name = app.get_subcommands().front()->get_name();
    try {
        Exit e = run.at(name)(o);
        emit(e.body);
        return e.code;
    } catch (const ParseError& e) {
        emit({{"error", e.what()}, {"pointer", e.pointer.empty() ? "/" : e.pointer}});
        return 1;
    } catch (const DomainError& e) {
        emit({{"error", e.what()}});
        return 2;
    } catch (const std::exception& e) {
        emit({{"error", std::string("internal: ") + e.what()}});
        return 3;
    }
}
