#include "looij/json_io.hpp"

#include <set>

namespace looij {

namespace {

void expect(bool ok, const std::string& ptr, const std::string& msg) {
    if (!ok) throw ParseError(ptr.empty() ? "/" : ptr, msg);
}

const json& field(const json& j, const std::string& key, const std::string& ptr) {
    expect(j.is_object(), ptr, "expected an object");
    auto it = j.find(key);
    expect(it != j.end(), ptr + "/" + key, "missing field");
    return *it;
}

void only_keys(const json& j, std::initializer_list<const char*> keys, const std::string& ptr) {
    expect(j.is_object(), ptr, "expected an object");
    std::set<std::string> ok(keys.begin(), keys.end());
    for (auto it = j.begin(); it != j.end(); ++it) expect(ok.count(it.key()) > 0, ptr + "/" + it.key(), "unknown field");
}

Cls cls_from_json(const json& j, const std::string& ptr) {
    expect(j.is_array(), ptr, "expected an array of class exponents");
    expect(j.size() <= size_t(kMaxClassVars), ptr, "too many class variables (max 16)");
    std::vector<int> e;
    for (size_t i = 0; i < j.size(); ++i) {
        long x = int_from_json(j[i], ptr + "/" + std::to_string(i));
        expect(x >= 0 && x <= kMaxOrder, ptr + "/" + std::to_string(i), "class exponent out of range 0..15");
        e.push_back(int(x));
    }
    return cls_pack(e);
}

json cls_json(Cls c, int nvars) {
    json a = json::array();
    for (int e : cls_unpack(c, nvars)) a.push_back(e);
    return a;
}

}  // namespace

Q q_from_json(const json& j, const std::string& ptr) {
    expect(!j.is_number(), ptr, "rationals must be strings");
    expect(j.is_string(), ptr, "expected a rational string");
    try {
        return q_from_string(j.get<std::string>());
    } catch (const std::exception& e) {
        throw ParseError(ptr, e.what());
    }
}

long int_from_json(const json& j, const std::string& ptr) {
    expect(j.is_number_integer(), ptr, "expected an integer");
    return j.get<long>();
}

json q_json(const Q& q) { return q_to_string(q); }

Fan fan_from_json(const json& j, const std::string& ptr) {
    only_keys(j, {"rays"}, ptr);
    const json& rs = field(j, "rays", ptr);
    expect(rs.is_array() && !rs.empty(), ptr + "/rays", "expected a non-empty array");
    std::vector<RaySpec> rays;
    for (size_t i = 0; i < rs.size(); ++i) {
        std::string p = ptr + "/rays/" + std::to_string(i);
        only_keys(rs[i], {"self_int", "blowups", "label"}, p);
        RaySpec r;
        r.self_int = int_from_json(field(rs[i], "self_int", p), p + "/self_int");
        if (rs[i].contains("blowups")) r.blowups = int_from_json(rs[i]["blowups"], p + "/blowups");
        expect(r.blowups >= 0, p + "/blowups", "blowups must be non-negative");
        if (rs[i].contains("label")) {
            expect(rs[i]["label"].is_string(), p + "/label", "expected a string");
            r.label = rs[i]["label"].get<std::string>();
        }
        rays.push_back(r);
    }
    try {
        return build_fan(rays);
    } catch (const DomainError& e) {
        throw ParseError(ptr + "/rays", e.what());
    }
}

json fan_json(const Fan& f) {
    json rs = json::array();
    for (auto& r : f.rays) {
        json o = {{"self_int", r.self_int}, {"blowups", r.blowups}};
        if (!r.label.empty()) o["label"] = r.label;
        rs.push_back(o);
    }
    return {{"rays", rs}};
}

TropPoint point_from_json(const Fan& f, const json& j, const std::string& ptr) {
    only_keys(j, {"sector", "a", "b"}, ptr);
    long s = int_from_json(field(j, "sector", ptr), ptr + "/sector");
    expect(s >= 1 && s <= f.n(), ptr + "/sector", "sector out of range 1.." + std::to_string(f.n()));
    Q a = q_from_json(field(j, "a", ptr), ptr + "/a");
    Q b = q_from_json(field(j, "b", ptr), ptr + "/b");
    expect(sgn(a) >= 0, ptr + "/a", "negative sector coordinate");
    expect(sgn(b) >= 0, ptr + "/b", "negative sector coordinate");
    TropPoint p{int(s - 1), a, b};
    return p.is_zero() ? TropPoint{0, 0, 0} : normalize(f, p);
}

json point_json(const TropPoint& p) {
    return {{"sector", p.is_zero() ? 1 : p.sector + 1}, {"a", q_json(p.a)}, {"b", q_json(p.b)}};
}

std::vector<TropPoint> points_from_json(const Fan& f, const json& j, const std::string& ptr) {
    expect(j.is_array(), ptr, "expected an array of points");
    std::vector<TropPoint> out;
    for (size_t i = 0; i < j.size(); ++i) out.push_back(point_from_json(f, j[i], ptr + "/" + std::to_string(i)));
    return out;
}

json iv_json(const IV& v) { return json::array({v.x, v.y}); }

IV iv_from_json(const json& j, const std::string& ptr) {
    expect(j.is_array() && j.size() == 2, ptr, "expected an integer pair");
    return {int_from_json(j[0], ptr + "/0"), int_from_json(j[1], ptr + "/1")};
}

json vec_json(const Vec2& v) { return json::array({q_json(v.x), q_json(v.y)}); }

json series_terms_json(const Series& s, int nvars) {
    json a = json::array();
    for (auto& [k, c] : s.terms) a.push_back({{"coeff", q_json(c)}, {"n", iv_json(k.m)}, {"cls", cls_json(k.cls, nvars)}});
    return a;
}

json class_poly_json(const ClassPoly& c, int nvars) {
    json a = json::array();
    for (auto& [k, x] : c.terms) a.push_back({{"c", q_json(x)}, {"cls", cls_json(k.cls, nvars)}});
    return a;
}

ClassPoly class_poly_from_json(const json& j, const std::string& ptr) {
    expect(j.is_array(), ptr, "expected an array of class monomials");
    ClassPoly c;
    for (size_t i = 0; i < j.size(); ++i) {
        std::string p = ptr + "/" + std::to_string(i);
        only_keys(j[i], {"c", "cls"}, p);
        Q x = q_from_json(field(j[i], "c", p), p + "/c");
        Cls e = j[i].contains("cls") ? cls_from_json(j[i]["cls"], p + "/cls") : 0;
        c.add({{0, 0}, e}, x);
    }
    return c;
}

json function_json(const TropicalFunction& t) {
    json rays = json::array(), vals = json::array();
    for (int k = 0; k < t.ref.fan.n(); ++k) {
        rays.push_back(point_json(t.ref.unmap({k, 1, 0})));
        vals.push_back(q_json(t.values[k]));
    }
    return {{"fan", fan_json(t.ref.fan)}, {"rays", rays}, {"values", vals}};
}

json diagram_json(const Diagram& d) {
    json walls = json::array();
    for (auto& w : d.walls)
        walls.push_back({{"dir", iv_json(w.dir)}, {"fn", series_terms_json(w.fn, d.s)}, {"incoming", w.incoming}});
    json m = json::array();
    for (auto& v : d.m) m.push_back(iv_json(v));
    return {{"order", d.order}, {"class_vars", d.s}, {"seed_rays", m}, {"blowups", d.b}, {"walls", walls}};
}

ThetaElement theta_from_json(const Fan& f, const json& j, const std::string& ptr) {
    only_keys(j, {"terms", "order"}, ptr);
    ThetaElement t;
    t.order = int(int_from_json(field(j, "order", ptr), ptr + "/order"));
    expect(t.order >= 1 && t.order <= kMaxOrder, ptr + "/order", "order must be in 1..15");
    const json& ts = field(j, "terms", ptr);
    expect(ts.is_array(), ptr + "/terms", "expected an array");
    for (size_t i = 0; i < ts.size(); ++i) {
        std::string p = ptr + "/terms/" + std::to_string(i);
        only_keys(ts[i], {"q", "coeff"}, p);
        TropPoint q = point_from_json(f, field(ts[i], "q", p), p + "/q");
        expect(q.integral(), p + "/q", "theta functions are indexed by integral points");
        const json& c = field(ts[i], "coeff", p);
        ClassPoly cp = c.is_array() ? class_poly_from_json(c, p + "/coeff")
                                    : Series::mono({0, 0}, 0, q_from_json(c, p + "/coeff"));
        t.terms[q] += cp;
        if (t.terms[q].empty()) t.terms.erase(q);
    }
    return t;
}

json theta_json(const ThetaElement& t, int nvars) {
    json a = json::array();
    for (auto& [q, c] : t.terms) a.push_back({{"q", point_json(q)}, {"coeff", class_poly_json(c, nvars)}});
    return {{"terms", a}, {"order", t.order}};
}

json specialized_json(const Specialized& s) {
    json a = json::array();
    for (auto& [q, c] : s.terms) a.push_back({{"q", point_json(q)}, {"coeff", q_json(c)}});
    return {{"terms", a}, {"truncation_sensitive", s.truncation_sensitive}};
}

StrongPolytope polytope_from_json(const Fan& f, const json& j, const std::string& ptr) {
    only_keys(j, {"facets", "vertices", "bounded", "contains_origin", "recession", "fan", "svg"}, ptr);
    const json& fs = field(j, "facets", ptr);
    expect(fs.is_array(), ptr + "/facets", "expected an array");
    std::vector<Facet> facets;
    for (size_t i = 0; i < fs.size(); ++i) {
        std::string p = ptr + "/facets/" + std::to_string(i);
        only_keys(fs[i], {"v", "bound"}, p);
        facets.push_back({point_from_json(f, field(fs[i], "v", p), p + "/v"), q_from_json(field(fs[i], "bound", p), p + "/bound")});
    }
    // the facets are the source of truth; everything else is recomputed
    if (j.contains("vertices")) points_from_json(f, j["vertices"], ptr + "/vertices");
    return from_facets(f, facets);
}

json polytope_json(const StrongPolytope& P) {
    json fs = json::array(), vs = json::array();
    for (auto& F : P.facets) fs.push_back({{"v", point_json(F.v)}, {"bound", q_json(F.a)}});
    for (auto& v : P.vertices) vs.push_back(point_json(v));
    json o = {{"facets", fs}, {"vertices", vs}, {"bounded", P.bounded}, {"contains_origin", P.contains_origin}};
    if (!P.bounded) {
        json r = json::array();
        for (auto& d : P.recession) r.push_back(point_json(d));
        o["recession"] = r;
    }
    return o;
}

BoundaryDivisor divisor_from_json(const Fan& f, const json& j, const std::string& ptr) {
    only_keys(j, {"terms"}, ptr);
    const json& ts = field(j, "terms", ptr);
    expect(ts.is_array(), ptr + "/terms", "expected an array");
    BoundaryDivisor W;
    for (size_t i = 0; i < ts.size(); ++i) {
        std::string p = ptr + "/terms/" + std::to_string(i);
        only_keys(ts[i], {"v", "coeff"}, p);
        W.terms.push_back({point_from_json(f, field(ts[i], "v", p), p + "/v"), q_from_json(field(ts[i], "coeff", p), p + "/coeff")});
    }
    return W;
}

}  // namespace looij
