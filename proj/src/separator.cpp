#include "uwidth/separator.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "uwidth/error.hpp"

namespace uw {

namespace {

struct Measured {
    double diameter = 0, lower = 0;
    std::array<PointOnComplex, 2> far{};
};

Measured measure_cells(const RefinedComplex& rc, std::vector<Id> verts, std::vector<Id> edges, double tol,
                       double floor) {
    auto& m = rc.mesh();
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    std::vector<Sample> pts;
    for (Id v : verts) pts.push_back(Sample::at(v));
    for (Id e : edges) pts.push_back(Sample::on_edge(m, e, m.edge(e).length / 2));
    auto point = [&](std::size_t i) {
        return i < verts.size() ? PointOnComplex::vertex(verts[i]) : PointOnComplex::on_edge(edges[i - verts.size()], 0.5);
    };
    Measured out;
    if (pts.empty()) return out;
    auto d = sample_diameter(rc, pts, tol, floor);
    out.diameter = d.value;
    out.lower = d.lower;
    out.far = {point(d.i), point(d.j)};
    return out;
}

std::string describe_point(const PointOnComplex& p) {
    std::ostringstream os;
    if (p.kind == PointOnComplex::Kind::Vertex) os << "vertex " << p.cell;
    else os << "edge " << p.cell << " at " << p.bary[1];
    return os.str();
}

}  // namespace

Separator measure_separator(const RefinedComplex& rc, const Subcomplex& zin, double rel_tol) {
    auto& m = rc.mesh();
    for (char t : zin.triangle)
        if (t) throw Error(ErrorCode::BadParam, "separator contains a triangle");
    Separator s;
    s.z = zin.closed(m);
    s.mesh_slack = rc.mesh_slack();
    s.z_components = components(m, s.z);

    const std::size_t nv = m.num_vertices(), ne = m.num_edges(), nt = m.num_triangles();
    UnionFind uf(nv + ne + nt);
    for (Id e = 0; e < ne; ++e) {
        if (s.z.edge[e]) continue;
        for (Id v : {m.edge(e).a, m.edge(e).b})
            if (!s.z.vertex[v]) uf.unite(v, nv + e);
    }
    for (Id t = 0; t < nt; ++t) {
        auto& tr = m.triangle(t);
        for (Id e : tr.e)
            if (!s.z.edge[e]) uf.unite(nv + ne + t, nv + e);
        for (Id v : tr.v)
            if (!s.z.vertex[v]) uf.unite(nv + ne + t, v);
    }
    std::map<std::size_t, std::size_t> slot;
    auto place = [&](std::size_t cell) -> CellSet& {
        auto [it, fresh] = slot.emplace(uf.find(cell), s.complement_components.size());
        if (fresh) s.complement_components.emplace_back();
        return s.complement_components[it->second];
    };
    for (Id v = 0; v < nv; ++v)
        if (!s.z.vertex[v]) place(v).vertices.push_back(v);
    for (Id e = 0; e < ne; ++e)
        if (!s.z.edge[e]) place(nv + e).edges.push_back(e);
    for (Id t = 0; t < nt; ++t) place(nv + ne + t).triangles.push_back(t);

    // with a tolerance, large components go first so the rest only need bounding
    std::vector<std::size_t> zo(s.z_components.size()), co(s.complement_components.size());
    for (std::size_t i = 0; i < zo.size(); ++i) zo[i] = i;
    for (std::size_t i = 0; i < co.size(); ++i) co[i] = i;
    if (rel_tol > 0) {
        auto cells = [](const CellSet& c) { return c.vertices.size() + c.edges.size() + c.triangles.size(); };
        std::stable_sort(zo.begin(), zo.end(), [&](auto a, auto b) { return cells(s.z_components[a]) > cells(s.z_components[b]); });
        std::stable_sort(co.begin(), co.end(), [&](auto a, auto b) {
            return cells(s.complement_components[a]) > cells(s.complement_components[b]);
        });
    }
    double floor = 0;
    s.z_diameters.resize(zo.size());
    s.z_far.resize(zo.size());
    for (std::size_t i : zo) {
        auto& c = s.z_components[i];
        auto r = measure_cells(rc, c.vertices, c.edges, rel_tol, floor);
        s.z_diameters[i] = r.diameter;
        s.z_far[i] = r.far;
        if (rel_tol > 0) floor = std::max(floor, r.lower);
    }
    s.complement_diameters.resize(co.size());
    s.complement_far.resize(co.size());
    for (std::size_t i : co) {
        auto& c = s.complement_components[i];
        std::vector<Id> verts = c.vertices, edges = c.edges;
        for (Id e : c.edges) {
            verts.push_back(m.edge(e).a);
            verts.push_back(m.edge(e).b);
        }
        for (Id t : c.triangles)
            for (int i = 0; i < 3; ++i) {
                verts.push_back(m.triangle(t).v[i]);
                edges.push_back(m.triangle(t).e[i]);
            }
        auto r = measure_cells(rc, verts, edges, rel_tol, floor);
        s.complement_diameters[i] = r.diameter;
        s.complement_far[i] = r.far;
        if (rel_tol > 0) floor = std::max(floor, r.lower);
    }
    for (double d : s.z_diameters) s.width = std::max(s.width, d);
    for (double d : s.complement_diameters) s.width = std::max(s.width, d);
    return s;
}

SeparatorVerdict verify_separator(const RefinedComplex& rc, const Subcomplex& z, double D) {
    SeparatorVerdict v;
    v.separator = measure_separator(rc, z);
    auto& s = v.separator;
    double worst = -1;
    for (std::size_t i = 0; i < s.z_components.size(); ++i)
        if (s.z_diameters[i] > worst) {
            worst = s.z_diameters[i];
            v.in_z = true;
            v.component = i;
            v.far = s.z_far[i];
        }
    for (std::size_t i = 0; i < s.complement_components.size(); ++i)
        if (s.complement_diameters[i] > worst) {
            worst = s.complement_diameters[i];
            v.in_z = false;
            v.component = i;
            v.far = s.complement_far[i];
        }
    v.diameter = std::max(worst, 0.0);
    v.accepted = s.width <= D + 1e-9;
    if (!v.accepted) {
        std::ostringstream os;
        os << (v.in_z ? "Z component " : "complement component ") << v.component << " has diameter " << v.diameter
           << " > " << D << " between " << describe_point(v.far[0]) << " and " << describe_point(v.far[1]);
        v.report = os.str();
    }
    return v;
}

Subcomplex refined_edges(const RefinedComplex& rc, const std::vector<Id>& base_edges) {
    auto& m = rc.mesh();
    std::vector<Id> es;
    for (Id e : base_edges) {
        if (e >= rc.base().num_edges()) throw Error(ErrorCode::BadParam, "no such base edge");
        auto& ch = rc.edge_chain(e);
        for (std::size_t k = 0; k + 1 < ch.size(); ++k) es.push_back(m.find_edge(ch[k], ch[k + 1]));
    }
    return Subcomplex::from_edges(m, es);
}

Subcomplex label_frontier(const RefinedComplex& rc, const std::vector<Id>& label, const std::vector<double>& key) {
    auto& m = rc.mesh();
    auto lowest = [&](std::initializer_list<Id> vs) {
        Id best = *vs.begin();
        for (Id v : vs)
            if (key[v] < key[best] || (key[v] == key[best] && v < best)) best = v;
        return label[best];
    };
    std::vector<Id> tri_label(m.num_triangles()), free_label(m.num_edges(), kNone);
    for (Id t = 0; t < m.num_triangles(); ++t) {
        auto& v = m.triangle(t).v;
        tri_label[t] = lowest({v[0], v[1], v[2]});
    }
    for (Id e = 0; e < m.num_edges(); ++e)
        if (m.edge_triangles(e).empty()) free_label[e] = lowest({m.edge(e).a, m.edge(e).b});

    Subcomplex z = Subcomplex::empty(m);
    for (Id e = 0; e < m.num_edges(); ++e) {
        auto ts = m.edge_triangles(e);
        for (Id t : ts)
            if (tri_label[t] != tri_label[ts[0]]) z.edge[e] = 1;
    }
    for (Id v = 0; v < m.num_vertices(); ++v) {
        std::set<Id> seen;
        for (Id t : m.vertex_triangles(v)) seen.insert(tri_label[t]);
        for (Id e : m.incident_edges(v))
            if (free_label[e] != kNone) seen.insert(free_label[e]);
        if (seen.size() > 1) z.vertex[v] = 1;
    }
    return z.closed(m);
}

Subcomplex sweep_frontier(const RefinedComplex& rc, const SweepQuotient& q, double band) {
    if (!(band > 0)) throw Error(ErrorCode::BadParam, "band width must be positive");
    std::map<std::pair<Id, long long>, Id> ids;
    std::vector<Id> label(q.assignment.size());
    for (Id v = 0; v < label.size(); ++v) {
        Id n = q.assignment[v];
        long long b = n == kNone ? v : std::max(0LL, (long long)std::floor((q.value[v] - q.nodes[n].r0) / band));
        label[v] = ids.emplace(std::make_pair(n, b), Id(ids.size())).first->second;
    }
    return label_frontier(rc, label, q.value);
}

Separator separator_from_map(const RefinedComplex& rc, const SweepQuotient& q, double eps) {
    if (!(eps > 0)) throw Error(ErrorCode::BadParam, "eps must be positive");
    const double D = q.width();
    Separator best;
    best.width = kInf;
    double band = q.step;
    for (int level = 0; level < 4; ++level, band /= 2) {
        auto s = measure_separator(rc, sweep_frontier(rc, q, band));
        if (s.width < best.width) best = std::move(s);
        if (best.width <= D + eps) return best;
    }
    std::ostringstream os;
    os << "separator width " << best.width << " exceeds sweep width " << D << " + " << eps;
    throw Error(ErrorCode::FiberBoundViolated, os.str());
}

std::vector<double> graph_map_fibers(const RefinedComplex& rc, const GraphMap& f) {
    auto& m = rc.mesh();
    if (f.vertex_node.size() != m.num_vertices()) throw Error(ErrorCode::BadParam, "map does not cover every mesh vertex");
    std::vector<std::vector<Id>> fiber(f.num_nodes);
    auto over = [&](std::initializer_list<Id> vs) {
        std::set<Id> image;
        for (Id v : vs) image.insert(f.vertex_node[v]);
        for (Id y : image) fiber[y].insert(fiber[y].end(), vs.begin(), vs.end());
    };
    for (Id v = 0; v < m.num_vertices(); ++v) over({v});
    for (auto& e : m.edges()) over({e.a, e.b});
    for (auto& t : m.triangles()) over({t.v[0], t.v[1], t.v[2]});
    std::vector<double> out;
    for (auto& vs : fiber) {
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        out.push_back(vs.empty() ? 0 : vertex_diameter(rc, vs).value);
    }
    return out;
}

Separator separator_from_map(const RefinedComplex& rc, const GraphMap& f, double D, double eps) {
    if (!(eps > 0)) throw Error(ErrorCode::BadParam, "eps must be positive");
    auto fib = graph_map_fibers(rc, f);
    double measured = fib.empty() ? 0 : *std::max_element(fib.begin(), fib.end());
    if (measured > D + 1e-9) {
        std::ostringstream os;
        os << "measured fiber " << measured << " exceeds claimed bound " << D;
        throw Error(ErrorCode::FiberBoundViolated, os.str());
    }
    std::vector<double> key(f.vertex_node.begin(), f.vertex_node.end());
    auto s = measure_separator(rc, label_frontier(rc, f.vertex_node, key));
    if (s.width > D + eps) {
        std::ostringstream os;
        os << "separator width " << s.width << " exceeds " << D << " + " << eps;
        throw Error(ErrorCode::FiberBoundViolated, os.str());
    }
    return s;
}

SeparatorMap map_from_separator(const RefinedComplex& rc, const Separator& s) {
    auto& m = rc.mesh();
    SeparatorMap out;
    out.num_z = s.z_components.size();
    auto& g = out.map;
    g.num_nodes = out.num_z + s.complement_components.size();
    g.vertex_node.assign(m.num_vertices(), kNone);
    for (std::size_t i = 0; i < s.z_components.size(); ++i)
        for (Id v : s.z_components[i].vertices) g.vertex_node[v] = Id(i);
    std::set<std::pair<Id, Id>> inc;
    for (std::size_t j = 0; j < s.complement_components.size(); ++j) {
        Id cone = Id(out.num_z + j);
        auto& c = s.complement_components[j];
        for (Id v : c.vertices) g.vertex_node[v] = cone;
        auto touch = [&](Id v) {
            if (s.z.vertex[v]) inc.insert({g.vertex_node[v], cone});
        };
        for (Id e : c.edges) {
            touch(m.edge(e).a);
            touch(m.edge(e).b);
        }
        for (Id t : c.triangles)
            for (Id v : m.triangle(t).v) touch(v);
    }
    g.edges.assign(inc.begin(), inc.end());
    out.edge_node.assign(m.num_edges(), kNone);
    for (Id e = 0; e < m.num_edges(); ++e)
        if (s.z.edge[e]) out.edge_node[e] = g.vertex_node[m.edge(e).a];

    auto again = measure_separator(rc, s.z);
    out.fiber = again.z_diameters;
    out.fiber.insert(out.fiber.end(), again.complement_diameters.begin(), again.complement_diameters.end());
    for (double d : out.fiber) out.bound = std::max(out.bound, d);
    return out;
}

Subcomplex separator_preimage(const RefinedComplex& rc, const SeparatorMap& sm) {
    auto& m = rc.mesh();
    Subcomplex z = Subcomplex::empty(m);
    for (Id v = 0; v < m.num_vertices(); ++v) z.vertex[v] = sm.map.vertex_node[v] < sm.num_z;
    for (Id e = 0; e < m.num_edges(); ++e) z.edge[e] = sm.edge_node[e] != kNone;
    return z.closed(m);
}

SearchResult search_separator(const RefinedComplex& rc, const std::vector<PointOnComplex>& seeds,
                              const SearchOptions& opt) {
    if (seeds.empty()) throw Error(ErrorCode::SourceNotOnComplex, "no seeds");
    if (opt.budget < 1) throw Error(ErrorCode::BadParam, "budget must be at least 1");
    struct Cand {
        std::size_t seed;
        double offset, step;
    };
    auto eval = [&](const Cand& c) {
        SweepOptions o;
        o.step = c.step;
        o.offset = c.offset;
        o.measure = false;
        auto q = sweep_quotient(rc, {seeds[c.seed]}, o);
        return measure_separator(rc, sweep_frontier(rc, q, c.step), opt.diameter_tol);
    };

    SearchResult r;
    r.best.width = kInf;
    Cand cur{0, 0, opt.step > 0 ? opt.step : rc.h()};
    auto consider = [&](const Cand& c) {
        auto s = eval(c);
        ++r.evaluations;
        bool better = s.width < r.best.width - 1e-12;
        if (better) {
            r.best = std::move(s);
            r.seed = c.seed;
            r.offset = c.offset;
            r.step = c.step;
            cur = c;
        }
        r.history.push_back(r.best.width);
        return better;
    };
    for (std::size_t i = 0; i < seeds.size(); ++i) consider({i, 0, cur.step});

    const double delta = rc.base().longest_edge() / rc.subdivisions();
    std::size_t spent = 0;
    bool moved = true;
    while (moved && spent < opt.budget) {
        moved = false;
        Cand c = cur;
        std::vector<Cand> nbrs = {{c.seed, std::fmod(c.offset + delta, c.step), c.step},
                                  {c.seed, std::fmod(c.offset - delta + c.step, c.step), c.step},
                                  {c.seed, c.offset, 2 * c.step}};
        for (auto& n : nbrs) {
            if (spent >= opt.budget) break;
            ++spent;
            if (consider(n)) {
                moved = true;
                break;
            }
        }
    }
    return r;
}

void write_separator(std::ostream& out, const RefinedComplex& rc, const Subcomplex& zin) {
    auto& m = rc.mesh();
    auto z = zin.closed(m);
    out << "mesh " << rc.subdivisions() << "\n";
    std::vector<char> covered(m.num_vertices(), 0);
    for (Id e = 0; e < m.num_edges(); ++e)
        if (z.edge[e]) {
            out << "z " << e << "\n";
            covered[m.edge(e).a] = covered[m.edge(e).b] = 1;
        }
    for (Id v = 0; v < m.num_vertices(); ++v) {
        if (!z.vertex[v] || covered[v]) continue;
        auto inc = m.incident_edges(v);
        if (inc.empty()) throw Error(ErrorCode::BadParam, "isolated vertex cannot be written");
        int t = m.edge(inc[0]).a == v ? 0 : 1;
        out << "z " << inc[0] << " " << t << " " << t << "\n";
    }
}

Subcomplex read_separator(std::istream& in, const RefinedComplex& rc) {
    auto& m = rc.mesh();
    Subcomplex z = Subcomplex::empty(m);
    std::string line;
    int lineno = 0;
    bool header = false;
    auto fail = [&](const std::string& why) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": " + why);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "mesh") {
            int n;
            if (!(ls >> n)) fail("bad mesh line");
            if (n != rc.subdivisions()) fail("mesh subdivision " + std::to_string(n) + " does not match");
            header = true;
            continue;
        }
        if (tag != "z") fail("unknown record '" + tag + "'");
        long long e;
        if (!(ls >> e) || e < 0 || std::size_t(e) >= m.num_edges()) fail("bad edge id");
        double t0 = 0, t1 = 1;
        if (ls >> t0) {
            if (!(ls >> t1)) fail("segment needs two parameters");
        }
        std::string extra;
        if (ls >> extra) fail("trailing tokens");
        auto& ed = m.edge(Id(e));
        if ((t0 == 0 && t1 == 1) || (t0 == 1 && t1 == 0)) z.edge[e] = 1;
        else if (t0 == t1 && (t0 == 0 || t0 == 1)) z.vertex[t0 == 0 ? ed.a : ed.b] = 1;
        else fail("partial segments are not on the mesh");
    }
    if (!header) throw Error(ErrorCode::ParseError, "missing mesh line");
    return z.closed(m);
}

}  // namespace uw
