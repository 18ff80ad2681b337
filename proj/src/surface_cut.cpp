#include "uwidth/surface_cut.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "uwidth/components.hpp"
#include "uwidth/error.hpp"
#include "uwidth/metric.hpp"

namespace uw {

namespace {

BuildOptions surface_build() {
    BuildOptions o;
    o.surface = true;
    return o;
}

std::array<Id, 3> cycle(const MetricComplex& c, const std::vector<int>& o, Id t) {
    auto v = c.triangle(t).v;
    if (o[t] < 0) std::swap(v[1], v[2]);
    return v;
}

bool on_one_triangle(const MetricComplex& c, Id e) { return c.edge_triangles(e).size() == 1; }

std::vector<char> rim_vertices(const MetricComplex& c) {
    std::vector<char> out(c.num_vertices(), 0);
    for (Id e = 0; e < c.num_edges(); ++e)
        if (c.edge_triangles(e).size() <= 1) out[c.edge(e).a] = out[c.edge(e).b] = 1;
    return out;
}

std::string path_string(const std::vector<Id>& p) {
    std::ostringstream os;
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? " " : "") << p[i];
    return os.str();
}

}  // namespace

std::vector<int> orient_surface(const MetricComplex& c) {
    std::vector<int> o(c.num_triangles(), 0);
    for (Id root = 0; root < c.num_triangles(); ++root) {
        if (o[root]) continue;
        o[root] = 1;
        std::queue<Id> q;
        q.push(root);
        while (!q.empty()) {
            Id t = q.front();
            q.pop();
            for (Id e : c.triangle(t).e) {
                auto tris = c.edge_triangles(e);
                if (tris.size() != 2) continue;
                Id u = tris[0] == t ? tris[1] : tris[0];
                Id a = c.edge(e).a, b = c.edge(e).b;
                if (!runs_along(c, o, t, a, b)) std::swap(a, b);
                if (o[u]) continue;
                o[u] = 1;
                if (!runs_along(c, o, u, b, a)) o[u] = -1;
                q.push(u);
            }
        }
    }
    // consistency pass
    for (Id e = 0; e < c.num_edges(); ++e) {
        auto tris = c.edge_triangles(e);
        if (tris.size() != 2) continue;
        Id a = c.edge(e).a, b = c.edge(e).b;
        if (runs_along(c, o, tris[0], a, b) == runs_along(c, o, tris[1], a, b))
            throw Error(ErrorCode::UnsupportedTopology, "surface is not orientable");
    }
    return o;
}

bool runs_along(const MetricComplex& c, const std::vector<int>& orient, Id t, Id a, Id b) {
    auto v = cycle(c, orient, t);
    for (int i = 0; i < 3; ++i)
        if (v[i] == a && v[(i + 1) % 3] == b) return true;
    return false;
}

std::vector<Id> BoundaryPieces::pieces_at(const MetricComplex& c, Id v) const {
    std::vector<Id> out;
    for (Id e : c.incident_edges(v))
        if (edge_piece[e] != kNone) out.push_back(edge_piece[e]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

BoundaryPieces boundary_pieces(const MetricComplex& c, const std::vector<char>& true_boundary) {
    const std::size_t ne = c.num_edges();
    UnionFind uf(ne);
    for (Id v = 0; v < c.num_vertices(); ++v) {
        Id first[2] = {kNone, kNone};
        for (Id e : c.incident_edges(v)) {
            if (!on_one_triangle(c, e)) continue;
            int k = true_boundary[e] ? 1 : 0;
            if (first[k] == kNone) first[k] = e;
            else uf.unite(first[k], e);
        }
    }
    BoundaryPieces out;
    out.edge_piece.assign(ne, kNone);
    std::map<std::size_t, Id> ids;
    for (Id e = 0; e < ne; ++e) {
        if (!on_one_triangle(c, e)) continue;
        auto [it, fresh] = ids.emplace(uf.find(e), Id(ids.size()));
        if (fresh) out.piece_true.push_back(true_boundary[e] ? 1 : 0);
        out.edge_piece[e] = it->second;
    }
    out.count = ids.size();
    return out;
}

Patch patch_from_cover(const CoverPatch& cp) {
    Patch p;
    p.complex = cp.complex;
    p.proj = cp.vertex_base;
    p.basepoint = cp.basepoint;
    p.true_boundary.assign(cp.complex.num_edges(), 0);
    for (Id e = 0; e < cp.complex.num_edges(); ++e)
        p.true_boundary[e] = on_one_triangle(cp.complex, e) && on_one_triangle(cp.base, cp.edge_base[e]);
    return p;
}

StripResult insert_strips(const MetricComplex& c, const std::vector<std::vector<Id>>& arcs,
                          const std::vector<double>& columns, const LeftTest& left,
                          const std::vector<char>& true_boundary) {
    const std::size_t C = columns.size();
    if (C < 2) throw Error(ErrorCode::BadParam, "strip needs at least two columns");
    for (std::size_t i = 1; i < C; ++i)
        if (!(columns[i] > columns[i - 1])) throw Error(ErrorCode::BadParam, "strip columns must increase");
    double M = columns.back();
    if (!(M > 0) || std::abs(columns.front() + M) > 1e-12 * M)
        throw Error(ErrorCode::BadParam, "strip columns must span [-M, M] with M > 0");

    const std::size_t nv = c.num_vertices();
    auto rim = rim_vertices(c);
    std::vector<int> arc_of(nv, -1);
    std::vector<std::vector<Id>> path_edges(arcs.size());
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        auto& a = arcs[i];
        if (a.size() < 2) throw Error(ErrorCode::ArcNotSimple, "arc needs at least one edge");
        for (std::size_t k = 0; k < a.size(); ++k) {
            Id v = a[k];
            if (v >= nv) throw Error(ErrorCode::BadParam, "arc vertex out of range");
            if (arc_of[v] >= 0) throw Error(ErrorCode::ArcNotSimple, "vertex " + std::to_string(v) + " used twice");
            arc_of[v] = int(i);
            bool end = k == 0 || k + 1 == a.size();
            if (end && !rim[v])
                throw Error(ErrorCode::ArcNotSimple, "arc endpoint " + std::to_string(v) + " is not on the boundary");
            if (!end && rim[v])
                throw Error(ErrorCode::ArcNotSimple, "arc touches the boundary at " + std::to_string(v));
            if (k + 1 < a.size()) {
                Id e = c.find_edge(v, a[k + 1]);
                if (e == kNone) throw Error(ErrorCode::ArcNotSimple, "arc is not an edge path");
                if (c.edge_triangles(e).size() != 2)
                    throw Error(ErrorCode::ArcNotSimple, "arc runs along the boundary");
                path_edges[i].push_back(e);
            }
        }
    }

    StripResult r;
    r.M = M;
    r.columns = columns;
    r.right_copy.assign(nv, kNone);
    Id next = Id(nv);
    for (auto& a : arcs)
        for (Id v : a) r.right_copy[v] = next++;

    std::vector<std::array<Id, 3>> tv(c.num_triangles());
    for (Id t = 0; t < c.num_triangles(); ++t) tv[t] = c.triangle(t).v;

    for (std::size_t i = 0; i < arcs.size(); ++i) {
        auto& a = arcs[i];
        for (std::size_t k = 0; k < a.size(); ++k) {
            Id v = a[k];
            std::vector<std::pair<Id, std::size_t>> pe;  // path edge, its index along the arc
            if (k > 0) pe.push_back({path_edges[i][k - 1], k - 1});
            if (k + 1 < a.size()) pe.push_back({path_edges[i][k], k});
            auto fan = c.vertex_triangles(v);
            std::vector<Id> tris(fan.begin(), fan.end());
            auto local = [&](Id t) { return std::size_t(std::find(tris.begin(), tris.end(), t) - tris.begin()); };
            UnionFind uf(tris.size());
            for (Id e : c.incident_edges(v)) {
                bool cut = false;
                for (auto& p : pe) cut |= p.first == e;
                if (cut) continue;
                auto et = c.edge_triangles(e);
                for (std::size_t j = 1; j < et.size(); ++j) uf.unite(local(et[0]), local(et[j]));
            }
            std::map<std::size_t, int> side;  // group root -> 1 left, 0 right
            for (auto& [e, kk] : pe)
                for (Id t : c.edge_triangles(e)) {
                    int s = left(t, i, kk) ? 1 : 0;
                    auto [it, fresh] = side.emplace(uf.find(local(t)), s);
                    if (!fresh && it->second != s)
                        throw Error(ErrorCode::ArcNotSimple, "inconsistent sides at vertex " + std::to_string(v));
                }
            int lefts = 0, rights = 0;
            std::set<std::size_t> roots;
            for (std::size_t j = 0; j < tris.size(); ++j) roots.insert(uf.find(j));
            for (auto root : roots) {
                auto it = side.find(root);
                if (it == side.end())
                    throw Error(ErrorCode::ArcNotSimple, "fan at vertex " + std::to_string(v) + " is not split by the arc");
                (it->second ? lefts : rights)++;
            }
            if (lefts != 1 || rights != 1)
                throw Error(ErrorCode::ArcNotSimple, "arc does not have two sides at vertex " + std::to_string(v));
            for (std::size_t j = 0; j < tris.size(); ++j) {
                if (side[uf.find(j)]) continue;
                for (Id& x : tv[tris[j]])
                    if (x == v) x = r.right_copy[v];
            }
        }
    }

    ComplexBuilder b;
    for (Id v = 0; v < next; ++v) b.add_vertex();
    r.origin.assign(next, kNone);
    for (Id v = 0; v < nv; ++v) {
        r.origin[v] = v;
        if (r.right_copy[v] != kNone) r.origin[r.right_copy[v]] = v;
    }
    for (Id t = 0; t < c.num_triangles(); ++t) {
        auto& tr = c.triangle(t);
        for (int j = 0; j < 3; ++j) {
            // tr.e[j] joins tr.v[j] and tr.v[j+1]
            b.edge(tv[t][j], tv[t][(j + 1) % 3], c.edge(tr.e[j]).length);
        }
    }
    for (Id e = 0; e < c.num_edges(); ++e)
        if (c.edge_triangles(e).empty()) b.edge(c.edge(e).a, c.edge(e).b, c.edge(e).length);
    for (Id t = 0; t < c.num_triangles(); ++t) b.triangle(tv[t][0], tv[t][1], tv[t][2]);

    struct Cell {
        Id a, b;
        double len;
    };
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        auto& a = arcs[i];
        InsertedStrip s;
        s.arc = a;
        s.rows.assign(a.size(), 0);
        for (std::size_t k = 0; k + 1 < a.size(); ++k) s.rows[k + 1] = s.rows[k] + c.edge(path_edges[i][k]).length;
        s.grid.assign(C, std::vector<Id>(a.size(), kNone));
        for (std::size_t k = 0; k < a.size(); ++k) {
            s.grid[0][k] = a[k];
            s.grid[C - 1][k] = r.right_copy[a[k]];
        }
        for (std::size_t col = 1; col + 1 < C; ++col)
            for (std::size_t k = 0; k < a.size(); ++k) {
                s.grid[col][k] = b.add_vertex();
                r.origin.push_back(kNone);
            }
        std::vector<std::pair<Id, Id>> made;
        for (std::size_t col = 0; col + 1 < C; ++col) {
            double dx = columns[col + 1] - columns[col];
            for (std::size_t k = 0; k < a.size(); ++k) {
                b.edge(s.grid[col][k], s.grid[col + 1][k], dx);
                made.push_back({s.grid[col][k], s.grid[col + 1][k]});
            }
            for (std::size_t k = 0; k + 1 < a.size(); ++k) {
                double dt = s.rows[k + 1] - s.rows[k];
                if (col + 1 < C - 1) {
                    b.edge(s.grid[col + 1][k], s.grid[col + 1][k + 1], dt);
                    made.push_back({s.grid[col + 1][k], s.grid[col + 1][k + 1]});
                }
                b.edge(s.grid[col][k], s.grid[col + 1][k + 1], std::hypot(dx, dt));
                made.push_back({s.grid[col][k], s.grid[col + 1][k + 1]});
                b.triangle(s.grid[col][k], s.grid[col + 1][k], s.grid[col + 1][k + 1]);
                b.triangle(s.grid[col][k], s.grid[col + 1][k + 1], s.grid[col][k + 1]);
            }
        }
        s.edges.reserve(made.size());
        r.strips.push_back(std::move(s));
        // edge ids are resolved after the build
        r.strips.back().edges.clear();
        for (auto& [x, y] : made) r.strips.back().edges.push_back(x), r.strips.back().edges.push_back(y);
    }

    r.complex = b.build(surface_build());
    auto& n = r.complex;
    for (auto& s : r.strips) {
        std::vector<Id> ids;
        for (std::size_t j = 0; j + 1 < s.edges.size(); j += 2) ids.push_back(n.find_edge(s.edges[j], s.edges[j + 1]));
        s.edges = std::move(ids);
    }

    r.edge_map.assign(c.num_edges(), kNone);
    for (Id e = 0; e < c.num_edges(); ++e) {
        Id a = c.edge(e).a, bb = c.edge(e).b;
        auto et = c.edge_triangles(e);
        bool path = arc_of[a] >= 0 && arc_of[bb] >= 0 && et.size() == 2;
        if (path) {
            auto& pe = path_edges[std::size_t(arc_of[a])];
            path = std::find(pe.begin(), pe.end(), e) != pe.end();
        }
        if (!et.empty() && !path) {
            Id t = et[0];
            auto& tr = c.triangle(t);
            for (int j = 0; j < 3; ++j) {
                if (tr.v[j] == a) a = tv[t][j];
            }
            for (int j = 0; j < 3; ++j) {
                if (tr.v[j] == c.edge(e).b) bb = tv[t][j];
            }
        }
        r.edge_map[e] = n.find_edge(a, bb);
    }
    r.true_boundary.assign(n.num_edges(), 0);
    for (Id e = 0; e < c.num_edges(); ++e)
        if (e < true_boundary.size() && true_boundary[e] && r.edge_map[e] != kNone) r.true_boundary[r.edge_map[e]] = 1;
    for (auto& s : r.strips) {
        std::size_t top = s.arc.size() - 1;
        for (std::size_t col = 0; col + 1 < C; ++col) {
            r.true_boundary[n.find_edge(s.grid[col][0], s.grid[col + 1][0])] = 1;
            r.true_boundary[n.find_edge(s.grid[col][top], s.grid[col + 1][top])] = 1;
        }
    }
    return r;
}

StripResult insert_strip(const MetricComplex& c, const std::vector<Id>& arc, double M, double h) {
    if (!(M > 0)) throw Error(ErrorCode::BadParam, "strip half-width must be positive");
    if (!(h > 0)) throw Error(ErrorCode::BadParam, "strip resolution must be positive");
    int n = std::max(1, int(std::ceil(2 * M / h - 1e-9)));
    std::vector<double> cols(std::size_t(n) + 1);
    for (int j = 0; j <= n; ++j) cols[std::size_t(j)] = -M + 2 * M * j / n;
    cols.back() = M;
    auto o = orient_surface(c);
    std::vector<char> tb(c.num_edges(), 0);
    for (Id e = 0; e < c.num_edges(); ++e) tb[e] = on_one_triangle(c, e);
    return insert_strips(c, {arc}, cols, [&](Id t, std::size_t, std::size_t k) { return runs_along(c, o, t, arc[k], arc[k + 1]); },
                         tb);
}

MetricComplex squeeze_strips(const StripResult& s, double tau) {
    if (!(tau > 0)) throw Error(ErrorCode::BadParam, "squeezed width must be positive");
    auto d = describe(s.complex);
    double f = tau / s.M;
    for (auto& st : s.strips) {
        std::map<Id, std::pair<double, double>> at;
        for (std::size_t col = 0; col < st.grid.size(); ++col)
            for (std::size_t k = 0; k < st.rows.size(); ++k) at[st.grid[col][k]] = {s.columns[col] * f, st.rows[k]};
        for (Id e : st.edges) {
            auto& ed = s.complex.edge(e);
            auto p = at.at(ed.a), q = at.at(ed.b);
            d.edges[e].length = std::hypot(p.first - q.first, p.second - q.second);
        }
    }
    return build_complex(d, surface_build());
}

double stretch_factor(const MetricComplex& before, const MetricComplex& after, const std::vector<Id>& sample) {
    RefinedComplex rb(before, before.longest_edge(), 1), ra(after, after.longest_edge(), 1);
    double worst = 0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        auto db = shortest_paths(rb, {{sample[i], 0.0}});
        auto da = shortest_paths(ra, {{sample[i], 0.0}});
        for (std::size_t j = 0; j < sample.size(); ++j) {
            Id v = sample[j];
            if (v == sample[i] || !(db[v] > 0)) continue;
            worst = std::max(worst, da[v] / db[v]);
        }
    }
    return worst;
}

std::vector<std::vector<Id>> find_lifts(const Patch& p, const MetricComplex& surface, const std::vector<Id>& arc) {
    auto& c = p.complex;
    std::vector<std::vector<Id>> out;
    if (arc.empty()) return out;
    auto full_star = [&](Id u) {
        Id w = p.proj[u];
        if (w == kNone) return false;
        return c.vertex_triangles(u).size() == surface.vertex_triangles(w).size() &&
               c.incident_edges(u).size() == surface.incident_edges(w).size();
    };
    for (Id u = 0; u < c.num_vertices(); ++u) {
        if (p.proj[u] != arc[0] || !full_star(u)) continue;
        std::vector<Id> path{u};
        bool ok = true;
        for (std::size_t k = 1; k < arc.size() && ok; ++k) {
            Id found = kNone;
            for (Id e : c.incident_edges(path.back())) {
                Id w = c.edge(e).other(path.back());
                if (p.proj[w] != arc[k]) continue;
                if (found != kNone) ok = false;
                found = w;
            }
            if (found == kNone || !full_star(found)) ok = false;
            path.push_back(found);
        }
        if (ok) out.push_back(std::move(path));
    }
    return out;
}

BoundaryArc shortest_boundary_arc(const Patch& p, const std::vector<char>& cut_edge) {
    auto& c = p.complex;
    const std::size_t nv = c.num_vertices();
    std::vector<char> blocked(nv, 0), rim(nv, 0);
    UnionFind cls(nv);
    for (Id e = 0; e < c.num_edges(); ++e) {
        auto& ed = c.edge(e);
        bool cut = e < cut_edge.size() && cut_edge[e];
        if (cut) blocked[ed.a] = blocked[ed.b] = 1;
        if (p.true_boundary[e]) rim[ed.a] = rim[ed.b] = 1;
        if (cut || p.true_boundary[e]) cls.unite(ed.a, ed.b);
    }
    if (blocked[p.basepoint]) throw Error(ErrorCode::BadParam, "basepoint lies on a cut");

    std::vector<char> piece(nv, 0);
    std::vector<Id> stack{p.basepoint};
    piece[p.basepoint] = 1;
    while (!stack.empty()) {
        Id u = stack.back();
        stack.pop_back();
        for (Id e : c.incident_edges(u)) {
            Id w = c.edge(e).other(u);
            if (piece[w] || blocked[w]) continue;
            piece[w] = 1;
            stack.push_back(w);
        }
    }

    std::map<std::size_t, std::vector<Id>> sources;
    for (Id v = 0; v < nv; ++v)
        if (piece[v] && rim[v]) sources[cls.find(v)].push_back(v);

    BoundaryArc best;
    best.length = kInf;
    bool best_blocked = false;
    std::vector<double> dist(nv);
    std::vector<Id> prev(nv);
    for (auto& [k, src] : sources) {
        std::fill(dist.begin(), dist.end(), kInf);
        std::fill(prev.begin(), prev.end(), kNone);
        using Item = std::pair<double, Id>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        for (Id v : src) {
            dist[v] = 0;
            pq.push({0.0, v});
        }
        Id hit = kNone;
        while (!pq.empty()) {
            auto [d, u] = pq.top();
            pq.pop();
            if (d > dist[u]) continue;
            if (d >= best.length) break;
            if ((rim[u] || blocked[u]) && cls.find(u) != k) {
                hit = u;
                break;
            }
            if (blocked[u]) continue;
            for (Id e : c.incident_edges(u)) {
                Id w = c.edge(e).other(u);
                if (!piece[w] && !blocked[w]) continue;
                double nd = d + c.edge(e).length;
                if (nd < dist[w]) {
                    dist[w] = nd;
                    prev[w] = u;
                    pq.push({nd, w});
                }
            }
        }
        if (hit == kNone || !(dist[hit] < best.length)) continue;
        best.length = dist[hit];
        best.path.clear();
        for (Id v = hit; v != kNone; v = prev[v]) best.path.push_back(v);
        std::reverse(best.path.begin(), best.path.end());
        best.from = Id(cls.find(best.path.front()));
        best.to = Id(cls.find(hit));
        best_blocked = blocked[hit];
    }
    if (best.path.empty()) throw Error(ErrorCode::IsDisk, "no path joins two boundary components of the patch");
    if (best_blocked) {
        std::ostringstream os;
        os << "shortest boundary arc (length " << best.length << ") ends on an earlier cut; strips need M > "
           << best.length;
        throw Error(ErrorCode::ArcsIntersect, os.str());
    }
    return best;
}

CutArc project_arc(const Patch& p, const MetricComplex& surface, const BoundaryArc& a) {
    CutArc out;
    out.lift = a.path;
    out.length = a.length;
    out.from = a.from;
    out.to = a.to;
    auto rim = rim_vertices(surface);
    std::set<Id> seen;
    for (std::size_t k = 0; k < a.path.size(); ++k) {
        Id v = p.proj[a.path[k]];
        if (v == kNone) throw Error(ErrorCode::TruncationTooSmall, "arc passes a vertex with no projection");
        if (!seen.insert(v).second)
            throw Error(ErrorCode::ArcNotSimple, "projected arc revisits vertex " + std::to_string(v) + ": " +
                                                     path_string(a.path));
        bool end = k == 0 || k + 1 == a.path.size();
        if (!end && rim[v]) throw Error(ErrorCode::ArcNotSimple, "projected arc touches the boundary inside");
        if (end && !rim[v]) throw Error(ErrorCode::ArcNotSimple, "projected arc ends off the boundary");
        if (k > 0 && surface.find_edge(out.path.back(), v) == kNone)
            throw Error(ErrorCode::ArcNotSimple, "projected arc is not an edge path");
        out.path.push_back(v);
    }
    return out;
}

CutArc shortest_essential_arc(const MetricComplex& surface, double trunc) {
    if (surface.num_triangles() == 0) throw Error(ErrorCode::BadParam, "not a surface");
    bool rim = false;
    for (Id e = 0; e < surface.num_edges(); ++e) rim |= on_one_triangle(surface, e);
    if (!rim) throw Error(ErrorCode::UnsupportedTopology, "closed surface: the universal cover has infinite width");
    orient_surface(surface);
    auto pi = fundamental_group(surface);
    if (pi.group.is_trivial()) throw Error(ErrorCode::IsDisk, "surface is a disk; no essential arc");
    if (trunc <= 0) {
        RefinedComplex rc(surface, surface.longest_edge(), 1);
        std::vector<Id> all(surface.num_vertices());
        for (Id v = 0; v < all.size(); ++v) all[v] = v;
        trunc = 2 * vertex_diameter(rc, all).value;
    }
    auto cp = build_cover(surface, universal_cover_spec(pi), trunc, 0);
    auto p = patch_from_cover(cp);
    return project_arc(p, surface, shortest_boundary_arc(p, {}));
}

}  // namespace uw
