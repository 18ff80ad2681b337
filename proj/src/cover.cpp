#include "uwidth/cover.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "uwidth/metric.hpp"

namespace uw {

namespace {

// letter of a raw generator traversed from x
int letter(const MetricComplex& c, Id e, Id from, const std::vector<int>& gen_of) {
    int g = gen_of[e];
    if (g < 0) return 0;
    return c.edge(e).a == from ? g + 1 : -(g + 1);
}

Word triangle_word(const MetricComplex& c, Id t, const std::vector<int>& gen_of) {
    auto& tr = c.triangle(t);
    Word w;
    for (int i = 0; i < 3; ++i) {
        int l = letter(c, tr.e[i], tr.v[i], gen_of);
        if (l) w.push_back(l);
    }
    return reduce(w);
}

// Substitute eliminated generators (expr[g] set) until only live ones remain.
Word resolve(const Word& w, const std::vector<std::optional<Word>>& expr) {
    Word out;
    for (int l : w) {
        int g = std::abs(l) - 1;
        if (!expr[g]) {
            out.push_back(l);
            continue;
        }
        Word sub = resolve(*expr[g], expr);
        if (l < 0) sub = inverse(sub);
        out.insert(out.end(), sub.begin(), sub.end());
    }
    return reduce(out);
}

// Solve r = 1 for generator g appearing exactly once in r.
Word solve_for(const Word& r, int g) {
    std::size_t k = 0;
    while (std::abs(r[k]) - 1 != g) ++k;
    // rotate so the letter is first: l * w = 1
    Word w(r.begin() + k + 1, r.end());
    w.insert(w.end(), r.begin(), r.begin() + k);
    return r[k] > 0 ? inverse(w) : reduce(w);
}

int occurrences(const Word& r, int g) {
    int n = 0;
    for (int l : r) n += std::abs(l) - 1 == g;
    return n;
}

bool is_commutator(const Word& r, int& x, int& y) {
    if (r.size() != 4) return false;
    if (r[2] != -r[0] || r[3] != -r[1] || std::abs(r[0]) == std::abs(r[1])) return false;
    x = std::abs(r[0]) - 1;
    y = std::abs(r[1]) - 1;
    if (x > y) std::swap(x, y);
    return true;
}

}  // namespace

FundamentalGroup fundamental_group(const MetricComplex& c, Id basepoint) {
    if (basepoint >= c.num_vertices()) throw Error(ErrorCode::SourceNotOnComplex, "basepoint out of range");
    FundamentalGroup pi;
    pi.basepoint = basepoint;
    std::size_t ne = c.num_edges(), nt = c.num_triangles();

    // BFS spanning tree
    pi.tree_edge.assign(ne, 0);
    std::vector<char> seen(c.num_vertices(), 0);
    std::queue<Id> q;
    q.push(basepoint);
    seen[basepoint] = 1;
    while (!q.empty()) {
        Id v = q.front();
        q.pop();
        for (Id e : c.incident_edges(v)) {
            Id u = c.edge(e).other(v);
            if (seen[u]) continue;
            seen[u] = 1;
            pi.tree_edge[e] = 1;
            q.push(u);
        }
    }
    std::vector<int> gen_of(ne, -1);
    for (Id e = 0; e < ne; ++e)
        if (!pi.tree_edge[e]) {
            gen_of[e] = int(pi.generator_edges.size());
            pi.generator_edges.push_back(e);
        }
    int ng = int(pi.generator_edges.size());
    for (Id t = 0; t < nt; ++t) pi.relators.push_back(triangle_word(c, t, gen_of));

    // dual tree: each non-tree edge may be crossed once; crossed edges get eliminated
    std::vector<char> visited(nt, 0), crossed(ne, 0);
    std::vector<Id> parent_edge(nt, kNone), order;
    std::vector<Id> roots;
    for (Id r = 0; r < nt; ++r) {
        if (visited[r]) continue;
        visited[r] = 1;
        roots.push_back(r);
        std::queue<Id> dq;
        dq.push(r);
        while (!dq.empty()) {
            Id t = dq.front();
            dq.pop();
            order.push_back(t);
            for (Id e : c.triangle(t).e) {
                if (pi.tree_edge[e] || crossed[e]) continue;
                for (Id u : c.edge_triangles(e)) {
                    if (visited[u]) continue;
                    visited[u] = 1;
                    crossed[e] = 1;
                    parent_edge[u] = e;
                    dq.push(u);
                    break;
                }
            }
        }
    }

    std::vector<std::optional<Word>> expr(ng);
    std::vector<Word> left;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        Id t = *it;
        Word r = resolve(pi.relators[t], expr);
        if (parent_edge[t] != kNone) {
            int g = gen_of[parent_edge[t]];
            if (occurrences(r, g) == 1) {
                expr[g] = solve_for(r, g);
                continue;
            }
        }
        left.push_back(r);
    }

    // Tietze peeling of what remains
    for (bool changed = true; changed;) {
        changed = false;
        for (auto& r : left) r = cyclic_reduce(resolve(r, expr));
        left.erase(std::remove_if(left.begin(), left.end(), [](const Word& w) { return w.empty(); }), left.end());
        for (std::size_t i = 0; i < left.size() && !changed; ++i)
            for (int l : left[i]) {
                int g = std::abs(l) - 1;
                if (occurrences(left[i], g) == 1) {
                    expr[g] = solve_for(left[i], g);
                    left.erase(left.begin() + long(i));
                    changed = true;
                    break;
                }
            }
    }
    std::sort(left.begin(), left.end());
    left.erase(std::unique(left.begin(), left.end()), left.end());

    // surviving generators, renumbered
    std::vector<int> renum(ng, -1);
    int k = 0;
    for (int g = 0; g < ng; ++g)
        if (!expr[g]) renum[g] = k++;
    auto rename = [&](const Word& w) {
        Word o;
        for (int l : w) o.push_back(l > 0 ? renum[l - 1] + 1 : -(renum[-l - 1] + 1));
        return o;
    };
    std::vector<Word> rels;
    for (auto& r : left) rels.push_back(rename(r));

    auto exponent_rows = [&](const std::vector<Word>& ws) {
        std::vector<Group::Element> rows;
        for (auto& w : ws) {
            Group::Element v(k, 0);
            for (int l : w) v[std::abs(l) - 1] += l > 0 ? 1 : -1;
            rows.push_back(v);
        }
        return rows;
    };
    auto ab = Group::abelian(k, exponent_rows(rels));
    pi.betti1 = ab.free_rank();

    if (rels.empty()) {
        pi.group = k == 1 ? Group::abelian(1, {}) : Group::free(k);
    } else if (k == 1) {
        pi.group = ab;
    } else {
        std::set<std::pair<int, int>> comm;
        std::vector<Word> others;
        for (auto& r : rels) {
            int x, y;
            if (is_commutator(r, x, y)) comm.insert({x, y});
            else others.push_back(r);
        }
        if (comm.size() == std::size_t(k) * (k - 1) / 2) {
            pi.group = Group::abelian(k, exponent_rows(others));
        } else {
            pi.group = ab;
            pi.exact = false;
        }
    }

    pi.edge_element.assign(ne, pi.group.identity());
    for (int g = 0; g < ng; ++g) {
        Word w = rename(resolve(Word{g + 1}, expr));
        pi.edge_element[pi.generator_edges[g]] = pi.group.from_word(w);
    }
    return pi;
}

namespace {

DeckGroupSpec::Structure classify(const Group& g) {
    if (g.is_finite()) return DeckGroupSpec::Structure::Finite;
    if (g.kind() == Group::Kind::Abelian && g.free_rank() == 1) return DeckGroupSpec::Structure::VirtuallyCyclic;
    return DeckGroupSpec::Structure::Other;
}

}  // namespace

DeckGroupSpec universal_cover_spec(const FundamentalGroup& pi) {
    DeckGroupSpec d;
    d.group = pi.group;
    d.edge_element = pi.edge_element;
    d.structure = classify(d.group);
    return d;
}

DeckGroupSpec regular_cover_spec(const FundamentalGroup& pi, const std::vector<Word>& subgroup) {
    const Group& g = pi.group;
    bool trivial_sub = std::all_of(subgroup.begin(), subgroup.end(), [&](const Word& w) {
        return g.is_identity(g.from_word(w));
    });
    if (trivial_sub) return universal_cover_spec(pi);
    if (g.kind() != Group::Kind::Abelian)
        throw Error(ErrorCode::NonNormalSubgroup, "normal closure in a non-abelian free group is not supported");
    auto rows = g.lattice();
    for (auto& w : subgroup) rows.push_back(g.from_word(w));
    DeckGroupSpec d;
    d.group = Group::abelian(g.rank(), rows);
    for (auto& e : pi.edge_element) d.edge_element.push_back(d.group.mul(d.group.identity(), e));
    d.structure = classify(d.group);
    return d;
}

DeckGroupSpec lattice_cover_spec(const GridSurface& gs, const std::vector<std::array<int, 3>>& sublattice) {
    DeckGroupSpec d;
    std::vector<Group::Element> rows;
    for (auto& r : sublattice) rows.push_back({r[0], r[1], r[2]});
    d.group = Group::abelian(3, rows);
    for (auto& s : gs.shift) d.edge_element.push_back(d.group.mul(d.group.identity(), {s[0], s[1], s[2]}));
    d.structure = classify(d.group);
    if (sublattice.empty()) {
        d.lattice_vectors.assign(gs.lattice.begin(), gs.lattice.end());
        d.positions = gs.position;
    }
    return d;
}

namespace {

Group::Element step_element(const MetricComplex& c, const DeckGroupSpec& g, Id e, Id from) {
    auto& m = g.edge_element[e];
    return c.edge(e).a == from ? m : g.group.inv(m);
}

constexpr std::size_t kMaxLiftedVertices = 3'000'000;

}  // namespace

Id CoverPatch::lift(Id base_vertex, const Group::Element& g) const {
    auto it = index_.find(std::to_string(base_vertex) + "|" + deck.group.key(g));
    return it == index_.end() ? kNone : it->second;
}

std::string CoverPatch::sheet_table() const {
    std::ostringstream o;
    for (Id v = 0; v < vertex_sheet.size(); ++v) o << "sheet v" << v << ' ' << deck.group.format(vertex_sheet[v]) << '\n';
    for (Id t = 0; t < tri_sheet.size(); ++t) o << "sheet t" << t << ' ' << deck.group.format(tri_sheet[t]) << '\n';
    return o.str();
}

CoverPatch build_cover(const MetricComplex& c, const DeckGroupSpec& g, double R_trunc, Id basepoint, double h) {
    if (basepoint >= c.num_vertices()) throw Error(ErrorCode::SourceNotOnComplex, "basepoint out of range");
    if (g.edge_element.size() != c.num_edges()) throw Error(ErrorCode::BadParam, "deck data does not match complex");
    if (!(R_trunc >= 2 * c.longest_edge()))
        throw Error(ErrorCode::TruncationTooSmall, "truncation radius below twice the longest edge");

    CoverPatch p;
    p.base = c;
    p.deck = g;
    p.base_basepoint = basepoint;
    p.truncation_radius = R_trunc;
    const Group& G = g.group;

    // Dijkstra over (vertex, element); ties by base vertex then element key
    struct Item {
        double d;
        Id v;
        std::string key;
        Group::Element el;
        bool operator>(const Item& o) const {
            if (d != o.d) return d > o.d;
            if (v != o.v) return v > o.v;
            return key > o.key;
        }
    };
    std::priority_queue<Item, std::vector<Item>, std::greater<>> q;
    std::unordered_map<std::string, double> best;
    std::vector<double> coarse;
    auto push = [&](double d, Id v, Group::Element el) {
        std::string k = std::to_string(v) + "|" + G.key(el);
        auto it = best.find(k);
        if (it != best.end() && it->second <= d) return;
        best[k] = d;
        q.push({d, v, k, std::move(el)});
    };
    push(0, basepoint, G.identity());
    while (!q.empty()) {
        Item it = q.top();
        q.pop();
        if (p.index_.count(it.key) || best[it.key] < it.d) continue;
        Id id = Id(p.vertex_base.size());
        p.index_[it.key] = id;
        p.vertex_base.push_back(it.v);
        p.vertex_sheet.push_back(it.el);
        coarse.push_back(it.d);
        if (p.vertex_base.size() > kMaxLiftedVertices)
            throw Error(ErrorCode::ResourceLimit, "cover patch exceeds the vertex budget");
        for (Id e : c.incident_edges(it.v)) {
            double nd = it.d + c.edge(e).length;
            if (nd > R_trunc) continue;
            Id u = c.edge(e).other(it.v);
            auto el = G.mul(it.el, step_element(c, g, e, it.v));
            if (!p.index_.count(std::to_string(u) + "|" + G.key(el))) push(nd, u, std::move(el));
        }
    }

    bool coords = !g.lattice_vectors.empty() && !g.positions.empty();
    ComplexBuilder b;
    for (Id x = 0; x < p.vertex_base.size(); ++x) {
        if (!coords) {
            b.add_vertex();
            continue;
        }
        Vec3 pos = g.positions[p.vertex_base[x]];
        for (int i = 0; i < 3; ++i) pos = pos + double(p.vertex_sheet[x][i]) * g.lattice_vectors[i];
        b.add_vertex(pos);
    }
    std::vector<Id> edge_base, tri_base;
    std::vector<Group::Element> edge_sheet, tri_sheet;
    std::vector<Id> boundary;
    for (Id x = 0; x < p.vertex_base.size(); ++x) {
        Id v = p.vertex_base[x];
        for (Id e : c.incident_edges(v)) {
            if (c.edge(e).a != v) continue;
            Id y = p.lift(c.edge(e).b, G.mul(p.vertex_sheet[x], g.edge_element[e]));
            if (y == kNone) continue;
            Id id = b.edge(x, y, c.edge(e).length);
            if (edge_base.size() <= id) {
                edge_base.resize(id + 1, kNone);
                edge_sheet.resize(id + 1);
            }
            edge_base[id] = e;
            edge_sheet[id] = p.vertex_sheet[x];
            if (c.is_boundary_edge(e)) boundary.push_back(id);
        }
    }
    for (Id x = 0; x < p.vertex_base.size(); ++x) {
        Id v = p.vertex_base[x];
        for (Id t : c.vertex_triangles(v)) {
            auto& tr = c.triangle(t);
            if (tr.v[0] != v) continue;
            auto g1 = G.mul(p.vertex_sheet[x], step_element(c, g, tr.e[0], tr.v[0]));
            auto g2 = G.mul(g1, step_element(c, g, tr.e[1], tr.v[1]));
            Id y = p.lift(tr.v[1], g1), z = p.lift(tr.v[2], g2);
            if (y == kNone || z == kNone) continue;
            b.triangle(x, y, z);
            tri_base.push_back(t);
            tri_sheet.push_back(p.vertex_sheet[x]);
        }
    }
    for (Id e : boundary) b.mark_boundary(e);
    BuildOptions opt;
    opt.surface = c.surface_mode();
    opt.infer_boundary = false;
    opt.allow_degenerate = true;
    p.complex = b.build(opt);
    p.edge_base = std::move(edge_base);
    p.edge_sheet = std::move(edge_sheet);
    p.tri_base = std::move(tri_base);
    p.tri_sheet = std::move(tri_sheet);
    p.basepoint = 0;

    std::set<std::string> sheets;
    for (auto& s : p.vertex_sheet) sheets.insert(G.key(s));
    p.sheets = sheets.size();

    p.frontier.assign(p.vertex_base.size(), 0);
    for (Id x = 0; x < p.vertex_base.size(); ++x) {
        Id v = p.vertex_base[x];
        if (p.complex.incident_edges(x).size() < c.incident_edges(v).size() ||
            p.complex.vertex_triangles(x).size() < c.vertex_triangles(v).size())
            p.frontier[x] = 1;
    }

    // complete radius and essential loops, measured on a refinement at the base scale
    if (h <= 0) h = std::max(default_h(c), c.longest_edge() / 4);
    int n = 1;
    while (c.longest_edge() / n > h * (1 + 1e-12)) n *= 2;
    RefinedComplex rc(p.complex, h, n);
    auto dist = shortest_paths(rc, {{p.basepoint, 0.0}});
    p.complete_radius = R_trunc;
    for (Id x = 0; x < p.vertex_base.size(); ++x)
        if (p.frontier[x]) p.complete_radius = std::min(p.complete_radius, dist[x] - c.longest_edge() / 2);
    p.complete_radius = std::max(0.0, p.complete_radius);

    p.systole = kInf;
    if (coords && g.lattice_vectors.size() == 3 && G.rank() == 3) {
        // lifts of one vertex differ by a lattice vector, which bounds their distance below
        for (int i = -2; i <= 2; ++i)
            for (int j = -2; j <= 2; ++j)
                for (int k = -2; k <= 2; ++k) {
                    if (!i && !j && !k) continue;
                    Vec3 t = double(i) * g.lattice_vectors[0] + double(j) * g.lattice_vectors[1] +
                             double(k) * g.lattice_vectors[2];
                    p.systole = std::min(p.systole, norm(t));
                }
    } else if (!G.is_trivial()) {
        // first lift of each base vertex (closest to the basepoint); sample at most 64 of them
        std::vector<Id> first(c.num_vertices(), kNone);
        for (Id x = 0; x < p.vertex_base.size(); ++x)
            if (first[p.vertex_base[x]] == kNone) first[p.vertex_base[x]] = x;
        std::vector<Id> cand;
        for (Id v = 0; v < c.num_vertices(); ++v)
            if (first[v] != kNone && !p.frontier[first[v]]) cand.push_back(v);
        std::size_t stride = std::max<std::size_t>(1, (cand.size() + 63) / 64);
        std::vector<char> target(rc.num_vertices(), 0);
        for (std::size_t i = 0; i < cand.size(); i += stride) {
            Id v = cand[i];
            std::vector<Id> others;
            for (Id x = 0; x < p.vertex_base.size(); ++x)
                if (p.vertex_base[x] == v && x != first[v]) others.push_back(x);
            for (Id x : others) target[x] = 1;
            auto [hit, d] = nearest_target(rc, {{first[v], 0.0}}, target, std::min(p.systole, 2 * R_trunc));
            if (hit != kNone) p.systole = std::min(p.systole, d);
            for (Id x : others) target[x] = 0;
        }
    }
    p.isometry_radius = std::isfinite(p.systole) ? p.systole / 2 : R_trunc;
    return p;
}

Group::Element monodromy(const MetricComplex& c, const DeckGroupSpec& g, const std::vector<Id>& path) {
    auto el = g.group.identity();
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        Id e = c.find_edge(path[i], path[i + 1]);
        if (e == kNone) throw Error(ErrorCode::BadParam, "path steps along a missing edge");
        el = g.group.mul(el, step_element(c, g, e, path[i]));
    }
    return el;
}

std::vector<Id> lift_path(const CoverPatch& p, const std::vector<Id>& path, Id start) {
    if (path.empty()) return {};
    if (start >= p.vertex_base.size() || p.vertex_base[start] != path[0])
        throw Error(ErrorCode::BadParam, "start does not lie over the first path vertex");
    std::vector<Id> out{start};
    auto el = p.vertex_sheet[start];
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        Id e = p.base.find_edge(path[i], path[i + 1]);
        if (e == kNone) throw Error(ErrorCode::BadParam, "path steps along a missing edge");
        el = p.deck.group.mul(el, step_element(p.base, p.deck, e, path[i]));
        Id y = p.lift(path[i + 1], el);
        if (y == kNone) throw Error(ErrorCode::LiftLeavesTruncation, "lifted path leaves the cover patch");
        out.push_back(y);
    }
    return out;
}

std::vector<Id> refined_projection(const CoverPatch& p, const RefinedComplex& cover, const RefinedComplex& base) {
    if (cover.subdivisions() != base.subdivisions())
        throw Error(ErrorCode::BadParam, "cover and base refinements use different subdivisions");
    std::vector<Id> proj(cover.num_vertices(), kNone);
    for (Id x = 0; x < p.vertex_base.size(); ++x) proj[x] = p.vertex_base[x];
    for (Id e = 0; e < p.complex.num_edges(); ++e) {
        auto& a = cover.edge_chain(e);
        auto& b = base.edge_chain(p.edge_base[e]);
        for (std::size_t k = 0; k < a.size(); ++k) proj[a[k]] = b[k];
    }
    for (Id t = 0; t < p.complex.num_triangles(); ++t) {
        auto& a = cover.tri_points(t);
        auto& b = base.tri_points(p.tri_base[t]);
        for (std::size_t k = 0; k < a.size(); ++k) proj[a[k]] = b[k];
    }
    return proj;
}

std::vector<Id> lift_refined_path(const RefinedComplex& cover, const std::vector<Id>& proj,
                                  const std::vector<Id>& path, Id start) {
    if (path.empty()) return {};
    if (start >= proj.size() || proj[start] != path[0])
        throw Error(ErrorCode::BadParam, "start does not lie over the first path vertex");
    std::vector<Id> out{start};
    for (std::size_t i = 1; i < path.size(); ++i) {
        Id cur = out.back(), next = kNone;
        for (Id u : cover.neighbors(cur))
            if (proj[u] == path[i]) {
                next = u;
                break;
            }
        if (next == kNone) throw Error(ErrorCode::LiftLeavesTruncation, "lifted path leaves the cover patch");
        out.push_back(next);
    }
    return out;
}

}  // namespace uw
