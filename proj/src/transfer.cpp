#include "uwidth/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>

#include "uwidth/thin_triangle.hpp"

namespace uw {

namespace {

struct Piece {
    bool geodesic = true;
    int label = 0;  // s_label or gamma_label
    bool reversed = false;
    std::vector<Id> path;
};

Piece flipped(Piece p) {
    p.reversed = !p.reversed;
    std::reverse(p.path.begin(), p.path.end());
    return p;
}

double arc_weight(const RefinedComplex& rc, Id u, Id v) {
    auto nb = rc.neighbors(u);
    auto wt = rc.weights(u);
    for (std::size_t k = 0; k < nb.size(); ++k)
        if (nb[k] == v) return wt[k];
    return u == v ? 0.0 : kInf;
}

// Shortest path over mesh edges inside an allowed vertex set.
std::vector<Id> path_within(const RefinedComplex& rc, const std::vector<char>& allowed, Id from, Id to) {
    auto& m = rc.mesh();
    std::vector<double> dist(m.num_vertices(), kInf);
    std::vector<Id> parent(m.num_vertices(), kNone);
    using QI = std::pair<double, Id>;
    std::priority_queue<QI, std::vector<QI>, std::greater<>> q;
    dist[from] = 0;
    q.push({0, from});
    while (!q.empty()) {
        auto [d, v] = q.top();
        q.pop();
        if (d > dist[v]) continue;
        if (v == to) break;
        for (Id e : m.incident_edges(v)) {
            Id u = m.edge(e).other(v);
            if (!allowed[u]) continue;
            double nd = d + m.edge(e).length;
            if (nd < dist[u]) {
                dist[u] = nd;
                parent[u] = v;
                q.push({nd, u});
            }
        }
    }
    if (dist[to] == kInf) return {};
    std::vector<Id> p{to};
    while (p.back() != from) p.push_back(parent[p.back()]);
    std::reverse(p.begin(), p.end());
    return p;
}

// Distances along mesh edges only; the diagnostic works in this metric so that
// consecutive path vertices always land in equal or adjacent sweep nodes.
class MeshDist {
public:
    explicit MeshDist(const MetricComplex& m) : m_(m) {}
    double operator()(Id a, Id b) { return row(a)[b]; }
    std::vector<Id> path(Id from, Id to) {
        row(from);
        auto& par = parents_[from];
        if (rows_[from][to] == kInf) return {};
        std::vector<Id> p{to};
        while (p.back() != from) p.push_back(par[p.back()]);
        std::reverse(p.begin(), p.end());
        return p;
    }

private:
    const std::vector<double>& row(Id a) {
        auto it = rows_.find(a);
        if (it != rows_.end()) return it->second;
        std::vector<double> dist(m_.num_vertices(), kInf);
        std::vector<Id> parent(m_.num_vertices(), kNone);
        using QI = std::pair<double, Id>;
        std::priority_queue<QI, std::vector<QI>, std::greater<>> q;
        dist[a] = 0;
        q.push({0, a});
        while (!q.empty()) {
            auto [d, v] = q.top();
            q.pop();
            if (d > dist[v]) continue;
            for (Id e : m_.incident_edges(v)) {
                Id u = m_.edge(e).other(v);
                double nd = d + m_.edge(e).length;
                if (nd < dist[u] || (nd == dist[u] && v < parent[u])) {
                    dist[u] = nd;
                    parent[u] = v;
                    q.push({nd, u});
                }
            }
        }
        parents_[a] = std::move(parent);
        return rows_[a] = std::move(dist);
    }

    const MetricComplex& m_;
    std::map<Id, std::vector<double>> rows_;
    std::map<Id, std::vector<Id>> parents_;
};

void cancel_and_merge(std::vector<Piece>& ps) {
    // cyclic cancellation of a piece followed by its own reverse
    for (bool changed = true; changed && ps.size() >= 2;) {
        changed = false;
        for (std::size_t i = 0; i < ps.size(); ++i) {
            std::size_t j = (i + 1) % ps.size();
            if (i == j) break;
            auto& p = ps[i];
            auto& q = ps[j];
            if (p.geodesic == q.geodesic && p.label == q.label && p.reversed != q.reversed) {
                if (j > i) {
                    ps.erase(ps.begin() + long(j));
                    ps.erase(ps.begin() + long(i));
                } else {
                    ps.erase(ps.begin() + long(i));
                    ps.erase(ps.begin());
                }
                changed = true;
                break;
            }
        }
    }
    // start at a geodesic leaving the basepoint
    auto start = std::find_if(ps.begin(), ps.end(), [](const Piece& p) { return p.geodesic && !p.reversed; });
    if (start == ps.end()) {
        ps.clear();
        return;
    }
    std::rotate(ps.begin(), start, ps.end());
    std::vector<Piece> out;
    for (auto& p : ps) {
        if (!p.geodesic && !out.empty() && !out.back().geodesic) {
            auto& b = out.back();
            b.path.insert(b.path.end(), p.path.begin() + 1, p.path.end());
            b.label = -1;
            continue;
        }
        out.push_back(p);
    }
    ps = std::move(out);
}

void diagnose(const CoverPatch& cover, const RefinedComplex& brc, const RefinedComplex& crc,
              const std::vector<Id>& proj, TransferCertificate& cert, int max_exponent) {
    auto& dg = cert.diagnostic;
    dg.ran = true;
    auto& bs = cert.base_sweep;
    dg.node = bs.widest();
    if (dg.node == kNone) {
        dg.note = "empty sweep";
        return;
    }
    auto& node = bs.nodes[dg.node];
    if (node.vertices.size() < 2) {
        dg.note = "widest component has fewer than two vertices";
        return;
    }
    const Group& G = cover.deck.group;
    bool vc = cert.structure == DeckGroupSpec::Structure::VirtuallyCyclic;
    Id x0 = cover.base_basepoint;

    std::vector<char> allowed(brc.num_vertices(), 0);
    for (Id e : node.edges) {
        allowed[brc.mesh().edge(e).a] = 1;
        allowed[brc.mesh().edge(e).b] = 1;
    }
    MeshDist d(brc.mesh());
    auto far = vertex_diameter(brc, node.vertices);
    Id a = node.vertices[far.i], c = node.vertices[far.j];
    auto gamma = path_within(brc, allowed, a, c);
    if (gamma.empty()) {
        dg.note = "no path inside the component";
        return;
    }
    std::vector<std::vector<Id>> gam;
    std::vector<Id> ends;
    if (vc) {
        std::size_t ib = 0;
        double best = -1;
        for (std::size_t k = 0; k < gamma.size(); ++k) {
            double s = std::min(d(a, gamma[k]), d(c, gamma[k]));
            if (s > best) {
                best = s;
                ib = k;
            }
        }
        ends = {a, gamma[ib], c};
        gam = {std::vector<Id>(gamma.begin(), gamma.begin() + long(ib) + 1),
               std::vector<Id>(gamma.begin() + long(ib), gamma.end())};
    } else {
        ends = {a, c};
        gam = {gamma};
    }
    for (std::size_t i = 0; i < ends.size(); ++i) dg.ends[i] = ends[i];
    std::vector<std::vector<Id>> s;
    for (Id e : ends) s.push_back(d.path(x0, e));

    auto loop = [&](int i) {  // s_i . gamma_i . s_{i+1}^-1
        std::vector<Piece> l(3);
        l[0] = {true, i, false, s[i]};
        l[1] = {false, i, false, gam[i]};
        l[2] = flipped({true, i + 1, false, s[i + 1]});
        return l;
    };
    auto inverse_loop = [&](std::vector<Piece> l) {
        std::reverse(l.begin(), l.end());
        for (auto& p : l) p = flipped(p);
        return l;
    };
    auto concat_path = [](const std::vector<Piece>& ps) {
        std::vector<Id> out;
        for (auto& p : ps) out.insert(out.end(), p.path.begin() + (out.empty() ? 0 : 1), p.path.end());
        return out;
    };
    auto lift = [&](const std::vector<Id>& path) {
        try {
            return lift_refined_path(crc, proj, path, cover.basepoint);
        } catch (const Error&) {
            double len = 0;
            for (std::size_t k = 0; k + 1 < path.size(); ++k) len += arc_weight(brc, path[k], path[k + 1]);
            throw Error(ErrorCode::TruncationTooSmall,
                        "lifted loop leaves the cover patch; complete radius " + std::to_string(cover.complete_radius) +
                            ", loop needs about " + std::to_string(len / 2));
        }
    };
    auto element_of = [&](const std::vector<Piece>& l) {
        auto lifted = lift(concat_path(l));
        return cover.vertex_sheet[lifted.back()];
    };

    auto alpha = loop(0);
    std::vector<Piece> pieces;
    if (!vc) {
        auto ga = element_of(alpha);
        std::int64_t ord = G.element_order(ga);
        if (ord <= 0) throw Error(ErrorCode::NotVirtuallyCyclic, "loop of infinite order in a finite group");
        dg.m = ord;
        for (std::int64_t k = 0; k < ord; ++k) pieces.insert(pieces.end(), alpha.begin(), alpha.end());
    } else {
        auto beta = loop(1);
        auto ga = element_of(alpha), gb = element_of(beta);
        std::int64_t bm = 0, bn = 0;
        for (int tot = 1; tot <= 2 * max_exponent && bm == 0 && bn == 0; ++tot)
            for (int m = -tot; m <= tot && bm == 0 && bn == 0; ++m) {
                int rest = tot - std::abs(m);
                for (int n : {rest, -rest}) {
                    if (std::abs(m) > max_exponent || std::abs(n) > max_exponent) continue;
                    if (G.is_identity(G.mul(G.pow(ga, m), G.pow(gb, n)))) {
                        bm = m;
                        bn = n;
                        break;
                    }
                }
            }
        if (bm == 0 && bn == 0) throw Error(ErrorCode::NotVirtuallyCyclic, "no trivial combination of the two loops");
        dg.m = bm;
        dg.n = bn;
        auto ai = inverse_loop(alpha), bi = inverse_loop(beta);
        for (std::int64_t k = 0; k < std::abs(bm); ++k) {
            auto& l = bm > 0 ? alpha : ai;
            pieces.insert(pieces.end(), l.begin(), l.end());
        }
        for (std::int64_t k = 0; k < std::abs(bn); ++k) {
            auto& l = bn > 0 ? beta : bi;
            pieces.insert(pieces.end(), l.begin(), l.end());
        }
    }
    cancel_and_merge(pieces);
    dg.loop_pieces = pieces.size();
    if (pieces.size() < 3) {
        dg.note = "loop collapses to fewer than three pieces";
        return;
    }
    auto path = concat_path(pieces);
    for (std::size_t k = 0; k + 1 < path.size(); ++k) dg.loop_length += arc_weight(brc, path[k], path[k + 1]);
    cert.required_radius = dg.loop_length / 2;
    auto lifted = lift(path);
    if (lifted.back() != lifted.front()) {
        dg.note = "lifted loop does not close";
        return;
    }
    if (!cert.cover_is_tree) {
        dg.note = "cover quotient is not a tree";
        return;
    }

    PolygonTreeMap pm;
    auto& cs = cert.cover_sweep;
    pm.tree.num_vertices = cs.nodes.size();
    pm.tree.edges = cs.adjacency;
    std::size_t off = 0;
    std::vector<std::size_t> start;
    for (auto& p : pieces) {
        start.push_back(off);
        std::vector<Id> w;
        for (std::size_t k = 0; k < p.path.size(); ++k) w.push_back(cs.assignment[lifted[off + k]]);
        pm.edge_image.push_back(w);
        off += p.path.size() - 1;
    }
    dg.fiber = polygon_tree_fiber(pm);
    int geo = 0;
    std::array<Id, 2> tips{};
    std::array<Id, 2> xs{};
    Id x3 = kNone;
    for (int k = 0; k < 3; ++k) {
        std::size_t pi = dg.fiber.edge[k];
        Id v = proj[lifted[start[pi] + dg.fiber.position[k]]];
        dg.x[k] = v;
        if (pieces[pi].geodesic) {
            if (geo < 2) {
                tips[geo] = ends[pieces[pi].label];
                xs[geo] = v;
            }
            ++geo;
        } else {
            x3 = v;
        }
    }
    if (geo != 2 || x3 == kNone) {
        dg.note = "fiber does not meet two geodesics and one component path";
        return;
    }
    dg.pair = tips;
    // thin-triangle bound in the mesh-edge metric with measured eps and delta
    double r3 = d(x0, x3);
    dg.delta = std::max(std::abs(d(x0, tips[0]) - r3), std::abs(d(x0, tips[1]) - r3)) / 2;
    dg.eps = std::max({d(xs[0], xs[1]), d(xs[0], x3), d(xs[1], x3)});
    double tol = 1e-9 * (1 + r3);
    auto r = thin_triangle_bound(d, x0, tips[0], tips[1], xs[0], xs[1], x3, dg.eps, dg.delta, tol);
    dg.thin_bound = r.bound;
    dg.measured = r.measured;
    dg.thin_holds = r.holds;
}

}  // namespace

TransferCertificate transfer_certificate(const CoverPatch& cover, const TransferOptions& opt) {
    TransferCertificate cert;
    cert.structure = cover.deck.structure;
    if (cert.structure == DeckGroupSpec::Structure::Other)
        throw Error(ErrorCode::NotVirtuallyCyclic, "deck group is neither finite nor virtually cyclic");
    cert.factor = cert.structure == DeckGroupSpec::Structure::Finite ? 3.0 : 6.0;
    const MetricComplex& base = cover.base;
    double h = opt.h > 0 ? opt.h : default_h(base);
    RefinedComplex brc(base, h);
    RefinedComplex crc(cover.complex, h, brc.subdivisions());
    SweepOptions so{opt.step > 0 ? opt.step : h, true};

    cert.base_sweep = sweep_quotient(brc, {PointOnComplex::vertex(cover.base_basepoint)}, so);
    cert.cover_sweep = sweep_quotient(crc, {PointOnComplex::vertex(cover.basepoint)}, so);
    cert.complete_radius = cover.complete_radius;
    bool frontier = std::any_of(cover.frontier.begin(), cover.frontier.end(), [](char f) { return f != 0; });
    for (auto& n : cert.cover_sweep.nodes)
        if (!frontier || n.r1 <= cover.complete_radius) cert.D = std::max(cert.D, n.diameter);
    cert.cover_is_tree = cert.cover_sweep.is_forest() && cert.cover_sweep.num_components() == 1;
    cert.base_width = cert.base_sweep.width();
    cert.slack = cert.base_sweep.slack();
    cert.bound = cert.factor * cert.D + cert.slack;
    cert.holds = cert.base_width <= cert.bound;

    if (opt.diagnose) {
        auto proj = refined_projection(cover, crc, brc);
        diagnose(cover, brc, crc, proj, cert, opt.max_exponent);
    }
    return cert;
}

}  // namespace uw
