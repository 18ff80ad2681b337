#include "uwidth/rewire.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "uwidth/error.hpp"
#include "uwidth/metric.hpp"

namespace uw {

namespace {

struct Pos {
    std::size_t lift, k;
};

void dedup(std::vector<Id>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

// boundary piece touching an arc endpoint on this side
Id end_piece(const MetricComplex& c, const BoundaryPieces& bp, const std::vector<char>& ein, Id v) {
    for (Id e : c.incident_edges(v))
        if (ein[e] && bp.edge_piece[e] != kNone && bp.piece_true[bp.edge_piece[e]]) return bp.edge_piece[e];
    for (Id e : c.incident_edges(v))
        if (bp.edge_piece[e] != kNone && bp.piece_true[bp.edge_piece[e]]) return bp.edge_piece[e];
    return kNone;
}

}  // namespace

SideTrace side_trace(const Patch& p, const Subcomplex& z, const std::vector<Id>& arc, const std::vector<char>& side) {
    auto& c = p.complex;
    const std::size_t nv = c.num_vertices(), ne = c.num_edges(), nt = c.num_triangles();
    const std::size_t m = arc.size() - 1;
    std::vector<char> vin(nv, 0), ein(ne, 0);
    for (Id t = 0; t < nt; ++t) {
        if (!side[t]) continue;
        for (Id e : c.triangle(t).e) ein[e] = 1;
        for (Id v : c.triangle(t).v) vin[v] = 1;
    }
    auto bp = boundary_pieces(c, p.true_boundary);
    Id bottom = end_piece(c, bp, ein, arc.front()), top = end_piece(c, bp, ein, arc.back());
    auto touch = [&](SideTrace::Contact& ct, Id piece) {
        if (piece == top) ct.top = true;
        else if (piece == bottom) ct.bottom = true;
        else ct.other = true;
    };

    SideTrace t;
    t.rows = arc.size();
    t.z_at.assign(arc.size(), -1);
    t.u_at_vertex.assign(arc.size(), -1);
    t.u_at_edge.assign(m, -1);

    UnionFind zf(nv);
    for (Id e = 0; e < ne; ++e)
        if (ein[e] && z.edge[e]) zf.unite(c.edge(e).a, c.edge(e).b);
    std::map<std::size_t, int> zid;
    for (std::size_t k = 0; k <= m; ++k) {
        if (!z.vertex[arc[k]]) continue;
        auto [it, fresh] = zid.emplace(zf.find(arc[k]), int(zid.size()));
        t.z_at[k] = it->second;
    }
    t.z.resize(zid.size());
    t.z_vertices.resize(zid.size());
    for (Id v = 0; v < nv; ++v) {
        if (!vin[v] || !z.vertex[v]) continue;
        auto it = zid.find(zf.find(v));
        if (it != zid.end()) t.z_vertices[std::size_t(it->second)].push_back(v);
    }
    for (Id e = 0; e < ne; ++e) {
        if (!ein[e] || bp.edge_piece[e] == kNone) continue;
        for (Id w : {c.edge(e).a, c.edge(e).b}) {
            if (!z.vertex[w]) continue;
            auto it = zid.find(zf.find(w));
            if (it != zid.end()) touch(t.z[std::size_t(it->second)], bp.edge_piece[e]);
        }
    }

    // complement cells: vertices, then edges, then triangles
    UnionFind uf(nv + ne + nt);
    for (Id tr = 0; tr < nt; ++tr) {
        if (!side[tr]) continue;
        for (Id e : c.triangle(tr).e)
            if (!z.edge[e]) uf.unite(nv + ne + tr, nv + e);
        for (Id v : c.triangle(tr).v)
            if (!z.vertex[v]) uf.unite(nv + ne + tr, v);
    }
    for (Id e = 0; e < ne; ++e) {
        if (!ein[e] || z.edge[e]) continue;
        for (Id w : {c.edge(e).a, c.edge(e).b})
            if (!z.vertex[w]) uf.unite(nv + e, w);
    }
    std::map<std::size_t, int> uid;
    for (std::size_t k = 0; k <= m; ++k) {
        if (!z.vertex[arc[k]]) {
            auto [it, fresh] = uid.emplace(uf.find(arc[k]), int(uid.size()));
            t.u_at_vertex[k] = it->second;
        }
        if (k < m) {
            Id e = c.find_edge(arc[k], arc[k + 1]);
            if (z.edge[e]) throw Error(ErrorCode::InfiniteIntersection, "Z still contains an arc edge");
            auto [it, fresh] = uid.emplace(uf.find(nv + e), int(uid.size()));
            t.u_at_edge[k] = it->second;
        }
    }
    t.u.resize(uid.size());
    t.u_vertices.resize(uid.size());
    auto ucomp = [&](std::size_t cell) {
        auto it = uid.find(uf.find(cell));
        return it == uid.end() ? -1 : it->second;
    };
    for (Id e = 0; e < ne; ++e) {
        if (!ein[e] || bp.edge_piece[e] == kNone) continue;
        if (!z.edge[e]) {
            int u = ucomp(nv + e);
            if (u >= 0) touch(t.u[std::size_t(u)], bp.edge_piece[e]);
        }
        for (Id w : {c.edge(e).a, c.edge(e).b}) {
            if (z.vertex[w]) continue;
            int u = ucomp(w);
            if (u >= 0) touch(t.u[std::size_t(u)], bp.edge_piece[e]);
        }
    }
    for (Id v = 0; v < nv; ++v)
        if (vin[v] && !z.vertex[v]) {
            int u = ucomp(v);
            if (u >= 0) t.u_vertices[std::size_t(u)].push_back(v);
        }
    for (Id e = 0; e < ne; ++e)
        if (ein[e] && !z.edge[e]) {
            int u = ucomp(nv + e);
            if (u >= 0) {
                t.u_vertices[std::size_t(u)].push_back(c.edge(e).a);
                t.u_vertices[std::size_t(u)].push_back(c.edge(e).b);
            }
        }
    for (Id tr = 0; tr < nt; ++tr)
        if (side[tr]) {
            int u = ucomp(nv + ne + tr);
            if (u >= 0)
                for (Id v : c.triangle(tr).v) t.u_vertices[std::size_t(u)].push_back(v);
        }
    for (auto& vs : t.u_vertices) dedup(vs);
    return t;
}

std::string EndChecks::failed() const {
    std::string s;
    auto add = [&](bool ok, const char* name) {
        if (ok) return;
        if (!s.empty()) s += ",";
        s += name;
    };
    add(end_column, "end_column");
    add(touches_attach_side, "touches_attach_side");
    add(trace_matches, "trace_matches");
    add(boundary_reach, "boundary_reach");
    add(disjoint, "disjoint");
    return s;
}

DrawnEnd draw_end(const SideTrace& t, int levels) {
    const std::size_t m = t.rows - 1;
    const int nz = int(t.z.size());
    DrawnEnd d;
    std::vector<std::size_t> zrows;
    for (std::size_t k = 0; k <= m; ++k)
        if (t.z_at[k] >= 0) zrows.push_back(k);
    std::vector<std::vector<std::size_t>> rows_of(static_cast<std::size_t>(nz));
    for (std::size_t k : zrows) rows_of[std::size_t(t.z_at[k])].push_back(k);

    std::vector<int> order;
    int first = -1;
    for (int i = 0; i < nz && first < 0; ++i)
        if (t.z[std::size_t(i)].top && t.z[std::size_t(i)].bottom) first = i;
    if (first >= 0) {
        d.special = true;
        order.push_back(first);
    } else {
        for (long pos = 0; pos <= long(2 * m) && d.p < 0; ++pos) {
            int u = pos % 2 == 0 ? t.u_at_vertex[std::size_t(pos / 2)] : t.u_at_edge[std::size_t(pos / 2)];
            if (u < 0) continue;
            auto& ct = t.u[std::size_t(u)];
            if (ct.other || (ct.top && ct.bottom)) d.p = pos;
        }
        if (d.p < 0)
            throw Error(ErrorCode::CaseDetectionAmbiguous,
                        "no Z component joins top and bottom and no complement component reaches a third boundary "
                        "piece or both ends");
        int below = -1, above = -1;
        for (std::size_t k : zrows) {
            if (long(2 * k) < d.p) below = t.z_at[k];
            else if (above < 0) above = t.z_at[k];
        }
        if (below >= 0 && below == above)
            throw Error(ErrorCode::CaseDetectionAmbiguous, "one Z component meets the arc on both sides of p");
        if (below >= 0) order.push_back(below);
        if (above >= 0) order.push_back(above);
    }
    std::vector<char> chosen(std::size_t(nz), 0);
    for (int i : order) chosen[std::size_t(i)] = 1;
    while (int(order.size()) < nz) {
        int pick = -1;
        for (std::size_t j = 0; j < zrows.size() && pick < 0; ++j) {
            int i = t.z_at[zrows[j]];
            if (chosen[std::size_t(i)]) continue;
            bool adj = (j > 0 && chosen[std::size_t(t.z_at[zrows[j - 1]])]) ||
                       (j + 1 < zrows.size() && chosen[std::size_t(t.z_at[zrows[j + 1]])]);
            if (adj || order.empty()) pick = i;
        }
        if (pick < 0) throw Error(ErrorCode::CaseDetectionAmbiguous, "ordering of Z components stalled");
        order.push_back(pick);
        chosen[std::size_t(pick)] = 1;
    }

    int maxlevel = 0;
    if (!d.special) {
        DrawnPiece col;
        col.z = -1;
        col.level = 0;
        col.r0 = 0;
        col.r1 = m;
        d.pieces.push_back(col);
    }
    for (std::size_t n = 0; n < order.size(); ++n) {
        int i = order[n];
        auto& rs = rows_of[std::size_t(i)];
        auto& ct = t.z[std::size_t(i)];
        DrawnPiece pc;
        pc.z = i;
        pc.rows = rs;
        pc.level = d.special && n == 0 ? 0 : int(n + 1);
        std::size_t mn = rs.front(), mx = rs.back();
        if (d.special) {
            if (n == 0) pc.r0 = 0, pc.r1 = m;
            else if (ct.top && ct.bottom) pc.r0 = 0, pc.r1 = m;
            else if (ct.top) pc.r0 = mn, pc.r1 = m;
            else if (ct.bottom) pc.r0 = 0, pc.r1 = mx;
            else pc.r0 = mn, pc.r1 = mx;
        } else {
            bool up = long(2 * mn) > d.p;
            bool down = long(2 * mx) < d.p;
            if (!up && !down)
                throw Error(ErrorCode::CaseDetectionAmbiguous, "a Z component straddles p");
            if (ct.top || ct.bottom || ct.other) {
                if (up) pc.r0 = mn, pc.r1 = m;
                else pc.r0 = 0, pc.r1 = mx;
            } else {
                pc.r0 = mn, pc.r1 = mx;
            }
        }
        maxlevel = std::max(maxlevel, pc.level);
        d.pieces.push_back(pc);
    }
    int need = maxlevel + 1;
    if (need > 40) throw Error(ErrorCode::ResourceLimit, "too many nested Z components along one arc");
    d.levels = std::max(need, levels);
    d.checks = check_end(d, t);
    return d;
}

EndChecks check_end(DrawnEnd& d, const SideTrace& t) {
    const std::size_t R = t.rows, m = R - 1;
    const std::size_t K = std::size_t(d.levels);
    const std::size_t W = K + 1;  // columns 0..K
    d.vertex.assign(W, std::vector<int>(R, -1));
    d.hedge.assign(K, std::vector<int>(R, -1));
    d.vedge.assign(W, std::vector<int>(m, -1));
    bool conflict = false;
    auto put = [&](int& slot, int pi) {
        if (slot >= 0 && slot != pi) conflict = true;
        slot = pi;
    };
    for (std::size_t pi = 0; pi < d.pieces.size(); ++pi) {
        auto& pc = d.pieces[pi];
        if (pc.level > int(K)) {
            conflict = true;
            continue;
        }
        std::size_t col = K - std::size_t(pc.level);
        for (std::size_t row : pc.rows) {
            for (std::size_t c = 0; c <= col; ++c) put(d.vertex[c][row], int(pi));
            for (std::size_t c = 0; c < col; ++c) put(d.hedge[c][row], int(pi));
        }
        for (std::size_t k = pc.r0; k <= pc.r1; ++k) put(d.vertex[col][k], int(pi));
        for (std::size_t k = pc.r0; k < pc.r1; ++k) put(d.vedge[col][k], int(pi));
    }
    EndChecks ch;

    ch.end_column = true;
    for (std::size_t k = 0; k < R; ++k) ch.end_column &= d.vertex[K][k] >= 0;
    for (std::size_t k = 0; k < m; ++k) ch.end_column &= d.vedge[K][k] >= 0;

    auto vid = [&](std::size_t c, std::size_t k) { return c * R + k; };
    UnionFind zf(W * R);
    for (std::size_t c = 0; c < K; ++c)
        for (std::size_t k = 0; k < R; ++k)
            if (d.hedge[c][k] >= 0) zf.unite(vid(c, k), vid(c + 1, k));
    for (std::size_t c = 0; c < W; ++c)
        for (std::size_t k = 0; k < m; ++k)
            if (d.vedge[c][k] >= 0) zf.unite(vid(c, k), vid(c, k + 1));
    std::vector<std::size_t> piece_root(d.pieces.size(), SIZE_MAX);
    bool split = false;
    for (std::size_t c = 0; c < W; ++c)
        for (std::size_t k = 0; k < R; ++k) {
            int pi = d.vertex[c][k];
            if (pi < 0) continue;
            auto r = zf.find(vid(c, k));
            auto& pr = piece_root[std::size_t(pi)];
            if (pr == SIZE_MAX) pr = r;
            else if (pr != r) split = true;
        }
    std::set<std::size_t> roots(piece_root.begin(), piece_root.end());
    ch.disjoint = !conflict && !split && roots.size() == d.pieces.size();

    // complement cells: vertices, horizontal, vertical and diagonal edges, triangles
    const std::size_t nV = W * R, nH = K * R, nVe = W * m, nD = K * m;
    auto H = [&](std::size_t c, std::size_t k) { return nV + c * R + k; };
    auto Ve = [&](std::size_t c, std::size_t k) { return nV + nH + c * m + k; };
    auto Dg = [&](std::size_t c, std::size_t k) { return nV + nH + nVe + c * m + k; };
    auto T = [&](std::size_t c, std::size_t k, int up) { return nV + nH + nVe + nD + 2 * (c * m + k) + std::size_t(up); };
    const std::size_t ncell = nV + nH + nVe + nD + 2 * nD;
    std::vector<char> open(ncell, 0);
    std::vector<std::pair<std::size_t, std::size_t>> span(ncell);
    for (std::size_t c = 0; c < W; ++c)
        for (std::size_t k = 0; k < R; ++k) {
            open[vid(c, k)] = d.vertex[c][k] < 0;
            span[vid(c, k)] = {k, k};
        }
    for (std::size_t c = 0; c < K; ++c)
        for (std::size_t k = 0; k < R; ++k) {
            open[H(c, k)] = d.hedge[c][k] < 0;
            span[H(c, k)] = {k, k};
        }
    for (std::size_t c = 0; c < W; ++c)
        for (std::size_t k = 0; k < m; ++k) {
            open[Ve(c, k)] = d.vedge[c][k] < 0;
            span[Ve(c, k)] = {k, k + 1};
        }
    for (std::size_t c = 0; c < K; ++c)
        for (std::size_t k = 0; k < m; ++k) {
            open[Dg(c, k)] = 1;
            span[Dg(c, k)] = {k, k + 1};
            open[T(c, k, 0)] = open[T(c, k, 1)] = 1;
            span[T(c, k, 0)] = span[T(c, k, 1)] = {k, k + 1};
        }
    UnionFind uf(ncell);
    auto join = [&](std::size_t a, std::size_t b) {
        if (open[a] && open[b]) uf.unite(a, b);
    };
    for (std::size_t c = 0; c < K; ++c)
        for (std::size_t k = 0; k < R; ++k) join(H(c, k), vid(c, k)), join(H(c, k), vid(c + 1, k));
    for (std::size_t c = 0; c < W; ++c)
        for (std::size_t k = 0; k < m; ++k) join(Ve(c, k), vid(c, k)), join(Ve(c, k), vid(c, k + 1));
    for (std::size_t c = 0; c < K; ++c)
        for (std::size_t k = 0; k < m; ++k) {
            join(Dg(c, k), vid(c, k));
            join(Dg(c, k), vid(c + 1, k + 1));
            // lower: (c,k) (c+1,k) (c+1,k+1); upper: (c,k) (c+1,k+1) (c,k+1)
            std::size_t lo = T(c, k, 0), up = T(c, k, 1);
            join(lo, H(c, k)), join(lo, Ve(c + 1, k)), join(lo, Dg(c, k));
            join(lo, vid(c, k)), join(lo, vid(c + 1, k)), join(lo, vid(c + 1, k + 1));
            join(up, Dg(c, k)), join(up, H(c, k + 1)), join(up, Ve(c, k));
            join(up, vid(c, k)), join(up, vid(c + 1, k + 1)), join(up, vid(c, k + 1));
        }
    std::map<std::size_t, int> uid;
    for (std::size_t x = 0; x < ncell; ++x)
        if (open[x]) uid.emplace(uf.find(x), int(uid.size()));
    const std::size_t nu = uid.size();
    d.u_pieces = nu;
    d.z_pieces = 0;
    for (auto& pc : d.pieces) d.z_pieces += pc.z >= 0;

    // column 0 contacts
    std::vector<char> u_on_left(nu, 0);
    std::vector<long> u_inf(nu, long(R)), u_sup(nu, -1);
    std::vector<int> u_match(nu, -1), back(t.u.size(), -1);
    bool trace = true;
    auto match = [&](std::size_t cell, int side_u) {
        int up = uid.at(uf.find(cell));
        u_on_left[std::size_t(up)] = 1;
        u_inf[std::size_t(up)] = std::min(u_inf[std::size_t(up)], long(span[cell].first));
        u_sup[std::size_t(up)] = std::max(u_sup[std::size_t(up)], long(span[cell].second));
        if (side_u < 0) {
            trace = false;
            return;
        }
        if (u_match[std::size_t(up)] >= 0 && u_match[std::size_t(up)] != side_u) trace = false;
        if (back[std::size_t(side_u)] >= 0 && back[std::size_t(side_u)] != up) trace = false;
        u_match[std::size_t(up)] = side_u;
        back[std::size_t(side_u)] = up;
    };
    for (std::size_t k = 0; k < R; ++k) {
        int pi = d.vertex[0][k];
        if (pi < 0) {
            if (t.z_at[k] >= 0) trace = false;
            match(vid(0, k), t.u_at_vertex[k]);
        } else if (d.pieces[std::size_t(pi)].z != t.z_at[k]) {
            trace = false;
        }
    }
    for (std::size_t k = 0; k < m; ++k) {
        if (d.vedge[0][k] >= 0) trace = false;
        else match(Ve(0, k), t.u_at_edge[k]);
    }
    for (std::size_t j = 0; j < t.u.size(); ++j) trace &= back[j] >= 0;
    std::vector<char> z_drawn(t.z.size(), 0);
    for (auto& pc : d.pieces)
        if (pc.z >= 0) z_drawn[std::size_t(pc.z)] = 1;
    for (char f : z_drawn) trace &= f != 0;
    ch.trace_matches = trace;
    d.u_match = u_match;

    bool attach = true;
    std::vector<long> z_min(d.pieces.size(), long(R)), z_max(d.pieces.size(), -1);
    for (std::size_t k = 0; k < R; ++k) {
        int pi = d.vertex[0][k];
        if (pi < 0) continue;
        z_min[std::size_t(pi)] = std::min(z_min[std::size_t(pi)], long(k));
        z_max[std::size_t(pi)] = std::max(z_max[std::size_t(pi)], long(k));
    }
    for (std::size_t pi = 0; pi < d.pieces.size(); ++pi)
        if (d.pieces[pi].z >= 0 && z_max[pi] < 0) attach = false;
    for (std::size_t u = 0; u < nu; ++u) attach &= u_on_left[u] != 0;
    ch.touches_attach_side = attach;

    bool reach = true;
    for (std::size_t c = 0; c < W; ++c)
        for (std::size_t k = 0; k < R; ++k) {
            int pi = d.vertex[c][k];
            if (pi < 0 || d.pieces[std::size_t(pi)].z < 0 || z_max[std::size_t(pi)] < 0) continue;
            auto& ct = t.z[std::size_t(d.pieces[std::size_t(pi)].z)];
            if (long(k) < z_min[std::size_t(pi)] && !(ct.bottom || ct.other)) reach = false;
            if (long(k) > z_max[std::size_t(pi)] && !(ct.top || ct.other)) reach = false;
        }
    d.u_rows.assign(nu, {R, 0});
    for (std::size_t x = 0; x < ncell; ++x) {
        if (!open[x]) continue;
        std::size_t u = std::size_t(uid.at(uf.find(x)));
        auto [lo, hi] = span[x];
        d.u_rows[u].first = std::min(d.u_rows[u].first, lo);
        d.u_rows[u].second = std::max(d.u_rows[u].second, hi);
        if (u_match[u] < 0) continue;
        auto& ct = t.u[std::size_t(u_match[u])];
        if (long(lo) < u_inf[u] && !(ct.bottom || ct.other)) reach = false;
        if (long(hi) > u_sup[u] && !(ct.top || ct.other)) reach = false;
    }
    ch.boundary_reach = reach;
    return ch;
}

namespace {

std::vector<double> distances_from(const RefinedComplex& rc, Id v, double cutoff) {
    return shortest_paths(rc, {{v, 0.0}}, nullptr, cutoff);
}

}  // namespace

FillCertificate fillin_check(const RefinedComplex& rc, const std::vector<Id>& arc, const std::vector<char>& right, Id x,
                             std::size_t a1, std::size_t a2, double D) {
    if (a1 > a2) std::swap(a1, a2);
    if (a2 >= arc.size()) throw Error(ErrorCode::BadParam, "arc index out of range");
    auto& m = rc.mesh();
    std::vector<char> on_arc(m.num_vertices(), 0);
    for (Id v : arc) on_arc[v] = 1;
    if (right[x] || on_arc[x]) throw Error(ErrorCode::PreconditionUnmet, "x is not on the left side");
    FillCertificate out;
    out.slack = rc.mesh_slack();
    auto dx = distances_from(rc, x, kInf);
    if (dx[arc[a1]] > D || dx[arc[a2]] > D) throw Error(ErrorCode::PreconditionUnmet, "arc points outside B(x, D)");
    if (a1 != a2) {
        // path from arc[a1] to arc[a2] through the right side inside the ball
        std::vector<char> seen(m.num_vertices(), 0);
        std::vector<Id> st{arc[a1]};
        seen[arc[a1]] = 1;
        bool found = false;
        while (!st.empty() && !found) {
            Id u = st.back();
            st.pop_back();
            for (Id e : m.incident_edges(u)) {
                Id w = m.edge(e).other(u);
                if (w == arc[a2]) found = true;
                if (seen[w] || !right[w] || dx[w] > D) continue;
                seen[w] = 1;
                st.push_back(w);
            }
        }
        if (!found) throw Error(ErrorCode::PreconditionUnmet, "no path through the right side inside B(x, D)");
    }
    out.worst = -kInf;
    for (std::size_t k = a1; k <= a2; ++k) {
        out.worst = std::max(out.worst, dx[arc[k]] - D);
        ++out.samples;
    }
    out.holds = out.worst <= out.slack;
    return out;
}

FillCertificate fillout_check(const RefinedComplex& rc, const std::vector<Id>& arc, const std::vector<char>& right,
                              const std::vector<int>& kind, Id x, Id b, double D) {
    auto& m = rc.mesh();
    std::vector<char> on_arc(m.num_vertices(), 0);
    for (Id v : arc) on_arc[v] = 1;
    if (right[x] || on_arc[x]) throw Error(ErrorCode::PreconditionUnmet, "x is not on the left side");
    if (!right[b] || kind[b] == 0) throw Error(ErrorCode::PreconditionUnmet, "b is not a right boundary point");
    FillCertificate out;
    out.slack = rc.mesh_slack();
    auto dx = distances_from(rc, x, kInf);
    if (dx[b] > D) throw Error(ErrorCode::PreconditionUnmet, "b lies outside B(x, D)");
    if (kind[b] == 3) {
        out.worst = -kInf;
        for (Id v : arc) out.worst = std::max(out.worst, dx[v] - D), ++out.samples;
    } else {
        // bottleneck path from b to the arc end through the right side
        Id goal = kind[b] == 1 ? arc.front() : arc.back();
        std::vector<double> best(m.num_vertices(), kInf);
        using Item = std::pair<double, Id>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        best[b] = dx[b];
        pq.push({dx[b], b});
        double reached = kInf;
        while (!pq.empty()) {
            auto [w0, u] = pq.top();
            pq.pop();
            if (w0 > best[u]) continue;
            ++out.samples;
            if (u == goal) {
                reached = w0;
                break;
            }
            if (u != b && !right[u]) continue;
            for (Id e : m.incident_edges(u)) {
                Id w = m.edge(e).other(u);
                if (!right[w] && w != goal) continue;
                double nw = std::max(w0, dx[w]);
                if (nw < best[w]) {
                    best[w] = nw;
                    pq.push({nw, w});
                }
            }
        }
        out.worst = reached - D;
    }
    out.holds = out.worst <= out.slack;
    return out;
}

std::vector<double> strip_columns(double M, double eps, double eps_prime, int left_levels, int right_levels) {
    if (!(eps_prime > 0) || !(M > 2 * eps)) throw Error(ErrorCode::BadParam, "strip needs M > 2 eps and eps' > 0");
    std::vector<double> cols{-M};
    for (int c = 1; c <= left_levels; ++c) cols.push_back(-M + std::ldexp(eps_prime, -(left_levels - c)));
    double a = -M + eps_prime, b = M - eps_prime;
    long n = long(std::floor((b - a) / eps_prime)) + 1;
    if (n % 2) ++n;
    std::vector<double> mid;
    for (long j = 1; j < n; ++j) mid.push_back(j * 2 == n ? 0.0 : a + (b - a) * double(j) / double(n));
    if (eps_prime < eps) {
        for (double s : {-M + eps, M - eps}) {
            bool near = std::abs(s - a) < 1e-9 * M || std::abs(s - b) < 1e-9 * M;
            for (double q : mid) near |= std::abs(s - q) < 1e-9 * M;
            if (!near && s > a && s < b) mid.push_back(s);
        }
        std::sort(mid.begin(), mid.end());
    }
    cols.insert(cols.end(), mid.begin(), mid.end());
    for (int c = right_levels; c >= 1; --c) cols.push_back(M - std::ldexp(eps_prime, -(right_levels - c)));
    cols.push_back(M);
    return cols;
}

RewireResult rewire_lifts(const Patch& p, const MetricComplex& surface, const std::vector<int>& orient,
                          const Subcomplex& zin, const std::vector<std::vector<Id>>& lifts_in, const RewireOptions& opt) {
    auto& c = p.complex;
    const std::size_t nv = c.num_vertices(), nt = c.num_triangles();
    if (!(opt.eps > 0)) throw Error(ErrorCode::BadParam, "eps must be positive");
    RewireResult res;
    res.eps = opt.eps;

    auto lies_left = [&](Id t, const std::vector<Id>& lift, std::size_t k) {
        auto& tv = c.triangle(t).v;
        Id st = surface.find_triangle(p.proj[tv[0]], p.proj[tv[1]], p.proj[tv[2]]);
        if (st == kNone) throw Error(ErrorCode::BadParam, "patch triangle has no image on the surface");
        return runs_along(surface, orient, st, p.proj[lift[k]], p.proj[lift[k + 1]]);
    };

    std::vector<char> on_lift(nv, 0);
    for (auto& l : lifts_in)
        for (Id v : l) on_lift[v] = 1;

    // nudge Z off the lift edges
    Subcomplex z = zin.closed(c);
    for (auto& l : lifts_in)
        for (std::size_t k = 0; k + 1 < l.size(); ++k) {
            Id e = c.find_edge(l[k], l[k + 1]);
            if (!z.edge[e]) continue;
            auto et = c.edge_triangles(e);
            std::vector<Id> order(et.begin(), et.end());
            std::stable_sort(order.begin(), order.end(),
                             [&](Id a, Id b) { return !lies_left(a, l, k) && lies_left(b, l, k); });
            bool moved = false;
            for (Id t : order) {
                Id x = kNone;
                for (Id v : c.triangle(t).v)
                    if (v != l[k] && v != l[k + 1]) x = v;
                if (on_lift[x]) continue;
                z.edge[e] = 0;
                z.edge[c.find_edge(l[k], x)] = 1;
                z.edge[c.find_edge(x, l[k + 1])] = 1;
                z.vertex[x] = 1;
                moved = true;
                ++res.nudged;
                break;
            }
            if (!moved)
                throw Error(ErrorCode::InfiniteIntersection,
                            "Z runs along a lift edge with no room to move it; refine the mesh");
        }
    res.z_before = z;

    RefinedComplex rc(c, c.longest_edge(), 1);
    res.slack = rc.mesh_slack();
    res.D = opt.D > 0 ? opt.D : measure_separator(rc, z).width;
    if (lifts_in.empty()) throw Error(ErrorCode::BadParam, "no lifts to rewire");
    for (std::size_t k = 0; k + 1 < lifts_in[0].size(); ++k)
        res.L += c.edge(c.find_edge(lifts_in[0][k], lifts_in[0][k + 1])).length;
    if (res.L > res.D * (1 + 1e-9) + 1e-12) {
        std::ostringstream os;
        os << "arc length " << res.L << " exceeds the separator width " << res.D;
        throw Error(ErrorCode::PreconditionUnmet, os.str());
    }
    res.eps_prime = std::min(opt.eps, opt.eps * res.D);
    res.M = opt.M > 0 ? opt.M : 2 * res.D + 1;

    struct Sides {
        SideTrace right, left;
        DrawnEnd at_left, at_right;
    };
    std::vector<Sides> sides;
    int KL = 1, KR = 1;
    for (std::size_t li = 0; li < lifts_in.size(); ++li) {
        auto& l = lifts_in[li];
        std::vector<Id> lift_edge;
        for (std::size_t k = 0; k + 1 < l.size(); ++k) lift_edge.push_back(c.find_edge(l[k], l[k + 1]));
        std::vector<char> cut(c.num_edges(), 0);
        for (Id e : lift_edge) cut[e] = 1;
        std::vector<int> mark(nt, 0);  // 1 right, 2 left
        std::vector<Id> seeds_r, seeds_l;
        for (std::size_t k = 0; k < lift_edge.size(); ++k)
            for (Id t : c.edge_triangles(lift_edge[k])) (lies_left(t, l, k) ? seeds_l : seeds_r).push_back(t);
        bool separates = true;
        auto flood = [&](const std::vector<Id>& seeds, int tag) {
            std::vector<Id> st;
            for (Id t : seeds)
                if (mark[t] == 0) mark[t] = tag, st.push_back(t);
                else if (mark[t] != tag) separates = false;
            while (!st.empty()) {
                Id t = st.back();
                st.pop_back();
                for (Id e : c.triangle(t).e) {
                    if (cut[e]) continue;
                    for (Id u : c.edge_triangles(e)) {
                        if (mark[u] == tag) continue;
                        if (mark[u] != 0) {
                            separates = false;
                            continue;
                        }
                        mark[u] = tag;
                        st.push_back(u);
                    }
                }
            }
        };
        flood(seeds_r, 1);
        flood(seeds_l, 2);
        if (!separates) {
            res.notes.push_back("lift " + std::to_string(li) + " does not separate the patch; left uncut");
            continue;
        }
        std::vector<char> rs(nt), ls(nt);
        for (Id t = 0; t < nt; ++t) rs[t] = mark[t] == 1, ls[t] = mark[t] == 2;
        Sides s;
        s.right = side_trace(p, z, l, rs);
        s.left = side_trace(p, z, l, ls);
        try {
            s.at_left = draw_end(s.right);
            s.at_right = draw_end(s.left);
        } catch (const Error& e) {
            throw Error(e.code(), "lift " + std::to_string(li) + ": " + e.what());
        }
        KL = std::max(KL, s.at_left.levels);
        KR = std::max(KR, s.at_right.levels);
        res.lifts.push_back(l);
        sides.push_back(std::move(s));
    }
    if (res.lifts.empty()) throw Error(ErrorCode::PreconditionUnmet, "no lift separates the patch");

    auto cols = strip_columns(res.M, opt.eps, res.eps_prime, KL, KR);
    const std::size_t C = cols.size();
    auto& lifts = res.lifts;
    res.strip = insert_strips(
        c, lifts, cols, [&](Id t, std::size_t i, std::size_t k) { return lies_left(t, lifts[i], k); }, p.true_boundary);
    auto& n = res.strip.complex;
    Subcomplex nz = Subcomplex::empty(n);
    for (Id v = 0; v < nv; ++v) {
        if (!z.vertex[v]) continue;
        nz.vertex[v] = 1;
        if (res.strip.right_copy[v] != kNone) nz.vertex[res.strip.right_copy[v]] = 1;
    }
    for (Id e = 0; e < c.num_edges(); ++e)
        if (z.edge[e] && res.strip.edge_map[e] != kNone) nz.edge[res.strip.edge_map[e]] = 1;

    std::size_t mid_col = std::size_t(std::find(cols.begin(), cols.end(), 0.0) - cols.begin());
    for (std::size_t j = 0; j < lifts.size(); ++j) {
        auto& G = res.strip.strips[j].grid;
        const std::size_t R = lifts[j].size();
        for (int end = 0; end < 2; ++end) {
            DrawnEnd& d = end == 0 ? sides[j].at_left : sides[j].at_right;
            const SideTrace& tr = end == 0 ? sides[j].right : sides[j].left;
            d = draw_end(tr, end == 0 ? KL : KR);
            auto g = [&](std::size_t lc) { return end == 0 ? lc : C - 1 - lc; };
            for (std::size_t lc = 0; lc < d.vertex.size(); ++lc)
                for (std::size_t k = 0; k < R; ++k) {
                    if (d.vertex[lc][k] >= 0) nz.vertex[G[g(lc)][k]] = 1;
                    if (lc + 1 < d.vertex.size() && d.hedge[lc][k] >= 0)
                        nz.edge[n.find_edge(G[g(lc)][k], G[g(lc + 1)][k])] = 1;
                    if (k + 1 < R && d.vedge[lc][k] >= 0) nz.edge[n.find_edge(G[g(lc)][k], G[g(lc)][k + 1])] = 1;
                }
        }
        for (std::size_t col = std::size_t(KL); col <= C - 1 - std::size_t(KR); ++col)
            for (std::size_t k = 0; k < R; ++k) {
                nz.vertex[G[col][k]] = 1;
                if (k + 1 < R) nz.edge[n.find_edge(G[col][k], G[col][k + 1])] = 1;
            }
        if (mid_col < C)
            for (std::size_t k = 0; k + 1 < R; ++k) res.cut_edges.push_back(n.find_edge(G[mid_col][k], G[mid_col][k + 1]));
    }
    res.z = nz.closed(n);

    // reach of attached points along the drawn rows, per end
    for (std::size_t j = 0; j < lifts.size(); ++j) {
        auto& l = lifts[j];
        const std::size_t R = l.size();
        std::vector<std::vector<double>> dist;
        if (opt.certify)
            for (std::size_t k = 0; k < R; ++k) dist.push_back(distances_from(rc, l[k], res.D + 4 * res.slack + 1e-9));
        for (int end = 0; end < 2; ++end) {
            const DrawnEnd& d = end == 0 ? sides[j].at_left : sides[j].at_right;
            const SideTrace& drawn = end == 0 ? sides[j].right : sides[j].left;
            const SideTrace& attached = end == 0 ? sides[j].left : sides[j].right;
            EndReport er;
            er.lift = j;
            er.left_end = end == 0;
            er.special = d.special;
            er.p = d.p;
            er.z_pieces = d.z_pieces;
            er.u_pieces = d.u_pieces;
            er.levels = d.levels;
            er.checks = d.checks;
            er.reach_excess = -kInf;
            auto excess = [&](const std::vector<Id>& xs, std::size_t r0, std::size_t r1) {
                for (std::size_t k = r0; k <= r1; ++k)
                    for (Id x : xs) er.reach_excess = std::max(er.reach_excess, dist[k][x] - res.D);
            };
            if (opt.certify) {
                for (auto& pc : d.pieces) {
                    if (pc.z < 0) continue;
                    std::vector<Id> xs;
                    for (std::size_t k : pc.rows) {
                        int a = attached.z_at[k];
                        if (a >= 0) xs.insert(xs.end(), attached.z_vertices[std::size_t(a)].begin(),
                                              attached.z_vertices[std::size_t(a)].end());
                    }
                    dedup(xs);
                    excess(xs, pc.r0, pc.r1);
                }
                for (std::size_t u = 0; u < d.u_match.size(); ++u) {
                    int su = d.u_match[u];
                    if (su < 0) continue;
                    std::set<int> comps;
                    for (std::size_t k = 0; k < R; ++k)
                        if (drawn.u_at_vertex[k] == su && attached.u_at_vertex[k] >= 0) comps.insert(attached.u_at_vertex[k]);
                    for (std::size_t k = 0; k + 1 < R; ++k)
                        if (drawn.u_at_edge[k] == su) comps.insert(attached.u_at_edge[k]);
                    std::vector<Id> xs;
                    for (int a : comps)
                        xs.insert(xs.end(), attached.u_vertices[std::size_t(a)].begin(),
                                  attached.u_vertices[std::size_t(a)].end());
                    dedup(xs);
                    excess(xs, d.u_rows[u].first, d.u_rows[u].second);
                }
            }
            if (er.reach_excess == -kInf) er.reach_excess = 0;
            res.reach_excess = std::max(res.reach_excess, er.reach_excess);
            res.properties_hold &= er.checks.all();
            res.ends.push_back(er);
        }
    }
    return res;
}

std::vector<Id> strip_projection(const Patch& old, const RewireResult& up, const StripResult& down) {
    auto& s = up.strip;
    const std::size_t n = s.complex.num_vertices();
    if (down.strips.size() != 1 || down.columns.size() != s.columns.size())
        throw Error(ErrorCode::BadParam, "surface strip does not match the patch strips");
    std::vector<char> cut(old.complex.num_vertices(), 0);
    for (auto& l : up.lifts)
        for (Id v : l) cut[v] = 1;
    std::vector<Id> out(n, kNone);
    for (Id v = 0; v < n; ++v) {
        Id o = s.origin[v];
        if (o == kNone) continue;
        Id w = old.proj[o];
        if (w == kNone) continue;
        if (cut[o]) out[v] = v == o ? w : down.right_copy[w];
        else out[v] = down.right_copy[w] != kNone ? kNone : w;
    }
    auto& dg = down.strips[0].grid;
    for (auto& st : s.strips)
        for (std::size_t col = 1; col + 1 < st.grid.size(); ++col)
            for (std::size_t k = 0; k < st.grid[col].size(); ++k) out[st.grid[col][k]] = dg[col][k];
    return out;
}

}  // namespace uw
