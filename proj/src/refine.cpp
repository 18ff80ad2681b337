#include "uwidth/refine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

namespace uw {

std::array<std::array<double, 2>, 3> triangle_layout(const MetricComplex& c, Id t) {
    auto& tr = c.triangle(t);
    double l0 = c.edge(tr.e[0]).length;  // v0 v1
    double l1 = c.edge(tr.e[1]).length;  // v1 v2
    double l2 = c.edge(tr.e[2]).length;  // v2 v0
    double x = (l0 * l0 + l2 * l2 - l1 * l1) / (2 * l0);
    double y = std::sqrt(std::max(0.0, l2 * l2 - x * x));
    return {{{0, 0}, {l0, 0}, {x, y}}};
}

double default_h(const MetricComplex& c) { return c.shortest_edge() / 4; }

RefinedComplex::RefinedComplex(const MetricComplex& base, double h, int force_n) : base_(base), h_(h) {
    if (!(h > 0)) throw Error(ErrorCode::BadParam, "refinement step must be positive");
    n_ = 1;
    double longest = base.longest_edge();
    if (force_n > 0) n_ = force_n;
    else
        while (longest / n_ > h * (1 + 1e-12)) n_ *= 2;
    if (n_ > 1 && base.num_tets() > 0)
        throw Error(ErrorCode::BadParam, "refinement of 3-dimensional complexes is not supported");
    const int n = n_;

    ComplexBuilder b;
    bool coords = base.has_coordinates();
    for (Id v = 0; v < base.num_vertices(); ++v) coords ? b.add_vertex(base.coord(v)) : b.add_vertex();

    chains_.resize(base.num_edges());
    std::vector<Id> edge_parent_tmp;
    for (Id e = 0; e < base.num_edges(); ++e) {
        auto& ed = base.edge(e);
        auto& ch = chains_[e];
        ch.push_back(ed.a);
        for (int k = 1; k < n; ++k) {
            if (coords) {
                double s = double(k) / n;
                ch.push_back(b.add_vertex((1 - s) * base.coord(ed.a) + s * base.coord(ed.b)));
            } else {
                ch.push_back(b.add_vertex());
            }
        }
        ch.push_back(ed.b);
        for (int k = 0; k < n; ++k) {
            Id id = b.edge(ch[k], ch[k + 1], ed.length / n);
            if (edge_parent_tmp.size() <= id) edge_parent_tmp.resize(id + 1, kNone);
            edge_parent_tmp[id] = e;
            if (base.is_boundary_edge(e)) b.mark_boundary(id);
        }
    }

    tri_points_.resize(base.num_triangles());
    tri_xy_.resize(base.num_triangles());
    for (Id t = 0; t < base.num_triangles(); ++t) {
        auto& tr = base.triangle(t);
        auto lay = triangle_layout(base, t);
        // point (i,j) = v0 + i/n (v1-v0) + j/n (v2-v0)
        std::vector<Id> grid((n + 1) * (n + 1), kNone);
        auto at = [&](int i, int j) -> Id& { return grid[i * (n + 1) + j]; };
        auto side = [&](Id e, Id from, int k) {
            auto& ch = chains_[e];
            return base.edge(e).a == from ? ch[k] : ch[n - k];
        };
        for (int i = 0; i <= n; ++i)
            for (int j = 0; i + j <= n; ++j) {
                Id id;
                if (j == 0) id = side(tr.e[0], tr.v[0], i);
                else if (i + j == n) id = side(tr.e[1], tr.v[1], j);
                else if (i == 0) id = side(tr.e[2], tr.v[2], n - j);
                else if (coords) {
                    double s = double(i) / n, r = double(j) / n;
                    Vec3 p = base.coord(tr.v[0]) + s * (base.coord(tr.v[1]) - base.coord(tr.v[0])) +
                             r * (base.coord(tr.v[2]) - base.coord(tr.v[0]));
                    id = b.add_vertex(p);
                } else {
                    id = b.add_vertex();
                }
                at(i, j) = id;
                tri_points_[t].push_back(id);
                double s = double(i) / n, r = double(j) / n;
                tri_xy_[t].push_back({s * lay[1][0] + r * lay[2][0], s * lay[1][1] + r * lay[2][1]});
            }
        auto xy = [&](int i, int j) {
            double s = double(i) / n, r = double(j) / n;
            return std::array<double, 2>{s * lay[1][0] + r * lay[2][0], s * lay[1][1] + r * lay[2][1]};
        };
        auto link = [&](int i0, int j0, int i1, int j1) {
            auto p = xy(i0, j0), q = xy(i1, j1);
            b.edge(at(i0, j0), at(i1, j1), std::hypot(p[0] - q[0], p[1] - q[1]));
        };
        for (int i = 0; i < n; ++i)
            for (int j = 0; i + j < n; ++j) {
                link(i, j, i + 1, j);
                link(i + 1, j, i, j + 1);
                link(i, j + 1, i, j);
                b.triangle(at(i, j), at(i + 1, j), at(i, j + 1));
                tri_parent_.push_back(t);
                if (i + j + 2 <= n) {
                    link(i + 1, j, i + 1, j + 1);
                    link(i + 1, j + 1, i, j + 1);
                    b.triangle(at(i + 1, j), at(i + 1, j + 1), at(i, j + 1));
                    tri_parent_.push_back(t);
                }
            }
    }
    for (Id t = 0; t < base.num_tets(); ++t) {
        auto& v = base.tet(t);
        b.tet(v[0], v[1], v[2], v[3]);
    }

    BuildOptions opt;
    opt.surface = base.surface_mode();
    opt.infer_boundary = false;
    opt.allow_degenerate = true;  // sub-triangles inherit validity from their parents
    mesh_ = b.build(opt);
    edge_parent_ = edge_parent_tmp;
    edge_parent_.resize(mesh_.num_edges(), kNone);
    build_graph();
}

void RefinedComplex::build_graph() {
    std::vector<std::tuple<Id, Id, double>> arcs;
    for (auto& e : mesh_.edges()) arcs.emplace_back(std::min(e.a, e.b), std::max(e.a, e.b), e.length);
    for (Id t = 0; t < base_.num_triangles(); ++t) {
        auto& pts = tri_points_[t];
        auto& xy = tri_xy_[t];
        // boundary points only
        std::vector<std::size_t> bd;
        int k = 0;
        for (int i = 0; i <= n_; ++i)
            for (int j = 0; i + j <= n_; ++j, ++k)
                if (i == 0 || j == 0 || i + j == n_) bd.push_back(k);
        for (std::size_t x = 0; x < bd.size(); ++x)
            for (std::size_t y = x + 1; y < bd.size(); ++y) {
                Id u = pts[bd[x]], v = pts[bd[y]];
                if (u == v) continue;
                double d = std::hypot(xy[bd[x]][0] - xy[bd[y]][0], xy[bd[x]][1] - xy[bd[y]][1]);
                arcs.emplace_back(std::min(u, v), std::max(u, v), d);
            }
    }
    std::sort(arcs.begin(), arcs.end());
    std::vector<std::tuple<Id, Id, double>> uniq;
    for (auto& a : arcs)
        if (uniq.empty() || std::get<0>(uniq.back()) != std::get<0>(a) || std::get<1>(uniq.back()) != std::get<1>(a))
            uniq.push_back(a);
    std::size_t nv = mesh_.num_vertices();
    off_.assign(nv + 1, 0);
    for (auto& [u, v, d] : uniq) {
        ++off_[u + 1];
        ++off_[v + 1];
    }
    for (std::size_t i = 0; i < nv; ++i) off_[i + 1] += off_[i];
    adj_.assign(off_[nv], 0);
    w_.assign(off_[nv], 0);
    std::vector<Id> fill(off_.begin(), off_.end() - 1);
    for (auto& [u, v, d] : uniq) {
        adj_[fill[u]] = v;
        w_[fill[u]++] = d;
        adj_[fill[v]] = u;
        w_[fill[v]++] = d;
    }
}

double RefinedComplex::mesh_slack() const { return base_.num_edges() ? base_.longest_edge() / n_ : 0.0; }

std::vector<Seed> RefinedComplex::locate(const PointOnComplex& p) const {
    auto bad = [&](const char* why) { return Error(ErrorCode::SourceNotOnComplex, why); };
    const double tol = 1e-9;
    double sum = 0;
    for (double x : p.bary) {
        if (x < -tol || x > 1 + tol) throw bad("barycentric coordinate outside [0,1]");
        sum += x;
    }
    if (std::abs(sum - 1) > tol) throw bad("barycentric coordinates do not sum to 1");
    switch (p.kind) {
        case PointOnComplex::Kind::Vertex:
            if (p.cell >= base_.num_vertices()) throw bad("vertex id out of range");
            return {{p.cell, 0.0}};
        case PointOnComplex::Kind::Edge: {
            if (p.cell >= base_.num_edges()) throw bad("edge id out of range");
            double len = base_.edge(p.cell).length;
            double t = std::clamp(p.bary[1], 0.0, 1.0) * n_;
            int k = std::min(int(std::floor(t)), n_ - 1);
            double f = t - k;
            auto& ch = chains_[p.cell];
            if (f <= 1e-12) return {{ch[k], 0.0}};
            if (f >= 1 - 1e-12) return {{ch[k + 1], 0.0}};
            return {{ch[k], f * len / n_}, {ch[k + 1], (1 - f) * len / n_}};
        }
        case PointOnComplex::Kind::Triangle: {
            if (p.cell >= base_.num_triangles()) throw bad("triangle id out of range");
            auto lay = triangle_layout(base_, p.cell);
            double x = p.bary[1] * lay[1][0] + p.bary[2] * lay[2][0];
            double y = p.bary[1] * lay[1][1] + p.bary[2] * lay[2][1];
            std::vector<Seed> out;
            auto& pts = tri_points_[p.cell];
            auto& xy = tri_xy_[p.cell];
            for (std::size_t i = 0; i < pts.size(); ++i) out.push_back({pts[i], std::hypot(x - xy[i][0], y - xy[i][1])});
            return out;
        }
    }
    return {};
}

MetricComplex steiner_refine(const MetricComplex& c, double h) {
    if (!(h > 0)) throw Error(ErrorCode::BadParam, "refinement step must be positive");
    if (c.longest_edge() <= h * (1 + 1e-12)) return c;
    return RefinedComplex(c, h).mesh();
}

}  // namespace uw
