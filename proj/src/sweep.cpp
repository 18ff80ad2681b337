#include "uwidth/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "uwidth/components.hpp"

namespace uw {

double SweepQuotient::width() const {
    double w = 0;
    for (auto& n : nodes) w = std::max(w, n.diameter);
    return w;
}

Id SweepQuotient::widest() const {
    Id best = kNone;
    for (Id i = 0; i < nodes.size(); ++i)
        if (best == kNone || nodes[i].diameter > nodes[best].diameter) best = i;
    return best;
}

std::size_t SweepQuotient::num_components() const {
    UnionFind uf(nodes.size());
    std::size_t c = nodes.size();
    for (auto [a, b] : adjacency) c -= uf.unite(a, b);
    return c;
}

bool SweepQuotient::is_forest() const { return adjacency.size() + num_components() == nodes.size(); }

std::vector<Sample> node_samples(const RefinedComplex& rc, const SweepQuotient& q, Id node) {
    auto& n = q.nodes[node];
    auto& m = rc.mesh();
    std::vector<Sample> out;
    for (Id v : n.vertices) out.push_back(Sample::at(v));
    for (Id e : n.edges) {
        auto& ed = m.edge(e);
        double fa = q.value[ed.a], fb = q.value[ed.b];
        if (fa == fb) continue;
        for (double r : {n.r0, n.r1}) {
            double t = (r - fa) / (fb - fa);
            if (t > 0 && t < 1) out.push_back(Sample::on_edge(m, e, t * ed.length));
        }
    }
    if (out.empty())
        for (Id e : n.edges) out.push_back(Sample::at(m.edge(e).a));
    return out;
}

std::vector<PointOnComplex> points_along(const RefinedComplex& rc, const std::vector<Id>& base_edges) {
    std::vector<PointOnComplex> out;
    int n = rc.subdivisions();
    for (Id e : base_edges)
        for (int k = 0; k <= n; ++k) out.push_back(PointOnComplex::on_edge(e, double(k) / n));
    return out;
}

SweepQuotient sweep_quotient(const RefinedComplex& rc, const std::vector<PointOnComplex>& sources,
                             const SweepOptions& opt) {
    if (sources.empty()) throw Error(ErrorCode::SourceNotOnComplex, "no sweep source");
    double step = opt.step > 0 ? opt.step : rc.h();
    SweepQuotient q;
    q.sources = sources;
    q.step = step;
    q.mesh_slack = rc.mesh_slack();
    q.value = distance_field(rc, sources).value;

    auto& m = rc.mesh();
    const std::size_t nv = m.num_vertices(), ne = m.num_edges();
    // with an offset the first slab is [0, offset) and the rest are shifted
    const double off = opt.offset > 0 ? std::fmod(opt.offset, step) : 0;
    const int s0 = off > 0 ? 1 : 0;
    auto slab_of = [&](double x) { return std::max(0, int(std::floor((x - off) / step)) + s0); };
    auto level = [&](int k) { return std::max(0.0, off + (k - s0) * step); };
    int nslab = 0;
    for (double x : q.value) nslab = std::max(nslab, slab_of(x) + 1);

    std::vector<std::vector<Id>> slab_edges(nslab), slab_verts(nslab);
    for (Id e = 0; e < ne; ++e) {
        double fa = q.value[m.edge(e).a], fb = q.value[m.edge(e).b];
        for (int k = slab_of(std::min(fa, fb)); k <= slab_of(std::max(fa, fb)); ++k) slab_edges[k].push_back(e);
    }
    for (Id v = 0; v < nv; ++v) slab_verts[slab_of(q.value[v])].push_back(v);

    q.assignment.assign(nv, kNone);
    if (ne == 0) {
        for (Id v = 0; v < nv; ++v) {
            SweepNode n;
            n.slab = slab_of(q.value[v]);
            n.r0 = level(n.slab);
            n.r1 = level(n.slab + 1);
            n.vertices = {v};
            n.fiber_size = 1;
            q.assignment[v] = Id(q.nodes.size());
            q.nodes.push_back(n);
        }
        return q;
    }

    // node of edge in the current and previous slab, keyed by slab parity
    std::vector<Id> node_of[2] = {std::vector<Id>(ne, kNone), std::vector<Id>(ne, kNone)};
    std::vector<int> stamp[2] = {std::vector<int>(ne, -1), std::vector<int>(ne, -1)};
    std::vector<Id> local(ne, kNone);
    std::vector<int> local_stamp(ne, -1);

    for (int k = 0; k < nslab; ++k) {
        auto& es = slab_edges[k];
        for (std::size_t i = 0; i < es.size(); ++i) {
            local[es[i]] = Id(i);
            local_stamp[es[i]] = k;
        }
        auto in_slab = [&](Id e) { return local_stamp[e] == k; };
        UnionFind uf(es.size());
        for (Id v : slab_verts[k]) {
            Id first = kNone;
            for (Id e : m.incident_edges(v)) {
                if (first == kNone) first = e;
                else uf.unite(local[first], local[e]);
            }
        }
        for (std::size_t i = 0; i < es.size(); ++i)
            for (Id t : m.edge_triangles(es[i]))
                for (Id f : m.triangle(t).e)
                    if (f != es[i] && in_slab(f)) uf.unite(i, local[f]);

        std::map<std::size_t, Id> root_node;
        int par = k & 1;
        for (std::size_t i = 0; i < es.size(); ++i) {
            std::size_t r = uf.find(i);
            auto it = root_node.find(r);
            if (it == root_node.end()) {
                SweepNode n;
                n.slab = k;
                n.r0 = level(k);
                n.r1 = level(k + 1);
                it = root_node.emplace(r, Id(q.nodes.size())).first;
                q.nodes.push_back(std::move(n));
            }
            q.nodes[it->second].edges.push_back(es[i]);
            node_of[par][es[i]] = it->second;
            stamp[par][es[i]] = k;
        }
        for (Id v : slab_verts[k]) {
            auto inc = m.incident_edges(v);
            if (inc.empty()) continue;
            Id n = node_of[par][inc[0]];
            q.nodes[n].vertices.push_back(v);
            q.assignment[v] = n;
        }
        if (k > 0) {
            std::vector<std::pair<Id, Id>> pairs;
            for (Id e : es)
                if (stamp[1 - par][e] == k - 1) pairs.emplace_back(node_of[1 - par][e], node_of[par][e]);
            std::sort(pairs.begin(), pairs.end());
            pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
            q.adjacency.insert(q.adjacency.end(), pairs.begin(), pairs.end());
        }
    }

    // critical radii and arcs
    std::vector<int> up(q.nodes.size(), 0), down(q.nodes.size(), 0);
    for (auto [a, b] : q.adjacency) {
        ++up[a];
        ++down[b];
    }
    std::vector<char> critical(nslab + 1, 0);
    critical[0] = critical[nslab] = 1;
    for (Id i = 0; i < q.nodes.size(); ++i) {
        int s = q.nodes[i].slab;
        if (s + 1 < nslab && up[i] != 1) critical[s + 1] = 1;
        if (s > 0 && down[i] != 1) critical[s] = 1;
    }
    for (int k = 0; k <= nslab; ++k)
        if (critical[k]) q.critical_radii.push_back(level(k));
    UnionFind chain(q.nodes.size());
    for (auto [a, b] : q.adjacency)
        if (up[a] == 1 && down[b] == 1 && !critical[q.nodes[b].slab]) chain.unite(a, b);
    std::map<std::size_t, std::vector<Id>> runs;
    for (Id i = 0; i < q.nodes.size(); ++i) runs[chain.find(i)].push_back(i);
    for (auto& [r, ids] : runs) q.arcs.push_back(ids);

    if (opt.measure)
        for (Id i = 0; i < q.nodes.size(); ++i) {
            auto s = node_samples(rc, q, i);
            q.nodes[i].fiber_size = s.size();
            q.nodes[i].diameter = sample_diameter(rc, s).value;
        }
    return q;
}

}  // namespace uw
