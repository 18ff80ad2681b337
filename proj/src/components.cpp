#include "uwidth/components.hpp"

#include <algorithm>
#include <map>

namespace uw {

Subcomplex Subcomplex::empty(const MetricComplex& c) {
    Subcomplex s;
    s.vertex.assign(c.num_vertices(), 0);
    s.edge.assign(c.num_edges(), 0);
    s.triangle.assign(c.num_triangles(), 0);
    return s;
}

Subcomplex Subcomplex::from_edges(const MetricComplex& c, const std::vector<Id>& edges) {
    Subcomplex s = empty(c);
    for (Id e : edges) s.edge[e] = 1;
    return s.closed(c);
}

Subcomplex Subcomplex::closed(const MetricComplex& c) const {
    Subcomplex s = *this;
    s.vertex.resize(c.num_vertices(), 0);
    s.edge.resize(c.num_edges(), 0);
    s.triangle.resize(c.num_triangles(), 0);
    for (Id t = 0; t < c.num_triangles(); ++t)
        if (s.triangle[t])
            for (Id e : c.triangle(t).e) s.edge[e] = 1;
    for (Id e = 0; e < c.num_edges(); ++e)
        if (s.edge[e]) s.vertex[c.edge(e).a] = s.vertex[c.edge(e).b] = 1;
    return s;
}

std::vector<CellSet> components(const MetricComplex& c, const Subcomplex& in) {
    Subcomplex s = in.closed(c);
    UnionFind uf(c.num_vertices());
    for (Id e = 0; e < c.num_edges(); ++e)
        if (s.edge[e]) uf.unite(c.edge(e).a, c.edge(e).b);
    std::map<std::size_t, std::size_t> slot;
    std::vector<CellSet> out;
    for (Id v = 0; v < c.num_vertices(); ++v) {
        if (!s.vertex[v]) continue;
        auto r = uf.find(v);
        auto [it, fresh] = slot.emplace(r, out.size());
        if (fresh) out.emplace_back();
        out[it->second].vertices.push_back(v);
    }
    for (Id e = 0; e < c.num_edges(); ++e)
        if (s.edge[e]) out[slot.at(uf.find(c.edge(e).a))].edges.push_back(e);
    for (Id t = 0; t < c.num_triangles(); ++t)
        if (s.triangle[t]) out[slot.at(uf.find(c.triangle(t).v[0]))].triangles.push_back(t);
    return out;
}

}  // namespace uw
