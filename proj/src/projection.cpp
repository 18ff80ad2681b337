#include "uwidth/projection.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>

#include "uwidth/error.hpp"
#include "uwidth/grid_surface.hpp"
#include "uwidth/metric.hpp"

namespace uw {

namespace {

using Key = std::array<long, 3>;

// nodes are points of Z with coordinates in step units; m steps per grid unit
struct LineGraph {
    long m = 4;
    bool on_line(const Key& k) const {
        int whole = 0;
        for (long x : k) whole += x % m == 0;
        return whole >= 2;
    }
    // one shortest node path, or empty beyond `limit` steps
    std::vector<Key> path(const Key& a, const Key& b, int limit) const {
        if (a == b) return {a};
        std::map<Key, Key> prev;
        std::deque<std::pair<Key, int>> q{{a, 0}};
        prev[a] = a;
        while (!q.empty()) {
            auto [k, d] = q.front();
            q.pop_front();
            if (d >= limit) continue;
            for (int i = 0; i < 3; ++i)
                for (long s : {-1L, 1L}) {
                    Key n = k;
                    n[i] += s;
                    if (!on_line(n) || prev.count(n)) continue;
                    prev[n] = k;
                    if (n == b) {
                        std::vector<Key> out{b};
                        while (out.back() != a) out.push_back(prev[out.back()]);
                        return out;
                    }
                    q.push_back({n, d + 1});
                }
        }
        return {};
    }
};

}  // namespace

ProjectionCertificate projection_width_certificate(const CoverPatch& p, double radius, double bound, double step) {
    auto& c = p.complex;
    if (p.deck.lattice_vectors.size() != 3 || !c.has_coordinates())
        throw Error(ErrorCode::NotGridSurface, "patch has no lattice positions");
    for (Id v = 0; v < std::min<Id>(c.num_vertices(), 64); ++v) {
        Vec3 x = c.coord(v);
        if (std::abs(distance_to_grid(x) - distance_to_dual_grid(x)) > 0.25)
            throw Error(ErrorCode::NotGridSurface, "vertices are not equidistant from the two grids");
    }
    if (!(step > 0) || std::abs(1 / step - std::round(1 / step)) > 1e-9)
        throw Error(ErrorCode::BadParam, "node step must divide the grid unit");

    ProjectionCertificate out;
    out.step = step;
    out.bound = bound;
    out.radius = radius;
    LineGraph g;
    g.m = std::lround(1 / step);

    std::vector<Key> node(c.num_vertices());
    for (Id v = 0; v < c.num_vertices(); ++v) {
        Vec3 q = nearest_grid_point(c.coord(v));
        node[v] = {std::lround(q.x / step), std::lround(q.y / step), std::lround(q.z / step)};
    }
    RefinedComplex rc(c, c.longest_edge(), 1);
    out.mesh_slack = rc.mesh_slack();
    auto from_base = shortest_paths(rc, {{p.basepoint, 0.0}});

    std::set<Key> wanted;

    auto residue = [&](Key k) {
        for (long& x : k) x = ((x % g.m) + g.m) % g.m;
        return k;
    };
    std::set<Key> present, seen;
    std::map<Key, std::vector<Id>> fiber;
    std::map<std::pair<Key, Key>, std::vector<Key>> paths;
    bool collect = true;
    auto image = [&](std::initializer_list<Id> vs) {
        std::set<Key> img;
        for (Id a : vs)
            for (Id b : vs) {
                if (b < a) continue;
                auto key = std::minmax(node[a], node[b]);
                auto it = paths.find(key);
                if (it == paths.end()) it = paths.emplace(key, g.path(key.first, key.second, 4 * int(g.m))).first;
                if (it->second.empty()) {
                    out.bridged += collect;
                    img.insert(node[a]);
                    img.insert(node[b]);
                } else {
                    img.insert(it->second.begin(), it->second.end());
                }
            }
        if (collect) {
            bool near = false;
            for (Id v : vs) near |= from_base[v] <= radius;
            for (auto& k : img) {
                present.insert(residue(k));
                if (near) wanted.insert(k);
            }
            return;
        }
        for (auto& k : img)
            if (wanted.count(k)) fiber[k].insert(fiber[k].end(), vs.begin(), vs.end());
    };
    // first the nodes hit near the basepoint, then everything over them
    for (int pass = 0; pass < 2; ++pass, collect = false) {
        for (Id v = 0; v < c.num_vertices(); ++v) image({v});
        for (auto& e : c.edges()) image({e.a, e.b});
        for (auto& t : c.triangles()) image({t.v[0], t.v[1], t.v[2]});
    }

    for (auto& kv : fiber) seen.insert(residue(kv.first));
    out.classes = seen.size();
    out.all_classes = present.size();

    const double cutoff = bound + 2 * out.mesh_slack + 1;
    for (auto& [k, vs] : fiber) {
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        bool truncated = false;
        for (Id v : vs) truncated |= p.frontier[v] || from_base[v] > p.complete_radius;
        double diam = 0;
        for (Id v : vs) {
            auto d = shortest_paths(rc, {{v, 0.0}}, &vs, cutoff);
            for (Id w : vs) diam = std::max(diam, d[w]);
            if (!std::isfinite(diam)) break;
        }
        if (truncated || !std::isfinite(diam)) ++out.unresolved;
        ++out.nodes;
        out.fiber.push_back(diam);
        if (diam > out.max_fiber) {
            out.max_fiber = diam;
            out.worst_node = {k[0] * step, k[1] * step, k[2] * step};
        }
    }
    out.holds = out.classes == out.all_classes && out.unresolved == 0 && out.bridged == 0 && out.max_fiber <= bound;
    return out;
}

}  // namespace uw
