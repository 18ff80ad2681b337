#include "uwidth/metric.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>

namespace uw {

namespace {

using QItem = std::pair<double, Id>;
using MinQueue = std::priority_queue<QItem, std::vector<QItem>, std::greater<>>;

template <class Allow>
std::vector<double> run(const RefinedComplex& rc, const std::vector<Seed>& seeds, const std::vector<Id>* targets,
                        double cutoff, Allow allow, std::vector<Id>* parent = nullptr) {
    std::size_t n = rc.num_vertices();
    std::vector<double> dist(n, kInf);
    std::vector<char> done(n, 0);
    if (parent) parent->assign(n, kNone);
    MinQueue q;
    for (auto& s : seeds) {
        if (s.v >= n) throw Error(ErrorCode::SourceNotOnComplex, "seed vertex out of range");
        if (!allow(s.v)) continue;
        if (s.offset < dist[s.v]) {
            dist[s.v] = s.offset;
            q.push({s.offset, s.v});
        }
    }
    std::vector<char> want;
    std::size_t remaining = 0;
    if (targets) {
        want.assign(n, 0);
        for (Id t : *targets)
            if (!want[t]) {
                want[t] = 1;
                ++remaining;
            }
    }
    while (!q.empty()) {
        auto [d, v] = q.top();
        q.pop();
        if (done[v] || d > dist[v]) continue;
        if (d > cutoff) break;
        done[v] = 1;
        if (targets && want[v] && --remaining == 0) break;
        auto nb = rc.neighbors(v);
        auto wt = rc.weights(v);
        for (std::size_t k = 0; k < nb.size(); ++k) {
            Id u = nb[k];
            if (done[u] || !allow(u)) continue;
            double nd = d + wt[k];
            if (nd < dist[u] || (nd == dist[u] && parent && v < (*parent)[u])) {
                dist[u] = nd;
                if (parent) (*parent)[u] = v;
                q.push({nd, u});
            }
        }
    }
    return dist;
}

}  // namespace

std::vector<double> shortest_paths(const RefinedComplex& rc, const std::vector<Seed>& seeds,
                                   const std::vector<Id>* targets, double cutoff) {
    return run(rc, seeds, targets, cutoff, [](Id) { return true; });
}

std::vector<double> shortest_paths_within(const RefinedComplex& rc, const std::vector<Seed>& seeds,
                                          const std::vector<char>& allowed) {
    return run(rc, seeds, nullptr, kInf, [&](Id v) { return allowed[v] != 0; });
}

std::pair<Id, double> nearest_target(const RefinedComplex& rc, const std::vector<Seed>& seeds,
                                     const std::vector<char>& is_target, double cutoff) {
    std::size_t n = rc.num_vertices();
    std::vector<double> dist(n, kInf);
    std::vector<char> done(n, 0);
    MinQueue q;
    for (auto& s : seeds)
        if (s.offset < dist[s.v]) {
            dist[s.v] = s.offset;
            q.push({s.offset, s.v});
        }
    while (!q.empty()) {
        auto [d, v] = q.top();
        q.pop();
        if (done[v] || d > dist[v]) continue;
        if (d > cutoff) break;
        done[v] = 1;
        if (is_target[v]) return {v, d};
        auto nb = rc.neighbors(v);
        auto wt = rc.weights(v);
        for (std::size_t k = 0; k < nb.size(); ++k) {
            double nd = d + wt[k];
            if (nd < dist[nb[k]]) {
                dist[nb[k]] = nd;
                q.push({nd, nb[k]});
            }
        }
    }
    return {kNone, kInf};
}

std::vector<Id> shortest_path(const RefinedComplex& rc, Id from, Id to) {
    std::vector<Id> parent;
    std::vector<Id> tg{to};
    auto d = run(rc, {{from, 0.0}}, &tg, kInf, [](Id) { return true; }, &parent);
    if (d[to] == kInf) return {};
    std::vector<Id> path{to};
    while (path.back() != from) path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

DistanceField distance_field(const RefinedComplex& rc, const std::vector<PointOnComplex>& sources) {
    if (sources.empty()) throw Error(ErrorCode::SourceNotOnComplex, "no sources");
    std::vector<Seed> seeds;
    for (auto& p : sources) {
        auto s = rc.locate(p);
        seeds.insert(seeds.end(), s.begin(), s.end());
    }
    DistanceField f;
    f.source = sources;
    f.value = shortest_paths(rc, seeds);
    f.h = rc.h();
    return f;
}

Sample Sample::on_edge(const MetricComplex& m, Id e, double from_a) {
    auto& ed = m.edge(e);
    if (from_a <= 0) return at(ed.a);
    if (from_a >= ed.length) return at(ed.b);
    return {{{ed.a, from_a}, {ed.b, ed.length - from_a}}, e, from_a};
}

namespace {

double sample_dist(const std::vector<double>& row, const Sample& from, const Sample& to) {
    double d = kInf;
    for (auto& s : to.seeds) d = std::min(d, row[s.v] + s.offset);
    if (from.edge != kNone && from.edge == to.edge) d = std::min(d, std::abs(from.pos - to.pos));
    return d;
}

}  // namespace

DiameterResult sample_diameter(const RefinedComplex& rc, const std::vector<Sample>& pts, double rel_tol, double floor) {
    if (pts.empty()) throw Error(ErrorCode::EmptySubset, "diameter of an empty set");
    std::size_t n = pts.size();
    DiameterResult res;
    if (n == 1) return res;
    std::vector<Id> targets;
    for (auto& p : pts)
        for (auto& s : p.seeds) targets.push_back(s.v);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

    std::vector<double> upper(n, kInf), lower(n, 0);
    std::vector<char> computed(n, 0);
    std::vector<double> d(n);
    bool pick_high = true;
    const double tol = 1e-12;
    for (;;) {
        std::size_t pick = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (computed[i] || upper[i] <= res.value + tol) continue;
            if (pick == n) { pick = i; continue; }
            if (pick_high ? upper[i] > upper[pick] : lower[i] < lower[pick]) pick = i;
        }
        if (pick == n) break;
        if (rel_tol > 0 && res.searches > 0) {
            double top = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (!computed[i]) top = std::max(top, upper[i]);
            if (top <= (1 + rel_tol) * std::max(res.value, floor)) {
                res.lower = res.value;
                if (top > res.value) res.value = top, res.exact = false;
                return res;
            }
        }
        pick_high = !pick_high;
        auto row = shortest_paths(rc, pts[pick].seeds, &targets);
        ++res.searches;
        computed[pick] = 1;
        double ecc = 0;
        std::size_t far = pick;
        for (std::size_t j = 0; j < n; ++j) {
            d[j] = sample_dist(row, pts[pick], pts[j]);
            if (d[j] > ecc) {
                ecc = d[j];
                far = j;
            }
        }
        if (ecc > res.value) {
            res.value = ecc;
            res.i = std::min(pick, far);
            res.j = std::max(pick, far);
        }
        upper[pick] = lower[pick] = ecc;
        for (std::size_t j = 0; j < n; ++j) {
            upper[j] = std::min(upper[j], d[j] + ecc);
            lower[j] = std::max(lower[j], std::max(d[j], ecc - d[j]));
        }
    }
    res.lower = res.value;
    return res;
}

DiameterResult vertex_diameter(const RefinedComplex& rc, const std::vector<Id>& verts) {
    std::vector<Sample> s;
    s.reserve(verts.size());
    for (Id v : verts) s.push_back(Sample::at(v));
    return sample_diameter(rc, s);
}

double subset_diameter(const RefinedComplex& rc, const std::vector<PointOnComplex>& pts, DiameterMode mode) {
    if (pts.empty()) throw Error(ErrorCode::EmptySubset, "diameter of an empty set");
    std::vector<Sample> samples;
    for (auto& p : pts) {
        Sample s;
        s.seeds = rc.locate(p);
        if (s.seeds.size() == 2 && p.kind == PointOnComplex::Kind::Edge) {
            Id e = rc.mesh().find_edge(s.seeds[0].v, s.seeds[1].v);
            if (e != kNone) {
                s.edge = e;
                s.pos = rc.mesh().edge(e).a == s.seeds[0].v ? s.seeds[0].offset : s.seeds[1].offset;
            }
        }
        samples.push_back(s);
    }
    if (mode == DiameterMode::Extrinsic) return sample_diameter(rc, samples).value;

    // intrinsic: distances in the subgraph induced by the subset's vertices
    std::vector<char> allowed(rc.num_vertices(), 0);
    for (auto& s : samples)
        for (auto& sd : s.seeds) allowed[sd.v] = 1;
    double best = 0;
    for (auto& s : samples) {
        auto row = shortest_paths_within(rc, s.seeds, allowed);
        for (auto& t : samples) best = std::max(best, sample_dist(row, s, t));
    }
    return best;
}

}  // namespace uw
