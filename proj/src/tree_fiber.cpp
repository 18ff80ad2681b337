#include "uwidth/tree_fiber.hpp"

#include <algorithm>
#include <queue>
#include <string>

namespace uw {

RootedTree::RootedTree(const Tree& t, Id root) {
    std::size_t n = t.num_vertices;
    if (n == 0 || t.edges.size() + 1 != n) throw Error(ErrorCode::InvalidPolygon, "target is not a tree");
    std::vector<std::vector<Id>> adj(n);
    for (auto [a, b] : t.edges) {
        if (a >= n || b >= n || a == b) throw Error(ErrorCode::InvalidPolygon, "bad tree edge");
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    parent_.assign(n, kNone);
    depth_.assign(n, -1);
    std::queue<Id> q;
    q.push(root);
    depth_[root] = 0;
    while (!q.empty()) {
        Id v = q.front();
        q.pop();
        for (Id u : adj[v])
            if (depth_[u] < 0) {
                depth_[u] = depth_[v] + 1;
                parent_[u] = v;
                q.push(u);
            }
    }
    for (int d : depth_)
        if (d < 0) throw Error(ErrorCode::InvalidPolygon, "target is not connected");
}

Id RootedTree::lca(Id a, Id b) const {
    while (depth_[a] > depth_[b]) a = parent_[a];
    while (depth_[b] > depth_[a]) b = parent_[b];
    while (a != b) {
        a = parent_[a];
        b = parent_[b];
    }
    return a;
}

Id RootedTree::median(Id a, Id b, Id c) const {
    Id x = lca(a, b), y = lca(b, c), z = lca(a, c);
    Id m = x;
    if (depth_[y] > depth_[m]) m = y;
    if (depth_[z] > depth_[m]) m = z;
    return m;
}

bool RootedTree::adjacent(Id a, Id b) const { return parent_[a] == b || parent_[b] == a; }

namespace {

struct Walk {
    std::vector<Id> pts;
    // origin of each entry: (original edge, position)
    std::vector<std::pair<std::size_t, std::size_t>> src;
};

std::size_t first_at(const std::vector<Id>& w, std::size_t from, std::size_t to, Id t) {
    for (std::size_t i = from; i <= to; ++i)
        if (w[i] == t) return i;
    throw Error(ErrorCode::InvalidPolygon, "walk misses a point of a tree geodesic");
}

void validate(const PolygonTreeMap& m, const RootedTree& rt) {
    std::size_t n = m.edge_image.size();
    if (n < 3) throw Error(ErrorCode::InvalidPolygon, "polygon needs at least 3 edges");
    for (std::size_t i = 0; i < n; ++i) {
        auto& w = m.edge_image[i];
        if (w.empty()) throw Error(ErrorCode::InvalidPolygon, "empty edge image " + std::to_string(i));
        for (Id v : w)
            if (v >= m.tree.num_vertices) throw Error(ErrorCode::InvalidPolygon, "image vertex out of range");
        for (std::size_t k = 0; k + 1 < w.size(); ++k)
            if (w[k] != w[k + 1] && !rt.adjacent(w[k], w[k + 1]))
                throw Error(ErrorCode::InvalidPolygon, "edge image " + std::to_string(i) + " jumps");
        if (w.back() != m.edge_image[(i + 1) % n].front())
            throw Error(ErrorCode::InvalidPolygon, "edge images " + std::to_string(i) + " and next do not meet");
    }
}

}  // namespace

PolygonFiber polygon_tree_fiber(const PolygonTreeMap& m) {
    RootedTree rt(m.tree);
    validate(m, rt);
    std::size_t n = m.edge_image.size();

    // merge the last two edges until a triangle remains, remembering each stage
    std::vector<std::vector<Walk>> stages;
    std::vector<Walk> cur(n);
    for (std::size_t i = 0; i < n; ++i) {
        cur[i].pts = m.edge_image[i];
        for (std::size_t k = 0; k < cur[i].pts.size(); ++k) cur[i].src.push_back({i, k});
    }
    stages.push_back(cur);
    while (cur.size() > 3) {
        Walk a = cur[cur.size() - 2], b = cur.back();
        a.pts.insert(a.pts.end(), b.pts.begin() + 1, b.pts.end());
        a.src.insert(a.src.end(), b.src.begin() + 1, b.src.end());
        cur.pop_back();
        cur.back() = std::move(a);
        stages.push_back(cur);
    }

    // base case: median of the three corners
    PolygonFiber f;
    {
        auto& w = stages.back();
        Id t = rt.median(w[0].pts.front(), w[1].pts.front(), w[2].pts.front());
        f.point = t;
        for (std::size_t k = 0; k < 3; ++k) {
            f.edge[k] = k;
            f.position[k] = first_at(w[k].pts, 0, w[k].pts.size() - 1, t);
        }
    }
    // unwind: express the fiber on the previous stage
    for (std::size_t s = stages.size() - 1; s-- > 0;) {
        auto& prev = stages[s];
        std::size_t np = prev.size(), merged = np - 2;  // merged edge index in stage s+1
        // locate witnesses as (edge, position) in prev
        std::array<std::size_t, 3> e{}, p{};
        for (int k = 0; k < 3; ++k) {
            if (f.edge[k] != merged) {
                e[k] = f.edge[k];
                p[k] = f.position[k];
                continue;
            }
            std::size_t la = prev[merged].pts.size();
            if (f.position[k] < la) {
                e[k] = merged;
                p[k] = f.position[k];
            } else {
                e[k] = merged + 1;
                p[k] = f.position[k] - (la - 1);
            }
        }
        if (e[1] == (e[0] + 1) % np && e[2] == (e[1] + 1) % np) {
            f.edge = e;
            f.position = p;
            continue;
        }
        // split case: two witnesses are two apart; close the triangle through the gap edge
        std::size_t lo = 0, hi = 0;
        bool found = false;
        for (int a = 0; a < 3 && !found; ++a)
            for (int b = 0; b < 3 && !found; ++b)
                if (a != b && e[b] == (e[a] + 2) % np) {
                    lo = a;
                    hi = b;
                    found = true;
                }
        if (!found) throw Error(ErrorCode::InvalidPolygon, "internal: unexpected witness pattern");
        std::size_t i0 = e[lo], i1 = (i0 + 1) % np, i2 = (i0 + 2) % np;
        auto& w0 = prev[i0].pts;
        auto& w1 = prev[i1].pts;
        auto& w2 = prev[i2].pts;
        Id t = rt.median(f.point, w1.front(), w1.back());
        f.point = t;
        f.edge = {i0, i1, i2};
        f.position = {first_at(w0, p[lo], w0.size() - 1, t), first_at(w1, 0, w1.size() - 1, t),
                      first_at(w2, 0, p[hi], t)};
    }
    // report in terms of the original edges
    auto& orig = stages.front();
    for (int k = 0; k < 3; ++k) {
        auto [oe, op] = orig[f.edge[k]].src[f.position[k]];
        f.edge[k] = oe;
        f.position[k] = op;
    }
    return f;
}

PolygonFiber brute_force_fiber(const PolygonTreeMap& m) {
    std::size_t n = m.edge_image.size();
    for (Id t = 0; t < m.tree.num_vertices; ++t)
        for (std::size_t i = 0; i < n; ++i) {
            PolygonFiber f;
            f.point = t;
            bool ok = true;
            for (std::size_t k = 0; k < 3 && ok; ++k) {
                auto& w = m.edge_image[(i + k) % n];
                auto it = std::find(w.begin(), w.end(), t);
                if (it == w.end()) ok = false;
                else {
                    f.edge[k] = (i + k) % n;
                    f.position[k] = std::size_t(it - w.begin());
                }
            }
            if (ok) return f;
        }
    return {};
}

}  // namespace uw
