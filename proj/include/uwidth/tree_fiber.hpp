#pragma once

#include <array>
#include <utility>
#include <vector>

#include "uwidth/complex.hpp"

namespace uw {

// A tree on vertices 0..n-1.
struct Tree {
    std::size_t num_vertices = 0;
    std::vector<std::pair<Id, Id>> edges;
};

// Map from an n-gon to a tree: edge i of the polygon goes to a walk in the tree
// (consecutive entries equal or adjacent), and walk i ends where walk i+1 starts.
struct PolygonTreeMap {
    Tree tree;
    std::vector<std::vector<Id>> edge_image;
};

// A tree vertex hit by three cyclically consecutive polygon edges; position[k] indexes
// into edge_image[edge[k]].
struct PolygonFiber {
    Id point = kNone;
    std::array<std::size_t, 3> edge{};
    std::array<std::size_t, 3> position{};
};

PolygonFiber polygon_tree_fiber(const PolygonTreeMap& m);

// Exhaustive scan over tree vertices; nullopt-like result has point == kNone.
PolygonFiber brute_force_fiber(const PolygonTreeMap& m);

// Rooted tree helper: depth, parent, median of three vertices.
class RootedTree {
public:
    explicit RootedTree(const Tree& t, Id root = 0);
    Id lca(Id a, Id b) const;
    Id median(Id a, Id b, Id c) const;
    bool adjacent(Id a, Id b) const;
    int depth(Id v) const { return depth_[v]; }

private:
    std::vector<Id> parent_;
    std::vector<int> depth_;
};

}  // namespace uw
