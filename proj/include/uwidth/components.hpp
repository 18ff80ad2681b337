#pragma once

#include <numeric>
#include <vector>

#include "uwidth/complex.hpp"

namespace uw {

class UnionFind {
public:
    explicit UnionFind(std::size_t n = 0) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t(0)); }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    // the smaller root wins, which keeps labels deterministic
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b);
        parent_[b] = a;
        return true;
    }
    std::size_t size() const { return parent_.size(); }

private:
    std::vector<std::size_t> parent_;
};

// A union of closed cells, given by membership flags.  Closure is implied:
// an edge brings its endpoints, a triangle its edges and vertices.
struct Subcomplex {
    std::vector<char> vertex, edge, triangle;
    static Subcomplex empty(const MetricComplex& c);
    static Subcomplex from_edges(const MetricComplex& c, const std::vector<Id>& edges);
    Subcomplex closed(const MetricComplex& c) const;
};

struct CellSet {
    std::vector<Id> vertices, edges, triangles;
};

// Path components of a closed subcomplex, ordered by least vertex id.
std::vector<CellSet> components(const MetricComplex& c, const Subcomplex& s);

}  // namespace uw
