#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "uwidth/error.hpp"

namespace uw {

using Id = std::uint32_t;
inline constexpr Id kNone = 0xffffffffu;

struct Vec3 {
    double x = 0, y = 0, z = 0;
};
inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
double norm(Vec3 a);

struct Edge {
    Id a = kNone, b = kNone;
    double length = 0;
    Id other(Id v) const { return v == a ? b : a; }
};

// e[i] joins v[i] and v[(i+1)%3].
struct Triangle {
    std::array<Id, 3> v{};
    std::array<Id, 3> e{};
};

// Input-side description; ids are arbitrary integers, canonicalised on build.
struct ComplexDescription {
    struct V {
        long long id;
        std::optional<Vec3> pos;
    };
    struct E {
        long long id, a, b;
        std::optional<double> length;
    };
    struct T {
        long long id;
        std::array<long long, 3> e;
    };
    struct Tet {
        long long id;
        std::array<long long, 4> v;
    };
    std::vector<V> vertices;
    std::vector<E> edges;
    std::vector<T> triangles;
    std::vector<Tet> tets;
    std::vector<long long> boundary;  // edge ids
};

struct BuildOptions {
    bool allow_degenerate = false;
    bool surface = false;         // interior edges may carry at most two triangles
    bool infer_boundary = true;   // surface mode without marks: edges on one triangle
    double tolerance = 1e-12;     // relative, for the triangle inequality
};

class MetricComplex {
public:
    std::size_t num_vertices() const { return num_vertices_; }
    std::size_t num_edges() const { return edges_.size(); }
    std::size_t num_triangles() const { return triangles_.size(); }
    std::size_t num_tets() const { return tets_.size(); }
    int dim() const;

    const Edge& edge(Id e) const { return edges_[e]; }
    const Triangle& triangle(Id t) const { return triangles_[t]; }
    const std::array<Id, 4>& tet(Id t) const { return tets_[t]; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Triangle>& triangles() const { return triangles_; }

    std::span<const Id> incident_edges(Id v) const {
        return {vert_edges_.data() + vert_edge_off_[v], vert_edges_.data() + vert_edge_off_[v + 1]};
    }
    std::span<const Id> edge_triangles(Id e) const {
        return {edge_tris_.data() + edge_tri_off_[e], edge_tris_.data() + edge_tri_off_[e + 1]};
    }
    std::span<const Id> vertex_triangles(Id v) const {
        return {vert_tris_.data() + vert_tri_off_[v], vert_tris_.data() + vert_tri_off_[v + 1]};
    }
    Id find_edge(Id a, Id b) const;
    Id find_triangle(Id a, Id b, Id c) const;

    bool is_boundary_edge(Id e) const { return boundary_edge_[e]; }
    bool is_boundary_vertex(Id v) const { return boundary_vertex_[v]; }
    bool has_boundary() const;
    bool surface_mode() const { return surface_; }

    bool has_coordinates() const { return !coords_.empty(); }
    const Vec3& coord(Id v) const { return coords_[v]; }

    double shortest_edge() const;
    double longest_edge() const;
    long long euler_characteristic() const;
    // Input labels before canonicalisation (used in error messages).
    long long vertex_label(Id v) const { return vertex_labels_[v]; }

private:
    friend MetricComplex build_complex(const ComplexDescription&, const BuildOptions&);
    void index();

    std::size_t num_vertices_ = 0;
    std::vector<Vec3> coords_;
    std::vector<long long> vertex_labels_;
    std::vector<Edge> edges_;
    std::vector<Triangle> triangles_;
    std::vector<std::array<Id, 4>> tets_;
    std::vector<char> boundary_edge_, boundary_vertex_;
    bool surface_ = false;

    std::vector<Id> vert_edges_, vert_edge_off_;
    std::vector<Id> edge_tris_, edge_tri_off_;
    std::vector<Id> vert_tris_, vert_tri_off_;
    std::unordered_map<std::uint64_t, Id> edge_lookup_;
};

MetricComplex build_complex(const ComplexDescription& spec, const BuildOptions& opt = {});

// Canonical description (ids 0..n-1) of an existing complex.
ComplexDescription describe(const MetricComplex& c);

ComplexDescription parse_complex(std::istream& in);
void write_complex(std::ostream& out, const MetricComplex& c);
MetricComplex load_complex(const std::string& path, const BuildOptions& opt = {});
void save_complex(const std::string& path, const MetricComplex& c);

// Incremental construction with ids in insertion order; edges deduplicated by endpoints.
class ComplexBuilder {
public:
    Id add_vertex();
    Id add_vertex(Vec3 p);
    Id edge(Id a, Id b, double length);
    Id edge(Id a, Id b);  // length from coordinates
    Id triangle(Id a, Id b, Id c);  // edges must exist or coordinates must be present
    void tet(Id a, Id b, Id c, Id d);
    void mark_boundary(Id e) { boundary_.push_back(e); }
    std::size_t num_vertices() const { return nv_; }
    MetricComplex build(const BuildOptions& opt = {}) const;
    ComplexDescription description() const;

private:
    std::size_t nv_ = 0;
    std::vector<std::optional<Vec3>> pos_;
    std::vector<Edge> edges_;
    std::vector<std::array<Id, 3>> tris_;
    std::vector<std::array<Id, 4>> tets_;
    std::vector<Id> boundary_;
    std::unordered_map<std::uint64_t, Id> lookup_;
};

}  // namespace uw
