#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "psimat/multigraph.hpp"

namespace psimat {

/// Infinitely many similar edges of a truncation that cannot be listed.
/// kParallel: anchor--K edges, one per family edge index >= first (the
/// dominated ladder's spokes into the contracted tail). kPendant: each tail
/// edge ends in its own finite one-vertex component (the star's far leaves).
struct TailClass {
    enum Kind { kParallel, kPendant };
    Kind kind;
    Vertex anchor;
    Vertex comp = 0;  // component vertex id for kParallel
    int first_col = 0;

    bool operator==(const TailClass& o) const {
        return kind == o.kind && anchor == o.anchor && comp == o.comp && first_col == o.first_col;
    }
};

/// An eventually periodic ray given by a vertex generator.
struct RaySpec {
    const class LazyFamily* family = nullptr;
    std::string kind;
    std::function<Vertex(int)> gen;
    Vertex at(int i) const { return gen(i); }
};

/// A countable graph presented by vertex scheme, adjacency oracle and a
/// canonical exhaustion by columns. Vertices and edges are encoded as
/// non-negative integers with a per-family scheme.
class LazyFamily {
public:
    virtual ~LazyFamily() = default;

    virtual std::string name() const = 0;
    virtual Vertex root() const = 0;
    virtual bool infinite_degree(Vertex) const { return false; }
    virtual std::vector<Vertex> infinite_degree_vertices() const { return {}; }

    /// Neighbors of v; `width` caps the enumeration at infinite-degree
    /// vertices and is ignored elsewhere.
    virtual std::vector<Vertex> neighbors(Vertex v, int width) const = 0;
    bool adjacent(Vertex u, Vertex v, int width_hint = 64) const;

    /// Canonical exhaustion W_n (columns 0..n-1), sorted.
    virtual std::vector<Vertex> exhaustion(int n) const = 0;
    virtual bool in_exhaustion(Vertex v, int n) const = 0;

    /// Components of G - W_n with infinitely many vertices are regular and
    /// indexed 0..num-1; finite pendant tails appear only via tail_classes.
    virtual int num_components_beyond(int n) const = 0;
    virtual int component_of(Vertex v, int n) const = 0;
    virtual Vertex component_representative(int comp, int n) const = 0;
    virtual std::string component_label(int comp, int n) const;
    virtual std::vector<TailClass> tail_classes(int) const { return {}; }
    /// Membership of a family edge in a tail class of this family.
    virtual bool in_tail(const TailClass&, long long) const { return false; }
    /// The class member at a given column (for folding explicit edges).
    virtual long long tail_edge_code(const TailClass&, int) const { return -1; }

    // -- columns & periodicity ------------------------------------------------
    virtual int column_of(Vertex v) const = 0;  // -1 for column-free vertices
    virtual int period_start() const { return 0; }
    virtual int period_len() const { return 1; }
    virtual Vertex shift_vertex(Vertex v, int cols) const = 0;

    // -- edges ----------------------------------------------------------------
    virtual std::vector<long long> edge_codes_at(Vertex v, int width) const = 0;
    virtual std::pair<Vertex, Vertex> edge_endpoints(long long code) const = 0;
    virtual int column_of_edge(long long code) const = 0;
    virtual long long shift_edge(long long code, int cols) const = 0;

    // -- names ----------------------------------------------------------------
    virtual std::string vertex_label(Vertex v) const = 0;
    virtual std::string edge_label(long long code) const = 0;
    virtual std::optional<long long> parse_edge(const std::string& name) const = 0;

    // -- rays -----------------------------------------------------------------
    virtual std::vector<std::string> ray_names() const { return {}; }
    virtual RaySpec ray(const std::string& kind) const;
    virtual RaySpec ray_into_component(int comp, int level) const = 0;

    /// Bound used by end classification; exponential-chain families cap lower.
    virtual int default_classify_bound(int requested) const { return requested; }
};

const LazyFamily& family_by_name(const std::string& name);
std::vector<std::string> family_names();

/// Checks adjacency of consecutive vertices and pairwise distinctness of the
/// first `bound` vertices. Throws on violation.
void validate_ray(const RaySpec& ray, int bound);

}  // namespace psimat
