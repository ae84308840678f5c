#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "psimat/edge_set.hpp"

namespace psimat {

using Vertex = int;
using EdgeId = int;

/// Finite labeled multigraph. Parallel edges and loops are allowed.
/// Edge ids are dense 0..m-1; vertex ids are arbitrary ints (contracted
/// component vertices conventionally get negative ids).
class Multigraph {
public:
    Multigraph() = default;

    Vertex add_vertex(Vertex id, std::string label = {});
    /// Convenience: vertices 0..n-1.
    static Multigraph with_vertices(int n);

    EdgeId add_edge(Vertex u, Vertex v);

    bool has_vertex(Vertex v) const { return index_.count(v) != 0; }
    int num_vertices() const { return int(verts_.size()); }
    int num_edges() const { return int(edges_.size()); }

    const std::vector<Vertex>& vertices() const { return verts_; }
    std::pair<Vertex, Vertex> endpoints(EdgeId e) const { return edges_[e]; }
    bool is_loop(EdgeId e) const { return edges_[e].first == edges_[e].second; }

    const std::string& label(Vertex v) const;
    void set_label(Vertex v, std::string label);

    /// Edges incident with v. Loops appear once.
    std::vector<EdgeId> edges_at(Vertex v) const;
    /// Non-loop edges at v, as a set; this is the star cut at v.
    EdgeSet star(Vertex v) const;
    /// Loop-aware degree: a loop at v contributes 2.
    int degree(Vertex v, const EdgeSet& within) const;

    EdgeSet all_edges() const;
    EdgeSet empty_set() const { return EdgeSet(num_edges()); }

    std::string edge_name(EdgeId e) const;
    std::string vertex_name(Vertex v) const;
    std::string describe(const EdgeSet& s) const;

    bool operator==(const Multigraph& o) const {
        return verts_ == o.verts_ && edges_ == o.edges_;
    }

private:
    std::vector<Vertex> verts_;
    std::map<Vertex, int> index_;  // vertex id -> position in verts_
    std::vector<std::pair<Vertex, Vertex>> edges_;
    std::map<Vertex, std::string> labels_;
    std::vector<std::vector<EdgeId>> incidence_;
};

/// A separation is just an edge set; its boundary is derived.
struct Separation {
    EdgeSet edges;
};

/// A cut: the crossing edges of a vertex bipartition. `side` lists the
/// vertices of one class; loops never cross.
struct Cut {
    EdgeSet edges;
    std::vector<Vertex> side;
};

// -- basic operations -------------------------------------------------------

/// Partition of the vertex set into connected components.
std::vector<std::vector<Vertex>> components(const Multigraph& g);

/// Components restricted to a sub-edge-set (vertices spanned by `within`).
int component_count_of_support(const Multigraph& g, const EdgeSet& within);

bool is_connected(const Multigraph& g);

/// All crossing edges of the bipartition (side, V \ side).
Cut induced_cut(const Multigraph& g, const std::vector<Vertex>& side);

/// Vertices incident with an edge of x and an edge outside x.
std::vector<Vertex> boundary(const Multigraph& g, const Separation& x);

// -- text / DOT formats ------------------------------------------------------
// Line format:  v <id> [label]      e <id> <u> <v>
std::string to_text(const Multigraph& g);
Multigraph from_text(const std::string& text);
std::string to_dot(const Multigraph& g);

}  // namespace psimat
