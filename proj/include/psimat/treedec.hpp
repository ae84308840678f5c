#pragma once

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "psimat/lazy_family.hpp"
#include "psimat/multigraph.hpp"
#include "psimat/truncation.hpp"

namespace psimat {

/// Rooted tree-decomposition of a finite multigraph. Node 0 is the root;
/// parents precede children. Each edge of the graph lies in exactly one part.
struct TreeDecomposition {
    struct Node {
        int parent = -1;
        std::vector<Vertex> vertices;
        std::vector<EdgeId> edges;
    };
    std::vector<Node> nodes;

    std::vector<Vertex> adhesion(int t, int u) const;  // V(P_t) ∩ V(P_u)
    std::vector<int> children(int t) const;
};

struct TreeDecReport {
    bool pass = true;
    std::string violation;  // first failure, with a witness
    bool coverage = true, edge_unique = true, subtree = true, adhesion_finite = true,
         upset_connected = true, consecutive_disjoint = true;
};

/// Checks the decomposition invariants: coverage, edge uniqueness, the
/// vertex-subtree condition, finite adhesion (<= cap when given), up-set
/// connectivity per tree edge, and disjointness of consecutive adhesions.
TreeDecReport verify_treedec(const Multigraph& g, const TreeDecomposition& td,
                             std::optional<int> adhesion_cap = std::nullopt);

/// The torso of one part: the part plus a clique of virtual edges on each
/// adhesion with a neighbor.
struct Torso {
    int node = 0;
    Multigraph graph;
    // edge k of `graph`: real id (>= 0) or -1 for virtual
    std::vector<EdgeId> real_origin;
    // for virtual edges: (neighbor node, vertex pair)
    std::map<int, std::tuple<int, Vertex, Vertex>> virtual_info;
};
Torso torso(const Multigraph& g, const TreeDecomposition& td, int node);

/// A registered decomposition of a built-in family, materializable on any
/// prefix of the canonical exhaustion.
struct CanonicalTreeDecomposition {
    const LazyFamily* family = nullptr;
    int adhesion_cap = 0;
    /// Restriction to the induced prefix graph at the given width.
    std::function<TreeDecomposition(const Slice& prefix)> materialize;
    /// Number of tree-end approximation chains at a given bound.
    std::function<int(int bound)> tree_end_chains;
    bool rayless = false;
    std::string shape;  // e.g. "ray of column parts"
};

/// Hand-registered decompositions verified against the stated invariants;
/// their tree ends match the family's undominated ends.
CanonicalTreeDecomposition canonical_treedec(const LazyFamily& f);

/// C4 and its two-triangle decomposition (parts abc / acd, adhesion {a,c}).
std::pair<Multigraph, TreeDecomposition> c4_two_part();

/// Path decomposition of the ladder prefix by columns.
TreeDecomposition ladder_prefix_decomposition(const Slice& prefix);

/// Random (graph, valid tree-decomposition) pair built by gluing random
/// connected parts along fresh adhesions: every instance satisfies the full
/// invariant set by construction (and is re-verified).
std::pair<Multigraph, TreeDecomposition> random_decomposition(std::mt19937_64& rng,
                                                              int max_vertices = 6,
                                                              int max_nodes = 4);

}  // namespace psimat
