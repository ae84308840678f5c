#pragma once

#include <map>
#include <vector>

#include "psimat/multigraph.hpp"

namespace psimat {

/// Guard for the exponential enumeration kernels. They are oracles for
/// property tests, not production algorithms.
inline constexpr int kDefaultEnumerationEdgeLimit = 16;

/// All bonds (minimal nonempty cuts) of g.
/// OpenMP kernel: sweeps all vertex bipartitions and keeps a cut iff the
/// cut-touching components of each side number exactly one.
std::vector<Cut> bonds(const Multigraph& g, int edge_limit = kDefaultEnumerationEdgeLimit);

/// Edge sets of simple cycles: loops are 1-cycles, parallel pairs 2-cycles.
/// Output-sensitive backtracking over vertex paths.
std::vector<EdgeSet> cycle_edge_sets(const Multigraph& g,
                                     int edge_limit = kDefaultEnumerationEdgeLimit);

namespace reference {
/// Independent definitional routes, kept for testing the defaults against.
/// bonds: enumerate all induced cuts, keep the subset-minimal nonempty ones.
std::vector<Cut> bonds(const Multigraph& g, int edge_limit = kDefaultEnumerationEdgeLimit);
/// cycles: OpenMP sweep over edge subsets, keeping nonempty sets with all
/// degrees 0 or 2 and connected support.
std::vector<EdgeSet> cycle_edge_sets(const Multigraph& g,
                                     int edge_limit = kDefaultEnumerationEdgeLimit);
}  // namespace reference

// -- contraction G+[W] -------------------------------------------------------

/// Result of contracting everything outside a retained vertex set.
/// Component vertices get ids -1, -2, ... in the order of their smallest
/// original member; their branch set is recorded as a label and in
/// `branch_sets`.
struct Contraction {
    Multigraph graph;
    std::vector<EdgeId> edge_origin;        // new edge id -> edge id in the input
    std::map<Vertex, Vertex> vertex_image;  // input vertex -> retained or component vertex
    std::map<Vertex, std::vector<Vertex>> branch_sets;  // component vertex -> members
};

/// G+[W]: contract all edges not incident with a vertex of w.
Contraction contract_to(const Multigraph& g, const std::vector<Vertex>& w);

/// Functorial projection G+[W] -> G+[U] for U a subset of W. The input must
/// carry its branch sets (i.e. be a Contraction-produced graph) so labels
/// merge correctly; plain graphs work too (empty branch sets).
Contraction project(const Contraction& g_plus_w, const std::vector<Vertex>& u);

}  // namespace psimat
