#pragma once

#include <map>
#include <vector>

#include "psimat/lazy_family.hpp"
#include "psimat/multigraph.hpp"

namespace psimat {

/// A finite view of a lazy family: a truncation G+[W_n], a ball, or an
/// induced prefix. Vertices carry family codes; contracted component
/// vertices are -1-comp. Edges keep their family codes for identity across
/// levels; infinite edge bundles are recorded as tail classes.
struct Slice {
    const LazyFamily* family = nullptr;
    int width = 0;
    bool contracted = false;
    Multigraph graph;
    std::vector<long long> edge_code;  // local edge id -> family code
    std::map<long long, int> local_of;
    std::vector<TailClass> tails;

    int local(long long code) const {
        auto it = local_of.find(code);
        return it == local_of.end() ? -1 : it->second;
    }
    EdgeSet restrict_codes(const std::vector<long long>& codes) const;
};

/// G+[W_n] for the family's canonical exhaustion.
Slice truncate(const LazyFamily& f, int n);

/// Induced subgraph on W_n (no contraction, no component vertices).
Slice prefix_slice(const LazyFamily& f, int n);

/// Induced subgraph on the ball B_k(r). `width` caps neighbor enumeration
/// at infinite-degree vertices; required when such a vertex is in the ball.
Slice ball_slice(const LazyFamily& f, Vertex r, int k, int width = -1);
Multigraph ball(const LazyFamily& f, Vertex r, int k, int width = -1);

struct SliceProjection {
    Slice slice;
    std::map<Vertex, Vertex> vertex_map;  // vertices of the source slice -> target
};

/// The inverse-system map: contract a level-m truncation down to level n,
/// folding tail bundles. The result compares equal to truncate(f, n).
SliceProjection project_truncation(const Slice& tm, int n);

/// Structural equality with canonical renaming of component vertices.
bool slices_equal(const Slice& a, const Slice& b);

}  // namespace psimat
