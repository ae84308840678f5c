#pragma once

#include <optional>
#include <string>
#include <vector>

#include "psimat/lazy_family.hpp"
#include "psimat/truncation.hpp"

namespace psimat {

/// A compatible choice of an infinite component of G - W_k for each level
/// k <= bound: the finite shadow of an end.
struct EndChain {
    const LazyFamily* family = nullptr;
    int bound = 0;
    std::vector<int> comps;  // comps[k-1] = component id at level k

    int at(int level) const { return comps[level - 1]; }
    std::string name() const;
};

/// All compatible component-choice chains up to `bound`.
std::vector<EndChain> end_approximations(const LazyFamily& f, int bound);

/// A fan of internally disjoint v-ray paths; periodic families carry a
/// shift rule that turns the finite fan into an infinite family.
struct FanWitness {
    Vertex from;
    std::vector<std::vector<Vertex>> paths;  // each from v to a ray vertex
    bool periodic = false;
    int shift_stride = 0;  // columns between consecutive fan members
    std::string note;
};

struct SeparatorWitness {
    std::vector<Vertex> separator;
    bool periodic = false;  // revalidated at sampled deeper levels
    std::string note;
};

struct DominationVerdict {
    enum Kind { kDominates, kSeparated, kUnknown } kind = kUnknown;
    int bound = 0;
    std::optional<FanWitness> fan;
    std::optional<SeparatorWitness> separator;
    std::string describe(const LazyFamily& f) const;
};

inline constexpr int kDefaultFanDemand = 5;

/// Lemma 4.3 as an algorithm: vertex-disjoint-path computations between v
/// and tails of the ray inside growing truncations.
DominationVerdict dominates(const LazyFamily& f, Vertex v, const RaySpec& ray, int k_bound,
                            int level_bound = 12);

struct EndClassification {
    EndChain chain;
    bool dominated = false;
    std::optional<Vertex> dominator;
    DominationVerdict verdict;
};

std::vector<EndClassification> classify_ends(const LazyFamily& f, int bound);

/// Separator for a whole ball against a ray tail (used by undominated
/// verdicts: one separator witnesses non-domination for every ball vertex).
std::optional<SeparatorWitness> ball_tail_separator(const LazyFamily& f, int ball_radius,
                                                    const RaySpec& ray, int level_bound);

// -- spanning trees ----------------------------------------------------------

struct SpanningTree {
    Multigraph tree;
    Vertex root;
    int diameter = 0;
};

/// Layered spanning tree of G[B_k(r)] with diameter <= 2k+1.
SpanningTree spanning_tree_bounded_diameter(const Multigraph& ball_graph, Vertex r);

// -- star-comb ---------------------------------------------------------------

struct StarCombWitness {
    enum Kind { kStar, kComb } kind;
    Vertex center;                           // star center (kStar)
    std::vector<Vertex> spine;               // comb spine path (kComb)
    std::vector<std::vector<Vertex>> legs;   // disjoint paths ending in U
    std::vector<Vertex> attachments;         // the U-vertices captured
};

/// Finite shadow of the Star-Comb Lemma: a comb with >= threshold teeth in u
/// or a subdivided star with >= threshold leaves in u. Throws if |u| < threshold.
StarCombWitness star_comb(const Multigraph& g, const std::vector<Vertex>& u, int threshold);

// -- dominated-ladder subdivision (Lemma 5.1 construction) -------------------

struct HSubdivisionWitness {
    Vertex apex;
    std::vector<std::vector<Vertex>> rungs;  // disjoint r1-r2 paths, order-respecting
    std::vector<std::vector<Vertex>> fans;   // disjoint apex paths to r1, avoiding r2
    bool attachments_coincide = false;       // fan and rung attach at equal r1-vertices
    std::string note;
};

HSubdivisionWitness build_H_subdivision(const LazyFamily& f, Vertex v, const RaySpec& r1,
                                        const RaySpec& r2, int n_rungs, int level_bound = 12);

// -- double rays through an end ----------------------------------------------

struct DoubleRayWitness {
    std::vector<Vertex> left_prefix;   // one tail, outward
    std::vector<Vertex> right_prefix;  // the other tail, outward
    bool periodic = false;
    std::string note;
};

std::optional<DoubleRayWitness> double_ray_through_end(const struct EdgeSetExpr& circuit,
                                                       const EndChain& end, int bound);

// Internal max-flow engine (unit vertex capacities), exposed for tests.
namespace detail {
struct FlowResult {
    int value = 0;
    std::vector<std::vector<Vertex>> paths;
    std::vector<Vertex> min_cut;  // vertex cut separating sources from sinks
};
FlowResult vertex_disjoint_paths(const Multigraph& g, const std::vector<Vertex>& sources,
                                 const std::vector<Vertex>& sinks, int demand,
                                 bool sources_uncapped);
}  // namespace detail

}  // namespace psimat
