#pragma once

#include <optional>
#include <string>
#include <vector>

#include "psimat/edge_expr.hpp"
#include "psimat/ends.hpp"

namespace psimat {

/// A verdict over truncation levels 1..bound. `periodic` means the positive
/// verdict re-evaluated successfully at sampled levels above the bound.
struct PsiVerdict {
    bool value = false;
    int bound = 0;
    bool periodic = false;
    std::string certificate;
};

inline constexpr int kDefaultLevelBound = 12;

/// Which end approximations are admitted (the set Psi).
struct PsiSpec {
    enum Kind { kAll, kNone, kList } kind = kAll;
    std::vector<int> comps_at_bound;  // for kList: component ids at the bound level

    static PsiSpec all() { return {kAll, {}}; }
    static PsiSpec none() { return {kNone, {}}; }
    bool admits(const EndChain& e) const;
    std::string to_string() const;
};

/// o meets every finitely coverable cut evenly: even degree at every vertex
/// of every truncation (cuts of G+[W_n] are generated by vertex stars).
PsiVerdict meets_all_fc_cuts_evenly(const EdgeSetExpr& o, int bound = kDefaultLevelBound);

/// No finitely coverable cut avoiding o separates two of its edges.
PsiVerdict geometrically_connected(const EdgeSetExpr& o, int bound = kDefaultLevelBound);

/// The end has edges of F in its component at every level.
PsiVerdict end_in_closure(const EdgeSetExpr& f, const EndChain& e, int bound = kDefaultLevelBound);

/// Membership in C_Psi: evenness, geometric connectivity, and every end in
/// the closure of o admitted by psi.
PsiVerdict in_C_psi(const EdgeSetExpr& o, const PsiSpec& psi, int bound = kDefaultLevelBound);

/// Membership in D_Psi: d is a cut (rule rechecked) with no psi-end in the
/// closure of its edge set.
PsiVerdict in_D_psi(const CutExpr& d, const PsiSpec& psi, int bound = kDefaultLevelBound);

/// Only finitely many components of G - W_n meet V(o), at every level.
PsiVerdict finite_components_condition(const EdgeSetExpr& o, int bound = kDefaultLevelBound);

/// Equivalence classes of o's edges under "no finitely coverable cut with
/// the two edges in different components of G-cut misses o".
struct GeoClass {
    EdgeSetExpr edges;
    PsiVerdict even;
    PsiVerdict connected;
};
std::vector<GeoClass> geometric_components(const EdgeSetExpr& o, int bound = kDefaultLevelBound);

/// Finite-graph specialization of the sparse-function characterization:
/// closed walk traversing each o-edge once  <=>  even on all cuts and
/// geometrically connected. Both sides computed independently.
struct SparseEquivalence {
    bool walk_exists = false;
    std::vector<EdgeId> walk;  // edge sequence of the closed walk when it exists
    bool cut_route = false;    // even on all cuts and geometrically connected
    bool agree = false;
};
SparseEquivalence finite_sparse_equivalence(const EdgeSet& o, const Multigraph& g);

/// Lemma 3.4 shadow: an end approximation in the closure of both F and b.
std::optional<EndChain> common_end_in_closures(const EdgeSetExpr& f, const EdgeSetExpr& b,
                                               int bound = kDefaultLevelBound);

}  // namespace psimat
