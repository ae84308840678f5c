#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "psimat/matroid.hpp"
#include "psimat/treedec.hpp"

namespace psimat {

/// A binary presentation: two orthogonal set families over a local ground
/// set satisfying (O2). Local edge ids map to global ids: real graph edges
/// (>= 0) or dummy ids shared across one tree edge (< 0).
struct BinaryPresentation {
    std::vector<long long> global_ids;  // local -> global
    std::vector<EdgeSet> vectors;       // the family V
    std::vector<EdgeSet> covectors;     // the family W

    int ground() const { return int(global_ids.size()); }
    int local_of(long long gid) const;
};

/// V = finite sets meeting each cocircuit evenly; W = sets meeting each
/// circuit evenly. Throws when the input is not tame and binary.
BinaryPresentation canonical_presentation(const CircuitSystem& m,
                                          const std::vector<long long>& global_ids,
                                          size_t enumeration_cap = 1 << 16);

struct TreeOfPresentations {
    struct Node {
        int parent = -1;
        BinaryPresentation pres;
    };
    std::vector<Node> nodes;
    int num_real = 0;  // ground set: real edge ids 0..num_real-1
    std::map<std::pair<int, int>, std::vector<long long>> edge_dummies;  // tree edge -> dummies

    std::vector<int> children(int t) const;
    std::vector<int> neighbors(int t) const;
    /// Dummy ids shared by t and u (empty unless tu is a tree edge).
    const std::vector<long long>& dummies(int t, int u) const;
};

/// Node presentations are the canonical presentations of the torso
/// finite-cycle matroids; the two copies of each virtual edge across a tree
/// edge are identified as one dummy id.
TreeOfPresentations build_tree_of_presentations(const Multigraph& g,
                                                const TreeDecomposition& td);

/// A compatible assignment of local vectors (or covectors) along a subtree.
struct PreVector {
    bool covector = false;
    std::vector<int> subtree;            // node ids, sorted
    std::map<int, EdgeSet> assignment;   // node -> local set in that node's family
};

/// Restrictions agree and are nonzero across internal tree edges of S and
/// vanish toward outside neighbors; assignments are nonzero members of the
/// node families.
bool check_prevector(const TreeOfPresentations& t, const PreVector& p, std::string* why = nullptr);

/// Union of the assignments restricted to the real ground set (dummy edges
/// cancel pairwise by compatibility).
EdgeSet underlying(const TreeOfPresentations& t, const PreVector& p);

/// All pre-vectors with |S| <= max_subtree (all-zero assignments excluded).
std::vector<PreVector> enumerate_prevectors(const TreeOfPresentations& t, int max_subtree,
                                            bool covector = false, size_t cap = 200000);

/// GF(2) span of all pre-vector underlyings (exact for finite trees, where
/// every subtree qualifies for every Psi).
std::vector<EdgeSet> vector_space(const TreeOfPresentations& t, bool covector = false,
                                  size_t cap = 1 << 18);

/// Symmetric differences of at most max_terms underlyings.
std::vector<EdgeSet> bounded_psi_vectors(const TreeOfPresentations& t, int max_terms,
                                         int max_subtree, bool covector = false);

/// Lemma 4.5(1): cycle -> pre-vector via per-part restrictions, the parity
/// sets Z(st) and lexicographically smallest matchings on them.
/// `matching_reversed` flips the pairing policy (the conclusion must not
/// depend on it). Throws when some |Z(st)| is odd.
PreVector cycle_to_prevector(const TreeOfPresentations& t, const Multigraph& g,
                             const TreeDecomposition& td, const EdgeSet& cycle,
                             bool matching_reversed = false);

/// Lemma 4.5(2): bond with connected sides -> pre-covector via induced torso
/// bipartitions.
PreVector bond_to_precovector(const TreeOfPresentations& t, const Multigraph& g,
                              const TreeDecomposition& td, const EdgeSet& bond,
                              const std::vector<Vertex>& side_a);

struct OrthogonalityReport {
    bool pass = true;
    long long pairs = 0;
    std::string violation;
};
OrthogonalityReport orthogonality_check(const std::vector<EdgeSet>& vectors,
                                        const std::vector<EdgeSet>& covectors);

/// Circuits = minimal nonempty vector-space members, cocircuits = minimal
/// nonempty covector-space members (exact on finite trees; equals the
/// finite-cycle matroid of the glued graph).
CircuitSystem glued_matroid(const TreeOfPresentations& t);

// -- the lazy ladder tree (partial enumeration demo) -------------------------

/// Tail pre-vector of the one-ended ladder's column tree: a finite window
/// assignment repeating with the period from some node on, giving an
/// eventually periodic underlying edge set.
struct TailPreVector {
    int start_node = 0;
    std::vector<EdgeSet> window;  // assignments from start_node on, one period repeating
    struct EdgeSetExprOut {
        std::vector<long long> finite;
        int period_start = 0;
        std::vector<long long> pattern;
    } underlying;
};

struct LadderTomReport {
    int window = 0;
    std::vector<EdgeSet> finite_vectors;       // over family edge codes (restricted window)
    std::vector<TailPreVector> tail_vectors;   // only when psi admits the tree end
    long long pairs_checked = 0;
    bool orthogonality_pass = true;
    bool partial = true;
    std::string note;
};

/// Bounded enumeration over the one-ended ladder's lazy column tree: finite
/// pre-vectors inside the window plus periodic tail pre-vectors when psi
/// admits the single tree end; orthogonality against the enumerated
/// psi-complement covectors.
LadderTomReport ladder_lazy_tom(int window, bool psi_has_end, int max_subtree = 4);

}  // namespace psimat
