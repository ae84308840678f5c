#pragma once

#include <optional>
#include <string>
#include <vector>

#include "psimat/graph_ops.hpp"
#include "psimat/multigraph.hpp"

namespace psimat {

/// Candidate circuit/cocircuit families over a finite ground set.
struct CircuitSystem {
    int ground = 0;
    std::vector<EdgeSet> circuits;    // the family C
    std::vector<EdgeSet> cocircuits;  // the family D

    void normalize();  // dedupe + canonical sort
    bool operator==(const CircuitSystem& o) const;
};

enum class Axiom { C1, C1Star, C2, C2Star, O1, O2, IM };
std::string axiom_name(Axiom a);

struct AxiomVerdict {
    Axiom axiom;
    bool pass = false;
    std::string witness;  // human-readable violation, empty when pass
};

struct AxiomReport {
    std::vector<AxiomVerdict> verdicts;
    long long im_pairs_checked = 0;
    bool im_exhaustive = false;
    bool all_pass() const {
        for (auto& v : verdicts)
            if (!v.pass) return false;
        return true;
    }
    const AxiomVerdict& get(Axiom a) const;
};

inline constexpr int kAxiomGroundLimit = 20;  // O2/IM enumerate subsets

/// Exhaustive check of (C1)(C1*)(C2)(C2*)(O1)(O2)(IM).
/// (IM) is automatic on finite ground sets; it is verified constructively by
/// greedily extending independent sets, exhaustively over (I, X) pairs when
/// 3^ground <= im_pair_budget and on seeded random pairs otherwise.
AxiomReport check_axioms(const CircuitSystem& s, long long im_pair_budget = 2'000'000,
                         uint64_t seed = 1);

namespace reference {
/// Serial single-loop (O2) sweep, kept as the reference for the parallel kernel.
AxiomVerdict check_o2(const CircuitSystem& s);
}  // namespace reference

/// Circuits = edge sets of finite cycles, cocircuits = bonds.
CircuitSystem finite_cycle_matroid(const Multigraph& g,
                                   int edge_limit = kDefaultEnumerationEdgeLimit);

/// Subset-minimal nonempty members of a family.
std::vector<EdgeSet> minimal_nonempty(const std::vector<EdgeSet>& family);

/// Swap circuits and cocircuits.
CircuitSystem dual(const CircuitSystem& s);

/// True iff every circuit/cocircuit intersection is even (tameness is
/// automatic on finite ground sets).
bool is_tame_and_binary(const CircuitSystem& s);

/// True iff no nonempty circuit of s is contained in `set`.
bool is_independent(const CircuitSystem& s, const EdgeSet& set);

}  // namespace psimat
