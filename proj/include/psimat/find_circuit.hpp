#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "psimat/edge_expr.hpp"
#include "psimat/psi.hpp"

namespace psimat {

/// One parity-forcing step: the star of `vertex` meets the remaining allowed
/// set in exactly {edge}, so no candidate can use the edge.
struct ForcingStep {
    Vertex vertex;
    long long edge;
};

/// Refutation certificate: after the recorded forcing (extended periodically
/// when the pattern repeats), the star cut at `vertex` meets the remaining
/// allowed set in exactly the target edge, so every candidate through it is
/// odd there. Valid at every truncation level up to `levels_checked`;
/// `periodic` records revalidation at sampled deeper levels.
struct NoCircuitCertificate {
    std::vector<ForcingStep> steps;
    bool periodic = false;
    std::string periodic_rule;
    Vertex contradiction_vertex = 0;
    int levels_checked = 0;
    std::string describe(const LazyFamily& f) const;
};

struct FindCircuitResult {
    enum Kind { kCircuit, kNoCircuit, kUnknown } kind = kUnknown;
    std::optional<EdgeSetExpr> circuit;
    std::optional<NoCircuitCertificate> certificate;
    int bound = 0;
};

/// Membership predicate for candidate circuits. It must only accept sets
/// meeting every finitely coverable cut evenly (the star-parity refutation
/// relies on that).
using CircuitPredicate = std::function<bool(const EdgeSetExpr&)>;

/// Searches for a member of the family through `through` inside `allowed`,
/// or refutes by star-cut parity forcing; Unknown when the bound runs out
/// with neither outcome.
FindCircuitResult find_circuit_within(const LazyFamily& f, const CircuitPredicate& family,
                                      const EdgeSetExpr& allowed, long long through, int bound);

}  // namespace psimat
