#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "psimat/lazy_family.hpp"
#include "psimat/truncation.hpp"

namespace psimat {

/// A finite or eventually periodic edge set over a lazy family:
/// an explicit finite part plus an optional periodic tail. A family edge e
/// with column c >= period_start belongs to the tail iff shifting it back
/// into the pattern window lands on a pattern edge.
struct EdgeSetExpr {
    const LazyFamily* family = nullptr;
    std::vector<long long> finite_part;  // sorted, deduped
    bool has_period = false;
    int period_start = 0;
    int period_len = 1;
    std::vector<long long> pattern;  // codes with columns in [period_start, period_start+period_len)

    bool contains(long long code) const;
    bool infinite() const { return has_period && !pattern.empty(); }
    /// Members with edge column <= maxcol.
    std::vector<long long> members_up_to(int maxcol) const;
    /// Restriction to the explicit edges of a slice.
    EdgeSet restrict_to(const Slice& s) const;
    /// |expr ∩ tail class|, or nullopt when infinite.
    std::optional<int> tail_intersection(const TailClass& t) const;

    std::string to_string() const;
};

EdgeSetExpr finite_expr(const LazyFamily& f, std::vector<long long> codes);
EdgeSetExpr periodic_expr(const LazyFamily& f, std::vector<long long> finite_codes,
                          int period_start, int period_len, std::vector<long long> pattern);

/// Text syntax:  edges{name, name, ...} [period(start,len){name, ...}]
EdgeSetExpr parse_expr(const LazyFamily& f, const std::string& text);

/// The reconstructed grey circuit of the dominated ladder:
/// spoke(0), rung(0), spoke(1), the whole lower rail, and the upper rail
/// from column 1 on. Accepted only because the circuit checkers certify it.
EdgeSetExpr dominated_ladder_grey_circuit();

/// A cut of a lazy family given by a side assignment: finitely many
/// exceptional vertices plus a periodic rule for columns >= rule_start.
/// Column-free vertices (d, the star center) take default_side unless
/// exceptional. Any side assignment induces a cut; `cover`, when present,
/// claims the cut is finitely coverable.
struct CutExpr {
    const LazyFamily* family = nullptr;
    std::map<Vertex, int> exceptional;  // vertex -> 0 or 1
    int rule_start = 0;
    int rule_len = 1;
    std::map<Vertex, int> rule;  // side of vertices with columns in [rule_start, rule_start+rule_len)
    int default_side = 0;
    std::optional<std::vector<Vertex>> cover;

    int side_of(Vertex v) const;
    /// Uniform side of all vertices beyond some column, if the rule is
    /// eventually constant; nullopt when the cut crosses every deep column.
    std::optional<int> eventual_side() const;
    /// Crossing edges as an expression. Throws if the rule is inconsistent
    /// (the crossing pattern fails to repeat) or a claimed cover misses a
    /// crossing edge.
    EdgeSetExpr crossing_edges(int horizon) const;
};

}  // namespace psimat
