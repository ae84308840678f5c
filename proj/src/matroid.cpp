#include "psimat/matroid.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace psimat {

void CircuitSystem::normalize() {
    auto norm = [](std::vector<EdgeSet>& f) {
        std::sort(f.begin(), f.end());
        f.erase(std::unique(f.begin(), f.end()), f.end());
    };
    norm(circuits);
    norm(cocircuits);
}

bool CircuitSystem::operator==(const CircuitSystem& o) const {
    return ground == o.ground && circuits == o.circuits && cocircuits == o.cocircuits;
}

std::string axiom_name(Axiom a) {
    switch (a) {
        case Axiom::C1: return "C1";
        case Axiom::C1Star: return "C1*";
        case Axiom::C2: return "C2";
        case Axiom::C2Star: return "C2*";
        case Axiom::O1: return "O1";
        case Axiom::O2: return "O2";
        case Axiom::IM: return "IM";
    }
    return "?";
}

const AxiomVerdict& AxiomReport::get(Axiom a) const {
    for (auto& v : verdicts)
        if (v.axiom == a) return v;
    throw std::logic_error("axiom not in report");
}

namespace {

AxiomVerdict check_c1(const std::vector<EdgeSet>& fam, Axiom which) {
    for (auto& s : fam)
        if (s.empty()) return {which, false, "the empty set is a member"};
    return {which, true, {}};
}

AxiomVerdict check_c2(const std::vector<EdgeSet>& fam, Axiom which) {
    for (size_t i = 0; i < fam.size(); ++i)
        for (size_t j = 0; j < fam.size(); ++j)
            if (i != j && fam[i].proper_subset_of(fam[j]))
                return {which, false, fam[i].to_string() + " is a subset of " + fam[j].to_string()};
    return {which, true, {}};
}

AxiomVerdict check_o1(const CircuitSystem& s) {
    for (auto& c : s.circuits)
        for (auto& d : s.cocircuits)
            if (c.intersection_count(d) == 1)
                return {Axiom::O1, false, "|C cap D| = 1 for C=" + c.to_string() + " D=" + d.to_string()};
    return {Axiom::O1, true, {}};
}

// Does some member of fam contain e and lie inside allowed (as bit masks)?
bool has_member_through_within(const std::vector<uint64_t>& fam, uint64_t allowed, uint64_t e_bit) {
    for (uint64_t f : fam)
        if ((f & e_bit) && !(f & ~allowed)) return true;
    return false;
}

std::vector<uint64_t> as_masks(const std::vector<EdgeSet>& fam) {
    std::vector<uint64_t> out;
    out.reserve(fam.size());
    for (auto& s : fam) {
        uint64_t m = 0;
        for (int e : s.ids()) m |= uint64_t{1} << e;
        out.push_back(m);
    }
    return out;
}

std::string o2_witness(int ground, int e, uint64_t pmask) {
    std::ostringstream os;
    os << "e=" << e << " P={";
    bool first = true;
    for (int i = 0; i < ground; ++i)
        if ((pmask >> i) & 1) {
            if (!first) os << ",";
            os << i;
            first = false;
        }
    os << "} Q=complement: neither P+e has a circuit through e nor Q+e a cocircuit through e";
    return os.str();
}

}  // namespace

namespace reference {

AxiomVerdict check_o2(const CircuitSystem& s) {
    int m = s.ground;
    if (m > kAxiomGroundLimit) throw std::runtime_error("check_o2: ground too large");
    auto cs = as_masks(s.circuits), ds = as_masks(s.cocircuits);
    uint64_t all = (m == 64) ? ~uint64_t{0} : (uint64_t{1} << m) - 1;
    for (int e = 0; e < m; ++e) {
        uint64_t e_bit = uint64_t{1} << e;
        uint64_t rest = all & ~e_bit;
        // Iterate all subsets P of rest, including empty and full.
        uint64_t p = 0;
        while (true) {
            uint64_t q = rest & ~p;
            if (!has_member_through_within(cs, p | e_bit, e_bit) &&
                !has_member_through_within(ds, q | e_bit, e_bit))
                return {Axiom::O2, false, o2_witness(m, e, p)};
            if (p == rest) break;
            p = (p - rest) & rest;  // next subset
        }
    }
    return {Axiom::O2, true, {}};
}

}  // namespace reference

namespace {

AxiomVerdict check_o2_parallel(const CircuitSystem& s) {
    int m = s.ground;
    auto cs = as_masks(s.circuits), ds = as_masks(s.cocircuits);
    uint64_t all = (uint64_t{1} << m) - 1;
    // Flatten (e, P-index) pairs: for each e there are 2^(m-1) subsets of
    // the remaining elements, indexed by compressed bits.
    int64_t per_e = int64_t{1} << (m - 1);
    std::optional<AxiomVerdict> failure;
#ifdef _OPENMP
#pragma omp parallel
#endif
    {
        std::optional<AxiomVerdict> local;
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 4096)
#endif
        for (int64_t job = 0; job < int64_t(m) * per_e; ++job) {
            if (local) continue;  // keep scanning cheaply once failed
            int e = int(job / per_e);
            uint64_t idx = uint64_t(job % per_e);
            uint64_t e_bit = uint64_t{1} << e;
            // Expand idx over the m-1 positions excluding e.
            uint64_t low = idx & (e_bit - 1);
            uint64_t high = (idx >> e) << (e + 1);
            uint64_t p = low | high;
            uint64_t q = all & ~p & ~e_bit;
            if (!has_member_through_within(cs, p | e_bit, e_bit) &&
                !has_member_through_within(ds, q | e_bit, e_bit))
                local = AxiomVerdict{Axiom::O2, false, o2_witness(m, e, p)};
        }
#ifdef _OPENMP
#pragma omp critical
#endif
        if (local && !failure) failure = local;
    }
    if (failure) return *failure;
    return {Axiom::O2, true, {}};
}

}  // namespace

bool is_independent(const CircuitSystem& s, const EdgeSet& set) {
    for (auto& c : s.circuits)
        if (!c.empty() && c.subset_of(set)) return false;
    return true;
}

namespace {

// Greedily extend I to a maximal independent subset of X; verify maximality.
bool im_extends(const CircuitSystem& s, const EdgeSet& i_set, const EdgeSet& x_set,
                std::string* witness) {
    EdgeSet y = i_set;
    for (int e : x_set.ids()) {
        if (y.test(e)) continue;
        EdgeSet cand = y;
        cand.set(e);
        if (is_independent(s, cand)) y = cand;
    }
    if (!is_independent(s, y)) {
        *witness = "greedy extension of I=" + i_set.to_string() + " inside X=" +
                   x_set.to_string() + " is not independent";
        return false;
    }
    for (int e : x_set.ids()) {
        if (y.test(e)) continue;
        EdgeSet cand = y;
        cand.set(e);
        if (is_independent(s, cand)) {
            *witness = "base " + y.to_string() + " of X=" + x_set.to_string() +
                       " is not maximal (can add " + std::to_string(e) + ")";
            return false;
        }
    }
    if (!i_set.subset_of(y)) {
        *witness = "extension lost elements of I";
        return false;
    }
    return true;
}

}  // namespace

AxiomReport check_axioms(const CircuitSystem& s, long long im_pair_budget, uint64_t seed) {
    if (s.ground > kAxiomGroundLimit)
        throw std::runtime_error("check_axioms: ground set exceeds limit of " +
                                 std::to_string(kAxiomGroundLimit));
    AxiomReport r;
    r.verdicts.push_back(check_c1(s.circuits, Axiom::C1));
    r.verdicts.push_back(check_c1(s.cocircuits, Axiom::C1Star));
    r.verdicts.push_back(check_c2(s.circuits, Axiom::C2));
    r.verdicts.push_back(check_c2(s.cocircuits, Axiom::C2Star));
    r.verdicts.push_back(check_o1(s));
    r.verdicts.push_back(s.ground == 0 ? AxiomVerdict{Axiom::O2, true, {}}
                                       : check_o2_parallel(s));

    // (IM): exhaust pairs I subseteq X when 3^ground fits the budget, else sample.
    long long pairs = 1;
    for (int i = 0; i < s.ground && pairs <= im_pair_budget; ++i) pairs *= 3;
    std::string witness;
    bool ok = true;
    long long checked = 0;
    if (pairs <= im_pair_budget) {
        r.im_exhaustive = true;
        // Enumerate X, then independent subsets I of X.
        uint64_t all = s.ground == 0 ? 0 : (uint64_t{1} << s.ground) - 1;
        for (uint64_t x = 0; x <= all && ok; ++x) {
            EdgeSet xs(s.ground);
            for (int e = 0; e < s.ground; ++e)
                if ((x >> e) & 1) xs.set(e);
            for (uint64_t i = x;; i = (i - 1) & x) {
                EdgeSet is(s.ground);
                for (int e = 0; e < s.ground; ++e)
                    if ((i >> e) & 1) is.set(e);
                if (is_independent(s, is)) {
                    ++checked;
                    if (!im_extends(s, is, xs, &witness)) {
                        ok = false;
                        break;
                    }
                }
                if (i == 0) break;
            }
            if (all == 0) break;
        }
    } else {
        std::mt19937_64 rng(seed);
        for (int t = 0; t < 4000 && ok; ++t) {
            uint64_t x = rng() & ((uint64_t{1} << s.ground) - 1);
            uint64_t i = rng() & x;
            EdgeSet xs(s.ground), is(s.ground);
            for (int e = 0; e < s.ground; ++e) {
                if ((x >> e) & 1) xs.set(e);
                if ((i >> e) & 1) is.set(e);
            }
            if (!is_independent(s, is)) continue;
            ++checked;
            if (!im_extends(s, is, xs, &witness)) ok = false;
        }
    }
    r.im_pairs_checked = checked;
    r.verdicts.push_back({Axiom::IM, ok, witness});
    return r;
}

CircuitSystem finite_cycle_matroid(const Multigraph& g, int edge_limit) {
    CircuitSystem s;
    s.ground = g.num_edges();
    s.circuits = cycle_edge_sets(g, edge_limit);
    for (auto& b : bonds(g, edge_limit)) s.cocircuits.push_back(b.edges);
    s.normalize();
    return s;
}

std::vector<EdgeSet> minimal_nonempty(const std::vector<EdgeSet>& family) {
    std::vector<EdgeSet> out;
    for (size_t i = 0; i < family.size(); ++i) {
        if (family[i].empty()) continue;
        bool minimal = true;
        for (size_t j = 0; j < family.size() && minimal; ++j)
            if (j != i && !family[j].empty() && family[j].proper_subset_of(family[i]))
                minimal = false;
        if (minimal) out.push_back(family[i]);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

CircuitSystem dual(const CircuitSystem& s) {
    return CircuitSystem{s.ground, s.cocircuits, s.circuits};
}

bool is_tame_and_binary(const CircuitSystem& s) {
    for (auto& c : s.circuits)
        for (auto& d : s.cocircuits)
            if (c.intersection_count(d) % 2 != 0) return false;
    return true;
}

}  // namespace psimat
