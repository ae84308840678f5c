// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances and bounds are pinned here, not configurable.

#include <chrono>
#include <cstdio>
#include <random>
#include <set>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "psimat/edge_expr.hpp"
#include "psimat/ends.hpp"
#include "psimat/find_circuit.hpp"
#include "psimat/matroid.hpp"
#include "psimat/psi.hpp"
#include "psimat/tom.hpp"
#include "psimat/treedec.hpp"

using namespace psimat;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

struct Timer {
    Clock::time_point t0 = Clock::now();
    double s() const { return std::chrono::duration<double>(Clock::now() - t0).count(); }
};

void report(int idx, const char* name, bool pass, const std::string& detail, double seconds) {
    std::printf("criterion %d [%s]: %s (%s, %.1fs)\n", idx, name, pass ? "PASS" : "FAIL",
                detail.c_str(), seconds);
    if (!pass) ++failures;
}

Multigraph random_connected_multigraph(std::mt19937_64& rng, int max_v, int max_e) {
    int n = 1 + int(rng() % max_v);
    Multigraph g = Multigraph::with_vertices(n);
    for (int i = 1; i < n; ++i) g.add_edge(i, int(rng() % i));
    int extra = int(rng() % (max_e - g.num_edges() + 1));
    for (int i = 0; i < extra; ++i) g.add_edge(int(rng() % n), int(rng() % n));
    return g;
}

// ---------------------------------------------------------------------------
// criterion 1: the axiom suite on finite-cycle matroids
// ---------------------------------------------------------------------------
void criterion1() {
    Timer t;
    long long checked = 0;
    bool ok = true;
    std::string first_fail;

    // exhaustive: connected multigraphs on <= 4 vertices with <= 6 edges
    for (int v = 1; v <= 4 && ok; ++v) {
        std::vector<std::pair<int, int>> slots;
        for (int i = 0; i < v; ++i)
            for (int j = i; j < v; ++j) slots.push_back({i, j});
        std::vector<int> mult(slots.size(), 0);
        std::function<void(size_t, int)> rec = [&](size_t k, int used) {
            if (!ok) return;
            if (k == slots.size()) {
                Multigraph g = Multigraph::with_vertices(v);
                for (size_t s = 0; s < slots.size(); ++s)
                    for (int c = 0; c < mult[s]; ++c) g.add_edge(slots[s].first, slots[s].second);
                if (!is_connected(g)) return;
                auto r = check_axioms(finite_cycle_matroid(g));
                ++checked;
                if (!r.all_pass()) {
                    ok = false;
                    first_fail = "exhaustive v=" + std::to_string(v);
                }
                return;
            }
            for (int c = 0; c + used <= 6; ++c) {
                mult[k] = c;
                rec(k + 1, used + c);
            }
            mult[k] = 0;
        };
        rec(0, 0);
    }

    // random: >= 200 connected multigraphs with <= 7 vertices, <= 12 edges
    std::mt19937_64 rng(20250809);
    for (int i = 0; i < 220 && ok; ++i) {
        auto g = random_connected_multigraph(rng, 7, 12);
        auto r = check_axioms(finite_cycle_matroid(g));
        ++checked;
        if (!r.all_pass()) {
            ok = false;
            first_fail = "random instance " + std::to_string(i);
        }
        if (!is_tame_and_binary(finite_cycle_matroid(g))) ok = false;
    }
    report(1, "finite-cycle matroid axioms", ok && t.s() <= 120.0,
           std::to_string(checked) + " systems, all seven axioms" +
               (ok ? "" : "; first failure: " + first_fail),
           t.s());
}

// ---------------------------------------------------------------------------
// criterion 2: closed walk <=> even on all cuts and geometrically connected
// ---------------------------------------------------------------------------
void criterion2() {
    Timer t;
    long long sets = 0;
    bool ok = true;

    // n <= 6: the full operation, explicit walks included
    for (int n = 2; n <= 6 && ok; ++n) {
        std::vector<std::pair<int, int>> slots;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) slots.push_back({i, j});
        int m_all = int(slots.size());
        for (uint32_t mask = 0; mask < (uint32_t{1} << m_all) && ok; ++mask) {
            Multigraph g = Multigraph::with_vertices(n);
            for (int s = 0; s < m_all; ++s)
                if ((mask >> s) & 1) g.add_edge(slots[s].first, slots[s].second);
            if (!is_connected(g)) continue;
            auto cycles = cycle_edge_sets(g, 24);
            // enumerate the cycle space via a basis
            std::vector<EdgeSet> basis;
            for (EdgeSet c : cycles) {
                for (auto& b : basis) {
                    int lead = b.lowest();
                    if (lead >= 0 && c.test(lead)) c ^= b;
                }
                if (!c.empty()) basis.push_back(c);
            }
            uint32_t total = uint32_t{1} << basis.size();
            for (uint32_t pick = 1; pick < total; ++pick) {
                EdgeSet o(g.num_edges());
                for (size_t b = 0; b < basis.size(); ++b)
                    if ((pick >> b) & 1) o ^= basis[b];
                if (o.empty()) continue;
                auto r = finite_sparse_equivalence(o, g);
                ++sets;
                if (!r.agree) ok = false;
            }
        }
    }

    // n = 7: lean two-route sweep (route A: even degrees + connected support,
    // the Euler equivalence of which is established with explicit walks at
    // n <= 6; route B: star parity + no avoiding cut splitting the support)
    long long disagreements = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1024) reduction(+ : sets, disagreements)
#endif
    for (int64_t gmask = 0; gmask < (int64_t{1} << 21); ++gmask) {
        int n = 7;
        int ends_a[21], ends_b[21];
        int idx = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                ends_a[idx] = i;
                ends_b[idx] = j;
                ++idx;
            }
        int edges[21], m = 0;
        for (int s = 0; s < 21; ++s)
            if ((gmask >> s) & 1) edges[m++] = s;
        // connectivity of the graph
        int parent[7];
        for (int i = 0; i < 7; ++i) parent[i] = i;
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        int comps = 7;
        for (int e = 0; e < m; ++e) {
            int a = find(ends_a[edges[e]]), b = find(ends_b[edges[e]]);
            if (a != b) {
                parent[a] = b;
                --comps;
            }
        }
        if (comps != 1) continue;
        // star masks and cut masks over the m edges
        uint32_t star[7] = {0, 0, 0, 0, 0, 0, 0};
        for (int e = 0; e < m; ++e) {
            star[ends_a[edges[e]]] |= uint32_t{1} << e;
            star[ends_b[edges[e]]] |= uint32_t{1} << e;
        }
        uint32_t cut[64];
        for (uint32_t side = 0; side < 64; ++side) {
            uint32_t c = 0;
            for (int e = 0; e < m; ++e) {
                uint32_t sa = (side >> ends_a[edges[e]]) & 1,
                         sb = ends_b[edges[e]] == 6 ? 0 : (side >> ends_b[edges[e]]) & 1;
                if (sa != sb) c |= uint32_t{1} << e;
            }
            cut[side] = c;
        }
        // fundamental cycle basis via a spanning tree
        uint32_t basis[21];
        int dim = 0;
        {
            uint32_t rows[21];
            int nrows = 0;
            for (int e = 0; e < m; ++e) {
                // fundamental cycle of edge e over the BFS tree: use GF(2)
                // elimination over star-parity instead: any even-degree set
                // basis works, so eliminate the star constraints.
                (void)e;
            }
            // nullspace of the 7 star-parity constraints
            for (int v = 0; v < 7; ++v)
                if (star[v]) rows[nrows++] = star[v];
            // row echelon
            uint32_t ech[21];
            int ne = 0;
            for (int r = 0; r < nrows; ++r) {
                uint32_t row = rows[r];
                for (int q = 0; q < ne; ++q) {
                    uint32_t lead = ech[q] & (~ech[q] + 1);
                    if (row & lead) row ^= ech[q];
                }
                if (row) ech[ne++] = row;
            }
            bool pivot[21] = {};
            for (int q = 0; q < ne; ++q) pivot[__builtin_ctz(ech[q] & (~ech[q] + 1))] = true;
            for (int e = 0; e < m; ++e) {
                if (pivot[e]) continue;
                uint32_t x = uint32_t{1} << e;
                bool changed = true;
                while (changed) {
                    changed = false;
                    for (int q = 0; q < ne; ++q)
                        if (__builtin_popcount(ech[q] & x) % 2) {
                            x ^= ech[q] & (~ech[q] + 1);
                            changed = true;
                        }
                }
                basis[dim++] = x;
            }
        }
        // sweep the even sets by Gray code
        uint32_t o = 0;
        uint32_t count = uint32_t{1} << dim;
        for (uint32_t g2 = 1; g2 < count; ++g2) {
            int flip = __builtin_ctz(g2);
            o ^= basis[flip];
            if (!o) continue;
            ++sets;
            // route A: even degrees (by construction) + connected support
            int sp[7];
            for (int i = 0; i < 7; ++i) sp[i] = i;
            auto sfind = [&](int x) {
                while (sp[x] != x) x = sp[x] = sp[sp[x]];
                return x;
            };
            int nsup = 0, graph_comps = 0;
            bool seen[7] = {};
            for (int e = 0; e < m; ++e)
                if ((o >> e) & 1) {
                    int a = ends_a[edges[e]], b = ends_b[edges[e]];
                    if (!seen[a]) {
                        seen[a] = true;
                        ++nsup;
                    }
                    if (!seen[b]) {
                        seen[b] = true;
                        ++nsup;
                    }
                    sp[sfind(a)] = sfind(b);
                }
            for (int i = 0; i < 7; ++i)
                if (seen[i] && sfind(i) == i) ++graph_comps;
            bool route_a = graph_comps == 1;
            // route B: parity on the stars, geometric connectivity over cuts
            bool route_b = true;
            for (int v = 0; v < 7 && route_b; ++v)
                if (__builtin_popcount(star[v] & o) % 2) route_b = false;
            for (uint32_t side = 1; side < 64 && route_b; ++side) {
                if (cut[side] & o) continue;
                // does this avoiding cut split the support?
                int cp[7];
                for (int i = 0; i < 7; ++i) cp[i] = i;
                auto cfind = [&](int x) {
                    while (cp[x] != x) x = cp[x] = cp[cp[x]];
                    return x;
                };
                for (int e = 0; e < m; ++e)
                    if (!((cut[side] >> e) & 1)) cp[cfind(ends_a[edges[e]])] = cfind(ends_b[edges[e]]);
                int carrier = -1;
                for (int e = 0; e < m && route_b; ++e)
                    if ((o >> e) & 1) {
                        int r = cfind(ends_a[edges[e]]);
                        if (carrier == -1) carrier = r;
                        else if (carrier != r) route_b = false;
                    }
            }
            if (route_a != route_b) ++disagreements;
        }
    }
    if (disagreements > 0) ok = false;
    report(2, "sparse-function characterization", ok && t.s() <= 120.0,
           std::to_string(sets) + " even-degree edge sets, " + std::to_string(disagreements) +
               " discrepancies",
           t.s());
}

// ---------------------------------------------------------------------------
// criteria 3 and 4: glued matroids and the Lemma 4.5 round trips
// ---------------------------------------------------------------------------
void criteria3and4() {
    Timer t;
    std::mt19937_64 rng(424242);
    int instances = 0;
    long long cycles_done = 0, bonds_done = 0, z_even = 0, z_total = 0;
    bool glued_ok = true, roundtrip_ok = true;
    while (instances < 120) {
        auto [g, td] = random_decomposition(rng);
        if (!verify_treedec(g, td, 6).pass) {
            glued_ok = false;  // the generator promises validity
            break;
        }
        ++instances;
        auto tom = build_tree_of_presentations(g, td);
        if (!(glued_matroid(tom) == finite_cycle_matroid(g))) glued_ok = false;

        for (auto& c : cycle_edge_sets(g)) {
            ++z_total;
            try {
                auto p = cycle_to_prevector(tom, g, td, c);
                ++z_even;
                std::string why;
                if (!check_prevector(tom, p, &why) || !(underlying(tom, p) == c))
                    roundtrip_ok = false;
                auto p2 = cycle_to_prevector(tom, g, td, c, true);
                if (!check_prevector(tom, p2, &why) || !(underlying(tom, p2) == c))
                    roundtrip_ok = false;
            } catch (const std::exception&) {
                roundtrip_ok = false;
            }
            ++cycles_done;
        }
        for (auto& b : bonds(g)) {
            try {
                auto p = bond_to_precovector(tom, g, td, b.edges, b.side);
                std::string why;
                if (!check_prevector(tom, p, &why) || !(underlying(tom, p) == b.edges))
                    roundtrip_ok = false;
            } catch (const std::exception&) {
                roundtrip_ok = false;
            }
            ++bonds_done;
        }
    }
    double secs = t.s();
    report(3, "glued matroid equals the finite-cycle matroid", glued_ok && secs <= 300.0,
           std::to_string(instances) + " (graph, decomposition) pairs", secs);
    report(4, "cycle/bond pre-vector round trips",
           roundtrip_ok && z_even == z_total,
           std::to_string(cycles_done) + " cycles (" + std::to_string(z_even) + "/" +
               std::to_string(z_total) + " even Z(st)), " + std::to_string(bonds_done) + " bonds",
           secs);
}

// ---------------------------------------------------------------------------
// criterion 5: the Figure 1 reproduction
// ---------------------------------------------------------------------------
void criterion5() {
    Timer t;
    const auto& f = family_by_name("dominated-ladder");
    auto grey = dominated_ladder_grey_circuit();
    bool a = false, b = false, c = false, d = false;

    auto in_all = in_C_psi(grey, PsiSpec::all(), 12);
    a = in_all.value && in_all.periodic;

    auto cls = classify_ends(f, 8);
    b = cls.size() == 1 && cls[0].dominated && cls[0].verdict.fan &&
        cls[0].verdict.fan->periodic;

    auto allowed = parse_expr(f, "edges{rung(0)} period(0,1){spoke(0), lrail(0)}");
    auto pred = [&](const EdgeSetExpr& e) { return in_C_psi(e, PsiSpec::all(), 12).value; };
    auto r = find_circuit_within(f, pred, allowed, 3, 12);
    c = r.kind == FindCircuitResult::kNoCircuit && r.certificate->periodic;

    d = !in_C_psi(grey, PsiSpec::none(), 12).value;

    report(5, "Figure 1 reproduction", a && b && c && d && t.s() <= 30.0,
           std::string("circuit certified: ") + (a ? "yes" : "NO") +
               ", end dominated: " + (b ? "yes" : "NO") + ", elimination refuted: " +
               (c ? "yes" : "NO") + ", rejected without the end: " + (d ? "yes" : "NO"),
           t.s());
}

// ---------------------------------------------------------------------------
// criterion 6: bounded-diameter spanning trees
// ---------------------------------------------------------------------------
void criterion6() {
    Timer t;
    std::mt19937_64 rng(606);
    int done = 0;
    bool ok = true;
    for (int i = 0; i < 55; ++i) {
        auto g = random_connected_multigraph(rng, 24, 40);
        Vertex r = g.vertices()[rng() % g.num_vertices()];
        int k = 1 + int(rng() % 5);
        // induced ball of radius k around r
        std::map<Vertex, int> dist{{r, 0}};
        std::vector<Vertex> frontier{r};
        while (!frontier.empty()) {
            std::vector<Vertex> next;
            for (Vertex v : frontier)
                for (EdgeId e : g.edges_at(v)) {
                    auto [x, y] = g.endpoints(e);
                    Vertex w = x == v ? y : x;
                    if (dist.count(w) || dist[v] + 1 > k) continue;
                    dist[w] = dist[v] + 1;
                    next.push_back(w);
                }
            frontier = next;
        }
        Multigraph ball;
        for (auto& [v, dd] : dist) ball.add_vertex(v);
        for (int e = 0; e < g.num_edges(); ++e) {
            auto [x, y] = g.endpoints(e);
            if (dist.count(x) && dist.count(y)) ball.add_edge(x, y);
        }
        auto st = spanning_tree_bounded_diameter(ball, r);
        if (st.diameter > 2 * k + 1 || st.tree.num_vertices() != ball.num_vertices()) ok = false;
        ++done;
    }
    for (auto& name : family_names()) {
        const auto& f = family_by_name(name);
        for (int k = 1; k <= 5; ++k) {
            auto b = ball_slice(f, f.root(), k, 6);
            auto st = spanning_tree_bounded_diameter(b.graph, f.root());
            if (st.diameter > 2 * k + 1) ok = false;
            ++done;
        }
    }
    report(6, "spanning trees of diameter <= 2k+1", ok, std::to_string(done) + " balls", t.s());
}

// ---------------------------------------------------------------------------
// criterion 7: the domination dichotomy
// ---------------------------------------------------------------------------
void criterion7() {
    Timer t;
    bool ok = true;
    std::string detail;

    auto dom = classify_ends(family_by_name("dominated-ladder"), 8);
    if (!(dom.size() == 1 && dom[0].dominated && dom[0].verdict.fan->periodic)) {
        ok = false;
        detail += " dominated-ladder";
    }
    for (auto& name : {"ladder", "double-ray", "grid", "binary-tree"}) {
        auto cls = classify_ends(family_by_name(name), 8);
        for (auto& c : cls) {
            bool good = !c.dominated && c.verdict.kind == DominationVerdict::kSeparated &&
                        c.verdict.separator && c.verdict.separator->periodic;
            if (!good) {
                ok = false;
                detail += std::string(" ") + name;
                break;
            }
        }
        if (cls.empty()) ok = false;
    }
    report(7, "domination dichotomy", ok,
           ok ? "dominated ladder: fan; others: period-certified separators, no Unknown"
              : "failures:" + detail,
           t.s());
}

// ---------------------------------------------------------------------------
// criterion 8: orthogonality of enumerated vectors and covectors
// ---------------------------------------------------------------------------
void criterion8() {
    Timer t;
    bool ok = true;
    long long pairs = 0;
    std::string detail;

    struct FamWindow {
        const char* name;
        int window;
    };
    for (auto [name, window] : {FamWindow{"ladder", 5}, {"comb", 6}, {"double-ray", 5},
                                {"star", 6}, {"binary-tree", 3}, {"dominated-ladder", 3},
                                {"grid", 2}, {"apex-grid", 2}}) {
        const auto& f = family_by_name(name);
        auto prefix = prefix_slice(f, window);
        auto td = canonical_treedec(f).materialize(prefix);
        if (!verify_treedec(prefix.graph, td).pass) {
            ok = false;
            detail += std::string(" ") + name + ":treedec";
            continue;
        }
        auto tom = build_tree_of_presentations(prefix.graph, td);
        auto r = orthogonality_check(vector_space(tom, false), vector_space(tom, true));
        pairs += r.pairs;
        if (!r.pass) {
            ok = false;
            detail += std::string(" ") + name;
        }
        if (!(glued_matroid(tom) == finite_cycle_matroid(prefix.graph, 18))) {
            ok = false;
            detail += std::string(" ") + name + ":glued";
        }
    }
    // the lazy ladder tree, both admitted end sets
    for (bool psi : {true, false}) {
        auto rep = ladder_lazy_tom(8, psi);
        pairs += rep.pairs_checked;
        if (!rep.orthogonality_pass) {
            ok = false;
            detail += " lazy-ladder";
        }
    }
    report(8, "vector/covector orthogonality", ok && t.s() <= 300.0,
           std::to_string(pairs) + " pairs" + detail, t.s());
}

// ---------------------------------------------------------------------------
// criterion 9: inverse-system coherence
// ---------------------------------------------------------------------------
void criterion9() {
    Timer t;
    bool ok = true;
    int checked = 0;
    for (auto& name : family_names()) {
        const auto& f = family_by_name(name);
        int top = name == "binary-tree" ? 6 : (name == "grid" ? 7 : 10);
        for (int n = 1; n < top; ++n)
            for (int m = n + 1; m <= top; ++m) {
                auto tm = truncate(f, m);
                auto proj = project_truncation(tm, n);
                if (!slices_equal(proj.slice, truncate(f, n))) ok = false;
                ++checked;
            }
        // functoriality along a chain
        int x = top, w = top - 2, u = top - 4;
        if (u >= 1) {
            auto tx = truncate(f, x);
            auto to_w = project_truncation(tx, w);
            auto via = project_truncation(to_w.slice, u);
            auto direct = project_truncation(tx, u);
            for (Vertex v : tx.graph.vertices()) {
                bool in_w = to_w.vertex_map.count(v), in_d = direct.vertex_map.count(v);
                if (in_w != in_d && !in_w) ok = false;
                if (!in_w) continue;
                Vertex mid = to_w.vertex_map.at(v);
                bool via_has = via.vertex_map.count(mid);
                if (via_has != in_d) ok = false;
                if (via_has && in_d && via.vertex_map.at(mid) != direct.vertex_map.at(v))
                    ok = false;
            }
            if (!slices_equal(via.slice, direct.slice)) ok = false;
            ++checked;
        }
    }
    report(9, "inverse-system coherence", ok, std::to_string(checked) + " projection checks",
           t.s());
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("acceptance suite (OpenMP, %d threads)\n", omp_get_max_threads());
#else
    std::printf("acceptance suite (serial build)\n");
#endif
    criterion1();
    criterion2();
    criteria3and4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    std::printf(failures == 0 ? "all criteria pass\n" : "%d criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
