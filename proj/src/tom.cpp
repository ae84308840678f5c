#include "psimat/tom.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace psimat {

int BinaryPresentation::local_of(long long gid) const {
    for (int i = 0; i < int(global_ids.size()); ++i)
        if (global_ids[i] == gid) return i;
    return -1;
}

namespace {

// GF(2) nullspace of the parity constraints "|x ∩ row| even", enumerated.
std::vector<EdgeSet> parity_solutions(int ground, const std::vector<EdgeSet>& rows,
                                      size_t cap) {
    std::vector<uint64_t> mat;
    for (auto& r : rows) {
        uint64_t m = 0;
        for (int e : r.ids()) m |= uint64_t{1} << e;
        mat.push_back(m);
    }
    // row echelon
    std::vector<uint64_t> basis_rows;
    for (uint64_t row : mat) {
        for (uint64_t b : basis_rows) {
            uint64_t lead = b & (~b + 1);
            if (row & lead) row ^= b;
        }
        if (row) basis_rows.push_back(row);
    }
    // pivots
    std::set<int> pivots;
    for (uint64_t b : basis_rows) pivots.insert(__builtin_ctzll(b & (~b + 1)));
    std::vector<int> free_vars;
    for (int e = 0; e < ground; ++e)
        if (!pivots.count(e)) free_vars.push_back(e);
    if (free_vars.size() > 24 || (size_t{1} << free_vars.size()) > cap)
        throw std::runtime_error("parity solution space too large to enumerate");
    // nullspace basis: one vector per free variable
    std::vector<uint64_t> null_basis;
    for (int fv : free_vars) {
        uint64_t x = uint64_t{1} << fv;
        bool changed = true;
        while (changed) {
            changed = false;
            for (uint64_t b : basis_rows) {
                if (__builtin_popcountll(b & x) % 2 != 0) {
                    uint64_t lead = b & (~b + 1);
                    x ^= lead;
                    changed = true;
                }
            }
        }
        null_basis.push_back(x);
    }
    std::vector<EdgeSet> out;
    size_t total = size_t{1} << null_basis.size();
    for (size_t mask = 0; mask < total; ++mask) {
        uint64_t x = 0;
        for (size_t i = 0; i < null_basis.size(); ++i)
            if ((mask >> i) & 1) x ^= null_basis[i];
        EdgeSet s(ground);
        for (int e = 0; e < ground; ++e)
            if ((x >> e) & 1) s.set(e);
        out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

BinaryPresentation canonical_presentation(const CircuitSystem& m,
                                          const std::vector<long long>& global_ids,
                                          size_t enumeration_cap) {
    if (!is_tame_and_binary(m))
        throw std::invalid_argument("canonical_presentation: matroid is not binary");
    if (int(global_ids.size()) != m.ground)
        throw std::invalid_argument("canonical_presentation: id map size mismatch");
    BinaryPresentation p;
    p.global_ids = global_ids;
    p.vectors = parity_solutions(m.ground, m.cocircuits, enumeration_cap);
    p.covectors = parity_solutions(m.ground, m.circuits, enumeration_cap);
    return p;
}

std::vector<int> TreeOfPresentations::children(int t) const {
    std::vector<int> out;
    for (int i = 0; i < int(nodes.size()); ++i)
        if (nodes[i].parent == t) out.push_back(i);
    return out;
}

std::vector<int> TreeOfPresentations::neighbors(int t) const {
    std::vector<int> out = children(t);
    if (nodes[t].parent >= 0) out.push_back(nodes[t].parent);
    std::sort(out.begin(), out.end());
    return out;
}

const std::vector<long long>& TreeOfPresentations::dummies(int t, int u) const {
    static const std::vector<long long> kEmpty;
    auto it = edge_dummies.find({std::min(t, u), std::max(t, u)});
    return it == edge_dummies.end() ? kEmpty : it->second;
}

TreeOfPresentations build_tree_of_presentations(const Multigraph& g,
                                                const TreeDecomposition& td) {
    TreeOfPresentations out;
    out.num_real = g.num_edges();
    long long next_dummy = -1;
    std::map<std::tuple<int, int, Vertex, Vertex>, long long> dummy_of_pair;

    for (int t = 0; t < int(td.nodes.size()); ++t) {
        Torso h = torso(g, td, t);
        std::vector<long long> gids;
        for (int e = 0; e < h.graph.num_edges(); ++e) {
            if (h.real_origin[e] >= 0) {
                gids.push_back(h.real_origin[e]);
            } else {
                auto [u, a, b] = h.virtual_info.at(e);
                auto key = std::tuple(std::min(t, u), std::max(t, u), a, b);
                auto it = dummy_of_pair.find(key);
                long long id;
                if (it == dummy_of_pair.end()) {
                    id = next_dummy--;
                    dummy_of_pair[key] = id;
                    out.edge_dummies[{std::min(t, u), std::max(t, u)}].push_back(id);
                } else {
                    id = it->second;
                }
                gids.push_back(id);
            }
        }
        CircuitSystem m = finite_cycle_matroid(h.graph, 18);
        TreeOfPresentations::Node nd;
        nd.parent = td.nodes[t].parent;
        nd.pres = canonical_presentation(m, gids);
        out.nodes.push_back(std::move(nd));
    }
    return out;
}

namespace {

// Restriction of a local set to the dummy ids of one tree edge, expressed as
// the set of global dummy ids.
std::set<long long> dummy_restriction(const BinaryPresentation& p, const EdgeSet& local,
                                      const std::vector<long long>& dummies) {
    std::set<long long> out;
    std::set<long long> dset(dummies.begin(), dummies.end());
    for (int e : local.ids())
        if (dset.count(p.global_ids[e])) out.insert(p.global_ids[e]);
    return out;
}

}  // namespace

bool check_prevector(const TreeOfPresentations& t, const PreVector& p, std::string* why) {
    auto explain = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (p.subtree.empty()) return explain("empty subtree");
    std::set<int> s(p.subtree.begin(), p.subtree.end());
    // connectivity in the tree
    std::set<int> seen{*s.begin()};
    std::vector<int> stack{*s.begin()};
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int u : t.neighbors(x))
            if (s.count(u) && !seen.count(u)) {
                seen.insert(u);
                stack.push_back(u);
            }
    }
    if (seen.size() != s.size()) return explain("subtree not connected");

    for (int x : p.subtree) {
        auto it = p.assignment.find(x);
        if (it == p.assignment.end()) return explain("missing assignment");
        const EdgeSet& v = it->second;
        const auto& fam = p.covector ? t.nodes[x].pres.covectors : t.nodes[x].pres.vectors;
        if (std::find(fam.begin(), fam.end(), v) == fam.end())
            return explain("assignment at node " + std::to_string(x) + " is not a family member");
        if (v.empty()) return explain("all-zero assignment at node " + std::to_string(x));
        for (int u : t.neighbors(x)) {
            auto r = dummy_restriction(t.nodes[x].pres, v, t.dummies(x, u));
            if (s.count(u)) {
                if (r.empty() && x < u)
                    return explain("zero restriction on the internal tree edge (" +
                                   std::to_string(x) + "," + std::to_string(u) + ")");
                auto r2 = dummy_restriction(t.nodes[u].pres, p.assignment.at(u), t.dummies(x, u));
                if (r != r2)
                    return explain("restrictions disagree across tree edge (" +
                                   std::to_string(x) + "," + std::to_string(u) + ")");
            } else {
                if (!r.empty())
                    return explain("nonzero restriction toward the outside neighbor " +
                                   std::to_string(u));
            }
        }
    }
    return true;
}

EdgeSet underlying(const TreeOfPresentations& t, const PreVector& p) {
    EdgeSet out(t.num_real);
    for (int x : p.subtree) {
        const auto& pres = t.nodes[x].pres;
        for (int e : p.assignment.at(x).ids())
            if (pres.global_ids[e] >= 0) out.set(int(pres.global_ids[e]));
    }
    return out;
}

std::vector<PreVector> enumerate_prevectors(const TreeOfPresentations& t, int max_subtree,
                                            bool covector, size_t cap) {
    int n = int(t.nodes.size());
    std::vector<PreVector> out;

    // enumerate connected subtrees with a fixed minimum node
    std::vector<std::vector<int>> subtrees;
    std::function<void(std::vector<int>&, std::set<int>&, int)> grow =
        [&](std::vector<int>& cur, std::set<int>& frontier_banned, int root) {
            subtrees.push_back(cur);
            if (int(cur.size()) >= max_subtree) return;
            std::set<int> cand;
            for (int x : cur)
                for (int u : t.neighbors(x))
                    if (u > root && !std::count(cur.begin(), cur.end(), u) &&
                        !frontier_banned.count(u))
                        cand.insert(u);
            std::set<int> banned_here;
            for (int u : cand) {
                cur.push_back(u);
                std::set<int> next_banned = frontier_banned;
                for (int w : banned_here) next_banned.insert(w);
                grow(cur, next_banned, root);
                cur.pop_back();
                banned_here.insert(u);
                frontier_banned.insert(u);
            }
            for (int u : banned_here) frontier_banned.erase(u);
        };
    for (int r = 0; r < n; ++r) {
        std::vector<int> cur{r};
        std::set<int> banned;
        grow(cur, banned, r);
    }

    for (auto& sub : subtrees) {
        std::vector<int> nodes = sub;
        std::sort(nodes.begin(), nodes.end());
        std::set<int> s(nodes.begin(), nodes.end());
        // assign in BFS order from the first node
        std::vector<int> order;
        {
            std::set<int> seen{nodes[0]};
            std::vector<int> stack{nodes[0]};
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                order.push_back(x);
                for (int u : t.neighbors(x))
                    if (s.count(u) && !seen.count(u)) {
                        seen.insert(u);
                        stack.push_back(u);
                    }
            }
        }
        PreVector p;
        p.covector = covector;
        p.subtree = nodes;
        std::function<bool(size_t)> assign = [&](size_t k) -> bool {
            if (out.size() >= cap) return true;
            if (k == order.size()) {
                out.push_back(p);
                return false;
            }
            int x = order[k];
            const auto& fam = covector ? t.nodes[x].pres.covectors : t.nodes[x].pres.vectors;
            for (const EdgeSet& v : fam) {
                if (v.empty()) continue;
                bool ok = true;
                for (int u : t.neighbors(x)) {
                    auto r = dummy_restriction(t.nodes[x].pres, v, t.dummies(x, u));
                    if (!s.count(u)) {
                        if (!r.empty()) ok = false;
                    } else if (p.assignment.count(u)) {
                        auto r2 =
                            dummy_restriction(t.nodes[u].pres, p.assignment.at(u), t.dummies(x, u));
                        if (r != r2 || r.empty()) ok = false;
                    }
                    if (!ok) break;
                }
                if (!ok) continue;
                p.assignment[x] = v;
                if (assign(k + 1)) return true;
                p.assignment.erase(x);
            }
            return false;
        };
        if (assign(0)) break;
    }
    if (out.size() >= cap) throw std::runtime_error("enumerate_prevectors: cap exceeded");
    return out;
}

namespace {

std::vector<EdgeSet> gf2_span(int ground, const std::vector<EdgeSet>& gens, size_t cap) {
    std::vector<EdgeSet> basis;
    for (EdgeSet g : gens) {
        for (const EdgeSet& b : basis) {
            int lead = b.lowest();
            if (lead >= 0 && g.test(lead)) g ^= b;
        }
        if (!g.empty()) {
            basis.push_back(g);
            std::sort(basis.begin(), basis.end(),
                      [](const EdgeSet& a, const EdgeSet& b) { return a.lowest() < b.lowest(); });
        }
    }
    if ((size_t{1} << basis.size()) > cap)
        throw std::runtime_error("vector space too large to enumerate");
    std::vector<EdgeSet> out{EdgeSet(ground)};
    for (const EdgeSet& b : basis) {
        size_t sz = out.size();
        for (size_t i = 0; i < sz; ++i) out.push_back(out[i] ^ b);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

std::vector<EdgeSet> vector_space(const TreeOfPresentations& t, bool covector, size_t cap) {
    auto pvs = enumerate_prevectors(t, int(t.nodes.size()), covector);
    std::vector<EdgeSet> gens;
    for (auto& p : pvs) gens.push_back(underlying(t, p));
    return gf2_span(t.num_real, gens, cap);
}

std::vector<EdgeSet> bounded_psi_vectors(const TreeOfPresentations& t, int max_terms,
                                         int max_subtree, bool covector) {
    auto pvs = enumerate_prevectors(t, max_subtree, covector);
    std::vector<EdgeSet> gens;
    for (auto& p : pvs) gens.push_back(underlying(t, p));
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    std::set<EdgeSet> out{EdgeSet(t.num_real)};
    std::vector<EdgeSet> frontier{EdgeSet(t.num_real)};
    for (int round = 0; round < max_terms; ++round) {
        std::vector<EdgeSet> next;
        for (const EdgeSet& cur : frontier)
            for (const EdgeSet& g : gens) {
                EdgeSet x = cur ^ g;
                if (out.insert(x).second) next.push_back(x);
            }
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    return {out.begin(), out.end()};
}

PreVector cycle_to_prevector(const TreeOfPresentations& t, const Multigraph& g,
                             const TreeDecomposition& td, const EdgeSet& cycle,
                             bool matching_reversed) {
    int n = int(td.nodes.size());
    std::vector<EdgeSet> x;  // local torso sets
    std::vector<Torso> torsos;
    for (int i = 0; i < n; ++i) {
        torsos.push_back(torso(g, td, i));
        x.push_back(EdgeSet(torsos[i].graph.num_edges()));
    }
    // y(t): the cycle's edges inside each part
    for (int i = 0; i < n; ++i)
        for (int e = 0; e < torsos[i].graph.num_edges(); ++e)
            if (torsos[i].real_origin[e] >= 0 && cycle.test(torsos[i].real_origin[e]))
                x[i].set(e);

    // matchings on the odd-degree adhesion vertices, per tree edge
    for (int child = 1; child < n; ++child) {
        int parent = td.nodes[child].parent;
        std::vector<Vertex> z;
        for (Vertex v : td.adhesion(parent, child))
            if (torsos[child].graph.degree(v, x[child]) % 2 != 0) z.push_back(v);
        if (z.size() % 2 != 0)
            throw std::runtime_error("cycle_to_prevector: |Z(st)| is odd (broken decomposition)");
        std::sort(z.begin(), z.end());
        std::vector<std::pair<Vertex, Vertex>> pairs;
        if (!matching_reversed) {
            for (size_t i = 0; i + 1 < z.size(); i += 2) pairs.push_back({z[i], z[i + 1]});
        } else {
            for (size_t i = 0; i < z.size() / 2; ++i)
                pairs.push_back({z[i], z[z.size() - 1 - i]});
        }
        auto flip_pair = [&](int node, int other, Vertex a, Vertex b) {
            for (int e = 0; e < torsos[node].graph.num_edges(); ++e) {
                if (torsos[node].real_origin[e] >= 0) continue;
                auto [u, va, vb] = torsos[node].virtual_info.at(e);
                if (u == other && ((va == a && vb == b) || (va == b && vb == a))) {
                    if (x[node].test(e)) x[node].reset(e);
                    else x[node].set(e);
                    return;
                }
            }
            throw std::logic_error("matching pair without a virtual edge");
        };
        for (auto [a, b] : pairs) {
            flip_pair(child, parent, a, b);
            flip_pair(parent, child, a, b);
        }
    }

    PreVector p;
    p.covector = false;
    for (int i = 0; i < n; ++i)
        if (!x[i].empty()) {
            p.subtree.push_back(i);
            p.assignment[i] = x[i];
        }
    return p;
}

PreVector bond_to_precovector(const TreeOfPresentations& t, const Multigraph& g,
                              const TreeDecomposition& td, const EdgeSet& bond,
                              const std::vector<Vertex>& side_a) {
    (void)t;
    std::set<Vertex> a(side_a.begin(), side_a.end());
    // sanity: the bond is exactly the crossing set of (A, V-A)
    Cut c = induced_cut(g, side_a);
    if (!(c.edges == bond))
        throw std::invalid_argument("bond_to_precovector: side does not induce the bond");
    int n = int(td.nodes.size());
    PreVector p;
    p.covector = true;
    for (int i = 0; i < n; ++i) {
        Torso h = torso(g, td, i);
        bool meets_a = false, meets_b = false;
        for (Vertex v : td.nodes[i].vertices) (a.count(v) ? meets_a : meets_b) = true;
        if (!meets_a || !meets_b) continue;
        EdgeSet xe(h.graph.num_edges());
        for (int e = 0; e < h.graph.num_edges(); ++e) {
            auto [u, v] = h.graph.endpoints(e);
            if (a.count(u) != a.count(v)) xe.set(e);
        }
        p.subtree.push_back(i);
        p.assignment[i] = xe;
    }
    return p;
}

OrthogonalityReport orthogonality_check(const std::vector<EdgeSet>& vectors,
                                        const std::vector<EdgeSet>& covectors) {
    OrthogonalityReport r;
    for (auto& v : vectors)
        for (auto& w : covectors) {
            ++r.pairs;
            if (v.intersection_count(w) % 2 != 0) {
                r.pass = false;
                r.violation = "odd intersection of " + v.to_string() + " and " + w.to_string();
                return r;
            }
        }
    return r;
}

CircuitSystem glued_matroid(const TreeOfPresentations& t) {
    CircuitSystem s;
    s.ground = t.num_real;
    s.circuits = minimal_nonempty(vector_space(t, false));
    s.cocircuits = minimal_nonempty(vector_space(t, true));
    s.normalize();
    return s;
}

// ---------------------------------------------------------------------------
// lazy ladder tree
// ---------------------------------------------------------------------------

namespace {

struct LadderNode {
    Multigraph torso;                // l_i, u_i, l_{i+1}, u_{i+1}
    std::vector<long long> gids;     // real codes >= 0, dummies -(i+1) for pair at column i
    BinaryPresentation pres;
    int left_dummy = -1, right_dummy = -1;  // local indices, -1 when absent
};

LadderNode make_ladder_node(int i) {
    LadderNode nd;
    Vertex li = 2 * i, ui = 2 * i + 1, lj = 2 * (i + 1), uj = 2 * (i + 1) + 1;
    nd.torso.add_vertex(li);
    nd.torso.add_vertex(ui);
    nd.torso.add_vertex(lj);
    nd.torso.add_vertex(uj);
    nd.torso.add_edge(li, lj);  // lrail(i)
    nd.gids.push_back(3LL * i);
    nd.torso.add_edge(ui, uj);  // urail(i)
    nd.gids.push_back(3LL * i + 1);
    nd.torso.add_edge(ui, li);  // rung(i)
    nd.gids.push_back(3LL * i + 2);
    if (i >= 1) {
        nd.left_dummy = nd.torso.add_edge(ui, li);  // dummy pair at column i
        nd.gids.push_back(-(long long)(i + 1));
    }
    nd.right_dummy = nd.torso.add_edge(uj, lj);  // dummy pair at column i+1
    nd.gids.push_back(-(long long)(i + 2));
    nd.pres = canonical_presentation(finite_cycle_matroid(nd.torso), nd.gids);
    return nd;
}

// real family codes of a local set at node i
std::vector<long long> real_codes(const LadderNode& nd, const EdgeSet& v) {
    std::vector<long long> out;
    for (int e : v.ids())
        if (nd.gids[e] >= 0) out.push_back(nd.gids[e]);
    return out;
}

}  // namespace

LadderTomReport ladder_lazy_tom(int window, bool psi_has_end, int max_subtree) {
    if (window < 3) throw std::invalid_argument("ladder_lazy_tom: window too small");
    LadderTomReport rep;
    rep.window = window;
    std::vector<LadderNode> nodes;
    for (int i = 0; i < window; ++i) nodes.push_back(make_ladder_node(i));

    auto left_r = [&](int i, const EdgeSet& v) {
        return nodes[i].left_dummy >= 0 && v.test(nodes[i].left_dummy);
    };
    auto right_r = [&](int i, const EdgeSet& v) { return v.test(nodes[i].right_dummy); };

    struct Enumerated {
        bool tail = false;
        int start = 0;
        std::vector<EdgeSet> assign;  // nodes start..start+assign.size()-1
    };
    auto enumerate = [&](bool covector) {
        std::vector<Enumerated> out;
        for (int a = 0; a < window; ++a) {
            // grow intervals [a, b]; assignments with zero left restriction at a
            std::vector<std::vector<EdgeSet>> partial;
            const auto& fam0 = covector ? nodes[a].pres.covectors : nodes[a].pres.vectors;
            for (const EdgeSet& v : fam0)
                if (!v.empty() && !left_r(a, v)) partial.push_back({v});
            for (int b = a; b < window && int(b - a) < std::max(max_subtree, window); ++b) {
                std::vector<std::vector<EdgeSet>> next;
                for (auto& asgn : partial) {
                    const EdgeSet& last = asgn.back();
                    if (!right_r(a + int(asgn.size()) - 1, last)) {
                        // finite pre-vector [a, a+len-1]
                        if (int(asgn.size()) <= max_subtree)
                            out.push_back({false, a, asgn});
                    } else if (a + int(asgn.size()) == window) {
                        // reaches the window edge with a live right dummy:
                        // candidate tail if the last two assignments repeat
                        if (psi_has_end != covector && asgn.size() >= 2 &&
                            asgn[asgn.size() - 1] == asgn[asgn.size() - 2])
                            out.push_back({true, a, asgn});
                    } else {
                        int i = a + int(asgn.size());
                        const auto& fam = covector ? nodes[i].pres.covectors
                                                   : nodes[i].pres.vectors;
                        for (const EdgeSet& v : fam) {
                            if (v.empty()) continue;
                            if (left_r(i, v) != true) continue;  // must match the live dummy
                            auto ext = asgn;
                            ext.push_back(v);
                            next.push_back(std::move(ext));
                        }
                    }
                }
                partial = std::move(next);
                if (partial.empty()) break;
            }
        }
        return out;
    };

    auto vecs = enumerate(false);
    auto covecs = enumerate(true);

    // underlying sets over family codes
    struct U {
        std::set<long long> finite;
        bool tail = false;
        int period_start = 0;
        std::vector<long long> pattern;  // codes at the pattern column
        bool contains(long long c) const {
            if (finite.count(c)) return true;
            if (!tail) return false;
            int col = int(c / 3);
            if (col < period_start) return false;
            long long base = c - 3LL * (col - period_start);
            return std::count(pattern.begin(), pattern.end(), base) > 0;
        }
    };
    auto underlying_of = [&](const Enumerated& e) {
        U u;
        int upto = int(e.assign.size()) - (e.tail ? 1 : 0);
        for (int k = 0; k < upto; ++k)
            for (long long c : real_codes(nodes[e.start + k], e.assign[k])) u.finite.insert(c);
        if (e.tail) {
            u.tail = true;
            int pcol = e.start + int(e.assign.size()) - 1;
            u.period_start = pcol;
            u.pattern = real_codes(nodes[pcol], e.assign.back());
        }
        return u;
    };

    std::vector<U> uv, uw;
    for (auto& e : vecs) {
        uv.push_back(underlying_of(e));
        if (e.tail) {
            TailPreVector tp;
            tp.start_node = e.start;
            tp.window = e.assign;
            auto& u = uv.back();
            tp.underlying.finite = {u.finite.begin(), u.finite.end()};
            tp.underlying.period_start = u.period_start;
            tp.underlying.pattern = u.pattern;
            rep.tail_vectors.push_back(tp);
        } else {
            EdgeSet s(3 * window + 3);
            for (long long c : uv.back().finite) s.set(int(c));
            rep.finite_vectors.push_back(s);
        }
    }
    for (auto& e : covecs) uw.push_back(underlying_of(e));

    // orthogonality: every pair must intersect finitely and evenly
    int horizon_col = 4 * window + 8;
    auto members = [&](const U& u) {
        std::vector<long long> out(u.finite.begin(), u.finite.end());
        if (u.tail)
            for (int col = u.period_start; col <= horizon_col; ++col)
                for (long long p : u.pattern) out.push_back(p + 3LL * (col - u.period_start));
        return out;
    };
    for (auto& v : uv)
        for (auto& w : uw) {
            ++rep.pairs_checked;
            if (v.tail && w.tail) {
                rep.orthogonality_pass = false;
                rep.note = "two periodic tails admitted on one end";
                return rep;
            }
            const U& fin = v.tail ? w : v;
            const U& other = v.tail ? v : w;
            int inter = 0;
            for (long long c : members(fin))
                if (other.contains(c)) ++inter;
            if (inter % 2 != 0) {
                rep.orthogonality_pass = false;
                rep.note = "odd intersection between an enumerated vector and covector";
                return rep;
            }
        }
    rep.note = "bounded enumeration; results are partial by construction";
    return rep;
}

}  // namespace psimat
