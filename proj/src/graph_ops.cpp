#include "psimat/graph_ops.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace psimat {

namespace {

void check_limit(const Multigraph& g, int edge_limit, const char* op) {
    if (g.num_edges() > edge_limit) {
        std::ostringstream os;
        os << op << ": graph has " << g.num_edges() << " edges, enumeration limit is "
           << edge_limit;
        throw std::runtime_error(os.str());
    }
    if (g.num_vertices() > 30) throw std::runtime_error(std::string(op) + ": too many vertices");
}

// Cut edges of the bipartition encoded by `mask` over vertex positions.
EdgeSet cut_of_mask(const Multigraph& g, const std::map<Vertex, int>& pos, uint32_t mask) {
    EdgeSet s(g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) {
        auto [u, v] = g.endpoints(e);
        if (((mask >> pos.at(u)) & 1) != ((mask >> pos.at(v)) & 1)) s.set(e);
    }
    return s;
}

// True iff all cut edges' endpoints on each side lie in a single component
// of that side's induced subgraph (the bond characterization).
bool one_touching_component_each_side(const Multigraph& g, const std::map<Vertex, int>& pos,
                                      uint32_t mask, const EdgeSet& cut) {
    int n = g.num_vertices();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int e = 0; e < g.num_edges(); ++e) {
        if (cut.test(e)) continue;
        auto [u, v] = g.endpoints(e);
        int pu = pos.at(u), pv = pos.at(v);
        if (((mask >> pu) & 1) == ((mask >> pv) & 1)) parent[find(pu)] = find(pv);
    }
    int touch_a = -1, touch_b = -1;
    for (int e : cut.ids()) {
        auto [u, v] = g.endpoints(e);
        int pu = pos.at(u), pv = pos.at(v);
        if (!((mask >> pu) & 1)) std::swap(pu, pv);  // pu is on the mask side
        int ra = find(pu), rb = find(pv);
        if (touch_a == -1) touch_a = ra;
        else if (touch_a != ra) return false;
        if (touch_b == -1) touch_b = rb;
        else if (touch_b != rb) return false;
    }
    return true;
}

std::vector<Cut> dedupe_cuts(std::vector<Cut> cuts) {
    std::sort(cuts.begin(), cuts.end(),
              [](const Cut& a, const Cut& b) { return a.edges < b.edges; });
    std::vector<Cut> out;
    for (auto& c : cuts)
        if (out.empty() || !(out.back().edges == c.edges)) out.push_back(std::move(c));
    return out;
}

std::vector<Vertex> side_of_mask(const Multigraph& g, uint32_t mask) {
    std::vector<Vertex> side;
    const auto& vs = g.vertices();
    for (int i = 0; i < int(vs.size()); ++i)
        if ((mask >> i) & 1) side.push_back(vs[i]);
    return side;
}

}  // namespace

std::vector<Cut> bonds(const Multigraph& g, int edge_limit) {
    check_limit(g, edge_limit, "bonds");
    int n = g.num_vertices();
    if (n == 0 || g.num_edges() == 0) return {};
    std::map<Vertex, int> pos;
    for (int i = 0; i < n; ++i) pos[g.vertices()[i]] = i;
    uint32_t total = uint32_t{1} << (n - 1);  // fix vertex 0's side
    std::vector<Cut> found;
#ifdef _OPENMP
#pragma omp parallel
    {
        std::vector<Cut> local;
#pragma omp for schedule(dynamic, 64)
        for (int64_t m = 1; m < int64_t(total); ++m) {
            uint32_t mask = uint32_t(m) << 1;
            EdgeSet cut = cut_of_mask(g, pos, mask);
            if (cut.empty()) continue;
            if (one_touching_component_each_side(g, pos, mask, cut))
                local.push_back(Cut{cut, side_of_mask(g, mask)});
        }
#pragma omp critical
        found.insert(found.end(), local.begin(), local.end());
    }
#else
    for (uint32_t m = 1; m < total; ++m) {
        uint32_t mask = m << 1;
        EdgeSet cut = cut_of_mask(g, pos, mask);
        if (cut.empty()) continue;
        if (one_touching_component_each_side(g, pos, mask, cut))
            found.push_back(Cut{cut, side_of_mask(g, mask)});
    }
#endif
    return dedupe_cuts(std::move(found));
}

std::vector<EdgeSet> cycle_edge_sets(const Multigraph& g, int edge_limit) {
    check_limit(g, edge_limit, "cycle_edge_sets");
    std::set<EdgeSet> out;
    // Loops are 1-cycles.
    for (int e = 0; e < g.num_edges(); ++e)
        if (g.is_loop(e)) out.insert(EdgeSet(g.num_edges(), {e}));
    // Walk simple vertex paths, closing back to the start over an unused edge.
    for (Vertex start : g.vertices()) {
        std::vector<EdgeId> path_edges;
        std::unordered_set<Vertex> on_path{start};
        auto extend = [&](auto&& self, Vertex at) -> void {
            for (EdgeId e : g.edges_at(at)) {
                if (g.is_loop(e)) continue;
                if (!path_edges.empty() && e == path_edges.back()) continue;
                auto [a, b] = g.endpoints(e);
                Vertex next = (a == at) ? b : a;
                if (next == start) {
                    if (path_edges.empty()) continue;  // would be a single non-loop edge
                    EdgeSet c(g.num_edges());
                    for (EdgeId pe : path_edges) c.set(pe);
                    if (!c.test(e)) {
                        c.set(e);
                        out.insert(c);
                    }
                    continue;
                }
                if (next < start || on_path.count(next)) continue;  // canonical: start is minimum
                path_edges.push_back(e);
                on_path.insert(next);
                self(self, next);
                on_path.erase(next);
                path_edges.pop_back();
            }
        };
        extend(extend, start);
    }
    return {out.begin(), out.end()};
}

namespace reference {

std::vector<Cut> bonds(const Multigraph& g, int edge_limit) {
    check_limit(g, edge_limit, "reference::bonds");
    int n = g.num_vertices();
    if (n == 0 || g.num_edges() == 0) return {};
    std::map<Vertex, int> pos;
    for (int i = 0; i < n; ++i) pos[g.vertices()[i]] = i;
    std::vector<Cut> cuts;
    for (uint32_t m = 1; m < (uint32_t{1} << (n - 1)); ++m) {
        uint32_t mask = m << 1;
        EdgeSet c = cut_of_mask(g, pos, mask);
        if (!c.empty()) cuts.push_back(Cut{c, side_of_mask(g, mask)});
    }
    cuts = dedupe_cuts(std::move(cuts));
    std::vector<Cut> minimal;
    for (size_t i = 0; i < cuts.size(); ++i) {
        bool is_min = true;
        for (size_t j = 0; j < cuts.size() && is_min; ++j)
            if (j != i && cuts[j].edges.proper_subset_of(cuts[i].edges)) is_min = false;
        if (is_min) minimal.push_back(cuts[i]);
    }
    return minimal;
}

std::vector<EdgeSet> cycle_edge_sets(const Multigraph& g, int edge_limit) {
    check_limit(g, edge_limit, "reference::cycle_edge_sets");
    int m = g.num_edges();
    if (m == 0) return {};
    std::vector<std::pair<int, int>> ends(m);
    std::map<Vertex, int> pos;
    for (int i = 0; i < g.num_vertices(); ++i) pos[g.vertices()[i]] = i;
    for (int e = 0; e < m; ++e) {
        auto [u, v] = g.endpoints(e);
        ends[e] = {pos[u], pos[v]};
    }
    int n = g.num_vertices();
    uint64_t total = uint64_t{1} << m;
    std::vector<EdgeSet> found;
#ifdef _OPENMP
#pragma omp parallel
    {
        std::vector<EdgeSet> local;
        std::vector<int> deg(n), parent(n);
#pragma omp for schedule(dynamic, 1024)
        for (int64_t mask = 1; mask < int64_t(total); ++mask) {
#else
    {
        std::vector<EdgeSet> local;
        std::vector<int> deg(n), parent(n);
        for (int64_t mask = 1; mask < int64_t(total); ++mask) {
#endif
            std::fill(deg.begin(), deg.end(), 0);
            std::iota(parent.begin(), parent.end(), 0);
            auto find = [&](int x) {
                while (parent[x] != x) x = parent[x] = parent[parent[x]];
                return x;
            };
            bool ok = true;
            int nonloop = 0, loops = 0;
            for (int e = 0; e < m && ok; ++e) {
                if (!((mask >> e) & 1)) continue;
                auto [a, b] = ends[e];
                if (a == b) {
                    ++loops;
                } else {
                    deg[a]++;
                    deg[b]++;
                    if (deg[a] > 2 || deg[b] > 2) ok = false;
                    parent[find(a)] = find(b);
                    ++nonloop;
                }
            }
            if (!ok) continue;
            // A simple cycle is either one loop alone or a connected
            // 2-regular nonloop set.
            if (loops > 0) {
                if (loops == 1 && nonloop == 0) {
                    EdgeSet s(m);
                    s.set(int(__builtin_ctzll(uint64_t(mask))));
                    local.push_back(s);
                }
                continue;
            }
            int root = -1;
            for (int i = 0; i < n && ok; ++i) {
                if (deg[i] == 1) ok = false;
                if (deg[i] == 2) {
                    int r = find(i);
                    if (root == -1) root = r;
                    else if (root != r) ok = false;
                }
            }
            if (!ok || root == -1) continue;
            EdgeSet s(m);
            for (int e = 0; e < m; ++e)
                if ((mask >> e) & 1) s.set(e);
            local.push_back(s);
        }
#ifdef _OPENMP
#pragma omp critical
#endif
        found.insert(found.end(), local.begin(), local.end());
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
}

}  // namespace reference

Contraction contract_to(const Multigraph& g, const std::vector<Vertex>& w) {
    std::set<Vertex> keep(w.begin(), w.end());
    for (Vertex v : w)
        if (!g.has_vertex(v)) throw std::invalid_argument("contract_to: vertex not in graph");

    // Components of G - W.
    std::map<Vertex, int> pos;
    int next = 0;
    for (Vertex v : g.vertices())
        if (!keep.count(v)) pos[v] = next++;
    std::vector<int> parent(next);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int e = 0; e < g.num_edges(); ++e) {
        auto [u, v] = g.endpoints(e);
        if (!keep.count(u) && !keep.count(v)) parent[find(pos[u])] = find(pos[v]);
    }
    // Component ids ordered by smallest member vertex id.
    std::map<int, std::vector<Vertex>> comp_members;
    for (auto& [v, p] : pos) comp_members[find(p)].push_back(v);
    std::vector<std::vector<Vertex>> comps;
    for (auto& [root, members] : comp_members) {
        std::sort(members.begin(), members.end());
        comps.push_back(members);
    }
    std::sort(comps.begin(), comps.end());

    Contraction out;
    std::vector<Vertex> sorted_w(keep.begin(), keep.end());
    for (Vertex v : sorted_w) {
        out.graph.add_vertex(v, g.label(v));
        out.vertex_image[v] = v;
    }
    for (int c = 0; c < int(comps.size()); ++c) {
        Vertex cv = -1 - c;
        std::string lbl = "{";
        for (size_t i = 0; i < comps[c].size(); ++i) {
            if (i) lbl += ",";
            lbl += g.vertex_name(comps[c][i]);
            out.vertex_image[comps[c][i]] = cv;
        }
        out.graph.add_vertex(cv, lbl + "}");
        out.branch_sets[cv] = comps[c];
    }
    for (int e = 0; e < g.num_edges(); ++e) {
        auto [u, v] = g.endpoints(e);
        bool ku = keep.count(u), kv = keep.count(v);
        if (!ku && !kv) continue;  // contracted away
        out.graph.add_edge(out.vertex_image[u], out.vertex_image[v]);
        out.edge_origin.push_back(e);
    }
    return out;
}

Contraction project(const Contraction& g_plus_w, const std::vector<Vertex>& u) {
    for (Vertex v : u) {
        if (!g_plus_w.graph.has_vertex(v))
            throw std::invalid_argument("project: u is not a subset of w");
        if (v < 0) throw std::invalid_argument("project: u contains a component vertex");
    }
    Contraction c = contract_to(g_plus_w.graph, u);
    // Merge branch sets: a new component vertex absorbs the branch sets of
    // any old component vertices it swallowed. Components are renumbered by
    // their merged branch set so that projecting in stages and projecting
    // directly yield identical vertex ids.
    std::map<Vertex, std::vector<Vertex>> merged;
    for (auto& [cv, members] : c.branch_sets) {
        std::vector<Vertex>& b = merged[cv];
        for (Vertex m : members) {
            if (m < 0) {
                auto it = g_plus_w.branch_sets.find(m);
                if (it != g_plus_w.branch_sets.end())
                    b.insert(b.end(), it->second.begin(), it->second.end());
                else
                    b.push_back(m);
            } else {
                b.push_back(m);
            }
        }
        std::sort(b.begin(), b.end());
    }
    std::vector<std::pair<std::vector<Vertex>, Vertex>> order;
    for (auto& [cv, b] : merged) order.push_back({b, cv});
    std::sort(order.begin(), order.end());
    std::map<Vertex, Vertex> rename;
    for (int i = 0; i < int(order.size()); ++i) rename[order[i].second] = -1 - i;

    Contraction out;
    for (Vertex v : c.graph.vertices())
        if (v >= 0) out.graph.add_vertex(v, c.graph.label(v));
    for (int i = 0; i < int(order.size()); ++i) {
        std::string lbl = "{";
        for (size_t k = 0; k < order[i].first.size(); ++k) {
            if (k) lbl += ",";
            lbl += std::to_string(order[i].first[k]);
        }
        out.graph.add_vertex(-1 - i, lbl + "}");
        out.branch_sets[-1 - i] = order[i].first;
    }
    for (int e = 0; e < c.graph.num_edges(); ++e) {
        auto [a, b] = c.graph.endpoints(e);
        if (a < 0) a = rename[a];
        if (b < 0) b = rename[b];
        out.graph.add_edge(a, b);
    }
    out.edge_origin = c.edge_origin;
    for (Vertex v : g_plus_w.graph.vertices()) {
        Vertex img = c.vertex_image[v];
        out.vertex_image[v] = img < 0 ? rename[img] : img;
    }
    return out;
}

}  // namespace psimat
