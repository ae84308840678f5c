#include "psimat/treedec.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace psimat {

std::vector<Vertex> TreeDecomposition::adhesion(int t, int u) const {
    std::set<Vertex> a(nodes[t].vertices.begin(), nodes[t].vertices.end());
    std::vector<Vertex> out;
    for (Vertex v : nodes[u].vertices)
        if (a.count(v)) out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> TreeDecomposition::children(int t) const {
    std::vector<int> out;
    for (int i = 0; i < int(nodes.size()); ++i)
        if (nodes[i].parent == t) out.push_back(i);
    return out;
}

namespace {

bool connected_in(const Multigraph& g, const std::set<Vertex>& verts) {
    if (verts.size() <= 1) return true;
    std::set<Vertex> seen{*verts.begin()};
    std::vector<Vertex> stack{*verts.begin()};
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (EdgeId e : g.edges_at(v)) {
            auto [a, b] = g.endpoints(e);
            Vertex w = a == v ? b : a;
            if (verts.count(w) && !seen.count(w)) {
                seen.insert(w);
                stack.push_back(w);
            }
        }
    }
    return seen.size() == verts.size();
}

}  // namespace

TreeDecReport verify_treedec(const Multigraph& g, const TreeDecomposition& td,
                             std::optional<int> adhesion_cap) {
    TreeDecReport r;
    auto fail = [&](bool& flag, const std::string& msg) {
        flag = false;
        if (r.pass) {
            r.pass = false;
            r.violation = msg;
        }
    };

    // coverage and edge uniqueness
    std::map<Vertex, std::vector<int>> vertex_nodes;
    std::map<EdgeId, int> edge_count;
    for (int t = 0; t < int(td.nodes.size()); ++t) {
        std::set<Vertex> pv(td.nodes[t].vertices.begin(), td.nodes[t].vertices.end());
        for (Vertex v : pv) vertex_nodes[v].push_back(t);
        for (EdgeId e : td.nodes[t].edges) {
            edge_count[e]++;
            auto [a, b] = g.endpoints(e);
            if (!pv.count(a) || !pv.count(b))
                fail(r.coverage, "part " + std::to_string(t) + " lacks an endpoint of edge " +
                                     g.edge_name(e));
        }
    }
    for (Vertex v : g.vertices())
        if (!vertex_nodes.count(v))
            fail(r.coverage, "vertex " + g.vertex_name(v) + " is in no part");
    for (int e = 0; e < g.num_edges(); ++e) {
        int c = edge_count.count(e) ? edge_count[e] : 0;
        if (c != 1)
            fail(r.edge_unique, "edge " + g.edge_name(e) + " lies in " + std::to_string(c) +
                                    " parts");
    }

    // subtree condition
    for (auto& [v, ns] : vertex_nodes) {
        std::set<int> in(ns.begin(), ns.end());
        std::set<int> seen{ns[0]};
        std::vector<int> stack{ns[0]};
        while (!stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            std::vector<int> nbrs = td.children(t);
            if (td.nodes[t].parent >= 0) nbrs.push_back(td.nodes[t].parent);
            for (int u : nbrs)
                if (in.count(u) && !seen.count(u)) {
                    seen.insert(u);
                    stack.push_back(u);
                }
        }
        if (seen.size() != in.size())
            fail(r.subtree, "nodes containing vertex " + g.vertex_name(v) + " are not a subtree");
    }

    // adhesion sizes
    if (adhesion_cap) {
        for (int t = 1; t < int(td.nodes.size()); ++t) {
            auto a = td.adhesion(td.nodes[t].parent, t);
            if (int(a.size()) > *adhesion_cap)
                fail(r.adhesion_finite, "adhesion at node " + std::to_string(t) + " has size " +
                                            std::to_string(a.size()));
        }
    }

    // up-set connectivity per tree edge
    std::vector<std::set<Vertex>> upset(td.nodes.size());
    for (int t = int(td.nodes.size()) - 1; t >= 0; --t) {
        for (Vertex v : td.nodes[t].vertices) upset[t].insert(v);
        if (td.nodes[t].parent >= 0)
            for (Vertex v : upset[t]) upset[td.nodes[t].parent].insert(v);
    }
    for (int t = 1; t < int(td.nodes.size()); ++t) {
        int p = td.nodes[t].parent;
        std::set<Vertex> u = upset[t];
        for (Vertex v : td.nodes[p].vertices) u.erase(v);
        if (!connected_in(g, u))
            fail(r.upset_connected,
                 "up-set of tree edge (" + std::to_string(p) + "," + std::to_string(t) +
                     ") minus the lower part is disconnected");
    }

    // consecutive adhesions disjoint
    for (int t = 0; t < int(td.nodes.size()); ++t) {
        if (td.nodes[t].parent < 0) continue;
        auto upper = td.adhesion(td.nodes[t].parent, t);
        std::set<Vertex> up(upper.begin(), upper.end());
        for (int c : td.children(t)) {
            for (Vertex v : td.adhesion(t, c))
                if (up.count(v))
                    fail(r.consecutive_disjoint,
                         "vertex " + g.vertex_name(v) + " lies in consecutive adhesions at node " +
                             std::to_string(t));
        }
    }
    return r;
}

Torso torso(const Multigraph& g, const TreeDecomposition& td, int node) {
    Torso t;
    t.node = node;
    const auto& nd = td.nodes[node];
    for (Vertex v : nd.vertices) t.graph.add_vertex(v, g.label(v));
    for (EdgeId e : nd.edges) {
        auto [a, b] = g.endpoints(e);
        t.graph.add_edge(a, b);
        t.real_origin.push_back(e);
    }
    std::vector<int> nbrs = td.children(node);
    if (nd.parent >= 0) nbrs.push_back(nd.parent);
    std::sort(nbrs.begin(), nbrs.end());
    for (int u : nbrs) {
        auto adh = td.adhesion(node, u);
        for (size_t i = 0; i < adh.size(); ++i)
            for (size_t j = i + 1; j < adh.size(); ++j) {
                int e = t.graph.add_edge(adh[i], adh[j]);
                t.real_origin.push_back(-1);
                t.virtual_info[e] = {u, adh[i], adh[j]};
            }
    }
    return t;
}

std::pair<Multigraph, TreeDecomposition> c4_two_part() {
    Multigraph g = Multigraph::with_vertices(4);  // a=0 b=1 c=2 d=3
    g.add_edge(0, 1);                             // ab
    g.add_edge(1, 2);                             // bc
    g.add_edge(2, 3);                             // cd
    g.add_edge(3, 0);                             // da
    TreeDecomposition td;
    td.nodes.push_back({-1, {0, 1, 2}, {0, 1}});
    td.nodes.push_back({0, {0, 2, 3}, {2, 3}});
    return {g, td};
}

TreeDecomposition ladder_prefix_decomposition(const Slice& prefix) {
    if (prefix.family->name() != "ladder")
        throw std::invalid_argument("ladder_prefix_decomposition: wrong family");
    int n = prefix.width;
    if (n < 2) throw std::invalid_argument("need at least two columns");
    TreeDecomposition td;
    auto local = [&](long long code) {
        int e = prefix.local(code);
        if (e < 0) throw std::logic_error("missing edge in prefix");
        return e;
    };
    for (int i = 0; i + 1 < n; ++i) {
        TreeDecomposition::Node nd;
        nd.parent = i - 1;
        nd.vertices = {2 * i, 2 * i + 1, 2 * (i + 1), 2 * (i + 1) + 1};
        nd.edges = {local(3 * i), local(3 * i + 1), local(3 * i + 2)};
        if (i + 2 == n) nd.edges.push_back(local(3 * (i + 1) + 2));  // last rung
        td.nodes.push_back(nd);
    }
    return td;
}

// ---------------------------------------------------------------------------
// registered canonical decompositions
// ---------------------------------------------------------------------------

namespace {

// Helper: only vertices/edges present in the prefix survive. Raw nodes are
// listed parent-before-child and must stay nonempty under restriction.
TreeDecomposition restrict_nodes(
    const Slice& prefix,
    const std::vector<std::tuple<int, std::vector<Vertex>, std::vector<long long>>>& raw) {
    TreeDecomposition td;
    for (auto& [parent, verts, codes] : raw) {
        TreeDecomposition::Node nd;
        for (Vertex v : verts)
            if (prefix.graph.has_vertex(v)) nd.vertices.push_back(v);
        for (long long c : codes) {
            int e = prefix.local(c);
            if (e >= 0) nd.edges.push_back(e);
        }
        if (nd.vertices.empty())
            throw std::logic_error("registered decomposition: empty restricted part");
        nd.parent = parent;
        td.nodes.push_back(nd);
    }
    return td;
}

}  // namespace

CanonicalTreeDecomposition canonical_treedec(const LazyFamily& f) {
    CanonicalTreeDecomposition c;
    c.family = &f;
    const std::string name = f.name();
    if (name == "ladder") {
        c.adhesion_cap = 2;
        c.shape = "ray of column parts";
        c.rayless = false;
        c.tree_end_chains = [](int) { return 1; };
        c.materialize = [](const Slice& prefix) {
            std::vector<std::tuple<int, std::vector<Vertex>, std::vector<long long>>> raw;
            int n = prefix.width;
            for (int i = 0; i < n; ++i) {
                std::vector<Vertex> verts{2 * i, 2 * i + 1, 2 * (i + 1), 2 * (i + 1) + 1};
                std::vector<long long> codes{3LL * i, 3LL * i + 1, 3LL * i + 2};
                raw.push_back({i - 1, verts, codes});
            }
            return restrict_nodes(prefix, raw);
        };
    } else if (name == "comb") {
        c.adhesion_cap = 1;
        c.shape = "ray of spine parts";
        c.tree_end_chains = [](int) { return 1; };
        c.materialize = [](const Slice& prefix) {
            // part i: spine step i plus the tooth at column i+1 (the tooth at
            // column 0 joins part 0); teeth one part ahead keep the up-sets
            // connected.
            std::vector<std::tuple<int, std::vector<Vertex>, std::vector<long long>>> raw;
            for (int i = 0; i < prefix.width; ++i) {
                std::vector<Vertex> verts{2 * i, 2 * (i + 1), 2 * (i + 1) + 1};
                std::vector<long long> codes{2LL * i, 2LL * (i + 1) + 1};
                if (i == 0) {
                    verts.push_back(1);  // t0
                    codes.push_back(1);  // tooth(0)
                }
                raw.push_back({i - 1, verts, codes});
            }
            return restrict_nodes(prefix, raw);
        };
    } else if (name == "double-ray") {
        c.adhesion_cap = 1;
        c.shape = "double ray of edge parts";
        c.tree_end_chains = [](int) { return 2; };
        c.materialize = [](const Slice& prefix) {
            // nodes: 0 for edge e(0); then alternating right i, left -i
            std::vector<std::tuple<int, std::vector<Vertex>, std::vector<long long>>> raw;
            auto enc = [](int i) { return i >= 0 ? 2 * i : -2 * i - 1; };
            auto enc_e = [](int i) { return i >= 0 ? 2LL * i : -2LL * i - 1; };
            int n = prefix.width;
            raw.push_back({-1, {enc(0), enc(1)}, {enc_e(0)}});
            int right = 0, left = 0;  // node indices of the current extremes
            std::vector<int> ids{0};
            int next = 1;
            for (int i = 1; i < n; ++i) {
                raw.push_back({right, {enc(i), enc(i + 1)}, {enc_e(i)}});
                right = next++;
                raw.push_back({left, {enc(-i + 1), enc(-i)}, {enc_e(-i)}});
                left = next++;
            }
            return restrict_nodes(prefix, raw);
        };
    } else if (name == "dominated-ladder") {
        c.adhesion_cap = 3;
        c.shape = "star with an accumulating center part holding d";
        c.rayless = true;
        c.tree_end_chains = [](int) { return 0; };
        c.materialize = [](const Slice& prefix) {
            // center: every vertex; edges: all spokes and upper rails.
            // leaf j: {u_j, l_j, l_{j+1}} with rung(j) and lrail(j).
            std::vector<std::tuple<int, std::vector<Vertex>, std::vector<long long>>> raw;
            int n = prefix.width;
            std::vector<Vertex> all{0};
            std::vector<long long> center_codes;
            for (int i = 0; i < n; ++i) {
                all.push_back(2 * i + 1);
                all.push_back(2 * i + 2);
                center_codes.push_back(4LL * i + 3);  // spoke(i)
                center_codes.push_back(4LL * i + 1);  // urail(i)
            }
            raw.push_back({-1, all, center_codes});
            for (int j = 0; j < n; ++j) {
                raw.push_back({0,
                               {2 * j + 2, 2 * j + 1, 2 * (j + 1) + 1},
                               {4LL * j + 2, 4LL * j}});
            }
            return restrict_nodes(prefix, raw);
        };
    } else if (name == "grid") {
        c.adhesion_cap = 64;  // shell size grows but every adhesion is finite
        c.shape = "ray of L-shell parts";
        c.tree_end_chains = [](int) { return 1; };
        c.materialize = [](const Slice& prefix) {
            auto cantor = [](long long x, long long y) { return (x + y) * (x + y + 1) / 2 + y; };
            auto enc = [&](int x, int y) { return Vertex(cantor(x, y)); };
            auto shell_of = [](int x, int y) { return std::max(x, y); };
            // part s covers shells s and s+1; an edge with endpoint shells
            // {a,b} belongs to part min(a,b) when a != b and to part a-1 when
            // a == b (inner edges of a shell sit one part below).
            auto edge_part = [&](int a, int b) { return a == b ? a - 1 : std::min(a, b); };
            std::vector<std::tuple<int, std::vector<Vertex>, std::vector<long long>>> raw;
            int n = prefix.width;
            for (int s = 0; s < n; ++s) {
                std::vector<Vertex> verts;
                std::vector<long long> codes;
                auto add_shell = [&](int c) {
                    for (int x = 0; x <= c; ++x) verts.push_back(enc(x, c));
                    for (int y = 0; y < c; ++y) verts.push_back(enc(c, y));
                };
                add_shell(s);
                add_shell(s + 1);
                for (int x = 0; x <= s + 1; ++x)
                    for (int y = 0; y <= s + 1; ++y) {
                        int cs = shell_of(x, y);
                        if (edge_part(cs, shell_of(x + 1, y)) == s)
                            codes.push_back(2 * cantor(x, y));
                        if (edge_part(cs, shell_of(x, y + 1)) == s)
                            codes.push_back(2 * cantor(x, y) + 1);
                    }
                std::sort(codes.begin(), codes.end());
                codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
                raw.push_back({s - 1, verts, codes});
            }
            return restrict_nodes(prefix, raw);
        };
    } else if (name == "binary-tree") {
        c.adhesion_cap = 1;
        c.shape = "the tree itself, one part per parent edge";
        c.tree_end_chains = [](int bound) { return 1 << bound; };
        c.materialize = [](const Slice& prefix) {
            std::vector<std::tuple<int, std::vector<Vertex>, std::vector<long long>>> raw;
            raw.push_back({-1, {1}, {}});
            // node for vertex h >= 2 holds the edge to its parent; node index
            // of vertex h is h-1 (heap order is parent-before-child)
            for (Vertex h = 2; h < (Vertex{1} << prefix.width); ++h)
                raw.push_back({int(h / 2) - 1, {h / 2, h}, {h}});
            return restrict_nodes(prefix, raw);
        };
    } else if (name == "apex-grid") {
        c.adhesion_cap = 64;  // shell adhesions grow but stay finite
        c.shape = "star of L-shell parts around an accumulating center holding the apex";
        c.rayless = true;
        c.tree_end_chains = [](int) { return 0; };
        c.materialize = [](const Slice& prefix) {
            auto cantor = [](long long x, long long y) { return (x + y) * (x + y + 1) / 2 + y; };
            auto enc = [&](int x, int y) { return Vertex(1 + cantor(x, y)); };
            auto shell_of = [](int x, int y) { return std::max(x, y); };
            auto edge_part = [&](int a, int b) { return a == b ? a - 1 : std::min(a, b); };
            std::vector<std::tuple<int, std::vector<Vertex>, std::vector<long long>>> raw;
            int n = prefix.width;
            std::vector<Vertex> all{0};
            std::vector<long long> drops;
            for (int x = 0; x < n; ++x) {
                drops.push_back(3LL * cantor(x, 0) + 2);
                for (int y = 0; y < n; ++y) all.push_back(enc(x, y));
            }
            raw.push_back({-1, all, drops});
            for (int s = 0; s < n; ++s) {
                std::vector<Vertex> verts;
                std::vector<long long> codes;
                auto add_shell = [&](int c2) {
                    for (int x = 0; x <= c2; ++x) verts.push_back(enc(x, c2));
                    for (int y = 0; y < c2; ++y) verts.push_back(enc(c2, y));
                };
                add_shell(s);
                add_shell(s + 1);
                for (int x = 0; x <= s + 1; ++x)
                    for (int y = 0; y <= s + 1; ++y) {
                        int cs = shell_of(x, y);
                        if (edge_part(cs, shell_of(x + 1, y)) == s)
                            codes.push_back(3 * cantor(x, y));
                        if (edge_part(cs, shell_of(x, y + 1)) == s)
                            codes.push_back(3 * cantor(x, y) + 1);
                    }
                std::sort(codes.begin(), codes.end());
                codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
                raw.push_back({0, verts, codes});
            }
            return restrict_nodes(prefix, raw);
        };
    } else if (name == "star") {
        c.adhesion_cap = 1;
        c.shape = "star of leaf parts around the center";
        c.rayless = true;
        c.tree_end_chains = [](int) { return 0; };
        c.materialize = [](const Slice& prefix) {
            std::vector<std::tuple<int, std::vector<Vertex>, std::vector<long long>>> raw;
            raw.push_back({-1, {0}, {}});
            for (int j = 0; j < prefix.width; ++j) raw.push_back({0, {0, j + 1}, {j}});
            return restrict_nodes(prefix, raw);
        };
    } else {
        throw std::invalid_argument("no registered decomposition for family " + name);
    }
    return c;
}

std::pair<Multigraph, TreeDecomposition> random_decomposition(std::mt19937_64& rng,
                                                              int max_vertices, int max_nodes) {
    auto rnd = [&](int n) { return int(rng() % std::max(1, n)); };
    Multigraph g;
    TreeDecomposition td;
    std::vector<std::vector<Vertex>> fresh;  // new vertices per node
    int next_vertex = 0;
    int budget = max_vertices;

    int root_sz = 1 + rnd(std::min(3, budget));
    budget -= root_sz;
    std::vector<Vertex> rv;
    for (int i = 0; i < root_sz; ++i) {
        g.add_vertex(next_vertex);
        rv.push_back(next_vertex++);
    }
    TreeDecomposition::Node root;
    root.parent = -1;
    root.vertices = rv;
    for (size_t i = 1; i < rv.size(); ++i) root.edges.push_back(g.add_edge(rv[i], rv[rnd(int(i))]));
    int extra = rnd(3);
    for (int i = 0; i < extra && rv.size() >= 1; ++i)
        root.edges.push_back(g.add_edge(rv[rnd(int(rv.size()))], rv[rnd(int(rv.size()))]));
    td.nodes.push_back(root);
    fresh.push_back(rv);

    int want_nodes = 1 + rnd(max_nodes);
    while (int(td.nodes.size()) < want_nodes) {
        // pick a parent with nonempty fresh set
        std::vector<int> cands;
        for (int t = 0; t < int(td.nodes.size()); ++t)
            if (!fresh[t].empty()) cands.push_back(t);
        if (cands.empty()) break;
        int parent = cands[rnd(int(cands.size()))];
        auto& pool = fresh[parent];
        // adhesion: nonempty subset of the parent's fresh vertices
        std::vector<Vertex> adh;
        for (Vertex v : pool)
            if (rng() % 2) adh.push_back(v);
        if (adh.empty()) adh.push_back(pool[rnd(int(pool.size()))]);
        int fresh_sz = budget > 0 ? rnd(std::min(3, budget) + 1) : 0;
        budget -= fresh_sz;
        std::vector<Vertex> nv;
        for (int i = 0; i < fresh_sz; ++i) {
            g.add_vertex(next_vertex);
            nv.push_back(next_vertex++);
        }
        TreeDecomposition::Node nd;
        nd.parent = parent;
        nd.vertices = adh;
        nd.vertices.insert(nd.vertices.end(), nv.begin(), nv.end());
        // connect the fresh vertices among themselves, then hook every
        // adhesion vertex into the part
        for (size_t i = 1; i < nv.size(); ++i) nd.edges.push_back(g.add_edge(nv[i], nv[rnd(int(i))]));
        for (Vertex a : adh) {
            Vertex target = nv.empty() ? adh[rnd(int(adh.size()))] : nv[rnd(int(nv.size()))];
            if (target == a && nv.empty() && adh.size() == 1) continue;
            while (target == a) target = nv.empty() ? adh[rnd(int(adh.size()))] : nv[rnd(int(nv.size()))];
            nd.edges.push_back(g.add_edge(a, target));
        }
        int bonus = rnd(2);
        for (int i = 0; i < bonus && !nd.vertices.empty(); ++i) {
            Vertex a = nd.vertices[rnd(int(nd.vertices.size()))];
            Vertex b = nd.vertices[rnd(int(nd.vertices.size()))];
            nd.edges.push_back(g.add_edge(a, b));
        }
        td.nodes.push_back(nd);
        fresh.push_back(nv);
    }
    return {g, td};
}

}  // namespace psimat
