#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "psimat/graph_ops.hpp"
#include "psimat/multigraph.hpp"

using namespace psimat;

namespace {

Multigraph complete(int n) {
    Multigraph g = Multigraph::with_vertices(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

Multigraph cycle(int n) {
    Multigraph g = Multigraph::with_vertices(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

Multigraph path(int n) {
    Multigraph g = Multigraph::with_vertices(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

Multigraph random_multigraph(std::mt19937_64& rng, int max_v, int max_e, bool force_connected) {
    std::uniform_int_distribution<int> nv(1, max_v);
    int n = nv(rng);
    Multigraph g = Multigraph::with_vertices(n);
    std::uniform_int_distribution<int> ne(0, max_e);
    std::uniform_int_distribution<int> pick(0, n - 1);
    int m = ne(rng);
    if (force_connected)
        for (int i = 1; i < n; ++i) g.add_edge(i, std::uniform_int_distribution<int>(0, i - 1)(rng));
    for (int i = g.num_edges(); i < m; ++i) g.add_edge(pick(rng), pick(rng));
    return g;
}

}  // namespace

TEST_CASE("components basics") {
    Multigraph g = Multigraph::with_vertices(6);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 0);
    g.add_edge(3, 4);
    g.add_edge(4, 5);
    g.add_edge(5, 3);
    auto comp = components(g);
    CHECK(comp.size() == 2);
    CHECK(comp[0].size() == 3);
    CHECK(comp[1].size() == 3);

    Multigraph single = Multigraph::with_vertices(1);
    CHECK(components(single).size() == 1);
    CHECK(components(complete(4)).size() == 1);
}

TEST_CASE("induced_cut") {
    auto k3 = complete(3);
    auto c = induced_cut(k3, {0});
    CHECK(c.edges.count() == 2);

    auto all = induced_cut(k3, {0, 1, 2});
    CHECK(all.edges.empty());

    auto c4 = cycle(4);
    auto opp = induced_cut(c4, {0, 2});
    CHECK(opp.edges.count() == 4);
}

TEST_CASE("boundary") {
    auto k3 = complete(3);
    Separation x{EdgeSet(3, {0})};
    auto b = boundary(k3, x);
    CHECK(b.size() == 2);
    Separation allx{k3.all_edges()};
    CHECK(boundary(k3, allx).empty());

    auto c4 = cycle(4);
    Separation two{EdgeSet(4, {0, 2})};  // opposite edges
    CHECK(boundary(c4, two).size() == 4);
}

TEST_CASE("bonds of small graphs") {
    auto k3b = bonds(complete(3));
    CHECK(k3b.size() == 3);
    for (auto& b : k3b) CHECK(b.edges.count() == 2);

    auto k4b = bonds(complete(4));
    CHECK(k4b.size() == 7);
    int size3 = 0, size4 = 0;
    for (auto& b : k4b) {
        if (b.edges.count() == 3) ++size3;
        if (b.edges.count() == 4) ++size4;
    }
    CHECK(size3 == 4);
    CHECK(size4 == 3);

    Multigraph uv = Multigraph::with_vertices(2);
    uv.add_edge(0, 1);
    auto b = bonds(uv);
    REQUIRE(b.size() == 1);
    CHECK(b[0].edges.count() == 1);
}

TEST_CASE("cycle edge sets") {
    auto k3c = cycle_edge_sets(complete(3));
    REQUIRE(k3c.size() == 1);
    CHECK(k3c[0].count() == 3);

    Multigraph par = Multigraph::with_vertices(2);
    par.add_edge(0, 1);
    par.add_edge(0, 1);
    auto pc = cycle_edge_sets(par);
    REQUIRE(pc.size() == 1);
    CHECK(pc[0].count() == 2);

    auto k4c = cycle_edge_sets(complete(4));
    CHECK(k4c.size() == 7);

    Multigraph loop = Multigraph::with_vertices(1);
    loop.add_edge(0, 0);
    auto lc = cycle_edge_sets(loop);
    REQUIRE(lc.size() == 1);
    CHECK(lc[0].count() == 1);
}

TEST_CASE("parallel kernels agree with serial references") {
    std::mt19937_64 rng(20240817);
    for (int t = 0; t < 120; ++t) {
        auto g = random_multigraph(rng, 6, 11, false);
        auto b1 = bonds(g);
        auto b2 = reference::bonds(g);
        REQUIRE(b1.size() == b2.size());
        for (size_t i = 0; i < b1.size(); ++i) CHECK(b1[i].edges == b2[i].edges);

        auto c1 = cycle_edge_sets(g);
        auto c2 = reference::cycle_edge_sets(g);
        CHECK(c1 == c2);
    }
}

TEST_CASE("cut-cycle orthogonality over GF(2)") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 80; ++t) {
        auto g = random_multigraph(rng, 6, 10, false);
        auto cycles = cycle_edge_sets(g);
        // every induced cut meets every cycle evenly
        int n = g.num_vertices();
        for (uint32_t mask = 0; mask < (uint32_t{1} << n); ++mask) {
            std::vector<Vertex> side;
            for (int i = 0; i < n; ++i)
                if ((mask >> i) & 1) side.push_back(g.vertices()[i]);
            auto cut = induced_cut(g, side);
            for (auto& c : cycles) CHECK(c.intersection_count(cut.edges) % 2 == 0);
        }
    }
}

TEST_CASE("bonds are the minimal nonempty induced cuts") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 60; ++t) {
        auto g = random_multigraph(rng, 7, 10, false);
        auto b1 = bonds(g);
        auto b2 = reference::bonds(g);  // definition route
        REQUIRE(b1.size() == b2.size());
        for (size_t i = 0; i < b1.size(); ++i) CHECK(b1[i].edges == b2[i].edges);
    }
}

TEST_CASE("contract_to") {
    // path a-b-c-d with w = {a,b}
    auto p = path(4);
    auto c = contract_to(p, {0, 1});
    CHECK(c.graph.num_vertices() == 3);
    CHECK(c.graph.num_edges() == 2);
    CHECK(c.branch_sets.size() == 1);
    CHECK(c.branch_sets.begin()->second == std::vector<Vertex>{2, 3});

    // w = all vertices: identity
    auto full = contract_to(p, {0, 1, 2, 3});
    CHECK(full.graph.num_vertices() == 4);
    CHECK(full.graph.num_edges() == 3);

    // C6 with two antipodal vertices retained
    auto c6 = cycle(6);
    auto anti = contract_to(c6, {0, 3});
    CHECK(anti.graph.num_vertices() == 4);
    CHECK(anti.graph.num_edges() == 4);
    for (int e = 0; e < anti.graph.num_edges(); ++e) {
        auto [u, v] = anti.graph.endpoints(e);
        CHECK(((u >= 0 && v < 0) || (u < 0 && v >= 0)));
    }
}

TEST_CASE("project functoriality") {
    auto p = path(4);
    auto w = contract_to(p, {0, 1});
    auto u = project(w, {0});
    CHECK(u.graph.num_vertices() == 2);
    CHECK(u.graph.num_edges() == 1);
    // b and K both map to the single component vertex
    CHECK(u.vertex_image.at(1) == u.vertex_image.at(-1));

    std::mt19937_64 rng(23);
    for (int t = 0; t < 50; ++t) {
        auto g = random_multigraph(rng, 6, 9, false);
        int n = g.num_vertices();
        // chain U subset W subset X of vertex subsets
        std::vector<Vertex> xs, ws, us;
        for (int i = 0; i < n; ++i) {
            int r = int(rng() % 4);
            if (r >= 1) xs.push_back(g.vertices()[i]);
            if (r >= 2) ws.push_back(g.vertices()[i]);
            if (r >= 3) us.push_back(g.vertices()[i]);
        }
        if (xs.empty() || ws.empty() || us.empty()) continue;
        auto gx = contract_to(g, xs);
        auto gw = project(gx, ws);
        auto gu_via = project(gw, us);
        auto gu_direct = project(gx, us);
        // same composite vertex map on the original X-level vertices
        for (Vertex v : gx.graph.vertices()) {
            Vertex mid = gw.vertex_image.at(v);
            CHECK(gu_via.vertex_image.at(mid) == gu_direct.vertex_image.at(v));
        }
        CHECK(gu_via.graph.num_edges() == gu_direct.graph.num_edges());
    }
}

TEST_CASE("contract_to preserves degree parity at retained vertices") {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 60; ++t) {
        auto g = random_multigraph(rng, 6, 10, false);
        int n = g.num_vertices();
        std::vector<Vertex> w;
        for (int i = 0; i < n; ++i)
            if (rng() % 2) w.push_back(g.vertices()[i]);
        if (w.empty()) continue;
        auto c = contract_to(g, w);
        // any edge set restricted to retained edges keeps its degree parity
        // at each retained vertex
        for (int trial = 0; trial < 10; ++trial) {
            EdgeSet s(g.num_edges());
            for (int e = 0; e < g.num_edges(); ++e)
                if (rng() % 2) s.set(e);
            EdgeSet proj(c.graph.num_edges());
            for (int e = 0; e < c.graph.num_edges(); ++e)
                if (s.test(c.edge_origin[e])) proj.set(e);
            for (Vertex v : w) {
                int before = 0;
                for (EdgeId e : g.edges_at(v))
                    if (s.test(e)) before += g.is_loop(e) ? 2 : 1;
                int after = c.graph.degree(v, proj);
                CHECK(before % 2 == after % 2);
            }
        }
    }
}

TEST_CASE("text round trip and dot export") {
    auto g = complete(4);
    g.set_label(0, "a");
    auto text = to_text(g);
    auto h = from_text(text);
    CHECK(h.num_vertices() == 4);
    CHECK(h.num_edges() == 6);
    CHECK(h.label(0) == "a");
    CHECK(to_dot(g).find("graph G") == 0);
}
