#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "psimat/ends.hpp"
#include "psimat/treedec.hpp"

using namespace psimat;

TEST_CASE("C4 two-part decomposition verifies; a duplicated edge fails") {
    auto [g, td] = c4_two_part();
    auto r = verify_treedec(g, td, 2);
    CHECK(r.pass);

    auto bad = td;
    bad.nodes[1].edges.push_back(0);  // ab duplicated into the second part
    bad.nodes[1].vertices.push_back(1);
    auto rb = verify_treedec(g, bad, 3);
    CHECK_FALSE(rb.pass);
    CHECK_FALSE(rb.edge_unique);
}

TEST_CASE("torso of the C4 decomposition") {
    auto [g, td] = c4_two_part();
    auto t0 = torso(g, td, 0);
    CHECK(t0.graph.num_vertices() == 3);
    CHECK(t0.graph.num_edges() == 3);  // ab, bc + virtual ac
    int virtuals = 0;
    for (auto e : t0.real_origin)
        if (e < 0) ++virtuals;
    CHECK(virtuals == 1);

    // part with empty adhesion: single-node decomposition
    TreeDecomposition single;
    TreeDecomposition::Node nd;
    nd.parent = -1;
    nd.vertices = {0, 1, 2, 3};
    nd.edges = {0, 1, 2, 3};
    single.nodes.push_back(nd);
    auto ts = torso(g, single, 0);
    CHECK(ts.graph.num_edges() == 4);
}

TEST_CASE("canonical decompositions verify on every family prefix") {
    for (auto& name : family_names()) {
        const auto& f = family_by_name(name);
        auto canon = canonical_treedec(f);
        int top = name == "binary-tree" ? 5 : (name == "grid" ? 6 : 10);
        for (int n = 2; n <= top; ++n) {
            auto prefix = prefix_slice(f, n);
            auto td = canon.materialize(prefix);
            auto r = verify_treedec(prefix.graph, td, canon.adhesion_cap);
            INFO(name, " at width ", n, ": ", r.violation);
            CHECK(r.pass);
        }
    }
}

TEST_CASE("tree ends of the canonical decompositions match undominated ends") {
    struct Expect {
        const char* family;
        int bound;
        int undominated;
    };
    // classify_ends counts the undominated end approximations; the
    // registered trees expose their own end-chain counts.
    for (auto& name :
         {"ladder", "dominated-ladder", "double-ray", "grid", "comb", "star", "apex-grid"}) {
        const auto& f = family_by_name(name);
        auto canon = canonical_treedec(f);
        auto cls = classify_ends(f, 8);
        int undom = 0;
        for (auto& c : cls)
            if (!c.dominated) ++undom;
        INFO(name);
        CHECK(canon.tree_end_chains(8) == undom);
    }
    // the binary tree: 2^k chains on both sides
    const auto& bt = family_by_name("binary-tree");
    auto canon = canonical_treedec(bt);
    auto cls = classify_ends(bt, 5);
    CHECK(canon.tree_end_chains(bt.default_classify_bound(5)) == int(cls.size()));
    for (auto& c : cls) CHECK_FALSE(c.dominated);
}

TEST_CASE("dominated ladder: a rayless tree, zero tree ends") {
    auto canon = canonical_treedec(family_by_name("dominated-ladder"));
    CHECK(canon.rayless);
    CHECK(canon.tree_end_chains(12) == 0);
}

TEST_CASE("random co-generated decompositions are valid") {
    std::mt19937_64 rng(424242);
    int nontrivial = 0;
    for (int t = 0; t < 200; ++t) {
        auto [g, td] = random_decomposition(rng);
        auto r = verify_treedec(g, td, 6);
        INFO("instance ", t, ": ", r.violation);
        REQUIRE(r.pass);
        CHECK(is_connected(g));
        if (td.nodes.size() >= 2) ++nontrivial;
    }
    CHECK(nontrivial > 100);
}

TEST_CASE("ladder prefix path decomposition") {
    const auto& f = family_by_name("ladder");
    auto prefix = prefix_slice(f, 4);
    auto td = ladder_prefix_decomposition(prefix);
    CHECK(td.nodes.size() == 3);
    auto r = verify_treedec(prefix.graph, td, 2);
    CHECK(r.pass);
}
