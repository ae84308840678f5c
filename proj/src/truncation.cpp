#include "psimat/truncation.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>

namespace psimat {

EdgeSet Slice::restrict_codes(const std::vector<long long>& codes) const {
    EdgeSet s(graph.num_edges());
    for (long long c : codes) {
        int e = local(c);
        if (e >= 0) s.set(e);
    }
    return s;
}

namespace {

Slice build_slice(const LazyFamily& f, const std::vector<Vertex>& verts, int width,
                  bool contracted, int level_for_components) {
    Slice s;
    s.family = &f;
    s.width = width;
    s.contracted = contracted;
    std::set<Vertex> in(verts.begin(), verts.end());

    std::set<long long> codes;
    for (Vertex v : verts)
        for (long long c : f.edge_codes_at(v, width)) codes.insert(c);

    for (Vertex v : verts) s.graph.add_vertex(v, f.vertex_label(v));

    std::map<int, Vertex> comp_vertex;  // family component id -> slice vertex
    auto comp_for = [&](Vertex outside) -> Vertex {
        int c = f.component_of(outside, level_for_components);
        auto it = comp_vertex.find(c);
        if (it != comp_vertex.end()) return it->second;
        Vertex cv = -1 - c;
        s.graph.add_vertex(cv, f.component_label(c, level_for_components));
        comp_vertex[c] = cv;
        return cv;
    };

    for (long long c : codes) {
        auto [a, b] = f.edge_endpoints(c);
        bool ia = in.count(a), ib = in.count(b);
        if (!ia && !ib) continue;
        Vertex va, vb;
        if (ia && ib) {
            va = a;
            vb = b;
        } else if (contracted) {
            va = ia ? a : comp_for(a);
            vb = ib ? b : comp_for(b);
        } else {
            continue;  // induced subgraph: drop edges leaving the vertex set
        }
        int e = s.graph.add_edge(va, vb);
        s.edge_code.push_back(c);
        s.local_of[c] = e;
    }
    // Materialize any regular components without explicit crossing edges so
    // the vertex set of G+[W] is complete.
    if (contracted) {
        for (int c = 0; c < f.num_components_beyond(level_for_components); ++c)
            if (!comp_vertex.count(c)) {
                Vertex cv = -1 - c;
                s.graph.add_vertex(cv, f.component_label(c, level_for_components));
                comp_vertex[c] = cv;
            }
        s.tails = f.tail_classes(level_for_components);
    }
    return s;
}

}  // namespace

Slice truncate(const LazyFamily& f, int n) {
    if (n < 1) throw std::invalid_argument("truncate: width must be >= 1");
    return build_slice(f, f.exhaustion(n), n, true, n);
}

Slice prefix_slice(const LazyFamily& f, int n) {
    if (n < 1) throw std::invalid_argument("prefix_slice: width must be >= 1");
    return build_slice(f, f.exhaustion(n), n, false, n);
}

Slice ball_slice(const LazyFamily& f, Vertex r, int k, int width) {
    std::map<Vertex, int> dist{{r, 0}};
    std::queue<Vertex> q;
    q.push(r);
    while (!q.empty()) {
        Vertex v = q.front();
        q.pop();
        if (dist[v] == k) continue;
        if (f.infinite_degree(v) && width < 0)
            throw std::runtime_error(
                "ball: infinite-degree vertex inside the ball needs an enumeration width");
        for (Vertex w : f.neighbors(v, width)) {
            if (dist.count(w)) continue;
            dist[w] = dist[v] + 1;
            q.push(w);
        }
    }
    std::vector<Vertex> verts;
    for (auto& [v, d] : dist) verts.push_back(v);
    std::sort(verts.begin(), verts.end());
    Slice s = build_slice(f, verts, width < 0 ? 0 : width, false, 0);
    return s;
}

Multigraph ball(const LazyFamily& f, Vertex r, int k, int width) {
    return ball_slice(f, r, k, width).graph;
}

SliceProjection project_truncation(const Slice& tm, int n) {
    const LazyFamily& f = *tm.family;
    if (!tm.contracted) throw std::invalid_argument("project_truncation: source not contracted");
    if (n > tm.width) throw std::invalid_argument("project_truncation: target wider than source");

    SliceProjection out;
    Slice& s = out.slice;
    s.family = &f;
    s.width = n;
    s.contracted = true;

    bool has_regular = f.num_components_beyond(n) > 0;
    std::map<int, Vertex> comp_vertex;

    // Vertex images. Non-W_n family vertices fall into a regular component
    // or (pendant families) a tail class.
    auto image = [&](Vertex v) -> std::optional<Vertex> {
        if (v >= 0 && f.in_exhaustion(v, n)) return v;
        Vertex probe = v;
        if (v < 0) {
            int old_comp = -1 - v;
            probe = f.component_representative(old_comp, tm.width);
        }
        if (!has_regular) return std::nullopt;  // absorbed by a pendant tail
        int c = f.component_of(probe, n);
        return Vertex(-1 - c);
    };

    for (Vertex v : f.exhaustion(n)) s.graph.add_vertex(v, f.vertex_label(v));
    for (int c = 0; c < f.num_components_beyond(n); ++c) {
        Vertex cv = -1 - c;
        s.graph.add_vertex(cv, f.component_label(c, n));
        comp_vertex[c] = cv;
    }

    std::vector<std::pair<long long, std::pair<Vertex, Vertex>>> kept;
    for (int e = 0; e < tm.graph.num_edges(); ++e) {
        auto [a, b] = tm.graph.endpoints(e);
        auto ia = image(a), ib = image(b);
        if (!ia || !ib) continue;  // edge into a pendant tail: folded below
        if (*ia < 0 && *ib < 0) continue;  // contracted inside a component
        kept.push_back({tm.edge_code[e], {*ia, *ib}});
        out.vertex_map[a] = *ia;
        out.vertex_map[b] = *ib;
    }
    for (Vertex v : tm.graph.vertices())
        if (auto iv = image(v)) out.vertex_map[v] = *iv;

    // Fold tail classes down: a class carried at level m plus the explicit
    // class edges of columns [n, m) together form the class at level n.
    std::vector<TailClass> new_tails = f.tail_classes(n);
    std::set<long long> folded;
    for (const TailClass& t : new_tails) {
        for (int col = t.first_col; col < tm.width; ++col)
            folded.insert(f.tail_edge_code(t, col));
    }
    std::sort(kept.begin(), kept.end());
    for (auto& [code, ends] : kept) {
        if (folded.count(code)) continue;
        int e = s.graph.add_edge(ends.first, ends.second);
        s.edge_code.push_back(code);
        s.local_of[code] = e;
    }
    s.tails = new_tails;
    return out;
}

namespace {

// Canonical naming of component vertices: sort by the sorted list of
// incident edge codes.
std::map<Vertex, int> canonical_components(const Slice& s) {
    std::map<Vertex, std::vector<long long>> sig;
    for (Vertex v : s.graph.vertices())
        if (v < 0) sig[v] = {};
    for (int e = 0; e < s.graph.num_edges(); ++e) {
        auto [a, b] = s.graph.endpoints(e);
        if (a < 0) sig[a].push_back(s.edge_code[e]);
        if (b < 0) sig[b].push_back(s.edge_code[e]);
    }
    std::vector<std::pair<std::vector<long long>, Vertex>> order;
    for (auto& [v, codes] : sig) {
        auto c = codes;
        std::sort(c.begin(), c.end());
        order.push_back({c, v});
    }
    std::sort(order.begin(), order.end());
    std::map<Vertex, int> out;
    for (int i = 0; i < int(order.size()); ++i) out[order[i].second] = i;
    return out;
}

}  // namespace

bool slices_equal(const Slice& a, const Slice& b) {
    if (a.family != b.family || a.contracted != b.contracted) return false;
    auto ta = a.tails, tb = b.tails;
    auto key = [](const TailClass& t) {
        return std::tuple(int(t.kind), t.anchor, t.first_col);
    };
    std::sort(ta.begin(), ta.end(), [&](auto& x, auto& y) { return key(x) < key(y); });
    std::sort(tb.begin(), tb.end(), [&](auto& x, auto& y) { return key(x) < key(y); });
    if (ta.size() != tb.size()) return false;
    for (size_t i = 0; i < ta.size(); ++i)
        if (key(ta[i]) != key(tb[i])) return false;

    auto ca = canonical_components(a), cb = canonical_components(b);
    if (ca.size() != cb.size()) return false;

    auto edge_list = [](const Slice& s, const std::map<Vertex, int>& comps) {
        std::vector<std::tuple<long long, Vertex, Vertex>> out;
        for (int e = 0; e < s.graph.num_edges(); ++e) {
            auto [u, v] = s.graph.endpoints(e);
            Vertex cu = u < 0 ? Vertex(-1000 - comps.at(u)) : u;
            Vertex cv = v < 0 ? Vertex(-1000 - comps.at(v)) : v;
            if (cu > cv) std::swap(cu, cv);
            out.push_back({s.edge_code[e], cu, cv});
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    if (edge_list(a, ca) != edge_list(b, cb)) return false;

    auto verts = [](const Slice& s) {
        std::vector<Vertex> v;
        for (Vertex x : s.graph.vertices())
            if (x >= 0) v.push_back(x);
        std::sort(v.begin(), v.end());
        return v;
    };
    return verts(a) == verts(b);
}

}  // namespace psimat
