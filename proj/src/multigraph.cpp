#include "psimat/multigraph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace psimat {

bool EdgeSet::operator<(const EdgeSet& o) const {
    // Compare as sorted id sequences: the set with the smaller first
    // differing id comes first.
    size_t k = std::min(w_.size(), o.w_.size());
    for (size_t i = 0; i < k; ++i) {
        uint64_t d = w_[i] ^ o.w_[i];
        if (d) {
            uint64_t low = d & (~d + 1);
            return (o.w_[i] & low) != 0;  // the other set owns the smaller id
        }
    }
    return count() < o.count();
}

std::string EdgeSet::to_string() const {
    std::string s = "{";
    bool first = true;
    for (int e : ids()) {
        if (!first) s += ",";
        s += std::to_string(e);
        first = false;
    }
    return s + "}";
}

Vertex Multigraph::add_vertex(Vertex id, std::string label) {
    if (index_.count(id)) throw std::invalid_argument("duplicate vertex id");
    index_[id] = int(verts_.size());
    verts_.push_back(id);
    incidence_.emplace_back();
    if (!label.empty()) labels_[id] = std::move(label);
    return id;
}

Multigraph Multigraph::with_vertices(int n) {
    Multigraph g;
    for (int i = 0; i < n; ++i) g.add_vertex(i);
    return g;
}

EdgeId Multigraph::add_edge(Vertex u, Vertex v) {
    auto iu = index_.find(u), iv = index_.find(v);
    if (iu == index_.end() || iv == index_.end())
        throw std::invalid_argument("edge endpoint is not a declared vertex");
    EdgeId e = EdgeId(edges_.size());
    edges_.emplace_back(u, v);
    incidence_[iu->second].push_back(e);
    if (iv->second != iu->second) incidence_[iv->second].push_back(e);
    return e;
}

const std::string& Multigraph::label(Vertex v) const {
    static const std::string kEmpty;
    auto it = labels_.find(v);
    return it == labels_.end() ? kEmpty : it->second;
}

void Multigraph::set_label(Vertex v, std::string label) { labels_[v] = std::move(label); }

std::vector<EdgeId> Multigraph::edges_at(Vertex v) const {
    auto it = index_.find(v);
    if (it == index_.end()) throw std::invalid_argument("unknown vertex");
    return incidence_[it->second];
}

EdgeSet Multigraph::star(Vertex v) const {
    EdgeSet s(num_edges());
    for (EdgeId e : edges_at(v))
        if (!is_loop(e)) s.set(e);
    return s;
}

int Multigraph::degree(Vertex v, const EdgeSet& within) const {
    int d = 0;
    for (EdgeId e : edges_at(v))
        if (within.test(e)) d += is_loop(e) ? 2 : 1;
    return d;
}

EdgeSet Multigraph::all_edges() const {
    EdgeSet s(num_edges());
    for (int e = 0; e < num_edges(); ++e) s.set(e);
    return s;
}

std::string Multigraph::vertex_name(Vertex v) const {
    const std::string& l = label(v);
    if (!l.empty()) return l;
    return std::to_string(v);
}

std::string Multigraph::edge_name(EdgeId e) const {
    auto [u, v] = endpoints(e);
    return "e" + std::to_string(e) + "(" + vertex_name(u) + "," + vertex_name(v) + ")";
}

std::string Multigraph::describe(const EdgeSet& s) const {
    std::string r = "{";
    bool first = true;
    for (int e : s.ids()) {
        if (!first) r += ", ";
        r += edge_name(e);
        first = false;
    }
    return r + "}";
}

namespace {

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

std::vector<std::vector<Vertex>> components(const Multigraph& g) {
    const auto& vs = g.vertices();
    std::map<Vertex, int> pos;
    for (int i = 0; i < int(vs.size()); ++i) pos[vs[i]] = i;
    UnionFind uf(int(vs.size()));
    for (int e = 0; e < g.num_edges(); ++e) {
        auto [u, v] = g.endpoints(e);
        uf.unite(pos[u], pos[v]);
    }
    std::map<int, std::vector<Vertex>> cls;
    for (int i = 0; i < int(vs.size()); ++i) cls[uf.find(i)].push_back(vs[i]);
    std::vector<std::vector<Vertex>> out;
    for (auto& [root, members] : cls) out.push_back(std::move(members));
    return out;
}

int component_count_of_support(const Multigraph& g, const EdgeSet& within) {
    std::map<Vertex, int> pos;
    int next = 0;
    std::vector<std::pair<int, int>> es;
    for (int e : within.ids()) {
        auto [u, v] = g.endpoints(e);
        if (!pos.count(u)) pos[u] = next++;
        if (!pos.count(v)) pos[v] = next++;
        es.emplace_back(pos[u], pos[v]);
    }
    if (next == 0) return 0;
    UnionFind uf(next);
    for (auto [a, b] : es) uf.unite(a, b);
    std::vector<bool> seen(next, false);
    int c = 0;
    for (int i = 0; i < next; ++i) {
        int r = uf.find(i);
        if (!seen[r]) {
            seen[r] = true;
            ++c;
        }
    }
    return c;
}

bool is_connected(const Multigraph& g) {
    return g.num_vertices() <= 1 || components(g).size() == 1;
}

Cut induced_cut(const Multigraph& g, const std::vector<Vertex>& side) {
    std::map<Vertex, bool> in;
    for (Vertex v : side) {
        if (!g.has_vertex(v)) throw std::invalid_argument("side vertex not in graph");
        in[v] = true;
    }
    Cut c{EdgeSet(g.num_edges()), side};
    for (int e = 0; e < g.num_edges(); ++e) {
        auto [u, v] = g.endpoints(e);
        if (in.count(u) != in.count(v)) c.edges.set(e);
    }
    return c;
}

std::vector<Vertex> boundary(const Multigraph& g, const Separation& x) {
    std::vector<Vertex> out;
    for (Vertex v : g.vertices()) {
        bool inside = false, outside = false;
        for (EdgeId e : g.edges_at(v)) (x.edges.test(e) ? inside : outside) = true;
        if (inside && outside) out.push_back(v);
    }
    return out;
}

std::string to_text(const Multigraph& g) {
    std::ostringstream os;
    for (Vertex v : g.vertices()) {
        os << "v " << v;
        if (!g.label(v).empty()) os << " " << g.label(v);
        os << "\n";
    }
    for (int e = 0; e < g.num_edges(); ++e) {
        auto [u, v] = g.endpoints(e);
        os << "e " << e << " " << u << " " << v << "\n";
    }
    return os.str();
}

Multigraph from_text(const std::string& text) {
    Multigraph g;
    std::istringstream is(text);
    std::string line;
    std::vector<std::tuple<int, Vertex, Vertex>> edges;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind) || kind[0] == '#') continue;
        if (kind == "v") {
            Vertex id;
            std::string label;
            if (!(ls >> id)) throw std::invalid_argument("bad vertex line: " + line);
            ls >> label;
            g.add_vertex(id, label);
        } else if (kind == "e") {
            int id;
            Vertex u, v;
            if (!(ls >> id >> u >> v)) throw std::invalid_argument("bad edge line: " + line);
            edges.emplace_back(id, u, v);
        } else {
            throw std::invalid_argument("unknown line kind: " + line);
        }
    }
    std::sort(edges.begin(), edges.end());
    for (int i = 0; i < int(edges.size()); ++i) {
        auto [id, u, v] = edges[i];
        if (id != i) throw std::invalid_argument("edge ids must be 0..m-1");
        g.add_edge(u, v);
    }
    return g;
}

std::string to_dot(const Multigraph& g) {
    std::ostringstream os;
    os << "graph G {\n";
    for (Vertex v : g.vertices()) {
        os << "  \"" << v << "\"";
        if (!g.label(v).empty()) os << " [label=\"" << g.label(v) << "\"]";
        os << ";\n";
    }
    for (int e = 0; e < g.num_edges(); ++e) {
        auto [u, v] = g.endpoints(e);
        os << "  \"" << u << "\" -- \"" << v << "\" [label=\"" << e << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace psimat
