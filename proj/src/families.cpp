#include "psimat/lazy_family.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace psimat {

bool LazyFamily::adjacent(Vertex u, Vertex v, int width_hint) const {
    Vertex probe = u, other = v;
    if (infinite_degree(probe)) std::swap(probe, other);
    if (infinite_degree(probe)) throw std::runtime_error("adjacent: both endpoints infinite-degree");
    auto ns = neighbors(probe, width_hint);
    return std::find(ns.begin(), ns.end(), other) != ns.end();
}

std::string LazyFamily::component_label(int comp, int n) const {
    return "C" + std::to_string(comp) + "@" + std::to_string(n);
}

RaySpec LazyFamily::ray(const std::string& kind) const {
    throw std::invalid_argument("family " + name() + " has no ray named '" + kind + "'");
}

void validate_ray(const RaySpec& ray, int bound) {
    std::set<Vertex> seen;
    for (int i = 0; i < bound; ++i) {
        Vertex v = ray.at(i);
        if (!seen.insert(v).second)
            throw std::runtime_error("ray '" + ray.kind + "' revisits a vertex");
        if (i > 0 && !ray.family->adjacent(ray.at(i - 1), v, bound + 4))
            throw std::runtime_error("ray '" + ray.kind + "' has non-adjacent consecutive vertices");
    }
}

namespace {

// ---------------------------------------------------------------------------
// one-ended ladder: l_i = 2i, u_i = 2i+1; per column i the edge codes are
// lrail(i)=3i (l_i l_{i+1}), urail(i)=3i+1 (u_i u_{i+1}), rung(i)=3i+2 (u_i l_i).
// ---------------------------------------------------------------------------
class Ladder : public LazyFamily {
public:
    std::string name() const override { return "ladder"; }
    Vertex root() const override { return 0; }

    std::vector<Vertex> neighbors(Vertex v, int) const override {
        int i = v / 2;
        std::vector<Vertex> out;
        if (v % 2 == 0) {  // l_i
            if (i > 0) out.push_back(2 * (i - 1));
            out.push_back(2 * (i + 1));
            out.push_back(2 * i + 1);
        } else {  // u_i
            if (i > 0) out.push_back(2 * (i - 1) + 1);
            out.push_back(2 * (i + 1) + 1);
            out.push_back(2 * i);
        }
        return out;
    }

    std::vector<Vertex> exhaustion(int n) const override {
        std::vector<Vertex> w;
        for (int v = 0; v < 2 * n; ++v) w.push_back(v);
        return w;
    }
    bool in_exhaustion(Vertex v, int n) const override { return v < 2 * n; }

    int num_components_beyond(int) const override { return 1; }
    int component_of(Vertex, int) const override { return 0; }
    Vertex component_representative(int, int n) const override { return 2 * n; }

    int column_of(Vertex v) const override { return v / 2; }
    Vertex shift_vertex(Vertex v, int cols) const override { return v + 2 * cols; }

    std::vector<long long> edge_codes_at(Vertex v, int) const override {
        int i = v / 2;
        std::vector<long long> out;
        if (v % 2 == 0) {
            if (i > 0) out.push_back(3LL * (i - 1));
            out.push_back(3LL * i);
            out.push_back(3LL * i + 2);
        } else {
            if (i > 0) out.push_back(3LL * (i - 1) + 1);
            out.push_back(3LL * i + 1);
            out.push_back(3LL * i + 2);
        }
        return out;
    }
    std::pair<Vertex, Vertex> edge_endpoints(long long code) const override {
        int i = int(code / 3), k = int(code % 3);
        if (k == 0) return {2 * i, 2 * (i + 1)};
        if (k == 1) return {2 * i + 1, 2 * (i + 1) + 1};
        return {2 * i + 1, 2 * i};
    }
    int column_of_edge(long long code) const override { return int(code / 3); }
    long long shift_edge(long long code, int cols) const override { return code + 3LL * cols; }

    std::string vertex_label(Vertex v) const override {
        return (v % 2 == 0 ? "l" : "u") + std::to_string(v / 2);
    }
    std::string edge_label(long long code) const override {
        static const char* kKinds[] = {"lrail", "urail", "rung"};
        return std::string(kKinds[code % 3]) + "(" + std::to_string(code / 3) + ")";
    }
    std::optional<long long> parse_edge(const std::string& s) const override {
        for (int k = 0; k < 3; ++k) {
            static const std::string kinds[] = {"lrail", "urail", "rung"};
            if (s.rfind(kinds[k] + "(", 0) == 0 && s.back() == ')') {
                int i = std::stoi(s.substr(kinds[k].size() + 1, s.size() - kinds[k].size() - 2));
                return 3LL * i + k;
            }
        }
        return std::nullopt;
    }

    std::vector<std::string> ray_names() const override { return {"lower-rail", "upper-rail"}; }
    RaySpec ray(const std::string& kind) const override {
        if (kind == "lower-rail") return {this, kind, [](int i) { return 2 * i; }};
        if (kind == "upper-rail") return {this, kind, [](int i) { return 2 * i + 1; }};
        return LazyFamily::ray(kind);
    }
    RaySpec ray_into_component(int, int) const override { return ray("lower-rail"); }
};

// ---------------------------------------------------------------------------
// dominated ladder: d = 0, l_i = 2i+1, u_i = 2i+2; d is adjacent to every
// upper vertex. Codes: lrail(i)=4i, urail(i)=4i+1, rung(i)=4i+2, spoke(i)=4i+3.
// ---------------------------------------------------------------------------
class DominatedLadder : public LazyFamily {
public:
    static constexpr Vertex kD = 0;

    std::string name() const override { return "dominated-ladder"; }
    Vertex root() const override { return kD; }
    bool infinite_degree(Vertex v) const override { return v == kD; }
    std::vector<Vertex> infinite_degree_vertices() const override { return {kD}; }

    static Vertex l(int i) { return 2 * i + 1; }
    static Vertex u(int i) { return 2 * i + 2; }

    std::vector<Vertex> neighbors(Vertex v, int width) const override {
        std::vector<Vertex> out;
        if (v == kD) {
            for (int i = 0; i < width; ++i) out.push_back(u(i));
            return out;
        }
        int i = (v - 1) / 2;
        if ((v - 1) % 2 == 0) {  // l_i
            if (i > 0) out.push_back(l(i - 1));
            out.push_back(l(i + 1));
            out.push_back(u(i));
        } else {  // u_i
            if (i > 0) out.push_back(u(i - 1));
            out.push_back(u(i + 1));
            out.push_back(l(i));
            out.push_back(kD);
        }
        return out;
    }

    std::vector<Vertex> exhaustion(int n) const override {
        std::vector<Vertex> w{kD};
        for (int v = 1; v <= 2 * n; ++v) w.push_back(v);
        return w;
    }
    bool in_exhaustion(Vertex v, int n) const override { return v <= 2 * n; }

    int num_components_beyond(int) const override { return 1; }
    int component_of(Vertex, int) const override { return 0; }
    Vertex component_representative(int, int n) const override { return l(n); }

    int column_of(Vertex v) const override { return v == kD ? -1 : (v - 1) / 2; }
    Vertex shift_vertex(Vertex v, int cols) const override {
        return v == kD ? v : v + 2 * cols;
    }

    std::vector<long long> edge_codes_at(Vertex v, int width) const override {
        std::vector<long long> out;
        if (v == kD) {
            for (int i = 0; i < width; ++i) out.push_back(4LL * i + 3);
            return out;
        }
        int i = (v - 1) / 2;
        if ((v - 1) % 2 == 0) {
            if (i > 0) out.push_back(4LL * (i - 1));
            out.push_back(4LL * i);
            out.push_back(4LL * i + 2);
        } else {
            if (i > 0) out.push_back(4LL * (i - 1) + 1);
            out.push_back(4LL * i + 1);
            out.push_back(4LL * i + 2);
            out.push_back(4LL * i + 3);
        }
        return out;
    }
    std::pair<Vertex, Vertex> edge_endpoints(long long code) const override {
        int i = int(code / 4), k = int(code % 4);
        if (k == 0) return {l(i), l(i + 1)};
        if (k == 1) return {u(i), u(i + 1)};
        if (k == 2) return {u(i), l(i)};
        return {kD, u(i)};
    }
    int column_of_edge(long long code) const override { return int(code / 4); }
    long long shift_edge(long long code, int cols) const override { return code + 4LL * cols; }

    std::vector<TailClass> tail_classes(int n) const override {
        return {TailClass{TailClass::kParallel, kD, 0, n}};
    }
    bool in_tail(const TailClass& t, long long code) const override {
        return code % 4 == 3 && column_of_edge(code) >= t.first_col;
    }
    long long tail_edge_code(const TailClass&, int col) const override { return 4LL * col + 3; }

    std::string vertex_label(Vertex v) const override {
        if (v == kD) return "d";
        return ((v - 1) % 2 == 0 ? "l" : "u") + std::to_string((v - 1) / 2);
    }
    std::string edge_label(long long code) const override {
        static const char* kKinds[] = {"lrail", "urail", "rung", "spoke"};
        return std::string(kKinds[code % 4]) + "(" + std::to_string(code / 4) + ")";
    }
    std::optional<long long> parse_edge(const std::string& s) const override {
        static const std::string kinds[] = {"lrail", "urail", "rung", "spoke"};
        for (int k = 0; k < 4; ++k)
            if (s.rfind(kinds[k] + "(", 0) == 0 && s.back() == ')') {
                int i = std::stoi(s.substr(kinds[k].size() + 1, s.size() - kinds[k].size() - 2));
                return 4LL * i + k;
            }
        return std::nullopt;
    }

    std::vector<std::string> ray_names() const override { return {"lower-rail", "upper-rail"}; }
    RaySpec ray(const std::string& kind) const override {
        if (kind == "lower-rail") return {this, kind, [](int i) { return l(i); }};
        if (kind == "upper-rail") return {this, kind, [](int i) { return u(i); }};
        return LazyFamily::ray(kind);
    }
    RaySpec ray_into_component(int, int) const override { return ray("lower-rail"); }
};

// ---------------------------------------------------------------------------
// double ray: v_i for integer i; i>=0 -> 2i, i<0 -> -2i-1.
// Edge e(i) joins v_i and v_{i+1}; code: i>=0 -> 2i, i<0 -> -2i-1.
// ---------------------------------------------------------------------------
class DoubleRay : public LazyFamily {
public:
    static Vertex enc(int i) { return i >= 0 ? 2 * i : -2 * i - 1; }
    static int dec(Vertex v) { return v % 2 == 0 ? v / 2 : -(v + 1) / 2; }
    static long long enc_e(int i) { return i >= 0 ? 2LL * i : -2LL * i - 1; }
    static int dec_e(long long c) { return c % 2 == 0 ? int(c / 2) : int(-(c + 1) / 2); }

    std::string name() const override { return "double-ray"; }
    Vertex root() const override { return enc(0); }

    std::vector<Vertex> neighbors(Vertex v, int) const override {
        int i = dec(v);
        return {enc(i - 1), enc(i + 1)};
    }
    std::vector<Vertex> exhaustion(int n) const override {
        std::vector<Vertex> w;
        for (int i = -(n - 1); i <= n - 1; ++i) w.push_back(enc(i));
        std::sort(w.begin(), w.end());
        return w;
    }
    bool in_exhaustion(Vertex v, int n) const override { return std::abs(dec(v)) <= n - 1; }

    int num_components_beyond(int) const override { return 2; }
    int component_of(Vertex v, int) const override { return dec(v) > 0 ? 0 : 1; }
    Vertex component_representative(int comp, int n) const override {
        return comp == 0 ? enc(n) : enc(-n);
    }

    int column_of(Vertex v) const override { return std::abs(dec(v)); }
    int period_start() const override { return 1; }
    Vertex shift_vertex(Vertex v, int cols) const override {
        int i = dec(v);
        if (i == 0) return v;
        return enc(i > 0 ? i + cols : i - cols);
    }

    std::vector<long long> edge_codes_at(Vertex v, int) const override {
        int i = dec(v);
        return {enc_e(i - 1), enc_e(i)};
    }
    std::pair<Vertex, Vertex> edge_endpoints(long long code) const override {
        int i = dec_e(code);
        return {enc(i), enc(i + 1)};
    }
    int column_of_edge(long long code) const override {
        int i = dec_e(code);
        return std::max(std::abs(i), std::abs(i + 1));
    }
    long long shift_edge(long long code, int cols) const override {
        int i = dec_e(code);
        return enc_e(i >= 0 ? i + cols : i - cols);
    }

    std::string vertex_label(Vertex v) const override { return "v" + std::to_string(dec(v)); }
    std::string edge_label(long long code) const override {
        return "e(" + std::to_string(dec_e(code)) + ")";
    }
    std::optional<long long> parse_edge(const std::string& s) const override {
        if (s.rfind("e(", 0) == 0 && s.back() == ')')
            return enc_e(std::stoi(s.substr(2, s.size() - 3)));
        return std::nullopt;
    }

    std::vector<std::string> ray_names() const override { return {"right-tail", "left-tail"}; }
    RaySpec ray(const std::string& kind) const override {
        if (kind == "right-tail") return {this, kind, [](int i) { return enc(i); }};
        if (kind == "left-tail") return {this, kind, [](int i) { return enc(-i); }};
        return LazyFamily::ray(kind);
    }
    RaySpec ray_into_component(int comp, int) const override {
        return ray(comp == 0 ? "right-tail" : "left-tail");
    }
};

// ---------------------------------------------------------------------------
// quarter grid on N x N; columns are L-shells (max coordinate).
// Vertex code: Cantor pairing. Edge codes: 2*cantor(x,y) is the edge to
// (x+1,y), 2*cantor(x,y)+1 the edge to (x,y+1).
// ---------------------------------------------------------------------------
class Grid : public LazyFamily {
public:
    static long long cantor(long long x, long long y) { return (x + y) * (x + y + 1) / 2 + y; }
    static std::pair<int, int> uncantor(long long z) {
        long long w = (long long)((std::sqrt(8.0 * double(z) + 1) - 1) / 2);
        while ((w + 1) * (w + 2) / 2 <= z) ++w;
        while (w * (w + 1) / 2 > z) --w;
        long long y = z - w * (w + 1) / 2;
        return {int(w - y), int(y)};
    }
    static Vertex enc(int x, int y) { return Vertex(cantor(x, y)); }

    std::string name() const override { return "grid"; }
    Vertex root() const override { return enc(0, 0); }

    std::vector<Vertex> neighbors(Vertex v, int) const override {
        auto [x, y] = uncantor(v);
        std::vector<Vertex> out;
        if (x > 0) out.push_back(enc(x - 1, y));
        if (y > 0) out.push_back(enc(x, y - 1));
        out.push_back(enc(x + 1, y));
        out.push_back(enc(x, y + 1));
        return out;
    }
    std::vector<Vertex> exhaustion(int n) const override {
        std::vector<Vertex> w;
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) w.push_back(enc(x, y));
        std::sort(w.begin(), w.end());
        return w;
    }
    bool in_exhaustion(Vertex v, int n) const override {
        auto [x, y] = uncantor(v);
        return x < n && y < n;
    }

    int num_components_beyond(int) const override { return 1; }
    int component_of(Vertex, int) const override { return 0; }
    Vertex component_representative(int, int n) const override { return enc(n, 0); }

    int column_of(Vertex v) const override {
        auto [x, y] = uncantor(v);
        return std::max(x, y);
    }
    Vertex shift_vertex(Vertex v, int cols) const override {
        auto [x, y] = uncantor(v);
        return enc(x + cols, y + cols);
    }

    std::vector<long long> edge_codes_at(Vertex v, int) const override {
        auto [x, y] = uncantor(v);
        std::vector<long long> out{2 * cantor(x, y), 2 * cantor(x, y) + 1};
        if (x > 0) out.push_back(2 * cantor(x - 1, y));
        if (y > 0) out.push_back(2 * cantor(x, y - 1) + 1);
        return out;
    }
    std::pair<Vertex, Vertex> edge_endpoints(long long code) const override {
        auto [x, y] = uncantor(code / 2);
        if (code % 2 == 0) return {enc(x, y), enc(x + 1, y)};
        return {enc(x, y), enc(x, y + 1)};
    }
    int column_of_edge(long long code) const override {
        auto [u, v] = edge_endpoints(code);
        return std::max(column_of(u), column_of(v));
    }
    long long shift_edge(long long code, int cols) const override {
        auto [x, y] = uncantor(code / 2);
        return 2 * cantor(x + cols, y + cols) + (code % 2);
    }

    std::string vertex_label(Vertex v) const override {
        auto [x, y] = uncantor(v);
        return "(" + std::to_string(x) + "," + std::to_string(y) + ")";
    }
    std::string edge_label(long long code) const override {
        auto [x, y] = uncantor(code / 2);
        return std::string(code % 2 == 0 ? "right" : "up") + "(" + std::to_string(x) + "," +
               std::to_string(y) + ")";
    }
    std::optional<long long> parse_edge(const std::string& s) const override {
        for (auto [prefix, par] : {std::pair<const char*, int>{"right(", 0}, {"up(", 1}}) {
            if (s.rfind(prefix, 0) == 0 && s.back() == ')') {
                auto body = s.substr(std::string(prefix).size(), s.size() - std::string(prefix).size() - 1);
                auto comma = body.find(',');
                int x = std::stoi(body.substr(0, comma)), y = std::stoi(body.substr(comma + 1));
                return 2 * cantor(x, y) + par;
            }
        }
        return std::nullopt;
    }

    std::vector<std::string> ray_names() const override {
        return {"bottom-row", "row1", "row2", "column0"};
    }
    RaySpec ray(const std::string& kind) const override {
        if (kind == "bottom-row") return {this, kind, [](int i) { return enc(i, 0); }};
        if (kind == "row1") return {this, kind, [](int i) { return enc(i, 1); }};
        if (kind == "row2") return {this, kind, [](int i) { return enc(i, 2); }};
        if (kind == "column0") return {this, kind, [](int i) { return enc(0, i); }};
        return LazyFamily::ray(kind);
    }
    RaySpec ray_into_component(int, int) const override { return ray("bottom-row"); }
    int default_classify_bound(int requested) const override { return std::min(requested, 9); }
};

// ---------------------------------------------------------------------------
// rooted binary tree, heap indexing from 1; columns are levels.
// Edge code h (h >= 2): the edge from h to its parent h/2.
// ---------------------------------------------------------------------------
class BinaryTree : public LazyFamily {
public:
    static int level_of(Vertex h) {
        int l = 0;
        while (h > 1) {
            h >>= 1;
            ++l;
        }
        return l;
    }

    std::string name() const override { return "binary-tree"; }
    Vertex root() const override { return 1; }

    std::vector<Vertex> neighbors(Vertex v, int) const override {
        std::vector<Vertex> out;
        if (v > 1) out.push_back(v / 2);
        out.push_back(2 * v);
        out.push_back(2 * v + 1);
        return out;
    }
    std::vector<Vertex> exhaustion(int n) const override {
        std::vector<Vertex> w;
        for (Vertex v = 1; v < (Vertex{1} << n); ++v) w.push_back(v);
        return w;
    }
    bool in_exhaustion(Vertex v, int n) const override { return v < (Vertex{1} << n); }

    int num_components_beyond(int n) const override { return 1 << n; }
    int component_of(Vertex v, int n) const override {
        int lv = level_of(v);
        return int(v >> (lv - n)) - (1 << n);
    }
    Vertex component_representative(int comp, int n) const override {
        return (Vertex{1} << n) + comp;
    }
    std::string component_label(int comp, int n) const override {
        return "subtree(" + std::to_string((1 << n) + comp) + ")";
    }

    int column_of(Vertex v) const override { return level_of(v); }
    Vertex shift_vertex(Vertex v, int cols) const override { return v << cols; }

    std::vector<long long> edge_codes_at(Vertex v, int) const override {
        std::vector<long long> out;
        if (v > 1) out.push_back(v);
        out.push_back(2 * v);
        out.push_back(2 * v + 1);
        return out;
    }
    std::pair<Vertex, Vertex> edge_endpoints(long long code) const override {
        return {Vertex(code / 2), Vertex(code)};
    }
    int column_of_edge(long long code) const override { return level_of(Vertex(code)); }
    long long shift_edge(long long code, int cols) const override { return code << cols; }

    std::string vertex_label(Vertex v) const override { return "n" + std::to_string(v); }
    std::string edge_label(long long code) const override {
        return "up(" + std::to_string(code) + ")";
    }
    std::optional<long long> parse_edge(const std::string& s) const override {
        if (s.rfind("up(", 0) == 0 && s.back() == ')')
            return std::stoll(s.substr(3, s.size() - 4));
        return std::nullopt;
    }

    std::vector<std::string> ray_names() const override { return {"leftmost-branch"}; }
    RaySpec ray(const std::string& kind) const override {
        if (kind == "leftmost-branch") return {this, kind, [](int i) { return Vertex{1} << i; }};
        return LazyFamily::ray(kind);
    }
    RaySpec ray_into_component(int comp, int level) const override {
        Vertex r = (Vertex{1} << level) + comp;
        return {this, "branch(" + std::to_string(r) + ")",
                [r](int i) { return r << i; }};
    }
    // Chains double per level and classification balls grow as 2^level;
    // sixteen chains already exercise the dichotomy.
    int default_classify_bound(int requested) const override { return std::min(requested, 4); }
};

// ---------------------------------------------------------------------------
// infinite star: center 0, leaves i>=1; column of leaf i is i-1.
// Edge code i (i>=0): center -- leaf_{i+1}.
// ---------------------------------------------------------------------------
class Star : public LazyFamily {
public:
    static constexpr Vertex kCenter = 0;

    std::string name() const override { return "star"; }
    Vertex root() const override { return kCenter; }
    bool infinite_degree(Vertex v) const override { return v == kCenter; }
    std::vector<Vertex> infinite_degree_vertices() const override { return {kCenter}; }

    std::vector<Vertex> neighbors(Vertex v, int width) const override {
        if (v == kCenter) {
            std::vector<Vertex> out;
            for (int i = 0; i < width; ++i) out.push_back(i + 1);
            return out;
        }
        return {kCenter};
    }
    std::vector<Vertex> exhaustion(int n) const override {
        std::vector<Vertex> w;
        for (Vertex v = 0; v <= n; ++v) w.push_back(v);  // center + leaves of columns < n
        return w;
    }
    bool in_exhaustion(Vertex v, int n) const override { return v <= n; }

    int num_components_beyond(int) const override { return 0; }
    int component_of(Vertex, int) const override {
        throw std::logic_error("star: no regular components beyond any level");
    }
    Vertex component_representative(int, int) const override {
        throw std::logic_error("star: no regular components");
    }
    std::vector<TailClass> tail_classes(int n) const override {
        return {TailClass{TailClass::kPendant, kCenter, -1, n}};
    }
    bool in_tail(const TailClass& t, long long code) const override {
        return code >= t.first_col;
    }
    long long tail_edge_code(const TailClass&, int col) const override { return col; }

    int column_of(Vertex v) const override { return v == kCenter ? -1 : v - 1; }
    Vertex shift_vertex(Vertex v, int cols) const override {
        return v == kCenter ? v : v + cols;
    }

    std::vector<long long> edge_codes_at(Vertex v, int width) const override {
        if (v == kCenter) {
            std::vector<long long> out;
            for (int i = 0; i < width; ++i) out.push_back(i);
            return out;
        }
        return {v - 1};
    }
    std::pair<Vertex, Vertex> edge_endpoints(long long code) const override {
        return {kCenter, Vertex(code + 1)};
    }
    int column_of_edge(long long code) const override { return int(code); }
    long long shift_edge(long long code, int cols) const override { return code + cols; }

    std::string vertex_label(Vertex v) const override {
        return v == kCenter ? "c" : "leaf" + std::to_string(v - 1);
    }
    std::string edge_label(long long code) const override {
        return "ray(" + std::to_string(code) + ")";
    }
    std::optional<long long> parse_edge(const std::string& s) const override {
        if (s.rfind("ray(", 0) == 0 && s.back() == ')')
            return std::stoll(s.substr(4, s.size() - 5));
        return std::nullopt;
    }

    RaySpec ray_into_component(int, int) const override {
        throw std::logic_error("star has no ends");
    }
};

// ---------------------------------------------------------------------------
// comb: spine s_i = 2i, tooth t_i = 2i+1; codes spine(i)=2i, tooth(i)=2i+1.
// ---------------------------------------------------------------------------
class Comb : public LazyFamily {
public:
    std::string name() const override { return "comb"; }
    Vertex root() const override { return 0; }

    std::vector<Vertex> neighbors(Vertex v, int) const override {
        int i = v / 2;
        if (v % 2 == 1) return {2 * i};
        std::vector<Vertex> out;
        if (i > 0) out.push_back(2 * (i - 1));
        out.push_back(2 * (i + 1));
        out.push_back(2 * i + 1);
        return out;
    }
    std::vector<Vertex> exhaustion(int n) const override {
        std::vector<Vertex> w;
        for (int v = 0; v < 2 * n; ++v) w.push_back(v);
        return w;
    }
    bool in_exhaustion(Vertex v, int n) const override { return v < 2 * n; }

    int num_components_beyond(int) const override { return 1; }
    int component_of(Vertex, int) const override { return 0; }
    Vertex component_representative(int, int n) const override { return 2 * n; }

    int column_of(Vertex v) const override { return v / 2; }
    Vertex shift_vertex(Vertex v, int cols) const override { return v + 2 * cols; }

    std::vector<long long> edge_codes_at(Vertex v, int) const override {
        int i = v / 2;
        if (v % 2 == 1) return {2LL * i + 1};
        std::vector<long long> out;
        if (i > 0) out.push_back(2LL * (i - 1));
        out.push_back(2LL * i);
        out.push_back(2LL * i + 1);
        return out;
    }
    std::pair<Vertex, Vertex> edge_endpoints(long long code) const override {
        int i = int(code / 2);
        if (code % 2 == 0) return {2 * i, 2 * (i + 1)};
        return {2 * i, 2 * i + 1};
    }
    int column_of_edge(long long code) const override { return int(code / 2); }
    long long shift_edge(long long code, int cols) const override { return code + 2LL * cols; }

    std::string vertex_label(Vertex v) const override {
        return (v % 2 == 0 ? "s" : "t") + std::to_string(v / 2);
    }
    std::string edge_label(long long code) const override {
        return std::string(code % 2 == 0 ? "spine" : "tooth") + "(" + std::to_string(code / 2) +
               ")";
    }
    std::optional<long long> parse_edge(const std::string& s) const override {
        for (auto [prefix, par] : {std::pair<const char*, int>{"spine(", 0}, {"tooth(", 1}}) {
            std::string p(prefix);
            if (s.rfind(p, 0) == 0 && s.back() == ')')
                return 2LL * std::stoi(s.substr(p.size(), s.size() - p.size() - 1)) + par;
        }
        return std::nullopt;
    }

    std::vector<std::string> ray_names() const override { return {"spine"}; }
    RaySpec ray(const std::string& kind) const override {
        if (kind == "spine") return {this, kind, [](int i) { return 2 * i; }};
        return LazyFamily::ray(kind);
    }
    RaySpec ray_into_component(int, int) const override { return ray("spine"); }
};

// ---------------------------------------------------------------------------
// quarter grid plus an apex adjacent to every bottom-row vertex. The apex
// dominates the single end. Vertex codes: apex = 0, grid vertex (x,y) is
// 1 + cantor(x,y); edge codes: grid edges as in Grid, apex edges odd-shifted.
// ---------------------------------------------------------------------------
class ApexGrid : public LazyFamily {
public:
    static constexpr Vertex kApex = 0;
    static long long cantor(long long x, long long y) { return (x + y) * (x + y + 1) / 2 + y; }
    static Vertex enc(int x, int y) { return Vertex(1 + cantor(x, y)); }
    static std::pair<int, int> uncantor(long long z) {
        long long w = (long long)((std::sqrt(8.0 * double(z) + 1) - 1) / 2);
        while ((w + 1) * (w + 2) / 2 <= z) ++w;
        while (w * (w + 1) / 2 > z) --w;
        long long y = z - w * (w + 1) / 2;
        return {int(w - y), int(y)};
    }
    // edge codes: 3*cantor(x,y) right, +1 up, and 3*x+2 for apex--(x,0)
    static long long right_code(int x, int y) { return 3 * cantor(x, y); }
    static long long up_code(int x, int y) { return 3 * cantor(x, y) + 1; }
    static long long apex_code(int x) { return 3LL * cantor(x, 0) + 2; }

    std::string name() const override { return "apex-grid"; }
    Vertex root() const override { return kApex; }
    bool infinite_degree(Vertex v) const override { return v == kApex; }
    std::vector<Vertex> infinite_degree_vertices() const override { return {kApex}; }

    std::vector<Vertex> neighbors(Vertex v, int width) const override {
        if (v == kApex) {
            std::vector<Vertex> out;
            for (int x = 0; x < width; ++x) out.push_back(enc(x, 0));
            return out;
        }
        auto [x, y] = uncantor(v - 1);
        std::vector<Vertex> out;
        if (x > 0) out.push_back(enc(x - 1, y));
        if (y > 0) out.push_back(enc(x, y - 1));
        out.push_back(enc(x + 1, y));
        out.push_back(enc(x, y + 1));
        if (y == 0) out.push_back(kApex);
        return out;
    }
    std::vector<Vertex> exhaustion(int n) const override {
        std::vector<Vertex> w{kApex};
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) w.push_back(enc(x, y));
        std::sort(w.begin(), w.end());
        return w;
    }
    bool in_exhaustion(Vertex v, int n) const override {
        if (v == kApex) return true;
        auto [x, y] = uncantor(v - 1);
        return x < n && y < n;
    }

    int num_components_beyond(int) const override { return 1; }
    int component_of(Vertex, int) const override { return 0; }
    Vertex component_representative(int, int n) const override { return enc(n, 0); }

    int column_of(Vertex v) const override {
        if (v == kApex) return -1;
        auto [x, y] = uncantor(v - 1);
        return std::max(x, y);
    }
    Vertex shift_vertex(Vertex v, int cols) const override {
        if (v == kApex) return v;
        auto [x, y] = uncantor(v - 1);
        return enc(x + cols, y + cols);
    }

    std::vector<long long> edge_codes_at(Vertex v, int width) const override {
        if (v == kApex) {
            std::vector<long long> out;
            for (int x = 0; x < width; ++x) out.push_back(apex_code(x));
            return out;
        }
        auto [x, y] = uncantor(v - 1);
        std::vector<long long> out{right_code(x, y), up_code(x, y)};
        if (x > 0) out.push_back(right_code(x - 1, y));
        if (y > 0) out.push_back(up_code(x, y - 1));
        if (y == 0) out.push_back(apex_code(x));
        return out;
    }
    std::pair<Vertex, Vertex> edge_endpoints(long long code) const override {
        auto [x, y] = uncantor(code / 3);
        if (code % 3 == 0) return {enc(x, y), enc(x + 1, y)};
        if (code % 3 == 1) return {enc(x, y), enc(x, y + 1)};
        return {kApex, enc(x, 0)};
    }
    int column_of_edge(long long code) const override {
        auto [x, y] = uncantor(code / 3);
        if (code % 3 == 0) return std::max(x + 1, y);
        if (code % 3 == 1) return std::max(x, y + 1);
        return x;
    }
    long long shift_edge(long long code, int cols) const override {
        auto [x, y] = uncantor(code / 3);
        if (code % 3 == 2) return apex_code(x + cols);
        return 3 * cantor(x + cols, y + cols) + (code % 3);
    }

    std::vector<TailClass> tail_classes(int n) const override {
        return {TailClass{TailClass::kParallel, kApex, 0, n}};
    }
    bool in_tail(const TailClass& t, long long code) const override {
        return code % 3 == 2 && column_of_edge(code) >= t.first_col;
    }
    long long tail_edge_code(const TailClass&, int col) const override { return apex_code(col); }

    std::string vertex_label(Vertex v) const override {
        if (v == kApex) return "apex";
        auto [x, y] = uncantor(v - 1);
        return "(" + std::to_string(x) + "," + std::to_string(y) + ")";
    }
    std::string edge_label(long long code) const override {
        auto [x, y] = uncantor(code / 3);
        if (code % 3 == 2) return "drop(" + std::to_string(x) + ")";
        return std::string(code % 3 == 0 ? "right(" : "up(") + std::to_string(x) + "," +
               std::to_string(y) + ")";
    }
    std::optional<long long> parse_edge(const std::string& s) const override {
        if (s.rfind("drop(", 0) == 0 && s.back() == ')')
            return apex_code(std::stoi(s.substr(5, s.size() - 6)));
        for (auto [prefix, par] : {std::pair<const char*, int>{"right(", 0}, {"up(", 1}}) {
            std::string p(prefix);
            if (s.rfind(p, 0) == 0 && s.back() == ')') {
                auto body = s.substr(p.size(), s.size() - p.size() - 1);
                auto comma = body.find(',');
                int x = std::stoi(body.substr(0, comma)), y = std::stoi(body.substr(comma + 1));
                return 3 * cantor(x, y) + par;
            }
        }
        return std::nullopt;
    }

    std::vector<std::string> ray_names() const override { return {"bottom-row", "row1", "row2"}; }
    RaySpec ray(const std::string& kind) const override {
        if (kind == "bottom-row") return {this, kind, [](int i) { return enc(i, 0); }};
        if (kind == "row1") return {this, kind, [](int i) { return enc(i, 1); }};
        if (kind == "row2") return {this, kind, [](int i) { return enc(i, 2); }};
        return LazyFamily::ray(kind);
    }
    RaySpec ray_into_component(int, int) const override { return ray("bottom-row"); }
    int default_classify_bound(int requested) const override { return std::min(requested, 8); }
};

}  // namespace

const LazyFamily& family_by_name(const std::string& name) {
    static const Ladder ladder;
    static const DominatedLadder dom;
    static const DoubleRay dray;
    static const Grid grid;
    static const BinaryTree btree;
    static const Star star;
    static const Comb comb;
    static const ApexGrid apex;
    static const std::map<std::string, const LazyFamily*> reg = {
        {"ladder", &ladder},       {"dominated-ladder", &dom}, {"double-ray", &dray},
        {"grid", &grid},           {"binary-tree", &btree},    {"star", &star},
        {"comb", &comb},           {"apex-grid", &apex},
    };
    auto it = reg.find(name);
    if (it == reg.end()) throw std::invalid_argument("unknown family '" + name + "'");
    return *it->second;
}

std::vector<std::string> family_names() {
    return {"ladder", "dominated-ladder", "double-ray", "grid",
            "binary-tree", "star", "comb", "apex-grid"};
}

}  // namespace psimat
