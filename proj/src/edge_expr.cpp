#include "psimat/edge_expr.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace psimat {

bool EdgeSetExpr::contains(long long code) const {
    if (std::binary_search(finite_part.begin(), finite_part.end(), code)) return true;
    if (!has_period) return false;
    int col = family->column_of_edge(code);
    if (col < period_start) return false;
    int k = (col - period_start) / period_len;
    long long base = family->shift_edge(code, -k * period_len);
    return std::find(pattern.begin(), pattern.end(), base) != pattern.end();
}

std::vector<long long> EdgeSetExpr::members_up_to(int maxcol) const {
    std::set<long long> out;
    for (long long c : finite_part)
        if (family->column_of_edge(c) <= maxcol) out.insert(c);
    if (has_period) {
        for (int k = 0;; ++k) {
            bool any = false;
            for (long long p : pattern) {
                long long c = family->shift_edge(p, k * period_len);
                if (family->column_of_edge(c) <= maxcol) {
                    out.insert(c);
                    any = true;
                }
            }
            if (!any) break;
        }
    }
    return {out.begin(), out.end()};
}

EdgeSet EdgeSetExpr::restrict_to(const Slice& s) const {
    EdgeSet out(s.graph.num_edges());
    for (int e = 0; e < s.graph.num_edges(); ++e)
        if (contains(s.edge_code[e])) out.set(e);
    return out;
}

std::optional<int> EdgeSetExpr::tail_intersection(const TailClass& t) const {
    if (has_period) {
        for (long long p : pattern) {
            // Shift the pattern edge far enough into the tail's column range.
            int col = family->column_of_edge(p);
            int k = 0;
            while (col + k * period_len < t.first_col + period_len) ++k;
            if (family->in_tail(t, family->shift_edge(p, k * period_len))) return std::nullopt;
        }
    }
    int c = 0;
    for (long long e : finite_part)
        if (family->in_tail(t, e)) ++c;
    return c;
}

std::string EdgeSetExpr::to_string() const {
    std::ostringstream os;
    os << "edges{";
    for (size_t i = 0; i < finite_part.size(); ++i) {
        if (i) os << ", ";
        os << family->edge_label(finite_part[i]);
    }
    os << "}";
    if (has_period) {
        os << " period(" << period_start << "," << period_len << "){";
        for (size_t i = 0; i < pattern.size(); ++i) {
            if (i) os << ", ";
            os << family->edge_label(pattern[i]);
        }
        os << "}";
    }
    return os.str();
}

EdgeSetExpr finite_expr(const LazyFamily& f, std::vector<long long> codes) {
    EdgeSetExpr e;
    e.family = &f;
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    e.finite_part = std::move(codes);
    return e;
}

EdgeSetExpr periodic_expr(const LazyFamily& f, std::vector<long long> finite_codes,
                          int period_start, int period_len, std::vector<long long> pattern) {
    EdgeSetExpr e = finite_expr(f, std::move(finite_codes));
    if (period_len < 1) throw std::invalid_argument("period length must be positive");
    e.has_period = true;
    e.period_start = period_start;
    e.period_len = period_len;
    for (long long p : pattern) {
        int col = f.column_of_edge(p);
        if (col < period_start || col >= period_start + period_len)
            throw std::invalid_argument("pattern edge " + f.edge_label(p) +
                                        " outside the period window");
    }
    e.pattern = std::move(pattern);
    return e;
}

namespace {

std::vector<std::string> split_names(const std::string& body) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : body) {
        if (ch == ',' || ch == ' ' || ch == '\t') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
            if (ch == ',') continue;
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

long long parse_one_edge(const LazyFamily& f, const std::string& name) {
    auto c = f.parse_edge(name);
    if (!c) throw std::invalid_argument("cannot parse edge '" + name + "' for family " + f.name());
    return *c;
}

}  // namespace

EdgeSetExpr parse_expr(const LazyFamily& f, const std::string& text) {
    auto epos = text.find("edges{");
    if (epos == std::string::npos) throw std::invalid_argument("expected edges{...}");
    auto eend = text.find('}', epos);
    if (eend == std::string::npos) throw std::invalid_argument("unterminated edges{...}");
    std::vector<long long> finite;
    for (auto& n : split_names(text.substr(epos + 6, eend - epos - 6)))
        finite.push_back(parse_one_edge(f, n));

    auto ppos = text.find("period(", eend);
    if (ppos == std::string::npos) return finite_expr(f, std::move(finite));
    auto pargs_end = text.find(')', ppos);
    auto pbody_start = text.find('{', pargs_end);
    auto pbody_end = text.find('}', pbody_start);
    if (pargs_end == std::string::npos || pbody_start == std::string::npos ||
        pbody_end == std::string::npos)
        throw std::invalid_argument("malformed period(start,len){...}");
    std::string args = text.substr(ppos + 7, pargs_end - ppos - 7);
    auto comma = args.find(',');
    int start = std::stoi(args.substr(0, comma));
    int len = std::stoi(args.substr(comma + 1));
    std::vector<long long> pattern;
    for (auto& n : split_names(text.substr(pbody_start + 1, pbody_end - pbody_start - 1)))
        pattern.push_back(parse_one_edge(f, n));
    return periodic_expr(f, std::move(finite), start, len, std::move(pattern));
}

EdgeSetExpr dominated_ladder_grey_circuit() {
    const LazyFamily& f = family_by_name("dominated-ladder");
    // finite: spoke(0), spoke(1), rung(0), lrail(0); tail: lrail+urail per column from 1
    auto spoke = [&](int i) { return 4LL * i + 3; };
    auto rung = [&](int i) { return 4LL * i + 2; };
    auto lrail = [&](int i) { return 4LL * i; };
    auto urail = [&](int i) { return 4LL * i + 1; };
    return periodic_expr(f, {spoke(0), spoke(1), rung(0), lrail(0)}, 1, 1,
                         {lrail(1), urail(1)});
}

int CutExpr::side_of(Vertex v) const {
    auto it = exceptional.find(v);
    if (it != exceptional.end()) return it->second;
    int col = family->column_of(v);
    if (col < 0 || col < rule_start) return default_side;
    int k = (col - rule_start) / rule_len;
    Vertex base = family->shift_vertex(v, -k * rule_len);
    auto rt = rule.find(base);
    return rt == rule.end() ? default_side : rt->second;
}

std::optional<int> CutExpr::eventual_side() const {
    if (rule.empty()) return default_side;
    int s = rule.begin()->second;
    for (auto& [v, side] : rule)
        if (side != s) return std::nullopt;
    return s;
}

EdgeSetExpr CutExpr::crossing_edges(int horizon) const {
    const LazyFamily& f = *family;
    int p_start = rule_start + rule_len;
    int probe = std::max(horizon, p_start + 3 * rule_len) + 2;

    // Gather all edges with columns below the probe via the exhaustion.
    std::set<long long> codes;
    for (Vertex v : f.exhaustion(probe))
        for (long long c : f.edge_codes_at(v, probe)) codes.insert(c);

    std::vector<long long> finite, pattern, check;
    for (long long c : codes) {
        auto [a, b] = f.edge_endpoints(c);
        if (side_of(a) == side_of(b)) continue;
        int col = f.column_of_edge(c);
        if (col < p_start) finite.push_back(c);
        else if (col < p_start + rule_len) pattern.push_back(c);
        else if (col < p_start + 2 * rule_len) check.push_back(c);
        if (cover) {
            bool covered = false;
            for (Vertex w : *cover)
                if (a == w || b == w) covered = true;
            if (!covered)
                throw std::invalid_argument("claimed cover misses crossing edge " +
                                            f.edge_label(c));
        }
    }
    // The crossing pattern must repeat: window [p_start+len, p_start+2len)
    // equals the shift of [p_start, p_start+len).
    std::set<long long> shifted;
    for (long long p : pattern) shifted.insert(f.shift_edge(p, rule_len));
    if (shifted != std::set<long long>(check.begin(), check.end()))
        throw std::invalid_argument("malformed cut rule: crossing pattern does not repeat");
    if (pattern.empty()) return finite_expr(f, std::move(finite));
    return periodic_expr(f, std::move(finite), p_start, rule_len, std::move(pattern));
}

}  // namespace psimat
