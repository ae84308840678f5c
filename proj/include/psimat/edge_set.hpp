#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace psimat {

/// Set of edge ids over a fixed finite universe, stored as a bitset.
/// GF(2) arithmetic on edge sets is symmetric difference (operator^).
class EdgeSet {
public:
    EdgeSet() = default;
    explicit EdgeSet(int universe) : n_(universe), w_((universe + 63) / 64, 0) {}
    EdgeSet(int universe, std::initializer_list<int> ids) : EdgeSet(universe) {
        for (int e : ids) set(e);
    }

    int universe() const { return n_; }

    void set(int e) { w_[e >> 6] |= (uint64_t{1} << (e & 63)); }
    void reset(int e) { w_[e >> 6] &= ~(uint64_t{1} << (e & 63)); }
    bool test(int e) const { return (w_[e >> 6] >> (e & 63)) & 1; }

    bool empty() const {
        for (uint64_t w : w_)
            if (w) return false;
        return true;
    }

    int count() const {
        int c = 0;
        for (uint64_t w : w_) c += __builtin_popcountll(w);
        return c;
    }

    bool intersects(const EdgeSet& o) const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    int intersection_count(const EdgeSet& o) const {
        int c = 0;
        for (size_t i = 0; i < w_.size(); ++i) c += __builtin_popcountll(w_[i] & o.w_[i]);
        return c;
    }

    bool subset_of(const EdgeSet& o) const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    bool proper_subset_of(const EdgeSet& o) const { return subset_of(o) && *this != o; }

    EdgeSet operator^(const EdgeSet& o) const {
        EdgeSet r(n_);
        for (size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] ^ o.w_[i];
        return r;
    }
    EdgeSet operator&(const EdgeSet& o) const {
        EdgeSet r(n_);
        for (size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & o.w_[i];
        return r;
    }
    EdgeSet operator|(const EdgeSet& o) const {
        EdgeSet r(n_);
        for (size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] | o.w_[i];
        return r;
    }
    EdgeSet& operator^=(const EdgeSet& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
        return *this;
    }
    EdgeSet& operator|=(const EdgeSet& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }

    bool operator==(const EdgeSet& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const EdgeSet& o) const { return !(*this == o); }
    // Lexicographic order on the id sequence; total order for canonical sorting.
    bool operator<(const EdgeSet& o) const;

    std::vector<int> ids() const {
        std::vector<int> r;
        for (int i = 0; i < n_; ++i)
            if (test(i)) r.push_back(i);
        return r;
    }

    int lowest() const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i]) return int(i * 64 + __builtin_ctzll(w_[i]));
        return -1;
    }

    size_t hash() const {
        size_t h = std::hash<int>()(n_);
        for (uint64_t w : w_) h = h * 1000003u + std::hash<uint64_t>()(w);
        return h;
    }

    std::string to_string() const;

private:
    int n_ = 0;
    std::vector<uint64_t> w_;
};

struct EdgeSetHash {
    size_t operator()(const EdgeSet& s) const { return s.hash(); }
};

}  // namespace psimat
