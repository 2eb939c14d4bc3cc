#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace starmesh {

// Disjoint sets over indices 0..n-1 with path halving and union by size.
class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) const {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    // Returns false if x and y were already in the same class.
    bool unite(std::size_t x, std::size_t y) {
        x = find(x);
        y = find(y);
        if (x == y) return false;
        if (size_[x] < size_[y]) std::swap(x, y);
        parent_[y] = x;
        size_[x] += size_[y];
        return true;
    }

    bool same(std::size_t x, std::size_t y) const { return find(x) == find(y); }

    std::size_t size() const { return parent_.size(); }

private:
    mutable std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

} // namespace starmesh
