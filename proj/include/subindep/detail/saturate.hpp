#pragma once

#include <cstddef>
#include <vector>

#include "subindep/structure.hpp"

namespace subindep::detail {

/// Semi-naive fixpoint driver over a growing item list.
///
/// For every operation of arity k >= 1 and every k-tuple of item positions
/// drawn from [0, count()) calls visit(op, positions) exactly once, where
/// count() may grow during the run. Items before `processed` are assumed
/// done: only tuples whose largest position is >= processed are visited.
/// Returns false as soon as visit does; `processed` then holds the resume point.
template <class Count, class Visit>
bool saturate(const Signature& sig, std::size_t& processed, Count count, Visit visit) {
    std::vector<std::size_t> pos;
    for (; processed < count(); ++processed) {
        const std::size_t p = processed;
        for (std::size_t op = 0; op < sig.ops().size(); ++op) {
            const std::size_t k = sig.ops()[op].arity;
            if (k == 0) continue;
            // Tuples over [0, p] that use p at least once.
            pos.assign(k, 0);
            while (true) {
                bool uses_p = false;
                for (std::size_t q : pos) uses_p = uses_p || q == p;
                if (uses_p && !visit(op, static_cast<const std::vector<std::size_t>&>(pos))) return false;
                std::size_t i = k;
                while (i > 0 && pos[i - 1] == p) pos[--i] = 0;
                if (i == 0) break;
                ++pos[i - 1];
            }
        }
    }
    return true;
}

/// Union-find over 0..n-1 with path halving and union by size.
class UnionFind {
  public:
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
        for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<Element>(i);
    }

    Element find(Element x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    /// Returns true when two distinct classes were merged.
    bool unite(Element a, Element b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }

    [[nodiscard]] std::size_t size() const { return parent_.size(); }

    Congruence to_congruence() {
        std::vector<Element> labels(parent_.size());
        for (std::size_t i = 0; i < parent_.size(); ++i) labels[i] = find(static_cast<Element>(i));
        return Congruence(labels);
    }

  private:
    std::vector<Element> parent_;
    std::vector<std::size_t> size_;
};

} // namespace subindep::detail
