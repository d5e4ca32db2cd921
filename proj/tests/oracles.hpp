#pragma once
// Slow reference implementations used only by the tests.

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "subindep/structure.hpp"

namespace oracle {

using subindep::Element;
using subindep::FiniteStructure;
using subindep::Tuple;

inline void each_tuple(std::size_t n, std::size_t arity, const std::function<void(const Tuple&)>& f) {
    Tuple t(arity, 0);
    while (true) {
        f(t);
        std::size_t i = arity;
        while (i > 0 && t[i - 1] + 1 == n) t[--i] = 0;
        if (i == 0) return;
        ++t[i - 1];
    }
}

inline Element eval(const FiniteStructure& s, std::size_t op, const Tuple& args) { return s.apply(op, args); }

/// Repeat "apply every op to every tuple" until nothing changes.
inline std::set<Element> closure(const FiniteStructure& s, std::set<Element> seed) {
    bool grew = true;
    while (grew) {
        grew = false;
        const std::vector<Element> cur(seed.begin(), seed.end());
        for (std::size_t op = 0; op < s.signature().ops().size(); ++op) {
            const std::size_t k = s.signature().ops()[op].arity;
            if (k > 0 && cur.empty()) continue;
            each_tuple(k == 0 ? 1 : cur.size(), k, [&](const Tuple& idx) {
                Tuple args;
                for (Element i : idx) args.push_back(cur[i]);
                grew |= seed.insert(eval(s, op, args)).second;
            });
        }
    }
    return seed;
}

/// Every map, filtered. |cod|^|dom| must be small.
inline std::vector<std::vector<Element>> homs(const FiniteStructure& dom, const FiniteStructure& cod, bool strong) {
    std::vector<std::vector<Element>> out;
    each_tuple(cod.size(), dom.size(), [&](const Tuple& map) {
        for (std::size_t op = 0; op < dom.signature().ops().size(); ++op) {
            bool ok = true;
            each_tuple(dom.size(), dom.signature().ops()[op].arity, [&](const Tuple& args) {
                Tuple image;
                for (Element x : args) image.push_back(map[x]);
                ok = ok && map[eval(dom, op, args)] == eval(cod, op, image);
            });
            if (!ok) return;
        }
        for (std::size_t r = 0; r < dom.signature().rels().size(); ++r) {
            bool ok = true;
            each_tuple(dom.size(), dom.signature().rels()[r].arity, [&](const Tuple& t) {
                Tuple image;
                for (Element x : t) image.push_back(map[x]);
                const bool a = dom.holds(r, t);
                const bool b = cod.holds(r, image);
                ok = ok && (!a || b) && (!strong || !b || a);
            });
            if (!ok) return;
        }
        out.push_back(map);
    });
    return out;
}

/// All partitions as canonical block assignments, filtered for compatibility.
inline std::vector<std::vector<Element>> congruences(const FiniteStructure& s) {
    std::vector<std::vector<Element>> out;
    const std::size_t n = s.size();
    std::vector<Element> block(n, 0);
    std::function<void(std::size_t, Element)> rec = [&](std::size_t i, Element used) {
        if (i == n) {
            for (std::size_t op = 0; op < s.signature().ops().size(); ++op) {
                bool ok = true;
                const std::size_t k = s.signature().ops()[op].arity;
                each_tuple(n, k, [&](const Tuple& x) {
                    each_tuple(n, k, [&](const Tuple& y) {
                        if (!ok) return;
                        for (std::size_t j = 0; j < k; ++j) {
                            if (block[x[j]] != block[y[j]]) return;
                        }
                        ok = block[eval(s, op, x)] == block[eval(s, op, y)];
                    });
                });
                if (!ok) return;
            }
            out.push_back(block);
            return;
        }
        for (Element b = 0; b <= used && b < n; ++b) {
            block[i] = b;
            rec(i + 1, std::max<Element>(used, b + 1));
        }
    };
    if (n > 0) {
        block[0] = 0;
        rec(1, 1);
    }
    return out;
}

/// A structure with random tables for each (name, arity) op.
inline FiniteStructure random_structure(std::mt19937_64& rng, std::size_t n,
                                        const std::vector<subindep::Symbol>& ops,
                                        const std::vector<subindep::Symbol>& rels = {}) {
    subindep::StructureDraft d;
    d.sig = subindep::Signature(ops, rels);
    d.size = n;
    for (const auto& op : ops) {
        std::vector<Element> table(subindep::tuple_count(n, op.arity));
        for (auto& v : table) v = static_cast<Element>(rng() % n);
        d.op_tables.push_back(std::move(table));
    }
    for (const auto& rel : rels) {
        std::vector<Tuple> tuples;
        each_tuple(n, rel.arity, [&](const Tuple& t) {
            if (rng() % 3 == 0) tuples.push_back(t);
        });
        d.relations.push_back(std::move(tuples));
    }
    return FiniteStructure(std::move(d));
}

} // namespace oracle
