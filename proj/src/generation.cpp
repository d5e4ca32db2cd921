#include "subindep/generation.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "subindep/detail/saturate.hpp"
#include "subindep/error.hpp"

namespace subindep {

bool WitnessDag::is_topological() const {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        for (std::size_t a : nodes_[i].args) {
            if (a >= i) return false;
        }
        if (nodes_[i].is_generator() && !nodes_[i].args.empty()) return false;
    }
    return true;
}

std::vector<Element> WitnessDag::replay(const FiniteStructure& target,
                                        const std::function<Element(const Derivation&)>& leaf) const {
    std::vector<Element> values(nodes_.size());
    Tuple args;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const auto& node = nodes_[i];
        if (node.is_generator()) {
            values[i] = leaf(node);
            continue;
        }
        args.clear();
        for (std::size_t a : node.args) args.push_back(values[a]);
        values[i] = target.apply(*node.op, args);
    }
    return values;
}

namespace {

void check_range(const FiniteStructure& s, std::span<const Element> xs, const char* what) {
    for (Element x : xs) {
        if (x >= s.size()) {
            throw InputError(std::string(what) + ": element " + std::to_string(x) + " out of range for size " +
                             std::to_string(s.size()));
        }
    }
}

Closure close_tagged(const FiniteStructure& s, std::span<const Element> seed, std::span<const Origin> origins) {
    std::vector<std::size_t> node_of(s.size(), static_cast<std::size_t>(-1));
    std::vector<Derivation> nodes;
    auto add = [&](Element x, Derivation d) {
        if (node_of[x] != static_cast<std::size_t>(-1)) return;
        node_of[x] = nodes.size();
        d.element = x;
        nodes.push_back(std::move(d));
    };
    for (std::size_t i = 0; i < seed.size(); ++i) {
        add(seed[i], Derivation{0, std::nullopt, {}, origins.empty() ? Origin::seed : origins[i]});
    }
    const auto& ops = s.signature().ops();
    for (std::size_t op = 0; op < ops.size(); ++op) {
        if (ops[op].arity == 0) add(s.table(op)[0], Derivation{0, op, {}, Origin::seed});
    }
    std::size_t processed = 0;
    Tuple args;
    detail::saturate(
        s.signature(), processed, [&] { return nodes.size(); },
        [&](std::size_t op, const std::vector<std::size_t>& pos) {
            args.clear();
            for (std::size_t p : pos) args.push_back(nodes[p].element);
            add(s.apply(op, args), Derivation{0, op, pos, Origin::seed});
            return true;
        });
    std::vector<Element> members;
    members.reserve(nodes.size());
    for (const auto& n : nodes) members.push_back(n.element);
    return Closure{SubUniverse(s, std::move(members)), WitnessDag(std::move(nodes))};
}

} // namespace

Closure close(const FiniteStructure& structure, std::span<const Element> seed) {
    check_range(structure, seed, "close");
    return close_tagged(structure, seed, {});
}

Closure join(const FiniteStructure& parent, const SubUniverse& a, const SubUniverse& b) {
    if (&a.parent() != &parent || &b.parent() != &parent) {
        throw InputError("join: subuniverses belong to a different parent structure");
    }
    std::vector<Element> seed;
    std::vector<Origin> origins;
    for (Element x : a.members()) {
        seed.push_back(x);
        origins.push_back(b.contains(x) ? Origin::both : Origin::left);
    }
    for (Element x : b.members()) {
        if (a.contains(x)) continue;
        seed.push_back(x);
        origins.push_back(Origin::right);
    }
    return close_tagged(parent, seed, origins);
}

std::vector<ElementPair> generated_relation(const FiniteStructure& x, const FiniteStructure& y,
                                            std::span<const ElementPair> pairs) {
    if (!(x.signature() == y.signature())) throw InputError("generated relation: signature mismatch");
    for (const auto& [a, b] : pairs) {
        if (a >= x.size() || b >= y.size()) {
            throw InputError("generated relation: pair (" + std::to_string(a) + "," + std::to_string(b) +
                             ") out of range");
        }
    }
    std::vector<bool> seen(x.size() * y.size(), false);
    std::vector<ElementPair> items;
    auto add = [&](ElementPair p) {
        const std::size_t key = std::size_t{p.first} * y.size() + p.second;
        if (seen[key]) return;
        seen[key] = true;
        items.push_back(p);
    };
    for (const auto& p : pairs) add(p);
    const auto& ops = x.signature().ops();
    for (std::size_t op = 0; op < ops.size(); ++op) {
        if (ops[op].arity == 0) add({x.table(op)[0], y.table(op)[0]});
    }
    std::size_t processed = 0;
    Tuple xs;
    Tuple ys;
    detail::saturate(
        x.signature(), processed, [&] { return items.size(); },
        [&](std::size_t op, const std::vector<std::size_t>& pos) {
            xs.clear();
            ys.clear();
            for (std::size_t p : pos) {
                xs.push_back(items[p].first);
                ys.push_back(items[p].second);
            }
            add({x.apply(op, xs), y.apply(op, ys)});
            return true;
        });
    std::sort(items.begin(), items.end());
    return items;
}

std::vector<ElementPair> generated_subuniverse_of_square(const FiniteStructure& parent,
                                                         std::span<const ElementPair> pairs) {
    return generated_relation(parent, parent, pairs);
}

namespace {

// Propagates until the union-find is a congruence. Moving one coordinate at a
// time to its class representative is enough: any two congruent tuples are
// linked through such moves.
Congruence propagate(const FiniteStructure& s, detail::UnionFind& uf) {
    const auto& ops = s.signature().ops();
    Tuple moved;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t op = 0; op < ops.size(); ++op) {
            const std::size_t k = ops[op].arity;
            for (TupleOdometer it(s.size(), k); !it.done(); ++it) {
                const Element base = s.apply(op, *it);
                for (std::size_t i = 0; i < k; ++i) {
                    const Element rep = uf.find((*it)[i]);
                    if (rep == (*it)[i]) continue;
                    moved.assign((*it).begin(), (*it).end());
                    moved[i] = rep;
                    changed = uf.unite(base, s.apply(op, moved)) || changed;
                }
            }
        }
    }
    return uf.to_congruence();
}

} // namespace

Congruence cg(const FiniteStructure& structure, std::span<const ElementPair> pairs) {
    detail::UnionFind uf(structure.size());
    for (const auto& [a, b] : pairs) {
        if (a >= structure.size() || b >= structure.size()) {
            throw InputError("cg: pair (" + std::to_string(a) + "," + std::to_string(b) + ") out of range");
        }
        uf.unite(a, b);
    }
    return propagate(structure, uf);
}

Congruence congruence_join(const FiniteStructure& structure, const Congruence& a, const Congruence& b) {
    if (a.size() != structure.size() || b.size() != structure.size()) {
        throw InputError("congruence join: size mismatch");
    }
    detail::UnionFind uf(structure.size());
    std::vector<Element> first_a(a.block_count(), kNoElement);
    std::vector<Element> first_b(b.block_count(), kNoElement);
    for (Element x = 0; x < structure.size(); ++x) {
        Element& fa = first_a[a.block(x)];
        Element& fb = first_b[b.block(x)];
        if (fa == kNoElement) fa = x;
        if (fb == kNoElement) fb = x;
        uf.unite(fa, x);
        uf.unite(fb, x);
    }
    return propagate(structure, uf);
}

std::vector<Congruence> all_congruences(const FiniteStructure& structure, std::size_t max_size) {
    if (structure.size() > max_size) {
        throw ResourceError("all_congruences: structure of size " + std::to_string(structure.size()) +
                            " exceeds the bound --max-size=" + std::to_string(max_size));
    }
    const std::size_t n = structure.size();
    std::set<Congruence> principal_set;
    for (Element a = 0; a < n; ++a) {
        for (Element b = a + 1; b < n; ++b) {
            const ElementPair p{a, b};
            principal_set.insert(cg(structure, std::span<const ElementPair>(&p, 1)));
        }
    }
    const std::vector<Congruence> principal(principal_set.begin(), principal_set.end());

    // Every congruence is a join of principal ones, so closing the identity
    // under joins with principal congruences reaches the whole lattice.
    std::set<Congruence> found{Congruence::identity(n)};
    std::deque<Congruence> queue{Congruence::identity(n)};
    while (!queue.empty()) {
        const Congruence current = queue.front();
        queue.pop_front();
        for (const auto& p : principal) {
            if (p.refines(current)) continue;
            Congruence next = congruence_join(structure, current, p);
            if (found.insert(next).second) queue.push_back(std::move(next));
        }
    }
    return {found.begin(), found.end()};
}

std::vector<std::vector<Element>> all_subuniverses(const FiniteStructure& structure) {
    std::set<std::vector<Element>> found;
    std::deque<std::vector<Element>> queue;
    auto visit = [&](std::vector<Element> members) {
        if (found.insert(members).second) queue.push_back(std::move(members));
    };
    if (structure.constants().empty()) visit({});
    visit(close(structure, {}).sub.members());
    while (!queue.empty()) {
        const std::vector<Element> current = queue.front();
        queue.pop_front();
        std::vector<bool> in(structure.size(), false);
        for (Element x : current) in[x] = true;
        for (Element x = 0; x < structure.size(); ++x) {
            if (in[x]) continue;
            std::vector<Element> seed = current;
            seed.push_back(x);
            visit(close(structure, seed).sub.members());
        }
    }
    std::vector<std::vector<Element>> out(found.begin(), found.end());
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
    return out;
}

} // namespace subindep
