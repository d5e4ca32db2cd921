#include "subindep/morphisms.hpp"

#include <algorithm>
#include <map>

#include "subindep/detail/saturate.hpp"
#include "subindep/error.hpp"

namespace subindep {

namespace {

void require_same_signature(const FiniteStructure& x, const FiniteStructure& y, const char* what) {
    if (!(x.signature() == y.signature())) throw InputError(std::string(what) + ": signature mismatch");
}

std::optional<RelationViolation> relation_violation(const FiniteStructure& dom, const FiniteStructure& cod,
                                                    std::span<const Element> map, HomMode mode) {
    const auto& rels = dom.signature().rels();
    Tuple image;
    for (std::size_t r = 0; r < rels.size(); ++r) {
        if (mode == HomMode::weak) {
            for (const auto& t : dom.relation(r).tuples()) {
                image.clear();
                for (Element x : t) image.push_back(map[x]);
                if (!cod.holds(r, image)) return RelationViolation{rels[r].name, t, image, true};
            }
            continue;
        }
        for (TupleOdometer it(dom.size(), rels[r].arity); !it.done(); ++it) {
            image.clear();
            for (Element x : *it) image.push_back(map[x]);
            const bool in_dom = dom.holds(r, *it);
            if (in_dom != cod.holds(r, image)) {
                return RelationViolation{rels[r].name, Tuple((*it).begin(), (*it).end()), image, in_dom};
            }
        }
    }
    return std::nullopt;
}

bool preserves_ops(const FiniteStructure& dom, const FiniteStructure& cod, std::span<const Element> map) {
    const auto& ops = dom.signature().ops();
    Tuple image;
    for (std::size_t op = 0; op < ops.size(); ++op) {
        for (TupleOdometer it(dom.size(), ops[op].arity); !it.done(); ++it) {
            image.clear();
            for (Element x : *it) image.push_back(map[x]);
            if (map[dom.apply(op, *it)] != cod.apply(op, image)) return false;
        }
    }
    return true;
}

/// Backtracking over images of a generating set. After each choice the
/// partial map is extended by closure; a clash means the choice admits no
/// homomorphism. Relation constraints are checked as elements get mapped.
class HomSearcher {
  public:
    HomSearcher(const FiniteStructure& dom, const FiniteStructure& cod, HomMode mode, bool injective,
                std::vector<std::uint32_t> dom_class = {}, std::vector<std::uint32_t> cod_class = {})
        : dom_(dom), cod_(cod), mode_(mode), injective_(injective), dom_class_(std::move(dom_class)),
          cod_class_(std::move(cod_class)), image_(dom.size(), kNoElement), used_(cod.size(), 0),
          incidence_(dom.size()) {
        const auto& rels = dom.signature().rels();
        for (std::size_t r = 0; r < rels.size(); ++r) {
            const auto& tuples = dom.relation(r).tuples();
            for (std::size_t i = 0; i < tuples.size(); ++i) {
                for (Element x : tuples[i]) {
                    if (incidence_[x].empty() || incidence_[x].back() != std::make_pair(r, i)) {
                        incidence_[x].emplace_back(r, i);
                    }
                }
            }
        }
    }

    bool run(const HomVisitor& visit) {
        visit_ = &visit;
        gens_ = generating_set(dom_);
        const auto& ops = dom_.signature().ops();
        for (std::size_t op = 0; op < ops.size(); ++op) {
            if (ops[op].arity == 0 && !map_element(dom_.table(op)[0], cod_.table(op)[0])) return true;
        }
        if (!propagate()) return true;
        search(0);
        return !stopped_;
    }

  private:
    bool map_element(Element x, Element v) {
        if (image_[x] != kNoElement) return image_[x] == v;
        if (!dom_class_.empty() && dom_class_[x] != cod_class_[v]) return false;
        if (injective_ && used_[v] != 0) return false;
        image_[x] = v;
        ++used_[v];
        items_.push_back(x);
        return relations_ok(x);
    }

    bool relations_ok(Element x) {
        const auto& rels = dom_.signature().rels();
        if (mode_ == HomMode::weak) {
            for (const auto& [r, i] : incidence_[x]) {
                const auto& t = dom_.relation(r).tuples()[i];
                scratch_.clear();
                for (Element y : t) {
                    if (image_[y] == kNoElement) break;
                    scratch_.push_back(image_[y]);
                }
                if (scratch_.size() == t.size() && !cod_.holds(r, scratch_)) return false;
            }
            return true;
        }
        // Strong: membership must agree on every tuple over mapped elements that involves x.
        Tuple t;
        for (std::size_t r = 0; r < rels.size(); ++r) {
            const std::size_t k = rels[r].arity;
            for (std::size_t fixed = 0; fixed < k; ++fixed) {
                for (TupleOdometer it(items_.size(), k - 1); !it.done(); ++it) {
                    t.clear();
                    for (std::size_t j = 0, o = 0; j < k; ++j) t.push_back(j == fixed ? x : items_[(*it)[o++]]);
                    scratch_.clear();
                    for (Element y : t) scratch_.push_back(image_[y]);
                    if (dom_.holds(r, t) != cod_.holds(r, scratch_)) return false;
                }
            }
        }
        return true;
    }

    bool propagate() {
        Tuple xs;
        Tuple vs;
        return detail::saturate(
            dom_.signature(), processed_, [&] { return items_.size(); },
            [&](std::size_t op, const std::vector<std::size_t>& pos) {
                xs.clear();
                vs.clear();
                for (std::size_t p : pos) {
                    xs.push_back(items_[p]);
                    vs.push_back(image_[items_[p]]);
                }
                return map_element(dom_.apply(op, xs), cod_.apply(op, vs));
            });
    }

    void undo(std::size_t length, std::size_t processed) {
        while (items_.size() > length) {
            const Element x = items_.back();
            --used_[image_[x]];
            image_[x] = kNoElement;
            items_.pop_back();
        }
        processed_ = processed;
    }

    void search(std::size_t level) {
        if (level == gens_.size()) {
            if (!(*visit_)(Homomorphism{image_, mode_})) stopped_ = true;
            return;
        }
        const Element g = gens_[level];
        if (image_[g] != kNoElement) {
            search(level + 1);
            return;
        }
        for (Element v = 0; v < cod_.size() && !stopped_; ++v) {
            const std::size_t length = items_.size();
            const std::size_t processed = processed_;
            if (map_element(g, v) && propagate()) search(level + 1);
            undo(length, processed);
        }
    }

    const FiniteStructure& dom_;
    const FiniteStructure& cod_;
    HomMode mode_;
    bool injective_;
    std::vector<std::uint32_t> dom_class_;
    std::vector<std::uint32_t> cod_class_;
    std::vector<Element> image_;
    std::vector<std::uint32_t> used_;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> incidence_;
    std::vector<Element> items_;
    std::vector<Element> gens_;
    std::size_t processed_ = 0;
    Tuple scratch_;
    const HomVisitor* visit_ = nullptr;
    bool stopped_ = false;
};

/// Isomorphism-invariant fingerprint of one element.
std::vector<std::uint64_t> element_invariant(const FiniteStructure& s, Element x) {
    std::vector<std::uint64_t> inv;
    const auto& ops = s.signature().ops();
    std::vector<std::size_t> first_seen(s.size());
    Tuple args;
    for (std::size_t op = 0; op < ops.size(); ++op) {
        const std::size_t k = ops[op].arity;
        if (k == 0) {
            inv.push_back(s.table(op)[0] == x);
            continue;
        }
        // Shape of the orbit p -> f(p, x, ..., x): tail length and cycle length.
        std::fill(first_seen.begin(), first_seen.end(), static_cast<std::size_t>(-1));
        Element p = x;
        std::size_t step = 0;
        while (first_seen[p] == static_cast<std::size_t>(-1)) {
            first_seen[p] = step++;
            args.assign(k, x);
            args[0] = p;
            p = s.apply(op, args);
        }
        inv.push_back(first_seen[p]);
        inv.push_back(step - first_seen[p]);
        if (k == 2) {
            std::uint64_t left_fixed = 0;
            std::uint64_t right_fixed = 0;
            for (Element y = 0; y < s.size(); ++y) {
                left_fixed += s.apply(op, {x, y}) == y;
                right_fixed += s.apply(op, {y, x}) == y;
            }
            inv.push_back(left_fixed);
            inv.push_back(right_fixed);
        }
    }
    const auto& rels = s.signature().rels();
    for (std::size_t r = 0; r < rels.size(); ++r) {
        std::vector<std::uint64_t> degree(rels[r].arity, 0);
        std::uint64_t diagonal = 0;
        for (const auto& t : s.relation(r).tuples()) {
            bool all_x = true;
            for (std::size_t i = 0; i < t.size(); ++i) {
                degree[i] += t[i] == x;
                all_x = all_x && t[i] == x;
            }
            diagonal += all_x;
        }
        inv.insert(inv.end(), degree.begin(), degree.end());
        inv.push_back(diagonal);
    }
    return inv;
}

} // namespace

bool is_homomorphism(const FiniteStructure& dom, const FiniteStructure& cod, std::span<const Element> map,
                     HomMode mode) {
    if (!(dom.signature() == cod.signature()) || map.size() != dom.size()) return false;
    for (Element v : map) {
        if (v >= cod.size()) return false;
    }
    return preserves_ops(dom, cod, map) && !relation_violation(dom, cod, map, mode);
}

std::optional<RelationViolation> find_relation_violation(const FiniteStructure& dom, const FiniteStructure& cod,
                                                         std::span<const Element> map, HomMode mode) {
    require_same_signature(dom, cod, "relation check");
    return relation_violation(dom, cod, map, mode);
}

std::vector<Element> generating_set(const FiniteStructure& structure) {
    const std::size_t n = structure.size();
    std::vector<Element> chosen;
    std::vector<Element> current = close(structure, {}).sub.members();
    std::vector<bool> in(n, false);
    for (Element x : current) in[x] = true;

    std::vector<std::uint64_t> degree(n, 0);
    for (std::size_t r = 0; r < structure.signature().rels().size(); ++r) {
        for (const auto& t : structure.relation(r).tuples()) {
            for (Element x : t) ++degree[x];
        }
    }
    std::vector<bool> is_chosen(n, false);
    while (current.size() < n) {
        Element best = kNoElement;
        std::tuple<std::size_t, std::uint64_t, std::uint64_t> best_key{};
        std::vector<Element> best_closure;
        for (Element x = 0; x < n; ++x) {
            if (in[x]) continue;
            std::vector<Element> seed = current;
            seed.push_back(x);
            std::vector<Element> grown = close(structure, seed).sub.members();
            std::uint64_t links = 0;
            for (std::size_t r = 0; r < structure.signature().rels().size(); ++r) {
                for (const auto& t : structure.relation(r).tuples()) {
                    bool has_x = false;
                    bool has_chosen = false;
                    for (Element y : t) {
                        has_x = has_x || y == x;
                        has_chosen = has_chosen || is_chosen[y];
                    }
                    links += has_x && has_chosen;
                }
            }
            const auto key = std::make_tuple(grown.size(), links, degree[x]);
            if (best == kNoElement || key > best_key) {
                best = x;
                best_key = key;
                best_closure = std::move(grown);
            }
        }
        chosen.push_back(best);
        is_chosen[best] = true;
        current = std::move(best_closure);
        for (Element x : current) in[x] = true;
    }
    return chosen;
}

bool enumerate_homs(const FiniteStructure& dom, const FiniteStructure& cod, HomMode mode,
                    const HomVisitor& visit) {
    require_same_signature(dom, cod, "enumerate_homs");
    HomSearcher searcher(dom, cod, mode, false);
    return searcher.run(visit);
}

std::vector<Homomorphism> all_homs(const FiniteStructure& dom, const FiniteStructure& cod, HomMode mode) {
    std::vector<Homomorphism> out;
    enumerate_homs(dom, cod, mode, [&](const Homomorphism& h) {
        out.push_back(h);
        return true;
    });
    return out;
}

std::vector<Homomorphism> endomorphisms(const FiniteStructure& structure, HomMode mode, HomClass hom_class) {
    std::vector<Homomorphism> out;
    if (hom_class == HomClass::all_endomorphisms) return all_homs(structure, structure, mode);
    // Automorphisms: bijective endomorphisms that are strong on relations.
    HomSearcher searcher(structure, structure, HomMode::strong, true);
    searcher.run([&](const Homomorphism& h) {
        out.push_back(Homomorphism{h.map, mode});
        return true;
    });
    return out;
}

std::optional<Homomorphism> find_isomorphism(const FiniteStructure& x, const FiniteStructure& y) {
    if (!(x.signature() == y.signature()) || x.size() != y.size()) return std::nullopt;
    std::map<std::vector<std::uint64_t>, std::uint32_t> ids;
    auto classify = [&](const FiniteStructure& s) {
        std::vector<std::uint32_t> cls(s.size());
        for (Element e = 0; e < s.size(); ++e) {
            auto [it, inserted] = ids.emplace(element_invariant(s, e), static_cast<std::uint32_t>(ids.size()));
            cls[e] = it->second;
        }
        return cls;
    };
    std::vector<std::uint32_t> x_class = classify(x);
    std::vector<std::uint32_t> y_class = classify(y);
    std::vector<std::uint32_t> xs = x_class;
    std::vector<std::uint32_t> ys = y_class;
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    if (xs != ys) return std::nullopt;

    std::optional<Homomorphism> found;
    HomSearcher searcher(x, y, HomMode::strong, true, std::move(x_class), std::move(y_class));
    searcher.run([&](const Homomorphism& h) {
        found = h;
        return false;
    });
    return found;
}

Congruence kernel(const Homomorphism& h) { return Congruence(h.map); }

// ---------------------------------------------------------------------------
// Joint extensions

Element JointExtension::image(Element x) const {
    const auto pos = join.index_of(x);
    if (!gamma || !pos) throw InputError("joint extension: element " + std::to_string(x) + " not in the join");
    return join.members()[gamma->map[*pos]];
}

JointExtender::JointExtender(const FiniteStructure& parent, const SubUniverse& a, const SubUniverse& b,
                             HomMode mode)
    : parent_(&parent), a_(a), b_(b), join_(subindep::join(parent, a, b).sub), a_induced_(induced_substructure(a)),
      b_induced_(induced_substructure(b)), join_induced_(induced_substructure(join_)),
      join_index_(parent.size(), kNoElement), mode_(mode) {
    for (std::size_t i = 0; i < join_.size(); ++i) join_index_[join_.members()[i]] = static_cast<Element>(i);
}

JointExtension JointExtender::extend(const Homomorphism& alpha, const Homomorphism& beta) const {
    if (!is_homomorphism(a_structure(), a_structure(), alpha.map, mode_)) {
        throw InputError("joint extension: alpha is not an endomorphism of the first subalgebra");
    }
    if (!is_homomorphism(b_structure(), b_structure(), beta.map, mode_)) {
        throw InputError("joint extension: beta is not an endomorphism of the second subalgebra");
    }
    return extend_unchecked(alpha, beta);
}

JointExtension JointExtender::extend_unchecked(const Homomorphism& alpha, const Homomorphism& beta) const {
    const FiniteStructure& parent = *parent_;
    std::vector<Element> image(parent.size(), kNoElement);
    std::vector<Element> items;
    std::optional<Refusal> refusal;

    // The generated subuniverse of the square, built until it stops being functional.
    auto add = [&](Element x, Element y) {
        if (image[x] == kNoElement) {
            image[x] = y;
            items.push_back(x);
            return true;
        }
        if (image[x] == y) return true;
        refusal = Refusal{Refusal::Kind::not_functional, x, image[x], y, std::nullopt};
        return false;
    };
    bool ok = true;
    for (std::size_t i = 0; ok && i < a_.size(); ++i) ok = add(a_.members()[i], a_.members()[alpha.map[i]]);
    for (std::size_t i = 0; ok && i < b_.size(); ++i) ok = add(b_.members()[i], b_.members()[beta.map[i]]);
    const auto& ops = parent.signature().ops();
    for (std::size_t op = 0; ok && op < ops.size(); ++op) {
        if (ops[op].arity == 0) ok = add(parent.table(op)[0], parent.table(op)[0]);
    }
    if (ok) {
        std::size_t processed = 0;
        Tuple xs;
        Tuple ys;
        detail::saturate(
            parent.signature(), processed, [&] { return items.size(); },
            [&](std::size_t op, const std::vector<std::size_t>& pos) {
                xs.clear();
                ys.clear();
                for (std::size_t p : pos) {
                    xs.push_back(items[p]);
                    ys.push_back(image[items[p]]);
                }
                return add(parent.apply(op, xs), parent.apply(op, ys));
            });
    }
    if (refusal) return JointExtension{join_, std::nullopt, refusal};

    Homomorphism gamma{std::vector<Element>(join_.size()), mode_};
    for (std::size_t i = 0; i < join_.size(); ++i) gamma.map[i] = join_index_[image[join_.members()[i]]];
    if (auto v = relation_violation(join_structure(), join_structure(), gamma.map, mode_)) {
        for (auto& x : v->tuple) x = join_.members()[x];
        for (auto& x : v->image) x = join_.members()[x];
        return JointExtension{join_, std::nullopt,
                              Refusal{Refusal::Kind::relation_violated, 0, 0, 0, std::move(v)}};
    }
    return JointExtension{join_, std::move(gamma), std::nullopt};
}

JointExtension joint_extension(const FiniteStructure& parent, const SubUniverse& a, const SubUniverse& b,
                               const Homomorphism& alpha, const Homomorphism& beta, HomMode mode) {
    return JointExtender(parent, a, b, mode).extend(alpha, beta);
}

} // namespace subindep
