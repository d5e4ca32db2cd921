#include "subindep/independence.hpp"

#include <algorithm>

#include "subindep/error.hpp"
#include "subindep/zoo.hpp"

namespace subindep {

namespace {

void require_same_parent(const FiniteStructure& parent, const SubUniverse& a, const SubUniverse& b) {
    if (&a.parent() != &parent || &b.parent() != &parent) {
        throw InputError("subuniverses belong to a different parent structure");
    }
    if (a.size() == 0 || b.size() == 0) throw InputError("subuniverses must be non-empty");
}

std::vector<Element> intersection(const SubUniverse& a, const SubUniverse& b) {
    std::vector<Element> out;
    std::ranges::set_intersection(a.members(), b.members(), std::back_inserter(out));
    return out;
}

// Pairs (first, other) for every block, translated through `to`.
void append_block_pairs(const Congruence& theta, const std::vector<Element>& to, std::vector<ElementPair>& out) {
    for (const auto& block : theta.blocks()) {
        for (std::size_t i = 1; i < block.size(); ++i) out.emplace_back(to[block.front()], to[block[i]]);
    }
}

std::optional<ElementPair> restriction_excess(const Congruence& generated, const Congruence& theta,
                                              const std::vector<Element>& to) {
    for (Element i = 0; i < to.size(); ++i) {
        for (Element k = i + 1; k < to.size(); ++k) {
            if (generated.related(to[i], to[k]) && !theta.related(i, k)) return ElementPair{i, k};
        }
    }
    return std::nullopt;
}

} // namespace

Verdict decide_subalgebra_independence(const FiniteStructure& parent, const SubUniverse& a, const SubUniverse& b,
                                       HomClass hom_class, HomMode mode) {
    require_same_parent(parent, a, b);
    const JointExtender extender(parent, a, b, mode);
    const auto alphas = endomorphisms(extender.a_structure(), mode, hom_class);
    const auto betas = endomorphisms(extender.b_structure(), mode, hom_class);

    Verdict verdict;
    verdict.stats.left_count = alphas.size();
    verdict.stats.right_count = betas.size();
    verdict.stats.join_size = extender.join().size();
    for (const auto& alpha : alphas) {
        for (const auto& beta : betas) {
            ++verdict.stats.pairs_checked;
            auto ext = extender.extend_unchecked(alpha, beta);
            if (!ext.exists()) {
                verdict.independent = false;
                verdict.witness = SubalgebraWitness{alpha, beta, std::move(*ext.refusal)};
                return verdict;
            }
        }
    }
    return verdict;
}

Verdict decide_congruence_independence(const FiniteStructure& parent, const SubUniverse& a, const SubUniverse& b,
                                       const CongruenceOptions& options) {
    require_same_parent(parent, a, b);
    const SubUniverse j = join(parent, a, b).sub;
    const InducedStructure js = induced_substructure(j);
    const InducedStructure as = induced_substructure(a);
    const InducedStructure bs = induced_substructure(b);
    std::vector<Element> a_in_j;
    std::vector<Element> b_in_j;
    for (Element x : a.members()) a_in_j.push_back(static_cast<Element>(*j.index_of(x)));
    for (Element x : b.members()) b_in_j.push_back(static_cast<Element>(*j.index_of(x)));

    Verdict verdict;
    verdict.stats.join_size = j.size();

    auto fail = [&](const Congruence& ta, const Congruence& tb, Congruence generated) -> bool {
        for (auto side : {CongruenceWitness::Side::a, CongruenceWitness::Side::b}) {
            const bool on_a = side == CongruenceWitness::Side::a;
            const auto excess = restriction_excess(generated, on_a ? ta : tb, on_a ? a_in_j : b_in_j);
            if (!excess) continue;
            const auto& members = on_a ? a.members() : b.members();
            verdict.independent = false;
            verdict.witness = CongruenceWitness{ta, tb, std::move(generated), side, members[excess->first],
                                                members[excess->second]};
            return true;
        }
        return false;
    };
    auto generate = [&](const Congruence& ta, const Congruence& tb) {
        std::vector<ElementPair> pairs;
        append_block_pairs(ta, a_in_j, pairs);
        append_block_pairs(tb, b_in_j, pairs);
        return cg(js.structure, pairs);
    };

    if (options.intersection_shortcut && intersection(a, b).size() >= 2) {
        // theta_A = identity, theta_B = full: the generated congruence identifies two points of A.
        verdict.stats.shortcut = true;
        verdict.stats.pairs_checked = 1;
        const auto ta = Congruence::identity(a.size());
        const auto tb = Congruence::full(b.size());
        if (!fail(ta, tb, generate(ta, tb))) throw std::logic_error("intersection shortcut produced no witness");
        return verdict;
    }

    const auto con_a = all_congruences(as.structure, options.max_size);
    const auto con_b = all_congruences(bs.structure, options.max_size);
    verdict.stats.left_count = con_a.size();
    verdict.stats.right_count = con_b.size();
    for (const auto& ta : con_a) {
        for (const auto& tb : con_b) {
            ++verdict.stats.pairs_checked;
            if (fail(ta, tb, generate(ta, tb))) return verdict;
        }
    }
    return verdict;
}

bool boole_independent(const FiniteStructure& parent, const SubUniverse& a, const SubUniverse& b) {
    zoo::require_boolean_algebra(parent);
    if (&a.parent() != &parent || &b.parent() != &parent) {
        throw InputError("subuniverses belong to a different parent structure");
    }
    const std::size_t meet = parent.signature().op_index(zoo::names::meet);
    const Element zero = parent.table(parent.signature().op_index(zoo::names::bottom))[0];
    for (Element x : a.members()) {
        if (x == zero) continue;
        for (Element y : b.members()) {
            if (y != zero && parent.apply(meet, {x, y}) == zero) return false;
        }
    }
    return true;
}

GroupReport group_diagnostics(const FiniteStructure& parent, const SubUniverse& a, const SubUniverse& b) {
    zoo::require_group(parent);
    require_same_parent(parent, a, b);
    const std::size_t mul = parent.signature().op_index(zoo::names::mul);
    const std::size_t inv = parent.signature().op_index(zoo::names::inv);
    const Element e = parent.table(parent.signature().op_index(zoo::names::unit))[0];
    const SubUniverse j = join(parent, a, b).sub;

    auto normal_in_join = [&](const SubUniverse& s) {
        for (Element g : j.members()) {
            const Element gi = parent.apply(inv, {g});
            for (Element x : s.members()) {
                if (!s.contains(parent.apply(mul, {parent.apply(mul, {g, x}), gi}))) return false;
            }
        }
        return true;
    };

    GroupReport report;
    report.trivial_intersection = intersection(a, b) == std::vector<Element>{e};
    report.a_normal = normal_in_join(a);
    report.b_normal = normal_in_join(b);
    if (report.a_normal && report.b_normal && report.trivial_intersection) {
        report.prediction = Prediction::independent;
    } else if (report.a_normal != report.b_normal) {
        report.prediction = Prediction::not_independent;
    }
    return report;
}

bool check_word_condition(const FiniteStructure& parent, const SubUniverse& a, const SubUniverse& b,
                          const Homomorphism& alpha, const Homomorphism& beta) {
    zoo::require_group(parent);
    require_same_parent(parent, a, b);
    return JointExtender(parent, a, b, HomMode::weak).extend(alpha, beta).exists();
}

} // namespace subindep
