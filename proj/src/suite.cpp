#include "subindep/suite.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <sstream>

#include "subindep/error.hpp"
#include "subindep/generation.hpp"
#include "subindep/independence.hpp"
#include "subindep/morphisms.hpp"

namespace subindep::suite {

namespace {

struct Tally {
    static constexpr std::size_t kShown = 6;
    std::size_t cases = 0;
    std::size_t violations = 0;
    std::vector<std::string> shown;

    void check(bool ok, const std::function<std::string()>& describe) {
        ++cases;
        if (ok) return;
        if (violations++ < kShown) shown.push_back(describe());
    }
};

std::string set_text(std::span<const Element> xs) {
    std::string out = "{";
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
    return out + "}";
}

std::string pair_text(const SubUniverse& a, const SubUniverse& b) {
    return "A=" + set_text(a.members()) + " B=" + set_text(b.members());
}

std::vector<SubUniverse> nonempty_subuniverses(const FiniteStructure& s) {
    std::vector<SubUniverse> out;
    for (auto& members : all_subuniverses(s)) {
        if (!members.empty()) out.emplace_back(s, std::move(members));
    }
    return out;
}

std::vector<Element> intersect(const SubUniverse& a, const SubUniverse& b) {
    std::vector<Element> out;
    std::ranges::set_intersection(a.members(), b.members(), std::back_inserter(out));
    return out;
}

bool join_is_coproduct(const FiniteStructure& parent, const SubUniverse& a, const SubUniverse& b,
                       const zoo::CategoryTag& tag) {
    const auto as = induced_substructure(a);
    const auto bs = induced_substructure(b);
    const SubUniverse j = join(parent, a, b).sub;
    if (zoo::coproduct_size(tag, as.structure, bs.structure) != j.size()) return false;
    const auto cop = zoo::coproduct(tag, as.structure, bs.structure);
    return find_isomorphism(induced_substructure(j).structure, cop.structure).has_value();
}

Element constant(const FiniteStructure& s, std::string_view name) {
    return s.table(s.signature().op_index(name))[0];
}

CriterionResult finish(int id, const Tally& t, std::string summary) {
    CriterionResult r;
    r.id = id;
    r.title = criterion_title(id);
    r.cases = t.cases;
    r.violations = t.violations;
    r.passed = t.violations == 0 && t.cases > 0;
    if (t.violations == 0) {
        r.detail = std::move(summary);
        return r;
    }
    r.detail = std::to_string(t.violations) + " of " + std::to_string(t.cases) + " checks failed: ";
    for (std::size_t i = 0; i < t.shown.size(); ++i) r.detail += (i ? "; " : "") + t.shown[i];
    if (t.violations > t.shown.size()) r.detail += "; ...";
    return r;
}

// 1. Sets: independent iff disjoint.
CriterionResult sets() {
    const auto x = zoo::empty_sig_set(5).structure;
    const auto subs = nonempty_subuniverses(x);
    Tally t;
    for (const auto& a : subs) {
        for (const auto& b : subs) {
            const bool got = decide_subalgebra_independence(x, a, b).independent;
            const bool want = intersect(a, b).empty();
            t.check(got == want, [&] { return pair_text(a, b) + ": decider says " + (got ? "yes" : "no"); });
        }
    }
    return finish(1, t, std::to_string(t.cases) + " subset pairs of a 5-element set");
}

// 2. Vector spaces: independent iff A ∩ B = {0}.
CriterionResult vector_spaces() {
    Tally t;
    std::size_t spaces = 0;
    for (auto [p, d] : {std::pair<unsigned, std::size_t>{2, 3}, {3, 2}}) {
        const auto v = zoo::vector_space(p, d).structure;
        const Element zero = constant(v, zoo::names::zero);
        const auto subs = nonempty_subuniverses(v);
        spaces += subs.size();
        for (const auto& a : subs) {
            for (const auto& b : subs) {
                const bool got = decide_subalgebra_independence(v, a, b).independent;
                const bool want = intersect(a, b) == std::vector<Element>{zero};
                t.check(got == want, [&] {
                    return "F" + std::to_string(p) + "^" + std::to_string(d) + " " + pair_text(a, b);
                });
            }
        }
    }
    return finish(2, t, std::to_string(t.cases) + " subspace pairs over " + std::to_string(spaces) + " subspaces");
}

// 3. Boolean algebras: decider, Boole-independence and join ≅ coproduct agree.
CriterionResult boolean_algebras() {
    const auto x = zoo::powerset_boolean_algebra(4).structure;
    const auto subs = nonempty_subuniverses(x);
    const zoo::CategoryTag tag{zoo::Category::boolean_algebra};
    Tally t;
    std::size_t independent = 0;
    for (const auto& a : subs) {
        for (const auto& b : subs) {
            const bool d = decide_subalgebra_independence(x, a, b).independent;
            const bool boole = boole_independent(x, a, b);
            const bool iso = join_is_coproduct(x, a, b, tag);
            independent += d;
            t.check(d == boole && boole == iso, [&] {
                return pair_text(a, b) + ": decider " + std::to_string(d) + ", boole " + std::to_string(boole) +
                       ", iso " + std::to_string(iso);
            });
        }
    }
    return finish(3, t,
                  std::to_string(t.cases) + " pairs over " + std::to_string(subs.size()) + " subalgebras, " +
                      std::to_string(independent) + " independent");
}

// 4. Cyclic groups: decider = trivial intersection = join ≅ direct sum.
CriterionResult abelian_groups() {
    Tally t;
    const zoo::CategoryTag tag{zoo::Category::abelian_group};
    for (std::size_t n : {4, 6, 8, 9, 12}) {
        const auto z = zoo::cyclic_group(n).structure;
        const Element e = constant(z, zoo::names::unit);
        const auto subs = nonempty_subuniverses(z);
        for (const auto& a : subs) {
            for (const auto& b : subs) {
                const bool d = decide_subalgebra_independence(z, a, b).independent;
                const bool trivial = intersect(a, b) == std::vector<Element>{e};
                const bool iso = join_is_coproduct(z, a, b, tag);
                t.check(d == trivial && trivial == iso, [&] { return "Z" + std::to_string(n) + " " + pair_text(a, b); });
            }
        }
    }
    return finish(4, t, std::to_string(t.cases) + " subgroup pairs of Z4, Z6, Z8, Z9, Z12");
}

// 5. Groups.
CriterionResult groups() {
    Tally t;
    std::size_t both_normal = 0;
    std::size_t one_normal = 0;
    auto family = [&](const char* name, const FiniteStructure& g, bool check_intersection) {
        const Element e = constant(g, zoo::names::unit);
        const auto subs = nonempty_subuniverses(g);
        for (const auto& a : subs) {
            for (const auto& b : subs) {
                const bool d = decide_subalgebra_independence(g, a, b).independent;
                const auto report = group_diagnostics(g, a, b);
                const auto where = [&] { return std::string(name) + " " + pair_text(a, b); };
                if (check_intersection) {
                    t.check(!d || intersect(a, b) == std::vector<Element>{e},
                            [&] { return where() + ": independent with non-trivial intersection"; });
                }
                if (report.a_normal && report.b_normal && report.trivial_intersection) {
                    ++both_normal;
                    t.check(d, [&] { return where() + ": both normal, trivial intersection, not independent"; });
                }
                if (report.a_normal != report.b_normal) {
                    ++one_normal;
                    t.check(!d, [&] { return where() + ": exactly one normal, yet independent"; });
                }
            }
        }
    };
    family("S3", zoo::symmetric_group(3).structure, true);
    family("D4", zoo::dihedral_group(4).structure, true);
    family("A4", zoo::alternating_group(4).structure, true);
    family("Q8", zoo::quaternion_group().structure, false);

    const auto s4 = zoo::symmetric_group(4).structure;
    const Element e = *s4.find_label("()");
    const SubUniverse a(s4, {e, *s4.find_label("(12)")});
    const SubUniverse b(s4, {e, *s4.find_label("(13)(24)")});
    const auto d4 = zoo::dihedral_group(4).structure;
    const SubUniverse j = join(s4, a, b).sub;
    const bool s4_independent = decide_subalgebra_independence(s4, a, b).independent;
    t.check(s4_independent, [] { return std::string("S4 pair {e,(12)}, {e,(13)(24)} not independent"); });
    t.check(j.size() == 8, [&] { return "S4 join has order " + std::to_string(j.size()); });
    t.check(find_isomorphism(induced_substructure(j).structure, d4).has_value(),
            [] { return std::string("S4 join not isomorphic to D4"); });

    return finish(5, t,
                  std::to_string(t.cases) + " checks over S3, D4, A4, Q8 and S4; " + std::to_string(both_normal) +
                      " both-normal pairs, " + std::to_string(one_normal) + " one-normal pairs");
}

// 6. Joint extensions are unique: brute-force endomorphisms of the join.
CriterionResult uniqueness(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Tally t;
    std::size_t extensions = 0;
    for (int instance = 0; instance < 50; ++instance) {
        const auto inst = planted_instance(rng, 6, false);
        const FiniteStructure& x = inst.structure;
        const SubUniverse a(x, inst.a);
        const SubUniverse b(x, inst.b);
        const JointExtender ext(x, a, b, HomMode::weak);
        const auto& j = ext.join();

        std::vector<Element> a_pos;
        std::vector<Element> b_pos;
        for (Element v : a.members()) a_pos.push_back(static_cast<Element>(*j.index_of(v)));
        for (Element v : b.members()) b_pos.push_back(static_cast<Element>(*j.index_of(v)));
        // Restriction of a join endomorphism to A and B, in side positions.
        std::map<std::pair<std::vector<Element>, std::vector<Element>>, std::vector<std::vector<Element>>> by_restriction;
        for (auto& g : brute_force_homs(ext.join_structure(), ext.join_structure(), HomMode::weak)) {
            std::vector<Element> ra;
            std::vector<Element> rb;
            bool lands = true;
            for (Element p : a_pos) {
                auto it = std::ranges::find(a_pos, g[p]);
                lands = lands && it != a_pos.end();
                ra.push_back(static_cast<Element>(it - a_pos.begin()));
            }
            for (Element p : b_pos) {
                auto it = std::ranges::find(b_pos, g[p]);
                lands = lands && it != b_pos.end();
                rb.push_back(static_cast<Element>(it - b_pos.begin()));
            }
            if (lands) by_restriction[{std::move(ra), std::move(rb)}].push_back(std::move(g));
        }

        for (const auto& alpha : brute_force_homs(ext.a_structure(), ext.a_structure(), HomMode::weak)) {
            for (const auto& beta : brute_force_homs(ext.b_structure(), ext.b_structure(), HomMode::weak)) {
                const auto result = ext.extend(Homomorphism{alpha, HomMode::weak}, Homomorphism{beta, HomMode::weak});
                const auto it = by_restriction.find({alpha, beta});
                const std::size_t found = it == by_restriction.end() ? 0 : it->second.size();
                const auto where = [&] { return "instance " + std::to_string(instance) + " " + pair_text(a, b); };
                if (result.exists()) {
                    ++extensions;
                    t.check(found == 1 && it->second.front() == result.gamma->map,
                            [&] { return where() + ": " + std::to_string(found) + " extensions"; });
                } else {
                    t.check(found == 0, [&] { return where() + ": refused but an extension exists"; });
                }
            }
        }
    }
    return finish(6, t,
                  std::to_string(t.cases) + " endomorphism pairs over 50 algebras, " + std::to_string(extensions) +
                      " with an extension, each unique");
}

// 7. Congruence independence.
CriterionResult congruences(std::uint64_t seed) {
    Tally t;
    CongruenceOptions full_check;
    full_check.intersection_shortcut = false;
    full_check.max_size = 16;

    // (a) |A ∩ B| >= 2 forbids congruence independence.
    std::size_t applicable = 0;
    auto over = [&](const char* name, const FiniteStructure& x) {
        const auto subs = nonempty_subuniverses(x);
        for (const auto& a : subs) {
            for (const auto& b : subs) {
                if (intersect(a, b).size() < 2) continue;
                ++applicable;
                const bool got = decide_congruence_independence(x, a, b, full_check).independent;
                t.check(!got, [&] { return std::string(name) + " " + pair_text(a, b) + ": congruence-independent"; });
            }
        }
    };
    over("set5", zoo::empty_sig_set(5).structure);
    over("F2^3", zoo::vector_space(2, 3).structure);
    over("F3^2", zoo::vector_space(3, 2).structure);
    over("BA16", zoo::powerset_boolean_algebra(4).structure);
    for (std::size_t n : {4, 6, 8, 9, 12}) over(("Z" + std::to_string(n)).c_str(), zoo::cyclic_group(n).structure);
    over("S3", zoo::symmetric_group(3).structure);
    over("D4", zoo::dihedral_group(4).structure);
    over("A4", zoo::alternating_group(4).structure);

    // (b) A = {a} inside B = {a, b}: congruence-independent, not subalgebra-independent.
    const auto set3 = zoo::empty_sig_set(3).structure;
    const SubUniverse a(set3, {0});
    const SubUniverse b(set3, {0, 1});
    t.check(decide_congruence_independence(set3, a, b).independent,
            [] { return std::string("{a} and {a,b}: not congruence-independent"); });
    const auto sub = decide_subalgebra_independence(set3, a, b);
    t.check(!sub.independent, [] { return std::string("{a} and {a,b}: subalgebra-independent"); });

    // (c) The minimal-congruence shortcut against the exhaustive search.
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::size_t agree_independent = 0;
    for (int instance = 0; instance < 50; ++instance) {
        const auto inst = planted_instance(rng, 6, instance % 2 == 1);
        const SubUniverse ia(inst.structure, inst.a);
        const SubUniverse ib(inst.structure, inst.b);
        const bool want = brute_force_congruence_independent(inst.structure, ia, ib);
        const bool minimal = decide_congruence_independence(inst.structure, ia, ib, full_check).independent;
        const bool shortcut = decide_congruence_independence(inst.structure, ia, ib).independent;
        agree_independent += want;
        t.check(want == minimal && want == shortcut, [&] {
            return "random instance " + std::to_string(instance) + " " + pair_text(ia, ib) + ": oracle " +
                   std::to_string(want) + ", decider " + std::to_string(minimal);
        });
    }
    return finish(7, t,
                  std::to_string(applicable) + " pairs with |A ∩ B| >= 2, the {a} / {a,b} case, 50 random "
                                               "structures (" +
                      std::to_string(agree_independent) + " independent)");
}

// 8. Coproducts: summands independent in both senses; universal property.
CriterionResult coproducts() {
    Tally t;
    std::size_t built = 0;
    auto family = [&](const zoo::CategoryTag& tag, const std::vector<FiniteStructure>& parts,
                      const std::vector<FiniteStructure>& targets) {
        for (std::size_t i = 0; i < parts.size(); ++i) {
            for (std::size_t k = 0; k < parts.size(); ++k) {
                const auto& x = parts[i];
                const auto& y = parts[k];
                const auto cop = zoo::coproduct(tag, x, y);
                ++built;
                const SubUniverse a(cop.structure, cop.embed_left.map);
                const SubUniverse b(cop.structure, cop.embed_right.map);
                const auto where = [&] {
                    return zoo::to_string(tag) + " summands " + std::to_string(i) + "," + std::to_string(k);
                };
                const auto sub =
                    decide_subalgebra_independence(cop.structure, a, b, HomClass::all_endomorphisms, zoo::category_mode(tag));
                t.check(sub.independent, [&] { return where() + ": not subalgebra-independent"; });
                t.check(decide_congruence_independence(cop.structure, a, b).independent,
                        [&] { return where() + ": not congruence-independent"; });
                t.check(zoo::verify_coproduct_property(tag, x, y, cop.structure, cop.embed_left, cop.embed_right,
                                                       targets),
                        [&] { return where() + ": universal property fails"; });
            }
        }
    };

    std::vector<FiniteStructure> sets;
    for (std::size_t n = 1; n <= 3; ++n) sets.push_back(zoo::empty_sig_set(n).structure);
    family({zoo::Category::set}, sets, sets);

    std::vector<FiniteStructure> graphs;
    const std::vector<std::vector<ElementPair>> edge_lists{{}, {{0, 0}}, {{0, 1}}, {{0, 1}, {1, 0}}, {{0, 1}, {1, 2}}};
    const std::vector<std::size_t> graph_sizes{1, 1, 2, 2, 3};
    for (std::size_t i = 0; i < edge_lists.size(); ++i) graphs.push_back(zoo::graph(graph_sizes[i], edge_lists[i]).structure);
    family({zoo::Category::graph}, graphs, graphs);

    std::vector<FiniteStructure> cyclic;
    for (std::size_t n = 1; n <= 6; ++n) cyclic.push_back(zoo::cyclic_group(n).structure);
    std::vector<FiniteStructure> abelian_targets = cyclic;
    abelian_targets.push_back(direct_product(cyclic[1], cyclic[1]));
    const zoo::CategoryTag ab{zoo::Category::abelian_group};
    for (std::size_t i = 0; i < cyclic.size(); ++i) {
        for (std::size_t k = 0; k < cyclic.size(); ++k) {
            if ((i + 1) * (k + 1) > 6) continue;
            family(ab, {cyclic[i], cyclic[k]}, abelian_targets);
        }
    }

    family({zoo::Category::vector_space, 2}, {zoo::vector_space(2, 1).structure, zoo::vector_space(2, 2).structure},
           {zoo::vector_space(2, 1).structure, zoo::vector_space(2, 2).structure});
    family({zoo::Category::vector_space, 3}, {zoo::vector_space(3, 1).structure}, {zoo::vector_space(3, 1).structure});
    family({zoo::Category::vector_space, 5}, {zoo::vector_space(5, 1).structure}, {zoo::vector_space(5, 1).structure});

    std::vector<FiniteStructure> bas{zoo::powerset_boolean_algebra(1).structure,
                                     zoo::powerset_boolean_algebra(2).structure};
    std::vector<FiniteStructure> ba_targets{zoo::powerset_boolean_algebra(0).structure,
                                            zoo::powerset_boolean_algebra(1).structure,
                                            zoo::powerset_boolean_algebra(2).structure};
    family({zoo::Category::boolean_algebra}, bas, ba_targets);

    return finish(8, t, std::to_string(built) + " coproducts, " + std::to_string(t.cases) + " checks");
}

// 9. Rigid graphs.
CriterionResult graphs() {
    Tally t;
    const auto& cert = zoo::frozen_rigid_graph();
    const auto g = zoo::certificate_graph(cert);
    const std::size_t endos = brute_force_homs(g, g, HomMode::weak).size();
    t.check(endos == cert.endomorphism_count && endos == 1,
            [&] { return "certificate graph has " + std::to_string(endos) + " endomorphisms"; });
    t.check(zoo::find_rigid_graph(cert.vertices, cert.seed) == g,
            [] { return std::string("seeded search no longer reproduces the certificate"); });

    const auto u = zoo::overlapping_union(g, 1);
    std::vector<Element> first(cert.vertices);
    std::vector<Element> second(cert.vertices);
    for (Element i = 0; i < cert.vertices; ++i) {
        first[i] = i;
        second[i] = static_cast<Element>(cert.vertices - 1 + i);
    }
    const SubUniverse a(u, first);
    const SubUniverse b(u, second);
    t.check(induced_substructure(a).structure == g && induced_substructure(b).structure == g,
            [] { return std::string("copies are not induced copies of the rigid graph"); });
    t.check(decide_subalgebra_independence(u, a, b).independent,
            [] { return std::string("overlapping rigid copies not independent"); });
    const auto cop = zoo::coproduct({zoo::Category::graph}, induced_substructure(a).structure,
                                    induced_substructure(b).structure);
    t.check(!find_isomorphism(u, cop.structure).has_value(),
            [] { return std::string("union isomorphic to the coproduct"); });
    return finish(9, t,
                  "rigid graph on " + std::to_string(cert.vertices) + " vertices, " + std::to_string(cert.edges.size()) +
                      " edges; union of size " + std::to_string(u.size()) + " vs coproduct of size " +
                      std::to_string(cop.structure.size()));
}

} // namespace

std::string criterion_title(int id) {
    switch (id) {
    case 1: return "sets: independent iff disjoint";
    case 2: return "vector spaces: independent iff A ∩ B = {0}";
    case 3: return "Boolean algebras: three predicates agree";
    case 4: return "cyclic groups: trivial intersection iff join is the direct sum";
    case 5: return "groups: intersection, normality, S4 example";
    case 6: return "joint extensions are unique";
    case 7: return "congruence independence";
    case 8: return "coproduct summands are independent";
    case 9: return "rigid graphs: independent, union not the coproduct";
    default: break;
    }
    throw InputError("no criterion " + std::to_string(id));
}

CriterionResult run_criterion(int id, const SuiteOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
        switch (id) {
        case 1: r = sets(); break;
        case 2: r = vector_spaces(); break;
        case 3: r = boolean_algebras(); break;
        case 4: r = abelian_groups(); break;
        case 5: r = groups(); break;
        case 6: r = uniqueness(options.seed); break;
        case 7: r = congruences(options.seed); break;
        case 8: r = coproducts(); break;
        case 9: r = graphs(); break;
        default: throw InputError("no criterion " + std::to_string(id));
        }
    } catch (const InputError&) {
        throw;
    } catch (const std::exception& e) {
        r.id = id;
        r.title = criterion_title(id);
        r.passed = false;
        r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::vector<CriterionResult> run_all(const SuiteOptions& options) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, options));
    return out;
}

// ---------------------------------------------------------------------------
// Oracles

namespace {

// Calls visit(tuple) for every tuple in [0, n)^arity.
void each_tuple(std::size_t n, std::size_t arity, const std::function<void(const Tuple&)>& visit) {
    Tuple t(arity, 0);
    while (true) {
        visit(t);
        std::size_t i = arity;
        while (i > 0 && t[i - 1] + 1 == n) t[--i] = 0;
        if (i == 0) return;
        ++t[i - 1];
    }
}

Element op_value(const FiniteStructure& s, std::size_t op, const Tuple& args) {
    std::size_t index = 0;
    for (Element x : args) index = index * s.size() + x;
    return s.table(op)[index];
}

bool compatible(const FiniteStructure& s, const std::vector<Element>& block) {
    const auto& ops = s.signature().ops();
    for (std::size_t op = 0; op < ops.size(); ++op) {
        bool ok = true;
        each_tuple(s.size(), ops[op].arity, [&](const Tuple& args) {
            if (!ok) return;
            const Element base = block[op_value(s, op, args)];
            for (std::size_t i = 0; i < args.size() && ok; ++i) {
                Tuple moved = args;
                for (Element y = 0; y < s.size(); ++y) {
                    if (block[y] != block[args[i]]) continue;
                    moved[i] = y;
                    if (block[op_value(s, op, moved)] != base) {
                        ok = false;
                        break;
                    }
                }
            }
        });
        if (!ok) return false;
    }
    return true;
}

} // namespace

std::vector<Congruence> brute_force_congruences(const FiniteStructure& s) {
    if (s.size() > 10) throw ResourceError("brute_force_congruences: size above 10");
    std::vector<Congruence> out;
    const std::size_t n = s.size();
    // Restricted growth strings: rgs[i] <= 1 + max(rgs[0..i-1]).
    std::vector<Element> rgs(n, 0);
    std::vector<Element> prefix_max(n, 0);
    while (true) {
        if (compatible(s, rgs)) out.emplace_back(rgs);
        std::size_t i = n;
        bool advanced = false;
        while (i-- > 1) {
            if (rgs[i] > prefix_max[i - 1]) continue;
            ++rgs[i];
            prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
            for (std::size_t k = i + 1; k < n; ++k) {
                rgs[k] = 0;
                prefix_max[k] = prefix_max[i];
            }
            advanced = true;
            break;
        }
        if (!advanced) return out;
    }
}

std::vector<std::vector<Element>> brute_force_homs(const FiniteStructure& dom, const FiniteStructure& cod,
                                                   HomMode mode) {
    if (!(dom.signature() == cod.signature())) throw InputError("brute_force_homs: signature mismatch");
    // Every map, assigned element by element; a partial map is dropped as soon as
    // a constraint whose elements are all assigned fails.
    const auto& ops = dom.signature().ops();
    const auto& rels = dom.signature().rels();
    auto in = [](const std::vector<Tuple>& ts, const Tuple& t) { return std::ranges::binary_search(ts, t); };
    std::vector<std::vector<Element>> out;
    std::vector<Element> map(dom.size(), 0);
    std::function<void(std::size_t)> assign = [&](std::size_t k) {
        if (k == dom.size()) {
            out.push_back(map);
            return;
        }
        for (Element v = 0; v < cod.size(); ++v) {
            map[k] = v;
            bool ok = true;
            for (std::size_t op = 0; op < ops.size() && ok; ++op) {
                each_tuple(k + 1, ops[op].arity, [&](const Tuple& args) {
                    const Element r = op_value(dom, op, args);
                    if (!ok || r > k) return;
                    Tuple image;
                    for (Element x : args) image.push_back(map[x]);
                    ok = map[r] == op_value(cod, op, image);
                });
            }
            for (std::size_t rel = 0; rel < rels.size() && ok; ++rel) {
                each_tuple(k + 1, rels[rel].arity, [&](const Tuple& t) {
                    if (!ok || std::ranges::find(t, k) == t.end()) return;
                    Tuple image;
                    for (Element x : t) image.push_back(map[x]);
                    const bool holds = in(dom.relation(rel).tuples(), t);
                    const bool image_holds = in(cod.relation(rel).tuples(), image);
                    if (holds && !image_holds) ok = false;
                    if (mode == HomMode::strong && image_holds && !holds) ok = false;
                });
            }
            if (ok) assign(k + 1);
        }
    };
    assign(0);
    return out;
}

bool brute_force_congruence_independent(const FiniteStructure& parent, const SubUniverse& a, const SubUniverse& b) {
    const SubUniverse j = join(parent, a, b).sub;
    const auto js = induced_substructure(j);
    const auto as = induced_substructure(a);
    const auto bs = induced_substructure(b);
    std::vector<Element> a_pos;
    std::vector<Element> b_pos;
    for (Element v : a.members()) a_pos.push_back(static_cast<Element>(*j.index_of(v)));
    for (Element v : b.members()) b_pos.push_back(static_cast<Element>(*j.index_of(v)));
    const auto con_j = brute_force_congruences(js.structure);
    auto restricts = [](const Congruence& big, const std::vector<Element>& pos, const Congruence& small) {
        for (std::size_t i = 0; i < pos.size(); ++i) {
            for (std::size_t k = 0; k < pos.size(); ++k) {
                if (big.related(pos[i], pos[k]) != small.related(static_cast<Element>(i), static_cast<Element>(k))) {
                    return false;
                }
            }
        }
        return true;
    };
    for (const auto& ta : brute_force_congruences(as.structure)) {
        for (const auto& tb : brute_force_congruences(bs.structure)) {
            const bool found = std::ranges::any_of(
                con_j, [&](const Congruence& t) { return restricts(t, a_pos, ta) && restricts(t, b_pos, tb); });
            if (!found) return false;
        }
    }
    return true;
}

PlantedInstance planted_instance(std::mt19937_64& rng, std::size_t max_size, bool unary) {
    const std::size_t n = 2 + rng() % (max_size - 1);
    auto random_subset = [&] {
        std::vector<Element> s;
        while (s.empty()) {
            for (Element x = 0; x < n; ++x) {
                if (rng() % 2) s.push_back(x);
            }
        }
        return s;
    };
    const auto a = random_subset();
    const auto b = random_subset();
    std::vector<Element> both;
    std::ranges::set_intersection(a, b, std::back_inserter(both));
    auto in = [](const std::vector<Element>& s, Element x) { return std::ranges::binary_search(s, x); };
    auto pick = [&](const std::vector<Element>& s) { return s[rng() % s.size()]; };
    // Values for arguments all in A ∩ B stay there, all in A stay in A, all in B stay in B.
    auto value = [&](std::span<const Element> args) -> Element {
        const bool all_a = std::ranges::all_of(args, [&](Element x) { return in(a, x); });
        const bool all_b = std::ranges::all_of(args, [&](Element x) { return in(b, x); });
        if (all_a && all_b) return pick(both);
        if (all_a) return pick(a);
        if (all_b) return pick(b);
        return static_cast<Element>(rng() % n);
    };
    StructureDraft d;
    d.size = n;
    if (unary) {
        d.sig = Signature({{"f", 1}}, {});
        std::vector<Element> table;
        for (Element x = 0; x < n; ++x) table.push_back(value(std::array<Element, 1>{x}));
        d.op_tables.push_back(std::move(table));
    } else {
        d.sig = Signature({{"mul", 2}}, {});
        std::vector<Element> table;
        for (Element x = 0; x < n; ++x) {
            for (Element y = 0; y < n; ++y) table.push_back(value(std::array<Element, 2>{x, y}));
        }
        d.op_tables.push_back(std::move(table));
    }
    return {FiniteStructure(std::move(d)), a, b};
}

} // namespace subindep::suite
