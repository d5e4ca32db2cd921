#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "subindep/error.hpp"
#include "subindep/morphisms.hpp"
#include "subindep/zoo.hpp"

using namespace subindep;

namespace {

FiniteStructure z(std::size_t n) { return zoo::cyclic_group(n).structure; }

Homomorphism hom(std::vector<Element> map) { return Homomorphism{std::move(map), HomMode::weak}; }

std::set<std::vector<Element>> maps_of(const std::vector<Homomorphism>& homs) {
    std::set<std::vector<Element>> out;
    for (const auto& h : homs) out.insert(h.map);
    return out;
}

} // namespace

TEST_CASE("enumerate_homs") {
    CHECK(maps_of(all_homs(z(2), z(2), HomMode::weak)) == std::set<std::vector<Element>>{{0, 0}, {0, 1}});
    CHECK(all_homs(zoo::empty_sig_set(2).structure, zoo::empty_sig_set(2).structure, HomMode::weak).size() == 4);

    // A directed edge has only the identity as a weak endomorphism once loops are absent;
    // a symmetric edge also admits the swap.
    const std::vector<ElementPair> directed{{0, 1}};
    const auto g = zoo::graph(2, directed).structure;
    CHECK(all_homs(g, g, HomMode::weak).size() == 1);
    const std::vector<ElementPair> symmetric{{0, 1}, {1, 0}};
    const auto h = zoo::graph(2, symmetric).structure;
    CHECK(all_homs(h, h, HomMode::weak).size() == 2);

    CHECK_THROWS_AS((void)all_homs(z(2), zoo::empty_sig_set(2).structure, HomMode::weak), InputError);

    std::size_t visited = 0;
    CHECK_FALSE(enumerate_homs(z(6), z(6), HomMode::weak, [&](const Homomorphism&) { return ++visited < 3; }));
    CHECK(visited == 3);
}

TEST_CASE("strong mode reflects relations") {
    const std::vector<ElementPair> edge{{0, 1}};
    const auto g = zoo::graph(2, edge).structure;
    const std::vector<ElementPair> path{{0, 1}, {1, 2}};
    const auto p = zoo::graph(3, path).structure;
    // 0 -> 0, 1 -> 1, 2 -> 0 collapses: edge (1,2) becomes (1,0), not an edge.
    CHECK(all_homs(p, g, HomMode::weak).empty());
    const std::vector<ElementPair> loop{{0, 0}};
    const auto l = zoo::graph(1, loop).structure;
    CHECK(all_homs(p, l, HomMode::weak).size() == 1);
    CHECK(all_homs(p, l, HomMode::strong).empty());
    const auto violation = find_relation_violation(p, l, std::vector<Element>{0, 0, 0}, HomMode::strong);
    REQUIRE(violation.has_value());
    CHECK_FALSE(violation->in_domain);
}

TEST_CASE("joint_extension") {
    const auto z6 = z(6);
    const SubUniverse a(z6, {0, 3});
    const SubUniverse b(z6, {0, 2, 4});
    SUBCASE("trivial on A, identity on B") {
        const auto ext = joint_extension(z6, a, b, hom({0, 0}), hom({0, 1, 2}));
        REQUIRE(ext.exists());
        std::vector<Element> images;
        for (Element x = 0; x < 6; ++x) images.push_back(ext.image(x));
        CHECK(images == std::vector<Element>{0, 4, 2, 0, 4, 2});
    }
    SUBCASE("identities give the identity") {
        const auto ext = joint_extension(z6, a, b, hom({0, 1}), hom({0, 1, 2}));
        REQUIRE(ext.exists());
        CHECK(ext.gamma->map == std::vector<Element>{0, 1, 2, 3, 4, 5});
    }
    SUBCASE("invalid endomorphism") {
        CHECK_THROWS_AS((void)joint_extension(z6, a, b, hom({1, 0}), hom({0, 1, 2})), InputError);
        CHECK_THROWS_AS((void)joint_extension(z6, a, b, hom({0}), hom({0, 1, 2})), InputError);
    }
    SUBCASE("sets: permutations disagreeing on the intersection") {
        const auto s = zoo::empty_sig_set(3).structure;
        const SubUniverse sa(s, {0, 1});
        const SubUniverse sb(s, {1, 2});
        const auto ext = joint_extension(s, sa, sb, hom({1, 0}), hom({0, 1}));
        REQUIRE_FALSE(ext.exists());
        REQUIRE(ext.refusal.has_value());
        CHECK(ext.refusal->kind == Refusal::Kind::not_functional);
        CHECK(ext.refusal->element == 1);
        CHECK(std::set<Element>{ext.refusal->image_1, ext.refusal->image_2} == std::set<Element>{0, 1});
    }
    SUBCASE("graphs: clash on a shared vertex") {
        // B = {1,2} carries no edge, so swapping 1 and 2 is an endomorphism of B that
        // clashes with the identity on A at vertex 1.
        const std::vector<ElementPair> edges{{0, 1}, {0, 2}};
        const auto g = zoo::graph(3, edges).structure;
        const SubUniverse ga(g, {0, 1});
        const SubUniverse gb(g, {2});
        const auto ext = joint_extension(g, ga, gb, hom({0, 1}), hom({0}));
        CHECK(ext.exists());
        const SubUniverse gc(g, {1, 2});
        const JointExtender extender(g, ga, gc, HomMode::weak);
        const auto bad = extender.extend(hom({0, 1}), hom({1, 0}));
        REQUIRE(bad.refusal.has_value());
        CHECK(bad.refusal->kind == Refusal::Kind::not_functional);
    }
    SUBCASE("graphs: functional but an edge across the sides breaks") {
        const std::vector<ElementPair> edges{{0, 2}};
        const auto g = zoo::graph(3, edges).structure;
        const SubUniverse ga(g, {0, 1});
        const SubUniverse gb(g, {2});
        const auto ext = joint_extension(g, ga, gb, hom({1, 0}), hom({0}));
        REQUIRE(ext.refusal.has_value());
        CHECK(ext.refusal->kind == Refusal::Kind::relation_violated);
        REQUIRE(ext.refusal->violation.has_value());
        CHECK(ext.refusal->violation->tuple == Tuple{0, 2});
        CHECK(ext.refusal->violation->image == Tuple{1, 2});
    }
}

TEST_CASE("kernel") {
    CHECK(kernel(hom({0, 1, 2, 3})).is_identity());
    CHECK(kernel(hom({0, 0, 0, 0, 0, 0})).is_full());
    std::vector<Element> doubling;
    for (Element x = 0; x < 6; ++x) doubling.push_back((2 * x) % 6);
    CHECK(kernel(hom(doubling)).blocks() == std::vector<std::vector<Element>>{{0, 3}, {1, 4}, {2, 5}});
}

TEST_CASE("find_isomorphism") {
    const auto h = find_isomorphism(direct_product(z(2), z(3)), z(6));
    REQUIRE(h.has_value());
    CHECK(is_homomorphism(direct_product(z(2), z(3)), z(6), h->map, HomMode::strong));
    CHECK_FALSE(find_isomorphism(z(4), direct_product(z(2), z(2))).has_value());
    const auto q8 = zoo::quaternion_group().structure;
    const auto d4 = zoo::dihedral_group(4).structure;
    CHECK_FALSE(find_isomorphism(q8, d4).has_value());
    const auto self = find_isomorphism(q8, q8);
    REQUIRE(self.has_value());
    CHECK(is_homomorphism(q8, q8, self->map, HomMode::strong));
    CHECK_FALSE(find_isomorphism(z(2), z(3)).has_value());
}

TEST_CASE("endomorphism classes") {
    CHECK(endomorphisms(z(6), HomMode::weak).size() == 6);
    CHECK(endomorphisms(z(6), HomMode::weak, HomClass::automorphisms_only).size() == 2);
    CHECK(endomorphisms(zoo::symmetric_group(3).structure, HomMode::weak).size() == 10);
    CHECK(endomorphisms(zoo::symmetric_group(3).structure, HomMode::weak, HomClass::automorphisms_only).size() == 6);
    CHECK(endomorphisms(zoo::powerset_boolean_algebra(3).structure, HomMode::weak).size() == 27);
}

TEST_CASE("generating_set generates") {
    for (const auto& s : {z(12), zoo::symmetric_group(4).structure, zoo::powerset_boolean_algebra(4).structure,
                          zoo::vector_space(3, 2).structure, zoo::quaternion_group().structure}) {
        const auto gens = generating_set(s);
        CHECK(close(s, gens).sub.size() == s.size());
    }
    CHECK(generating_set(z(12)).size() == 1);
}

TEST_CASE("property: enumerate_homs agrees with the all-maps filter") {
    std::mt19937_64 rng(23);
    for (int round = 0; round < 80; ++round) {
        const std::size_t nx = 1 + rng() % 4;
        const std::size_t ny = 1 + rng() % 4;
        std::vector<Symbol> ops;
        std::vector<Symbol> rels;
        switch (round % 4) {
        case 0: ops = {{"f", 2}}; break;
        case 1: ops = {{"f", 1}, {"c", 0}}; break;
        case 2: rels = {{"R", 2}}; break;
        default: ops = {{"f", 1}}; rels = {{"R", 1}}; break;
        }
        const auto x = oracle::random_structure(rng, nx, ops, rels);
        const auto y = oracle::random_structure(rng, ny, ops, rels);
        for (const bool strong : {false, true}) {
            const auto mode = strong ? HomMode::strong : HomMode::weak;
            const auto got = all_homs(x, y, mode);
            const auto want = oracle::homs(x, y, strong);
            CHECK(got.size() == want.size());
            CHECK(maps_of(got) == std::set<std::vector<Element>>(want.begin(), want.end()));
        }
    }
}

TEST_CASE("property: joint extension is unique and restricts correctly") {
    std::mt19937_64 rng(29);
    int extended = 0;
    for (int round = 0; round < 30; ++round) {
        const std::size_t n = 2 + rng() % 5;
        const auto s = oracle::random_structure(rng, n, {{"f", 2}});
        const auto subs = all_subuniverses(s);
        std::vector<std::vector<Element>> nonempty;
        for (const auto& m : subs) {
            if (!m.empty()) nonempty.push_back(m);
        }
        if (nonempty.size() < 2) continue;
        const SubUniverse a(s, nonempty[rng() % nonempty.size()]);
        const SubUniverse b(s, nonempty[rng() % nonempty.size()]);
        const JointExtender extender(s, a, b, HomMode::weak);
        const auto ea = endomorphisms(extender.a_structure(), HomMode::weak);
        const auto eb = endomorphisms(extender.b_structure(), HomMode::weak);
        const auto ej = endomorphisms(extender.join_structure(), HomMode::weak);
        for (const auto& alpha : ea) {
            for (const auto& beta : eb) {
                const auto ext = extender.extend(alpha, beta);
                std::size_t matches = 0;
                const auto& jm = extender.join().members();
                for (const auto& gamma : ej) {
                    bool ok = true;
                    for (std::size_t i = 0; i < jm.size() && ok; ++i) {
                        if (const auto p = a.index_of(jm[i])) ok = jm[gamma(i)] == a.members()[alpha(*p)];
                        if (const auto p = b.index_of(jm[i]); ok && p) ok = jm[gamma(i)] == b.members()[beta(*p)];
                    }
                    matches += ok;
                }
                CHECK(matches <= 1);
                CHECK(ext.exists() == (matches == 1));
                if (ext.exists()) {
                    ++extended;
                    for (std::size_t i = 0; i < a.size(); ++i) CHECK(ext.image(a.members()[i]) == a.members()[alpha(i)]);
                    for (std::size_t i = 0; i < b.size(); ++i) CHECK(ext.image(b.members()[i]) == b.members()[beta(i)]);
                }
            }
        }
    }
    CHECK(extended > 0);
}

TEST_CASE("property: kernel is a congruence") {
    std::mt19937_64 rng(31);
    for (int round = 0; round < 30; ++round) {
        const std::size_t n = 1 + rng() % 5;
        const auto x = oracle::random_structure(rng, n, {{"f", 2}, {"g", 1}});
        const auto y = oracle::random_structure(rng, 1 + rng() % 4, {{"f", 2}, {"g", 1}});
        for (const auto& h : all_homs(x, y, HomMode::weak)) CHECK(is_compatible(x, kernel(h)));
    }
}
