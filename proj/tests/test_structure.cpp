#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "subindep/error.hpp"
#include "subindep/generation.hpp"
#include "subindep/morphisms.hpp"
#include "subindep/zoo.hpp"

using namespace subindep;

namespace {

StructureDraft binary_draft(std::size_t n, std::vector<Element> table) {
    return StructureDraft{Signature({{"f", 2}}, {}), n, {std::move(table)}, {}, {}};
}

FiniteStructure z(std::size_t n) { return zoo::cyclic_group(n).structure; }

} // namespace

TEST_CASE("signature rejects duplicate names and nullary relations") {
    CHECK_THROWS_AS(Signature({{"f", 2}}, {{"f", 1}}), InputError);
    CHECK_THROWS_AS(Signature({{"f", 2}, {"f", 1}}, {}), InputError);
    CHECK_THROWS_AS(Signature({}, {{"R", 0}}), InputError);
    const Signature sig({{"f", 2}, {"c", 0}}, {{"R", 1}});
    CHECK(sig.op_index("c") == 1);
    CHECK(sig.rel_index("R") == 0);
    CHECK_FALSE(sig.find_op("R").has_value());
    CHECK_THROWS_AS((void)sig.op_index("missing"), InputError);
}

TEST_CASE("validate") {
    SUBCASE("singleton with one binary op") { CHECK_FALSE(validate(binary_draft(1, {0})).has_value()); }
    SUBCASE("out-of-range entry") {
        auto diag = validate(binary_draft(3, {0, 1, 2, 0, 1, 5, 0, 1, 2}));
        REQUIRE(diag.has_value());
        CHECK(diag->invariant == "out-of-range entry");
        CHECK(diag->detail.find('5') != std::string::npos);
    }
    SUBCASE("missing row") {
        auto diag = validate(binary_draft(3, {0, 1, 2, 0, 1, 2}));
        REQUIRE(diag.has_value());
        CHECK(diag->invariant == "non-total table");
    }
    SUBCASE("empty universe") {
        auto diag = validate(StructureDraft{Signature{}, 0, {}, {}, {}});
        REQUIRE(diag.has_value());
        CHECK(diag->invariant == "empty universe");
    }
    SUBCASE("relation tuples") {
        StructureDraft d{Signature({}, {{"E", 2}}), 2, {}, {{{0, 1, 1}}}, {}};
        REQUIRE(validate(d).has_value());
        CHECK(validate(d)->invariant == "wrong tuple arity");
        d.relations = {{{0, 2}}};
        CHECK(validate(d)->invariant == "out-of-range entry");
        d.relations = {};
        CHECK(validate(d)->invariant == "relation count mismatch");
    }
    SUBCASE("labels") {
        auto d = binary_draft(1, {0});
        d.labels = {"a", "b"};
        CHECK(validate(d)->invariant == "label count mismatch");
    }
    SUBCASE("constructor throws the diagnostic") {
        CHECK_THROWS_WITH_AS(FiniteStructure(binary_draft(2, {0, 1, 1})), doctest::Contains("non-total table"),
                             InputError);
    }
}

TEST_CASE("relation tuples are stored sorted and unique") {
    FiniteStructure g(StructureDraft{Signature({}, {{"E", 2}}), 3, {}, {{{2, 1}, {0, 1}, {2, 1}}}, {}});
    CHECK(g.relation(0).tuples() == std::vector<Tuple>{{0, 1}, {2, 1}});
    CHECK(g.holds(0, std::vector<Element>{2, 1}));
    CHECK_FALSE(g.holds(0, std::vector<Element>{1, 2}));
}

TEST_CASE("is_subuniverse") {
    const auto z6 = z(6);
    CHECK(is_subuniverse(z6, std::vector<Element>{0, 2, 4}));
    CHECK_FALSE(is_subuniverse(z6, std::vector<Element>{0, 2}));
    CHECK(is_subuniverse(z6, std::vector<Element>{0, 1, 2, 3, 4, 5}));
    CHECK_FALSE(is_subuniverse(z6, std::vector<Element>{2, 4})); // misses the constant e
    CHECK_THROWS_AS((void)is_subuniverse(z6, std::vector<Element>{0, 6}), InputError);
    CHECK_THROWS_AS(SubUniverse(z6, {0, 2}), InputError);
}

TEST_CASE("induced_substructure") {
    SUBCASE("Z6 on {0,3} is Z2") {
        const auto z6 = z(6);
        const auto ind = induced_substructure(SubUniverse(z6, {0, 3}));
        CHECK(ind.structure.size() == 2);
        CHECK(ind.to_parent == std::vector<Element>{0, 3});
        const std::size_t mul = ind.structure.signature().op_index("mul");
        CHECK(ind.structure.apply(mul, {1, 1}) == 0);
        CHECK(find_isomorphism(ind.structure, z(2)).has_value());
    }
    SUBCASE("full universe") {
        const auto z6 = z(6);
        const auto ind = induced_substructure(SubUniverse(z6, {0, 1, 2, 3, 4, 5}));
        CHECK(ind.structure == z6);
        CHECK(ind.to_parent == std::vector<Element>{0, 1, 2, 3, 4, 5});
    }
    SUBCASE("graph restricted to {0,2} is edgeless") {
        const std::vector<ElementPair> edges{{0, 1}, {1, 2}};
        const auto g = zoo::graph(3, edges).structure;
        const auto ind = induced_substructure(SubUniverse(g, {0, 2}));
        CHECK(ind.structure.size() == 2);
        CHECK(ind.structure.relation(0).tuples().empty());
    }
    SUBCASE("empty subuniverse has no induced structure") {
        const auto s = zoo::empty_sig_set(2).structure;
        CHECK_THROWS_AS((void)induced_substructure(SubUniverse(s, {})), InputError);
    }
}

TEST_CASE("direct_product") {
    SUBCASE("Z2 x Z3 is Z6") {
        const auto p = direct_product(z(2), z(3));
        CHECK(p.size() == 6);
        CHECK(find_isomorphism(p, z(6)).has_value());
    }
    SUBCASE("X x 1 is X") {
        const auto s3 = zoo::symmetric_group(3).structure;
        CHECK(find_isomorphism(direct_product(s3, z(1)), s3).has_value());
    }
    SUBCASE("edge x edge") {
        const std::vector<ElementPair> edge{{0, 1}};
        const auto g = zoo::graph(2, edge).structure;
        const auto p = direct_product(g, g);
        CHECK(p.size() == 4);
        CHECK(p.relation(0).tuples() == std::vector<Tuple>{{0, 3}});
    }
    SUBCASE("signature mismatch") { CHECK_THROWS_AS((void)direct_product(z(2), zoo::empty_sig_set(2).structure), InputError); }
}

TEST_CASE("quotient") {
    const auto z6 = z(6);
    SUBCASE("Z6 / Cg(0,3) is Z3") {
        const std::vector<ElementPair> pair{{0, 3}};
        const auto q = quotient(z6, cg(z6, pair));
        CHECK(q.structure.size() == 3);
        CHECK(find_isomorphism(q.structure, z(3)).has_value());
        CHECK(is_homomorphism(z6, q.structure, q.map.map, HomMode::strong));
    }
    SUBCASE("identity congruence") {
        const auto q = quotient(z6, Congruence::identity(6));
        CHECK(find_isomorphism(q.structure, z6).has_value());
        auto sorted = q.map.map;
        std::ranges::sort(sorted);
        CHECK(std::ranges::adjacent_find(sorted) == sorted.end());
    }
    SUBCASE("full congruence") { CHECK(quotient(z6, Congruence::full(6)).structure.size() == 1); }
    SUBCASE("incompatible partition") {
        const std::vector<Element> blocks{0, 0, 1, 1, 2, 2};
        CHECK_THROWS_AS((void)quotient(z6, Congruence(blocks)), InputError);
    }
    SUBCASE("relations hold on some representative") {
        const std::vector<ElementPair> edge{{0, 1}};
        const auto g = zoo::graph(3, edge).structure;
        const std::vector<Element> blocks{0, 1, 1};
        const auto q = quotient(g, Congruence(blocks));
        CHECK(q.structure.relation(0).tuples() == std::vector<Tuple>{{0, 1}});
    }
}

TEST_CASE("congruence canonical form") {
    const std::vector<Element> raw{5, 2, 5, 9};
    const Congruence c(raw);
    CHECK(c.block_assignment() == std::vector<Element>{0, 1, 0, 2});
    CHECK(c.block_count() == 3);
    CHECK(c.pairs() == std::vector<std::pair<Element, Element>>{{0, 2}});
    CHECK(Congruence::identity(4).refines(c));
    CHECK(c.refines(Congruence::full(4)));
    const std::vector<Element> members{1, 3};
    CHECK(c.restrict_to(members).is_identity());
}

TEST_CASE("property: closures are subuniverses") {
    std::mt19937_64 rng(7);
    for (int round = 0; round < 40; ++round) {
        const std::size_t n = 1 + rng() % 8;
        const auto s = oracle::random_structure(rng, n, {{"f", 2}, {"g", 1}});
        std::vector<Element> seed;
        for (Element x = 0; x < n; ++x) {
            if (rng() % 3 == 0) seed.push_back(x);
        }
        CHECK(is_subuniverse(s, close(s, seed).sub.members()));
    }
}

TEST_CASE("property: quotient by a kernel reproduces the image") {
    std::mt19937_64 rng(11);
    int checked = 0;
    for (int round = 0; round < 30; ++round) {
        const std::size_t n = 2 + rng() % 4;
        const auto x = oracle::random_structure(rng, n, {{"f", 1}, {"g", 2}});
        const auto homs = all_homs(x, x, HomMode::weak);
        for (const auto& h : homs) {
            const auto q = quotient(x, kernel(h));
            // Block b is sent to h of any representative; that map must be injective
            // and agree with h pointwise.
            std::vector<Element> embed(q.structure.size(), kNoElement);
            for (Element v = 0; v < n; ++v) {
                const Element b = q.map(v);
                if (embed[b] == kNoElement) embed[b] = h(v);
                CHECK(embed[b] == h(v));
            }
            auto sorted = embed;
            std::ranges::sort(sorted);
            CHECK(std::ranges::adjacent_find(sorted) == sorted.end());
            CHECK(is_homomorphism(q.structure, x, embed, HomMode::weak));
            ++checked;
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("property: product projections") {
    std::mt19937_64 rng(13);
    for (int round = 0; round < 20; ++round) {
        const std::size_t nx = 1 + rng() % 3;
        const std::size_t ny = 1 + rng() % 3;
        const bool with_rel = round % 2 == 1;
        std::vector<Symbol> rels;
        if (with_rel) rels.push_back({"R", 2});
        const auto x = oracle::random_structure(rng, nx, {{"f", 2}}, rels);
        const auto y = oracle::random_structure(rng, ny, {{"f", 2}}, rels);
        const auto p = direct_product(x, y);
        std::vector<Element> left;
        std::vector<Element> right;
        for (Element i = 0; i < nx; ++i) {
            for (Element j = 0; j < ny; ++j) {
                left.push_back(i);
                right.push_back(j);
            }
        }
        CHECK(is_homomorphism(p, x, left, HomMode::weak));
        CHECK(is_homomorphism(p, y, right, HomMode::weak));
        if (!with_rel) {
            CHECK(is_homomorphism(p, x, left, HomMode::strong));
            CHECK(is_homomorphism(p, y, right, HomMode::strong));
        }
    }
}
