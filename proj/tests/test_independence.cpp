#include <doctest.h>

#include <algorithm>
#include <random>

#include "subindep/error.hpp"
#include "subindep/independence.hpp"
#include "subindep/suite.hpp"
#include "subindep/zoo.hpp"

using namespace subindep;

namespace {

FiniteStructure z(std::size_t n) { return zoo::cyclic_group(n).structure; }

std::vector<Element> by_label(const FiniteStructure& s, std::initializer_list<const char*> labels) {
    std::vector<Element> out;
    for (const char* l : labels) out.push_back(s.find_label(l).value());
    std::ranges::sort(out);
    return out;
}

bool identity_map(const Homomorphism& h) {
    for (Element i = 0; i < h.size(); ++i) {
        if (h(i) != i) return false;
    }
    return true;
}

bool constant_map(const Homomorphism& h) {
    return std::ranges::all_of(h.map, [&](Element v) { return v == h.map.front(); });
}

} // namespace

TEST_CASE("decide_subalgebra_independence") {
    SUBCASE("Z2 and Z3 inside Z6") {
        const auto z6 = z(6);
        const auto v = decide_subalgebra_independence(z6, SubUniverse(z6, {0, 3}), SubUniverse(z6, {0, 2, 4}));
        CHECK(v.independent);
        CHECK(v.stats.left_count == 2);
        CHECK(v.stats.right_count == 3);
        CHECK(v.stats.pairs_checked == 6);
        CHECK(v.stats.join_size == 6);
    }
    SUBCASE("rotation and reflection subgroups of S3") {
        const auto s3 = zoo::symmetric_group(3).structure;
        const SubUniverse a(s3, by_label(s3, {"()", "(123)", "(132)"}));
        const SubUniverse b(s3, by_label(s3, {"()", "(12)"}));
        const auto v = decide_subalgebra_independence(s3, a, b);
        CHECK_FALSE(v.independent);
        const auto* w = std::get_if<SubalgebraWitness>(&v.witness);
        REQUIRE(w != nullptr);
        CHECK(identity_map(w->alpha));
        CHECK(constant_map(w->beta));
        CHECK_FALSE(joint_extension(s3, a, b, w->alpha, w->beta).exists());
    }
    SUBCASE("two order-2 subgroups of S4 generating D4") {
        const auto s4 = zoo::symmetric_group(4).structure;
        const SubUniverse a(s4, by_label(s4, {"()", "(12)"}));
        const SubUniverse b(s4, by_label(s4, {"()", "(13)(24)"}));
        const auto v = decide_subalgebra_independence(s4, a, b);
        CHECK(v.independent);
        CHECK(v.stats.join_size == 8);
    }
    SUBCASE("automorphisms only is weaker") {
        const auto s = zoo::empty_sig_set(3).structure;
        const SubUniverse a(s, {0, 1});
        const SubUniverse b(s, {1, 2});
        CHECK_FALSE(decide_subalgebra_independence(s, a, b).independent);
        CHECK_FALSE(decide_subalgebra_independence(s, a, b, HomClass::automorphisms_only).independent);
        const auto z6 = z(6);
        const SubUniverse c(z6, {0, 3});
        CHECK(decide_subalgebra_independence(z6, c, c, HomClass::automorphisms_only).independent);
        CHECK_FALSE(decide_subalgebra_independence(z6, c, c).independent);
    }
    SUBCASE("errors") {
        const auto z6 = z(6);
        const auto other = z(6);
        CHECK_THROWS_AS((void)decide_subalgebra_independence(z6, SubUniverse(z6, {0}), SubUniverse(other, {0})),
                        InputError);
        const auto s = zoo::empty_sig_set(2).structure;
        CHECK_THROWS_AS((void)decide_subalgebra_independence(s, SubUniverse(s, {}), SubUniverse(s, {0})),
                        InputError);
    }
}

TEST_CASE("pinned: equal singletons in a set are independent") {
    // The only endomorphism of a one-element set is the identity, so the pair
    // (id, id) always extends even though the sets meet.
    const auto s = zoo::empty_sig_set(3).structure;
    for (Element x = 0; x < 3; ++x) {
        const SubUniverse a(s, {x});
        const auto v = decide_subalgebra_independence(s, a, a);
        CHECK(v.independent);
        CHECK(v.stats.pairs_checked == 1);
    }
    const SubUniverse a(s, {0});
    const SubUniverse b(s, {0, 1});
    CHECK_FALSE(decide_subalgebra_independence(s, a, b).independent);
}

TEST_CASE("decide_congruence_independence") {
    const auto s3 = zoo::empty_sig_set(3).structure;
    CHECK(decide_congruence_independence(s3, SubUniverse(s3, {0}), SubUniverse(s3, {0, 1})).independent);
    const auto s4 = zoo::empty_sig_set(4).structure;
    CHECK(decide_congruence_independence(s4, SubUniverse(s4, {0, 1}), SubUniverse(s4, {2, 3})).independent);

    SUBCASE("equal subuniverses with two elements") {
        for (const bool shortcut : {true, false}) {
            CongruenceOptions options;
            options.intersection_shortcut = shortcut;
            const SubUniverse a(s4, {1, 2});
            const auto v = decide_congruence_independence(s4, a, a, options);
            CHECK_FALSE(v.independent);
            CHECK(v.stats.shortcut == shortcut);
            const auto* w = std::get_if<CongruenceWitness>(&v.witness);
            REQUIRE(w != nullptr);
            const auto& theta = w->side == CongruenceWitness::Side::a ? w->theta_a : w->theta_b;
            CHECK(w->generated.related(*a.index_of(w->x), *a.index_of(w->y))); // the join is a itself
            CHECK_FALSE(theta.related(*a.index_of(w->x), *a.index_of(w->y)));
        }
    }
    SUBCASE("Z6 subgroups meet in one element") {
        const auto z6 = z(6);
        const auto v = decide_congruence_independence(z6, SubUniverse(z6, {0, 3}), SubUniverse(z6, {0, 2, 4}));
        CHECK(v.independent);
        CHECK(v.stats.pairs_checked == 4);
    }
    SUBCASE("bound") {
        const auto z13 = z(13);
        const SubUniverse all(z13, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12});
        const SubUniverse zero(z13, {0});
        CHECK_THROWS_AS((void)decide_congruence_independence(z13, all, zero), ResourceError);
        CongruenceOptions options;
        options.max_size = 13;
        CHECK(decide_congruence_independence(z13, all, zero, options).independent);
    }
}

TEST_CASE("pinned: Boolean coproduct summands share 0 and 1") {
    // The embedded summands are subalgebra-independent, but they meet in {0, 1},
    // which already rules out congruence independence.
    const auto two = zoo::powerset_boolean_algebra(2).structure;
    const auto cop = zoo::coproduct({zoo::Category::boolean_algebra, 0}, two, two);
    std::vector<Element> a = cop.embed_left.map;
    std::vector<Element> b = cop.embed_right.map;
    std::ranges::sort(a);
    std::ranges::sort(b);
    const SubUniverse sa(cop.structure, a);
    const SubUniverse sb(cop.structure, b);
    CHECK(decide_subalgebra_independence(cop.structure, sa, sb).independent);
    CongruenceOptions options;
    options.intersection_shortcut = false;
    options.max_size = 16;
    const auto v = decide_congruence_independence(cop.structure, sa, sb, options);
    CHECK_FALSE(v.independent);
    std::vector<Element> shared;
    std::ranges::set_intersection(a, b, std::back_inserter(shared));
    CHECK(shared.size() == 2);
}

TEST_CASE("boole_independent") {
    const auto ba = zoo::powerset_boolean_algebra(4).structure;
    CHECK(boole_independent(ba, SubUniverse(ba, {0, 3, 12, 15}), SubUniverse(ba, {0, 5, 10, 15})));
    const SubUniverse single(ba, {0, 1, 14, 15});
    CHECK_FALSE(boole_independent(ba, single, single));
    const SubUniverse minimal(ba, {0, 15});
    CHECK(boole_independent(ba, minimal, minimal));
    const auto z4 = z(4);
    CHECK_THROWS_AS((void)boole_independent(z4, SubUniverse(z4, {0}), SubUniverse(z4, {0})), InputError);
}

TEST_CASE("group_diagnostics") {
    const auto z6 = z(6);
    auto r = group_diagnostics(z6, SubUniverse(z6, {0, 3}), SubUniverse(z6, {0, 2, 4}));
    CHECK(r.a_normal);
    CHECK(r.b_normal);
    CHECK(r.trivial_intersection);
    CHECK(r.prediction == Prediction::independent);

    const auto s3 = zoo::symmetric_group(3).structure;
    r = group_diagnostics(s3, SubUniverse(s3, by_label(s3, {"()", "(123)", "(132)"})),
                          SubUniverse(s3, by_label(s3, {"()", "(12)"})));
    CHECK(r.a_normal);
    CHECK_FALSE(r.b_normal);
    CHECK(r.prediction == Prediction::not_independent);

    const auto s4 = zoo::symmetric_group(4).structure;
    r = group_diagnostics(s4, SubUniverse(s4, by_label(s4, {"()", "(12)"})),
                          SubUniverse(s4, by_label(s4, {"()", "(13)(24)"})));
    CHECK_FALSE(r.a_normal);
    CHECK_FALSE(r.b_normal);
    CHECK(r.prediction == Prediction::none);

    const auto set = zoo::empty_sig_set(2).structure;
    CHECK_THROWS_AS((void)group_diagnostics(set, SubUniverse(set, {0}), SubUniverse(set, {1})), InputError);
}

TEST_CASE("check_word_condition") {
    const auto z6 = z(6);
    const SubUniverse a(z6, {0, 3});
    const SubUniverse b(z6, {0, 2, 4});
    const JointExtender ctx(z6, a, b, HomMode::weak);
    for (const auto& alpha : endomorphisms(ctx.a_structure(), HomMode::weak)) {
        for (const auto& beta : endomorphisms(ctx.b_structure(), HomMode::weak)) {
            CHECK(check_word_condition(z6, a, b, alpha, beta));
        }
    }
    const auto s3 = zoo::symmetric_group(3).structure;
    const SubUniverse rot(s3, by_label(s3, {"()", "(123)", "(132)"}));
    const SubUniverse ref(s3, by_label(s3, {"()", "(12)"}));
    const Homomorphism id3{{0, 1, 2}, HomMode::weak};
    const Homomorphism id2{{0, 1}, HomMode::weak};
    const Homomorphism trivial{{0, 0}, HomMode::weak};
    CHECK_FALSE(check_word_condition(s3, rot, ref, id3, trivial));
    CHECK(check_word_condition(s3, rot, ref, id3, id2));
}

TEST_CASE("property: verdict carries a witness exactly when not independent") {
    std::mt19937_64 rng(41);
    for (int round = 0; round < 40; ++round) {
        const auto inst = suite::planted_instance(rng, 6, round % 2 == 1);
        const auto& s = inst.structure;
        const SubUniverse a(s, inst.a);
        const SubUniverse b(s, inst.b);
        const auto sub = decide_subalgebra_independence(s, a, b);
        CHECK(sub.independent == std::holds_alternative<std::monostate>(sub.witness));
        if (const auto* w = std::get_if<SubalgebraWitness>(&sub.witness)) {
            CHECK_FALSE(joint_extension(s, a, b, w->alpha, w->beta).exists());
        }
        for (const bool shortcut : {true, false}) {
            CongruenceOptions options;
            options.intersection_shortcut = shortcut;
            const auto cong = decide_congruence_independence(s, a, b, options);
            CHECK(cong.independent == std::holds_alternative<std::monostate>(cong.witness));
            CHECK(cong.independent == suite::brute_force_congruence_independent(s, a, b));
        }
    }
}
