#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "subindep/structure.hpp"
#include "subindep/zoo.hpp"

namespace subindep::suite {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::size_t cases = 0;
    std::size_t violations = 0;
    std::string detail; // first violation, or a summary
    double seconds = 0;
};

struct SuiteOptions {
    std::uint64_t seed = zoo::kDefaultSeed;
};

inline constexpr int kCriterionCount = 9;

[[nodiscard]] std::string criterion_title(int id);
[[nodiscard]] CriterionResult run_criterion(int id, const SuiteOptions& options = {});
[[nodiscard]] std::vector<CriterionResult> run_all(const SuiteOptions& options = {});

// ---------------------------------------------------------------------------
// Brute-force oracles. They share nothing with the deciders beyond the
// structure type, and are exponential by design.

/// Every partition, in restricted-growth order, kept when compatible with all ops.
[[nodiscard]] std::vector<Congruence> brute_force_congruences(const FiniteStructure& s);

/// Every map dom -> cod, kept when it is a homomorphism in `mode`.
[[nodiscard]] std::vector<std::vector<Element>> brute_force_homs(const FiniteStructure& dom, const FiniteStructure& cod,
                                                                 HomMode mode);

/// Searches all congruences of the join for exact restrictions, for every pair.
[[nodiscard]] bool brute_force_congruence_independent(const FiniteStructure& parent, const SubUniverse& a,
                                                      const SubUniverse& b);

/// A random algebra with two planted subuniverses A and B.
struct PlantedInstance {
    FiniteStructure structure;
    std::vector<Element> a;
    std::vector<Element> b;
};

/// Size uniform in 2..max_size; one binary op, or one unary op when `unary`.
[[nodiscard]] PlantedInstance planted_instance(std::mt19937_64& rng, std::size_t max_size, bool unary);

} // namespace subindep::suite
