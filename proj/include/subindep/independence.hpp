#pragma once

#include <cstddef>
#include <optional>
#include <variant>

#include "subindep/generation.hpp"
#include "subindep/morphisms.hpp"
#include "subindep/structure.hpp"

namespace subindep {

/// A pair of endomorphisms with no joint extension.
struct SubalgebraWitness {
    Homomorphism alpha; // on the first subalgebra's induced structure
    Homomorphism beta;  // on the second subalgebra's induced structure
    Refusal refusal;
};

/// A pair of congruences whose least common extension over the join
/// restricts wrongly to one side.
struct CongruenceWitness {
    enum class Side : std::uint8_t { a, b };
    Congruence theta_a;   // on the first subalgebra, positions of a.members()
    Congruence theta_b;   // on the second subalgebra
    Congruence generated; // on the join, positions of join.members()
    Side side = Side::a;
    Element x = 0; // parent elements related by `generated` but not by theta_side
    Element y = 0;
};

struct VerdictStats {
    std::size_t pairs_checked = 0;
    std::size_t left_count = 0;  // endomorphisms or congruences of the first side
    std::size_t right_count = 0; // of the second side
    std::size_t join_size = 0;
    bool shortcut = false; // decided by |A ∩ B| >= 2 without lattice computation
};

struct Verdict {
    bool independent = true;
    std::variant<std::monostate, SubalgebraWitness, CongruenceWitness> witness;
    VerdictStats stats;
};

/// Checks every (alpha, beta) pair of endomorphisms in the given class, alpha-major
/// in enumeration order; the first pair without a joint extension is the witness.
/// Subuniverses must be non-empty.
[[nodiscard]] Verdict decide_subalgebra_independence(const FiniteStructure& parent, const SubUniverse& a,
                                                     const SubUniverse& b,
                                                     HomClass hom_class = HomClass::all_endomorphisms,
                                                     HomMode mode = HomMode::weak);

struct CongruenceOptions {
    std::size_t max_size = kDefaultCongruenceBound;
    bool intersection_shortcut = true;
};

/// For every (theta_A, theta_B) the least congruence of the join containing both
/// is the only candidate worth testing: any congruence restricting exactly to
/// theta_A and theta_B contains their union, hence this least one, and restriction
/// is monotone. So independence holds iff that least congruence restricts exactly.
[[nodiscard]] Verdict decide_congruence_independence(const FiniteStructure& parent, const SubUniverse& a,
                                                     const SubUniverse& b, const CongruenceOptions& options = {});

/// Boole-independence: no non-zero a in A and b in B meet to zero.
/// Throws InputError when parent fails the Boolean algebra laws.
[[nodiscard]] bool boole_independent(const FiniteStructure& parent, const SubUniverse& a, const SubUniverse& b);

enum class Prediction : std::uint8_t { independent, not_independent, none };

struct GroupReport {
    bool trivial_intersection = false;
    bool a_normal = false; // normal in the join
    bool b_normal = false;
    Prediction prediction = Prediction::none;
};

/// Throws InputError when parent fails the group laws.
[[nodiscard]] GroupReport group_diagnostics(const FiniteStructure& parent, const SubUniverse& a,
                                            const SubUniverse& b);

/// For groups: whether prod a_i b_i = e always forces prod alpha(a_i) beta(b_i) = e.
/// The pairs generated by the graphs of alpha and beta are exactly
/// (prod a_i b_i, prod alpha(a_i) beta(b_i)), so the condition holds iff that
/// pair set is functional, i.e. iff the joint extension exists.
[[nodiscard]] bool check_word_condition(const FiniteStructure& parent, const SubUniverse& a, const SubUniverse& b,
                                        const Homomorphism& alpha, const Homomorphism& beta);

} // namespace subindep
