#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "subindep/generation.hpp"
#include "subindep/morphisms.hpp"
#include "subindep/structure.hpp"

namespace subindep::zoo {

// Operation symbol names used by the builders.
namespace names {
inline constexpr std::string_view mul = "mul";
inline constexpr std::string_view inv = "inv";
inline constexpr std::string_view unit = "e";
inline constexpr std::string_view join = "join";
inline constexpr std::string_view meet = "meet";
inline constexpr std::string_view complement = "compl";
inline constexpr std::string_view bottom = "zero";
inline constexpr std::string_view top = "one";
inline constexpr std::string_view add = "add";
inline constexpr std::string_view neg = "neg";
inline constexpr std::string_view zero = "zero";
inline constexpr std::string_view scalar_prefix = "smul"; // smul0 .. smul{p-1}
inline constexpr std::string_view edge = "E";
} // namespace names

enum class Category : std::uint8_t { set, graph, abelian_group, group, boolean_algebra, vector_space };

struct CategoryTag {
    Category kind = Category::set;
    unsigned prime = 0; // vector_space only

    bool operator==(const CategoryTag&) const = default;
};

/// "set", "graph", "abelian_group", "group", "boolean_algebra", "vector_space:<p>".
[[nodiscard]] std::string to_string(const CategoryTag& tag);
[[nodiscard]] CategoryTag parse_category(std::string_view text);

[[nodiscard]] Signature group_signature();
[[nodiscard]] Signature boolean_signature();
[[nodiscard]] Signature vector_space_signature(unsigned p);
[[nodiscard]] Signature graph_signature();

// Law checks. Each returns the first failing law, or nullopt.
[[nodiscard]] std::optional<std::string> group_law_failure(const FiniteStructure& s);
[[nodiscard]] std::optional<std::string> abelian_group_law_failure(const FiniteStructure& s);
[[nodiscard]] std::optional<std::string> boolean_law_failure(const FiniteStructure& s);
[[nodiscard]] std::optional<std::string> vector_space_law_failure(const FiniteStructure& s, unsigned p);

/// Throws InputError naming the failed law.
void require_group(const FiniteStructure& s);
void require_boolean_algebra(const FiniteStructure& s);

/// Checks the laws belonging to a category, and the signature shape.
[[nodiscard]] std::optional<std::string> category_law_failure(const CategoryTag& tag, const FiniteStructure& s);

struct Built {
    FiniteStructure structure;
    CategoryTag tag;
};

[[nodiscard]] Built empty_sig_set(std::size_t n);
[[nodiscard]] Built cyclic_group(std::size_t n);
/// Permutations of {1..n} in lexicographic order; labels in cycle notation, "()" for e.
/// Product (s * t)(i) = s(t(i)).
[[nodiscard]] Built symmetric_group(std::size_t n);
[[nodiscard]] Built alternating_group(std::size_t n);
/// Order 2n: element r^i s^j has index i + n*j.
[[nodiscard]] Built dihedral_group(std::size_t n);
[[nodiscard]] Built quaternion_group();
/// Subsets of k atoms as bitmasks.
[[nodiscard]] Built powerset_boolean_algebra(std::size_t atoms);
/// F_p^dim with base-p digit encoding (coordinate 0 least significant).
[[nodiscard]] Built vector_space(unsigned p, std::size_t dim);
/// Directed graph; the edge relation is named "E".
[[nodiscard]] Built graph(std::size_t n, std::span<const ElementPair> edges);

/// Dispatch on a family name with integer parameters. Graph edges are given
/// separately. Throws InputError on unknown families or size caps.
[[nodiscard]] Built build(std::string_view family, std::span<const long long> params,
                          std::span<const ElementPair> edges = {});

[[nodiscard]] std::vector<std::string> family_names();

struct Coproduct {
    FiniteStructure structure;
    Homomorphism embed_left;
    Homomorphism embed_right;
};

/// Size of the coproduct without building it.
[[nodiscard]] std::size_t coproduct_size(const CategoryTag& tag, const FiniteStructure& x,
                                         const FiniteStructure& y);

/// set / graph: disjoint union. abelian_group / vector_space: direct sum
/// (realized as the direct product; all instances are finite). boolean_algebra:
/// atoms are pairs of atoms. group: UnsupportedError, the free product is infinite.
[[nodiscard]] Coproduct coproduct(const CategoryTag& tag, const FiniteStructure& x, const FiniteStructure& y);

struct CanonicalQuotient {
    Coproduct coproduct;   // of the induced substructures of a and b
    SubUniverse join;      // a ∨ b in the parent
    FiniteStructure join_structure;
    Homomorphism q;        // coproduct element -> join position
};

/// The surjection from coproduct(A, B) onto A ∨ B fixed by q∘e_A = incl_A, q∘e_B = incl_B.
[[nodiscard]] CanonicalQuotient canonical_quotient(const FiniteStructure& parent, const SubUniverse& a,
                                                   const SubUniverse& b, const CategoryTag& tag);

/// Hom mode used for a category: weak for graphs, irrelevant elsewhere.
[[nodiscard]] HomMode category_mode(const CategoryTag& tag);

/// For every target D and hom pair (f_A, f_B) checks that exactly one g: cop -> D
/// satisfies g∘e_A = f_A and g∘e_B = f_B.
[[nodiscard]] bool verify_coproduct_property(const CategoryTag& tag, const FiniteStructure& x,
                                             const FiniteStructure& y, const FiniteStructure& cop,
                                             const Homomorphism& e_a, const Homomorphism& e_b,
                                             std::span<const FiniteStructure> targets);

// ---------------------------------------------------------------------------
// Rigid graphs

inline constexpr std::uint64_t kDefaultSeed = 20240601;

/// Random loopless digraphs on n vertices until one has the identity as its only
/// weak endomorphism. Deterministic in the seed.
[[nodiscard]] FiniteStructure find_rigid_graph(std::size_t n, std::uint64_t seed = kDefaultSeed);

struct RigidCertificate {
    std::size_t vertices;
    std::vector<ElementPair> edges;
    std::uint64_t seed;
    std::size_t endomorphism_count; // 1 for a rigid graph
};

/// The stored rigid graph found by find_rigid_graph(8, kDefaultSeed).
[[nodiscard]] const RigidCertificate& frozen_rigid_graph();

[[nodiscard]] FiniteStructure certificate_graph(const RigidCertificate& certificate);

/// Two copies of a graph sharing `overlap` vertices: the first copy on
/// 0..n-1, the second on n-overlap..2n-overlap-1. Returns the union graph.
[[nodiscard]] FiniteStructure overlapping_union(const FiniteStructure& g, std::size_t overlap);

} // namespace subindep::zoo
