#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "subindep/generation.hpp"
#include "subindep/structure.hpp"

namespace subindep {

enum class HomClass : std::uint8_t { all_endomorphisms, automorphisms_only };

/// True iff `map` preserves every operation and respects relations per `mode`.
[[nodiscard]] bool is_homomorphism(const FiniteStructure& dom, const FiniteStructure& cod,
                                   std::span<const Element> map, HomMode mode);

/// A relation tuple on which a map fails its mode. `image` is the mapped tuple.
struct RelationViolation {
    std::string relation;
    Tuple tuple;
    Tuple image;
    bool in_domain = true; // false: strong mode, image related but tuple is not
};

/// First relation violation of an op-preserving map, if any.
[[nodiscard]] std::optional<RelationViolation> find_relation_violation(const FiniteStructure& dom,
                                                                       const FiniteStructure& cod,
                                                                       std::span<const Element> map, HomMode mode);

/// Greedy generating set: repeatedly adds the element whose closure grows the
/// generated set most. Ties prefer elements tied by relation tuples to those
/// already chosen, then the smaller index.
[[nodiscard]] std::vector<Element> generating_set(const FiniteStructure& structure);

/// Receives each homomorphism; return false to stop the enumeration.
using HomVisitor = std::function<bool(const Homomorphism&)>;

/// Visits every homomorphism dom -> cod exactly once, in lexicographic order of
/// (generator index, image value). Returns false when the visitor stopped it.
/// Throws InputError on signature mismatch.
bool enumerate_homs(const FiniteStructure& dom, const FiniteStructure& cod, HomMode mode, const HomVisitor& visit);

[[nodiscard]] std::vector<Homomorphism> all_homs(const FiniteStructure& dom, const FiniteStructure& cod,
                                                 HomMode mode);

[[nodiscard]] std::vector<Homomorphism> endomorphisms(const FiniteStructure& structure, HomMode mode,
                                                      HomClass hom_class = HomClass::all_endomorphisms);

/// A bijective strong homomorphism, or nullopt.
[[nodiscard]] std::optional<Homomorphism> find_isomorphism(const FiniteStructure& x, const FiniteStructure& y);

/// Partition of the domain by equal images.
[[nodiscard]] Congruence kernel(const Homomorphism& h);

/// Why a pair of endomorphisms has no joint extension.
struct Refusal {
    enum class Kind : std::uint8_t { not_functional, relation_violated };
    Kind kind = Kind::not_functional;
    // not_functional: parent element forced to two images.
    Element element = 0;
    Element image_1 = 0;
    Element image_2 = 0;
    // relation_violated: tuples in parent indices.
    std::optional<RelationViolation> violation;
};

/// Result of a joint-extension attempt. Exactly one of gamma / refusal is set.
/// gamma is an endomorphism of the join's induced substructure: gamma.map[i] = j
/// sends join.members()[i] to join.members()[j].
struct JointExtension {
    SubUniverse join;
    std::optional<Homomorphism> gamma;
    std::optional<Refusal> refusal;

    [[nodiscard]] bool exists() const { return gamma.has_value(); }
    /// Image of a parent element of the join.
    [[nodiscard]] Element image(Element x) const;
};

/// Decides joint extensions for a fixed pair of subuniverses, caching the join.
/// Endomorphisms are expressed on the induced substructures: alpha.map[i] = j
/// means a.members()[i] goes to a.members()[j].
class JointExtender {
  public:
    JointExtender(const FiniteStructure& parent, const SubUniverse& a, const SubUniverse& b, HomMode mode);

    [[nodiscard]] const SubUniverse& a() const { return a_; }
    [[nodiscard]] const SubUniverse& b() const { return b_; }
    [[nodiscard]] const SubUniverse& join() const { return join_; }
    [[nodiscard]] const FiniteStructure& a_structure() const { return a_induced_.structure; }
    [[nodiscard]] const FiniteStructure& b_structure() const { return b_induced_.structure; }
    [[nodiscard]] const FiniteStructure& join_structure() const { return join_induced_.structure; }
    [[nodiscard]] HomMode mode() const { return mode_; }

    /// Throws InputError when alpha or beta is not an endomorphism of its side.
    [[nodiscard]] JointExtension extend(const Homomorphism& alpha, const Homomorphism& beta) const;

    /// As extend(), without validating alpha and beta.
    [[nodiscard]] JointExtension extend_unchecked(const Homomorphism& alpha, const Homomorphism& beta) const;

  private:
    const FiniteStructure* parent_;
    SubUniverse a_;
    SubUniverse b_;
    SubUniverse join_;
    InducedStructure a_induced_;
    InducedStructure b_induced_;
    InducedStructure join_induced_;
    std::vector<Element> join_index_; // parent element -> join position
    HomMode mode_;
};

[[nodiscard]] JointExtension joint_extension(const FiniteStructure& parent, const SubUniverse& a,
                                             const SubUniverse& b, const Homomorphism& alpha,
                                             const Homomorphism& beta, HomMode mode = HomMode::weak);

} // namespace subindep
