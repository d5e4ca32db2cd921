#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "subindep/structure.hpp"

namespace subindep {

using ElementPair = std::pair<Element, Element>;

/// Which seed set a generator came from.
enum class Origin : std::uint8_t { seed, left, right, both };

/// One step of a derivation: either a generator or an operation applied to
/// earlier nodes. `args` are node positions, always smaller than this node's.
struct Derivation {
    Element element = 0;
    std::optional<std::size_t> op; // nullopt: generator
    std::vector<std::size_t> args;
    Origin origin = Origin::seed;

    [[nodiscard]] bool is_generator() const { return !op.has_value(); }
};

/// Records one derivation per element of a closure, in the order found.
class WitnessDag {
  public:
    WitnessDag() = default;
    explicit WitnessDag(std::vector<Derivation> nodes) : nodes_(std::move(nodes)) {}

    [[nodiscard]] const std::vector<Derivation>& nodes() const { return nodes_; }
    [[nodiscard]] std::size_t size() const { return nodes_.size(); }

    /// True when every applied node only references earlier nodes.
    [[nodiscard]] bool is_topological() const;

    /// Re-evaluates the DAG bottom-up in `target`, interpreting generators via
    /// `leaf`. Returns one value per node.
    [[nodiscard]] std::vector<Element> replay(const FiniteStructure& target,
                                              const std::function<Element(const Derivation&)>& leaf) const;

  private:
    std::vector<Derivation> nodes_;
};

struct Closure {
    SubUniverse sub;
    WitnessDag dag;
};

/// Smallest subuniverse containing `seed` and every constant.
[[nodiscard]] Closure close(const FiniteStructure& structure, std::span<const Element> seed);

/// The subuniverse generated by a ∪ b. Generator nodes carry their side.
[[nodiscard]] Closure join(const FiniteStructure& parent, const SubUniverse& a, const SubUniverse& b);

/// Subuniverse of x × y generated by `pairs`, as a sorted pair list.
[[nodiscard]] std::vector<ElementPair> generated_relation(const FiniteStructure& x, const FiniteStructure& y,
                                                          std::span<const ElementPair> pairs);

/// Subuniverse of parent × parent generated by `pairs`.
[[nodiscard]] std::vector<ElementPair> generated_subuniverse_of_square(const FiniteStructure& parent,
                                                                       std::span<const ElementPair> pairs);

/// Smallest congruence containing `pairs`.
[[nodiscard]] Congruence cg(const FiniteStructure& structure, std::span<const ElementPair> pairs);

/// Smallest congruence containing both.
[[nodiscard]] Congruence congruence_join(const FiniteStructure& structure, const Congruence& a,
                                         const Congruence& b);

inline constexpr std::size_t kDefaultCongruenceBound = 12;

/// The full congruence lattice, sorted by block assignment.
/// Throws ResourceError when structure.size() > max_size.
[[nodiscard]] std::vector<Congruence> all_congruences(const FiniteStructure& structure,
                                                      std::size_t max_size = kDefaultCongruenceBound);

/// Every subuniverse, including the empty one when there are no constants.
/// Sorted by (size, members).
[[nodiscard]] std::vector<std::vector<Element>> all_subuniverses(const FiniteStructure& structure);

} // namespace subindep
