#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace subindep {

using Element = std::uint32_t;
using Tuple = std::vector<Element>;

inline constexpr Element kNoElement = static_cast<Element>(-1);

struct Symbol {
    std::string name;
    std::size_t arity = 0;

    bool operator==(const Symbol&) const = default;
};

/// Operation and relation symbols shared by all structures under comparison.
/// Operation arity 0 denotes a constant; relation arities are at least 1.
class Signature {
  public:
    Signature() = default;
    Signature(std::vector<Symbol> ops, std::vector<Symbol> rels);

    [[nodiscard]] const std::vector<Symbol>& ops() const { return ops_; }
    [[nodiscard]] const std::vector<Symbol>& rels() const { return rels_; }
    [[nodiscard]] bool empty() const { return ops_.empty() && rels_.empty(); }

    [[nodiscard]] std::optional<std::size_t> find_op(std::string_view name) const;
    [[nodiscard]] std::optional<std::size_t> find_rel(std::string_view name) const;
    /// Throws InputError when the symbol is absent.
    [[nodiscard]] std::size_t op_index(std::string_view name) const;
    [[nodiscard]] std::size_t rel_index(std::string_view name) const;

    bool operator==(const Signature&) const = default;

  private:
    std::vector<Symbol> ops_;
    std::vector<Symbol> rels_;
};

/// Unvalidated structure contents. Tables are row-major over argument tuples
/// in lexicographic order; relations are lists of tuples.
struct StructureDraft {
    Signature sig;
    std::size_t size = 0;
    std::vector<std::vector<Element>> op_tables;
    std::vector<std::vector<Tuple>> relations;
    std::vector<std::string> labels;
};

struct Diagnostic {
    std::string invariant; // e.g. "out-of-range entry", "non-total table"
    std::string detail;

    [[nodiscard]] std::string message() const { return invariant + ": " + detail; }
};

/// First violated invariant of a draft, or nullopt when the draft is a valid structure.
[[nodiscard]] std::optional<Diagnostic> validate(const StructureDraft& draft);

/// Number of tuples of the given arity over a universe of `size` elements.
/// Throws ResourceError past 2^32.
[[nodiscard]] std::size_t tuple_count(std::size_t size, std::size_t arity);

/// Row-major index of a tuple.
[[nodiscard]] std::size_t tuple_index(std::size_t size, std::span<const Element> tuple);

/// Odometer over all tuples in [0, size)^arity in lexicographic order.
class TupleOdometer {
  public:
    TupleOdometer(std::size_t size, std::size_t arity);
    [[nodiscard]] bool done() const { return done_; }
    [[nodiscard]] std::span<const Element> operator*() const { return current_; }
    TupleOdometer& operator++();

  private:
    std::size_t size_;
    Tuple current_;
    bool done_ = false;
};

class RelationTable {
  public:
    RelationTable(std::size_t universe, std::size_t arity, std::vector<Tuple> tuples);

    [[nodiscard]] std::size_t arity() const { return arity_; }
    [[nodiscard]] const std::vector<Tuple>& tuples() const { return tuples_; }
    [[nodiscard]] bool contains(std::span<const Element> tuple) const;

    bool operator==(const RelationTable& other) const { return arity_ == other.arity_ && tuples_ == other.tuples_; }

  private:
    std::size_t universe_;
    std::size_t arity_;
    std::vector<Tuple> tuples_; // sorted, unique
    std::vector<bool> member_;  // dense membership when small enough
};

/// A finite first-order structure on the universe 0..size-1. Immutable.
class FiniteStructure {
  public:
    /// Throws InputError carrying the diagnostic of validate().
    explicit FiniteStructure(StructureDraft draft);

    [[nodiscard]] const Signature& signature() const { return sig_; }
    [[nodiscard]] std::size_t size() const { return size_; }

    [[nodiscard]] Element apply(std::size_t op, std::span<const Element> args) const;
    [[nodiscard]] Element apply(std::size_t op, std::initializer_list<Element> args) const {
        return apply(op, std::span<const Element>(args.begin(), args.size()));
    }
    [[nodiscard]] const std::vector<Element>& table(std::size_t op) const { return tables_[op]; }
    [[nodiscard]] const RelationTable& relation(std::size_t rel) const { return relations_[rel]; }
    [[nodiscard]] bool holds(std::size_t rel, std::span<const Element> tuple) const {
        return relations_[rel].contains(tuple);
    }

    /// Values of the nullary operations, in signature order.
    [[nodiscard]] std::vector<Element> constants() const;

    [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
    [[nodiscard]] std::string label(Element x) const;
    [[nodiscard]] std::optional<Element> find_label(std::string_view label) const;

    [[nodiscard]] StructureDraft draft() const;

    bool operator==(const FiniteStructure& other) const;

  private:
    Signature sig_;
    std::size_t size_;
    std::vector<std::vector<Element>> tables_;
    std::vector<RelationTable> relations_;
    std::vector<std::string> labels_;
};

/// A subset of a parent universe closed under every operation.
/// Holds a non-owning reference; the parent must outlive it.
class SubUniverse {
  public:
    /// Throws InputError when an element is out of range or the set is not closed.
    SubUniverse(const FiniteStructure& parent, std::vector<Element> members);

    [[nodiscard]] const FiniteStructure& parent() const { return *parent_; }
    [[nodiscard]] const std::vector<Element>& members() const { return members_; }
    [[nodiscard]] std::size_t size() const { return members_.size(); }
    [[nodiscard]] bool contains(Element x) const;
    /// Position of x in members(), if present.
    [[nodiscard]] std::optional<std::size_t> index_of(Element x) const;

    bool operator==(const SubUniverse& other) const {
        return parent_ == other.parent_ && members_ == other.members_;
    }

  private:
    const FiniteStructure* parent_;
    std::vector<Element> members_; // sorted, unique
};

enum class HomMode : std::uint8_t { weak, strong };

/// A total element map. `map[i]` is the image of element i of the domain.
struct Homomorphism {
    std::vector<Element> map;
    HomMode mode = HomMode::weak;

    [[nodiscard]] Element operator()(Element x) const { return map[x]; }
    [[nodiscard]] std::size_t size() const { return map.size(); }
    bool operator==(const Homomorphism&) const = default;
};

/// An equivalence relation stored as a canonical block assignment: blocks are
/// numbered in order of their least element.
class Congruence {
  public:
    Congruence() = default;
    /// Canonicalizes an arbitrary block labelling.
    explicit Congruence(std::span<const Element> block_labels);

    static Congruence identity(std::size_t n);
    static Congruence full(std::size_t n);

    [[nodiscard]] std::size_t size() const { return block_of_.size(); }
    [[nodiscard]] std::size_t block_count() const { return block_count_; }
    [[nodiscard]] Element block(Element x) const { return block_of_[x]; }
    [[nodiscard]] const std::vector<Element>& block_assignment() const { return block_of_; }
    [[nodiscard]] bool related(Element a, Element b) const { return block_of_[a] == block_of_[b]; }
    [[nodiscard]] std::vector<std::vector<Element>> blocks() const;
    /// Non-reflexive related pairs (a, b) with a < b.
    [[nodiscard]] std::vector<std::pair<Element, Element>> pairs() const;
    [[nodiscard]] bool is_identity() const { return block_count_ == block_of_.size(); }
    [[nodiscard]] bool is_full() const { return block_count_ <= 1; }
    /// True when every pair related here is related in `coarser`.
    [[nodiscard]] bool refines(const Congruence& coarser) const;
    /// Restriction to `members` (a subset of the universe), re-indexed by position.
    [[nodiscard]] Congruence restrict_to(std::span<const Element> members) const;

    bool operator==(const Congruence& other) const { return block_of_ == other.block_of_; }
    auto operator<=>(const Congruence& other) const { return block_of_ <=> other.block_of_; }

  private:
    std::vector<Element> block_of_;
    std::size_t block_count_ = 0;
};

// ---------------------------------------------------------------------------
// Operations

/// True iff `subset` is closed under every operation and contains all constants.
/// Throws InputError on out-of-range elements.
[[nodiscard]] bool is_subuniverse(const FiniteStructure& structure, std::span<const Element> subset);

struct InducedStructure {
    FiniteStructure structure;
    std::vector<Element> to_parent; // structure element i is parent element to_parent[i]
};

[[nodiscard]] InducedStructure induced_substructure(const SubUniverse& sub);

/// Universe pairs (i, j) are encoded as i * y.size() + j.
[[nodiscard]] FiniteStructure direct_product(const FiniteStructure& x, const FiniteStructure& y);

/// True iff every operation respects the partition.
[[nodiscard]] bool is_compatible(const FiniteStructure& structure, const Congruence& theta);

struct Quotient {
    FiniteStructure structure;
    Homomorphism map; // element -> block
};

/// Throws InputError when theta is not a congruence of structure.
[[nodiscard]] Quotient quotient(const FiniteStructure& structure, const Congruence& theta);

} // namespace subindep
