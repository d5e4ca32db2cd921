#include "subindep/structure.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>
#include <unordered_set>

#include "subindep/error.hpp"

namespace subindep {

namespace {

constexpr std::size_t kDenseRelationLimit = std::size_t{1} << 22;

std::string tuple_text(std::span<const Element> t) {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < t.size(); ++i) {
        out << (i ? "," : "") << t[i];
    }
    out << ')';
    return out.str();
}

} // namespace

// ---------------------------------------------------------------------------
// Signature

Signature::Signature(std::vector<Symbol> ops, std::vector<Symbol> rels)
    : ops_(std::move(ops)), rels_(std::move(rels)) {
    std::unordered_set<std::string> names;
    for (const auto& s : ops_) {
        if (s.name.empty()) throw InputError("signature: empty operation name");
        if (!names.insert(s.name).second) throw InputError("signature: duplicate symbol '" + s.name + "'");
    }
    for (const auto& s : rels_) {
        if (s.name.empty()) throw InputError("signature: empty relation name");
        if (s.arity == 0) throw InputError("signature: relation '" + s.name + "' has arity 0");
        if (!names.insert(s.name).second) throw InputError("signature: duplicate symbol '" + s.name + "'");
    }
}

std::optional<std::size_t> Signature::find_op(std::string_view name) const {
    for (std::size_t i = 0; i < ops_.size(); ++i) {
        if (ops_[i].name == name) return i;
    }
    return std::nullopt;
}

std::optional<std::size_t> Signature::find_rel(std::string_view name) const {
    for (std::size_t i = 0; i < rels_.size(); ++i) {
        if (rels_[i].name == name) return i;
    }
    return std::nullopt;
}

std::size_t Signature::op_index(std::string_view name) const {
    if (auto i = find_op(name)) return *i;
    throw InputError("signature has no operation '" + std::string(name) + "'");
}

std::size_t Signature::rel_index(std::string_view name) const {
    if (auto i = find_rel(name)) return *i;
    throw InputError("signature has no relation '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Tuples

std::size_t tuple_count(std::size_t size, std::size_t arity) {
    std::size_t n = 1;
    for (std::size_t i = 0; i < arity; ++i) {
        if (size != 0 && n > std::numeric_limits<std::uint32_t>::max() / size) {
            throw ResourceError("table of " + std::to_string(size) + "^" + std::to_string(arity) +
                                " entries exceeds 2^32");
        }
        n *= size;
    }
    return n;
}

std::size_t tuple_index(std::size_t size, std::span<const Element> tuple) {
    std::size_t index = 0;
    for (Element x : tuple) index = index * size + x;
    return index;
}

TupleOdometer::TupleOdometer(std::size_t size, std::size_t arity)
    : size_(size), current_(arity, 0), done_(size == 0 && arity > 0) {}

TupleOdometer& TupleOdometer::operator++() {
    for (std::size_t i = current_.size(); i-- > 0;) {
        if (++current_[i] < size_) return *this;
        current_[i] = 0;
    }
    done_ = true;
    return *this;
}

// ---------------------------------------------------------------------------
// RelationTable

RelationTable::RelationTable(std::size_t universe, std::size_t arity, std::vector<Tuple> tuples)
    : universe_(universe), arity_(arity), tuples_(std::move(tuples)) {
    std::sort(tuples_.begin(), tuples_.end());
    tuples_.erase(std::unique(tuples_.begin(), tuples_.end()), tuples_.end());
    const std::size_t cells = tuple_count(universe_, arity_);
    if (cells <= kDenseRelationLimit) {
        member_.assign(cells, false);
        for (const auto& t : tuples_) member_[tuple_index(universe_, t)] = true;
    }
}

bool RelationTable::contains(std::span<const Element> tuple) const {
    if (!member_.empty() || tuples_.empty()) {
        return !member_.empty() && member_[tuple_index(universe_, tuple)];
    }
    return std::binary_search(tuples_.begin(), tuples_.end(), tuple,
                              [](const auto& a, const auto& b) {
                                  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
                              });
}

// ---------------------------------------------------------------------------
// Validation

std::optional<Diagnostic> validate(const StructureDraft& d) {
    if (d.size == 0) return Diagnostic{"empty universe", "size must be positive"};
    const auto& ops = d.sig.ops();
    const auto& rels = d.sig.rels();
    if (d.op_tables.size() != ops.size()) {
        return Diagnostic{"non-total table", "expected " + std::to_string(ops.size()) + " operation tables, got " +
                                                 std::to_string(d.op_tables.size())};
    }
    for (std::size_t i = 0; i < ops.size(); ++i) {
        std::size_t expected = 0;
        try {
            expected = tuple_count(d.size, ops[i].arity);
        } catch (const ResourceError& e) {
            return Diagnostic{"table too large", "op '" + ops[i].name + "': " + e.what()};
        }
        const auto& table = d.op_tables[i];
        if (table.size() != expected) {
            return Diagnostic{"non-total table", "op '" + ops[i].name + "' has " + std::to_string(table.size()) +
                                                     " entries, expected " + std::to_string(expected)};
        }
        for (std::size_t j = 0; j < table.size(); ++j) {
            if (table[j] >= d.size) {
                return Diagnostic{"out-of-range entry", "op '" + ops[i].name + "' entry " + std::to_string(j) +
                                                            " is " + std::to_string(table[j]) + " >= size " +
                                                            std::to_string(d.size)};
            }
        }
    }
    if (d.relations.size() != rels.size()) {
        return Diagnostic{"relation count mismatch", "expected " + std::to_string(rels.size()) +
                                                         " relations, got " + std::to_string(d.relations.size())};
    }
    for (std::size_t i = 0; i < rels.size(); ++i) {
        for (std::size_t j = 0; j < d.relations[i].size(); ++j) {
            const auto& t = d.relations[i][j];
            if (t.size() != rels[i].arity) {
                return Diagnostic{"wrong tuple arity", "relation '" + rels[i].name + "' tuple " + std::to_string(j) +
                                                           " has length " + std::to_string(t.size())};
            }
            for (Element x : t) {
                if (x >= d.size) {
                    return Diagnostic{"out-of-range entry", "relation '" + rels[i].name + "' tuple " +
                                                                std::to_string(j) + " " + tuple_text(t)};
                }
            }
        }
    }
    if (!d.labels.empty() && d.labels.size() != d.size) {
        return Diagnostic{"label count mismatch",
                          std::to_string(d.labels.size()) + " labels for " + std::to_string(d.size) + " elements"};
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// FiniteStructure

namespace {

StructureDraft checked(StructureDraft d) {
    if (auto diag = validate(d)) throw InputError("invalid structure: " + diag->message());
    return d;
}

} // namespace

FiniteStructure::FiniteStructure(StructureDraft draft) : size_(0) {
    StructureDraft d = checked(std::move(draft));
    sig_ = std::move(d.sig);
    size_ = d.size;
    tables_ = std::move(d.op_tables);
    labels_ = std::move(d.labels);
    relations_.reserve(d.relations.size());
    for (std::size_t i = 0; i < d.relations.size(); ++i) {
        relations_.emplace_back(size_, sig_.rels()[i].arity, std::move(d.relations[i]));
    }
}

Element FiniteStructure::apply(std::size_t op, std::span<const Element> args) const {
    return tables_[op][tuple_index(size_, args)];
}

std::vector<Element> FiniteStructure::constants() const {
    std::vector<Element> out;
    for (std::size_t i = 0; i < sig_.ops().size(); ++i) {
        if (sig_.ops()[i].arity == 0) out.push_back(tables_[i][0]);
    }
    return out;
}

std::string FiniteStructure::label(Element x) const {
    if (x < labels_.size()) return labels_[x];
    return std::to_string(x);
}

std::optional<Element> FiniteStructure::find_label(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] == label) return static_cast<Element>(i);
    }
    return std::nullopt;
}

StructureDraft FiniteStructure::draft() const {
    StructureDraft d{sig_, size_, tables_, {}, labels_};
    for (const auto& r : relations_) d.relations.push_back(r.tuples());
    return d;
}

bool FiniteStructure::operator==(const FiniteStructure& other) const {
    return sig_ == other.sig_ && size_ == other.size_ && tables_ == other.tables_ &&
           relations_ == other.relations_;
}

// ---------------------------------------------------------------------------
// SubUniverse

SubUniverse::SubUniverse(const FiniteStructure& parent, std::vector<Element> members)
    : parent_(&parent), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (!is_subuniverse(parent, members_)) {
        throw InputError("subset is not closed under the operations of the parent structure");
    }
}

bool SubUniverse::contains(Element x) const {
    return std::binary_search(members_.begin(), members_.end(), x);
}

std::optional<std::size_t> SubUniverse::index_of(Element x) const {
    auto it = std::lower_bound(members_.begin(), members_.end(), x);
    if (it == members_.end() || *it != x) return std::nullopt;
    return static_cast<std::size_t>(it - members_.begin());
}

// ---------------------------------------------------------------------------
// Congruence

Congruence::Congruence(std::span<const Element> block_labels) : block_of_(block_labels.size()) {
    std::vector<std::pair<Element, Element>> seen; // label -> canonical id
    for (std::size_t i = 0; i < block_labels.size(); ++i) {
        auto it = std::find_if(seen.begin(), seen.end(), [&](const auto& p) { return p.first == block_labels[i]; });
        if (it == seen.end()) {
            seen.emplace_back(block_labels[i], static_cast<Element>(seen.size()));
            block_of_[i] = seen.back().second;
        } else {
            block_of_[i] = it->second;
        }
    }
    block_count_ = seen.size();
}

Congruence Congruence::identity(std::size_t n) {
    std::vector<Element> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<Element>(i);
    return Congruence(labels);
}

Congruence Congruence::full(std::size_t n) {
    std::vector<Element> labels(n, 0);
    return Congruence(labels);
}

std::vector<std::vector<Element>> Congruence::blocks() const {
    std::vector<std::vector<Element>> out(block_count_);
    for (std::size_t i = 0; i < block_of_.size(); ++i) out[block_of_[i]].push_back(static_cast<Element>(i));
    return out;
}

std::vector<std::pair<Element, Element>> Congruence::pairs() const {
    std::vector<std::pair<Element, Element>> out;
    for (Element a = 0; a < block_of_.size(); ++a) {
        for (Element b = a + 1; b < block_of_.size(); ++b) {
            if (block_of_[a] == block_of_[b]) out.emplace_back(a, b);
        }
    }
    return out;
}

bool Congruence::refines(const Congruence& coarser) const {
    if (coarser.size() != size()) return false;
    std::vector<Element> image(block_count_, kNoElement);
    for (std::size_t i = 0; i < block_of_.size(); ++i) {
        Element& slot = image[block_of_[i]];
        if (slot == kNoElement) {
            slot = coarser.block_of_[i];
        } else if (slot != coarser.block_of_[i]) {
            return false;
        }
    }
    return true;
}

Congruence Congruence::restrict_to(std::span<const Element> members) const {
    std::vector<Element> labels;
    labels.reserve(members.size());
    for (Element m : members) labels.push_back(block_of_.at(m));
    return Congruence(labels);
}

// ---------------------------------------------------------------------------
// Operations

bool is_subuniverse(const FiniteStructure& structure, std::span<const Element> subset) {
    std::vector<bool> in(structure.size(), false);
    for (Element x : subset) {
        if (x >= structure.size()) {
            throw InputError("element " + std::to_string(x) + " out of range for structure of size " +
                             std::to_string(structure.size()));
        }
        in[x] = true;
    }
    std::vector<Element> members;
    for (Element x = 0; x < structure.size(); ++x) {
        if (in[x]) members.push_back(x);
    }
    const auto& ops = structure.signature().ops();
    Tuple args;
    for (std::size_t op = 0; op < ops.size(); ++op) {
        const std::size_t k = ops[op].arity;
        if (k > 0 && members.empty()) continue;
        args.assign(k, 0);
        for (TupleOdometer it(members.size(), k); !it.done(); ++it) {
            for (std::size_t i = 0; i < k; ++i) args[i] = members[(*it)[i]];
            if (!in[structure.apply(op, args)]) return false;
        }
    }
    return true;
}

InducedStructure induced_substructure(const SubUniverse& sub) {
    const FiniteStructure& parent = sub.parent();
    const auto& members = sub.members();
    if (members.empty()) throw InputError("induced substructure of an empty subuniverse");
    std::vector<Element> to_local(parent.size(), kNoElement);
    for (std::size_t i = 0; i < members.size(); ++i) to_local[members[i]] = static_cast<Element>(i);

    StructureDraft d;
    d.sig = parent.signature();
    d.size = members.size();
    Tuple args;
    for (std::size_t op = 0; op < d.sig.ops().size(); ++op) {
        const std::size_t k = d.sig.ops()[op].arity;
        std::vector<Element> table;
        table.reserve(tuple_count(d.size, k));
        args.assign(k, 0);
        for (TupleOdometer it(d.size, k); !it.done(); ++it) {
            for (std::size_t i = 0; i < k; ++i) args[i] = members[(*it)[i]];
            const Element image = to_local[parent.apply(op, args)];
            if (image == kNoElement) throw InputError("induced substructure: subset is not closed");
            table.push_back(image);
        }
        d.op_tables.push_back(std::move(table));
    }
    for (std::size_t r = 0; r < d.sig.rels().size(); ++r) {
        std::vector<Tuple> tuples;
        for (const auto& t : parent.relation(r).tuples()) {
            Tuple local;
            for (Element x : t) {
                if (to_local[x] == kNoElement) break;
                local.push_back(to_local[x]);
            }
            if (local.size() == t.size()) tuples.push_back(std::move(local));
        }
        d.relations.push_back(std::move(tuples));
    }
    if (!parent.labels().empty()) {
        for (Element m : members) d.labels.push_back(parent.labels()[m]);
    }
    return {FiniteStructure(std::move(d)), members};
}

FiniteStructure direct_product(const FiniteStructure& x, const FiniteStructure& y) {
    if (!(x.signature() == y.signature())) throw InputError("direct product: signature mismatch");
    const std::size_t ny = y.size();
    StructureDraft d;
    d.sig = x.signature();
    d.size = tuple_count(x.size() * ny, 1);
    Tuple xs;
    Tuple ys;
    for (std::size_t op = 0; op < d.sig.ops().size(); ++op) {
        const std::size_t k = d.sig.ops()[op].arity;
        std::vector<Element> table;
        table.reserve(tuple_count(d.size, k));
        xs.assign(k, 0);
        ys.assign(k, 0);
        for (TupleOdometer it(d.size, k); !it.done(); ++it) {
            for (std::size_t i = 0; i < k; ++i) {
                xs[i] = static_cast<Element>((*it)[i] / ny);
                ys[i] = static_cast<Element>((*it)[i] % ny);
            }
            table.push_back(static_cast<Element>(x.apply(op, xs) * ny + y.apply(op, ys)));
        }
        d.op_tables.push_back(std::move(table));
    }
    for (std::size_t r = 0; r < d.sig.rels().size(); ++r) {
        std::vector<Tuple> tuples;
        for (const auto& tx : x.relation(r).tuples()) {
            for (const auto& ty : y.relation(r).tuples()) {
                Tuple t(tx.size());
                for (std::size_t i = 0; i < tx.size(); ++i) t[i] = static_cast<Element>(tx[i] * ny + ty[i]);
                tuples.push_back(std::move(t));
            }
        }
        d.relations.push_back(std::move(tuples));
    }
    if (!x.labels().empty() || !y.labels().empty()) {
        for (Element i = 0; i < x.size(); ++i) {
            for (Element j = 0; j < ny; ++j) d.labels.push_back("(" + x.label(i) + "," + y.label(j) + ")");
        }
    }
    return FiniteStructure(std::move(d));
}

bool is_compatible(const FiniteStructure& structure, const Congruence& theta) {
    if (theta.size() != structure.size()) return false;
    // Replacing one coordinate at a time by its block's least element suffices:
    // congruent tuples are connected by such single-coordinate moves.
    std::vector<Element> least(theta.block_count(), kNoElement);
    for (Element x = 0; x < structure.size(); ++x) {
        if (least[theta.block(x)] == kNoElement) least[theta.block(x)] = x;
    }
    const auto& ops = structure.signature().ops();
    for (std::size_t op = 0; op < ops.size(); ++op) {
        const std::size_t k = ops[op].arity;
        Tuple moved;
        for (TupleOdometer it(structure.size(), k); !it.done(); ++it) {
            const Element base = structure.apply(op, *it);
            for (std::size_t i = 0; i < k; ++i) {
                const Element rep = least[theta.block((*it)[i])];
                if (rep == (*it)[i]) continue;
                moved.assign((*it).begin(), (*it).end());
                moved[i] = rep;
                if (!theta.related(base, structure.apply(op, moved))) return false;
            }
        }
    }
    return true;
}

Quotient quotient(const FiniteStructure& structure, const Congruence& theta) {
    if (!is_compatible(structure, theta)) throw InputError("quotient: partition is not a congruence");
    const std::size_t blocks = theta.block_count();
    std::vector<Element> rep(blocks, kNoElement);
    for (Element x = 0; x < structure.size(); ++x) {
        if (rep[theta.block(x)] == kNoElement) rep[theta.block(x)] = x;
    }
    StructureDraft d;
    d.sig = structure.signature();
    d.size = blocks;
    Tuple args;
    for (std::size_t op = 0; op < d.sig.ops().size(); ++op) {
        const std::size_t k = d.sig.ops()[op].arity;
        std::vector<Element> table;
        args.assign(k, 0);
        for (TupleOdometer it(blocks, k); !it.done(); ++it) {
            for (std::size_t i = 0; i < k; ++i) args[i] = rep[(*it)[i]];
            table.push_back(theta.block(structure.apply(op, args)));
        }
        d.op_tables.push_back(std::move(table));
    }
    for (std::size_t r = 0; r < d.sig.rels().size(); ++r) {
        std::vector<Tuple> tuples;
        for (const auto& t : structure.relation(r).tuples()) {
            Tuple b;
            for (Element x : t) b.push_back(theta.block(x));
            tuples.push_back(std::move(b));
        }
        d.relations.push_back(std::move(tuples));
    }
    if (!structure.labels().empty()) {
        for (const auto& block : theta.blocks()) {
            std::string text = "{";
            for (std::size_t i = 0; i < block.size(); ++i) text += (i ? "," : "") + structure.label(block[i]);
            d.labels.push_back(text + "}");
        }
    }
    return {FiniteStructure(std::move(d)), Homomorphism{theta.block_assignment(), HomMode::weak}};
}

} // namespace subindep
