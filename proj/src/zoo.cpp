#include "subindep/zoo.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "subindep/error.hpp"

namespace subindep::zoo {

namespace {

constexpr std::size_t kMaxAlgebraSize = 256;
constexpr std::size_t kMaxSetSize = 4096;
constexpr std::size_t kMaxBooleanCoproductAtoms = 6;

void require_size(std::size_t n, std::size_t cap, const char* family) {
    if (n == 0) throw InputError(std::string(family) + ": size must be positive");
    if (n > cap) {
        throw InputError(std::string(family) + ": size " + std::to_string(n) + " exceeds the cap of " +
                         std::to_string(cap));
    }
}

bool is_prime(unsigned p) {
    if (p < 2) return false;
    for (unsigned d = 2; d * d <= p; ++d) {
        if (p % d == 0) return false;
    }
    return true;
}

std::vector<Element> binary_table(std::size_t n, const auto& f) {
    std::vector<Element> t;
    t.reserve(n * n);
    for (Element x = 0; x < n; ++x) {
        for (Element y = 0; y < n; ++y) t.push_back(static_cast<Element>(f(x, y)));
    }
    return t;
}

std::vector<Element> unary_table(std::size_t n, const auto& f) {
    std::vector<Element> t;
    t.reserve(n);
    for (Element x = 0; x < n; ++x) t.push_back(static_cast<Element>(f(x)));
    return t;
}

Built make_group(std::size_t n, std::vector<Element> mul, Element unit, std::vector<std::string> labels,
                 Category kind) {
    std::vector<Element> inv(n, kNoElement);
    for (Element x = 0; x < n; ++x) {
        for (Element y = 0; y < n; ++y) {
            if (mul[x * n + y] == unit) {
                inv[x] = y;
                break;
            }
        }
        if (inv[x] == kNoElement) throw InputError("group builder: element without inverse");
    }
    StructureDraft d{group_signature(), n, {std::move(mul), std::move(inv), {unit}}, {}, std::move(labels)};
    Built built{FiniteStructure(std::move(d)), CategoryTag{kind}};
    const auto failure =
        kind == Category::abelian_group ? abelian_group_law_failure(built.structure) : group_law_failure(built.structure);
    if (failure) throw InputError("group builder: " + *failure);
    return built;
}

std::string cycle_label(const std::vector<Element>& perm) {
    std::string out;
    std::vector<bool> seen(perm.size(), false);
    const bool spaced = perm.size() > 9;
    for (Element start = 0; start < perm.size(); ++start) {
        if (seen[start] || perm[start] == start) continue;
        out += '(';
        Element x = start;
        bool first = true;
        while (!seen[x]) {
            seen[x] = true;
            if (!first && spaced) out += ' ';
            out += std::to_string(x + 1);
            first = false;
            x = perm[x];
        }
        out += ')';
    }
    return out.empty() ? "()" : out;
}

std::vector<std::vector<Element>> permutations(std::size_t n) {
    std::vector<Element> p(n);
    std::iota(p.begin(), p.end(), Element{0});
    std::vector<std::vector<Element>> all;
    do {
        all.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return all;
}

bool is_even(const std::vector<Element>& perm) {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        for (std::size_t j = i + 1; j < perm.size(); ++j) inversions += perm[i] > perm[j];
    }
    return inversions % 2 == 0;
}

Built permutation_group(std::size_t n, bool even_only) {
    std::vector<std::vector<Element>> perms;
    for (auto& p : permutations(n)) {
        if (!even_only || is_even(p)) perms.push_back(std::move(p));
    }
    std::map<std::vector<Element>, Element> index;
    for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<Element>(i);
    const std::size_t size = perms.size();
    auto mul = binary_table(size, [&](Element s, Element t) {
        std::vector<Element> c(n);
        for (std::size_t i = 0; i < n; ++i) c[i] = perms[s][perms[t][i]];
        return index.at(c);
    });
    std::vector<std::string> labels;
    for (const auto& p : perms) labels.push_back(cycle_label(p));
    return make_group(size, std::move(mul), 0, std::move(labels), n <= 2 || (even_only && n <= 3) ? Category::abelian_group : Category::group);
}

std::optional<std::size_t> op_named(const FiniteStructure& s, std::string_view name, std::size_t arity) {
    auto i = s.signature().find_op(name);
    if (!i || s.signature().ops()[*i].arity != arity) return std::nullopt;
    return i;
}

Element constant_named(const FiniteStructure& s, std::string_view name) {
    return s.table(s.signature().op_index(name))[0];
}

std::vector<Element> boolean_atoms(const FiniteStructure& s) {
    const std::size_t meet = s.signature().op_index(names::meet);
    const Element zero = constant_named(s, names::bottom);
    std::vector<Element> atoms;
    for (Element a = 0; a < s.size(); ++a) {
        if (a == zero) continue;
        bool minimal = true;
        for (Element b = 0; b < s.size() && minimal; ++b) {
            if (b != zero && b != a && s.apply(meet, {b, a}) == b) minimal = false;
        }
        if (minimal) atoms.push_back(a);
    }
    return atoms;
}

} // namespace

// ---------------------------------------------------------------------------
// Tags and signatures

std::string to_string(const CategoryTag& tag) {
    switch (tag.kind) {
    case Category::set: return "set";
    case Category::graph: return "graph";
    case Category::abelian_group: return "abelian_group";
    case Category::group: return "group";
    case Category::boolean_algebra: return "boolean_algebra";
    case Category::vector_space: return "vector_space:" + std::to_string(tag.prime);
    }
    return "unknown";
}

CategoryTag parse_category(std::string_view text) {
    if (text == "set") return {Category::set};
    if (text == "graph") return {Category::graph};
    if (text == "abelian_group") return {Category::abelian_group};
    if (text == "group") return {Category::group};
    if (text == "boolean_algebra") return {Category::boolean_algebra};
    constexpr std::string_view vs = "vector_space:";
    if (text.substr(0, vs.size()) == vs) {
        const std::string digits(text.substr(vs.size()));
        unsigned p = 0;
        try {
            p = static_cast<unsigned>(std::stoul(digits));
        } catch (const std::exception&) {
            throw InputError("category: bad prime in '" + std::string(text) + "'");
        }
        if (!is_prime(p)) throw InputError("category: vector_space prime must be a prime >= 2");
        return {Category::vector_space, p};
    }
    throw InputError("unknown category '" + std::string(text) + "'");
}

Signature group_signature() {
    return Signature({{std::string(names::mul), 2}, {std::string(names::inv), 1}, {std::string(names::unit), 0}}, {});
}

Signature boolean_signature() {
    return Signature({{std::string(names::join), 2},
                      {std::string(names::meet), 2},
                      {std::string(names::complement), 1},
                      {std::string(names::bottom), 0},
                      {std::string(names::top), 0}},
                     {});
}

Signature vector_space_signature(unsigned p) {
    std::vector<Symbol> ops{{std::string(names::add), 2}, {std::string(names::neg), 1}, {std::string(names::zero), 0}};
    for (unsigned c = 0; c < p; ++c) ops.push_back({std::string(names::scalar_prefix) + std::to_string(c), 1});
    return Signature(std::move(ops), {});
}

Signature graph_signature() { return Signature({}, {{std::string(names::edge), 2}}); }

// ---------------------------------------------------------------------------
// Laws

std::optional<std::string> group_law_failure(const FiniteStructure& s) {
    const auto mul = op_named(s, names::mul, 2);
    const auto inv = op_named(s, names::inv, 1);
    const auto unit = op_named(s, names::unit, 0);
    if (!mul || !inv || !unit) return "signature lacks mul/2, inv/1, e/0";
    const Element e = s.table(*unit)[0];
    const std::size_t n = s.size();
    for (Element x = 0; x < n; ++x) {
        if (s.apply(*mul, {e, x}) != x || s.apply(*mul, {x, e}) != x) return "identity law fails at " + s.label(x);
        const Element xi = s.apply(*inv, {x});
        if (s.apply(*mul, {x, xi}) != e || s.apply(*mul, {xi, x}) != e) return "inverse law fails at " + s.label(x);
        for (Element y = 0; y < n; ++y) {
            const Element xy = s.apply(*mul, {x, y});
            for (Element z = 0; z < n; ++z) {
                if (s.apply(*mul, {xy, z}) != s.apply(*mul, {x, s.apply(*mul, {y, z})})) return "associativity fails";
            }
        }
    }
    return std::nullopt;
}

std::optional<std::string> abelian_group_law_failure(const FiniteStructure& s) {
    if (auto f = group_law_failure(s)) return f;
    const std::size_t mul = s.signature().op_index(names::mul);
    for (Element x = 0; x < s.size(); ++x) {
        for (Element y = 0; y < s.size(); ++y) {
            if (s.apply(mul, {x, y}) != s.apply(mul, {y, x})) return "commutativity fails";
        }
    }
    return std::nullopt;
}

std::optional<std::string> boolean_law_failure(const FiniteStructure& s) {
    const auto join = op_named(s, names::join, 2);
    const auto meet = op_named(s, names::meet, 2);
    const auto compl_ = op_named(s, names::complement, 1);
    const auto zero = op_named(s, names::bottom, 0);
    const auto one = op_named(s, names::top, 0);
    if (!join || !meet || !compl_ || !zero || !one) return "signature lacks join, meet, compl, zero, one";
    const Element z = s.table(*zero)[0];
    const Element o = s.table(*one)[0];
    auto J = [&](Element a, Element b) { return s.apply(*join, {a, b}); };
    auto M = [&](Element a, Element b) { return s.apply(*meet, {a, b}); };
    for (Element x = 0; x < s.size(); ++x) {
        const Element c = s.apply(*compl_, {x});
        if (J(x, c) != o || M(x, c) != z) return "complement law fails at " + s.label(x);
        if (J(x, z) != x || M(x, o) != x) return "bound law fails at " + s.label(x);
        for (Element y = 0; y < s.size(); ++y) {
            if (J(x, y) != J(y, x) || M(x, y) != M(y, x)) return "commutativity fails";
            if (J(x, M(x, y)) != x || M(x, J(x, y)) != x) return "absorption fails";
            for (Element w = 0; w < s.size(); ++w) {
                if (J(J(x, y), w) != J(x, J(y, w)) || M(M(x, y), w) != M(x, M(y, w))) return "associativity fails";
                if (M(x, J(y, w)) != J(M(x, y), M(x, w))) return "distributivity fails";
            }
        }
    }
    return std::nullopt;
}

std::optional<std::string> vector_space_law_failure(const FiniteStructure& s, unsigned p) {
    const auto add = op_named(s, names::add, 2);
    const auto neg = op_named(s, names::neg, 1);
    const auto zero = op_named(s, names::zero, 0);
    if (!add || !neg || !zero) return "signature lacks add/2, neg/1, zero/0";
    std::vector<std::size_t> smul;
    for (unsigned c = 0; c < p; ++c) {
        auto i = op_named(s, std::string(names::scalar_prefix) + std::to_string(c), 1);
        if (!i) return "signature lacks scalar operation smul" + std::to_string(c);
        smul.push_back(*i);
    }
    const Element z = s.table(*zero)[0];
    auto A = [&](Element a, Element b) { return s.apply(*add, {a, b}); };
    auto S = [&](unsigned c, Element a) { return s.apply(smul[c % p], {a}); };
    for (Element x = 0; x < s.size(); ++x) {
        if (A(x, z) != x || A(x, s.apply(*neg, {x})) != z) return "additive group law fails at " + s.label(x);
        if (S(1, x) != x) return "unit scalar law fails";
        for (Element y = 0; y < s.size(); ++y) {
            if (A(x, y) != A(y, x)) return "commutativity fails";
            for (Element w = 0; w < s.size(); ++w) {
                if (A(A(x, y), w) != A(x, A(y, w))) return "associativity fails";
            }
            for (unsigned c = 0; c < p; ++c) {
                if (S(c, A(x, y)) != A(S(c, x), S(c, y))) return "scalar distributivity fails";
            }
        }
        for (unsigned a = 0; a < p; ++a) {
            for (unsigned b = 0; b < p; ++b) {
                if (S((a + b) % p, x) != A(S(a, x), S(b, x))) return "scalar addition law fails";
                if (S((a * b) % p, x) != S(a, S(b, x))) return "scalar multiplication law fails";
            }
        }
    }
    return std::nullopt;
}

void require_group(const FiniteStructure& s) {
    if (auto f = group_law_failure(s)) throw InputError("not a group: " + *f);
}

void require_boolean_algebra(const FiniteStructure& s) {
    if (auto f = boolean_law_failure(s)) throw InputError("not a Boolean algebra: " + *f);
}

std::optional<std::string> category_law_failure(const CategoryTag& tag, const FiniteStructure& s) {
    switch (tag.kind) {
    case Category::set:
        if (!s.signature().empty()) return std::string("sets have the empty signature");
        return std::nullopt;
    case Category::graph:
        if (!s.signature().ops().empty()) return std::string("graphs have no operations");
        return std::nullopt;
    case Category::abelian_group: return abelian_group_law_failure(s);
    case Category::group: return group_law_failure(s);
    case Category::boolean_algebra: return boolean_law_failure(s);
    case Category::vector_space: return vector_space_law_failure(s, tag.prime);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Builders

Built empty_sig_set(std::size_t n) {
    require_size(n, kMaxSetSize, "empty_sig_set");
    return {FiniteStructure(StructureDraft{Signature{}, n, {}, {}, {}}), CategoryTag{Category::set}};
}

Built cyclic_group(std::size_t n) {
    require_size(n, kMaxAlgebraSize, "cyclic_group");
    return make_group(n, binary_table(n, [n](Element x, Element y) { return (x + y) % n; }), 0, {},
                      Category::abelian_group);
}

Built symmetric_group(std::size_t n) {
    if (n == 0 || n > 5) throw InputError("symmetric_group: n must be in 1..5");
    return permutation_group(n, false);
}

Built alternating_group(std::size_t n) {
    if (n == 0 || n > 5) throw InputError("alternating_group: n must be in 1..5");
    return permutation_group(n, true);
}

Built dihedral_group(std::size_t n) {
    if (n == 0 || 2 * n > kMaxAlgebraSize) throw InputError("dihedral_group: n out of range");
    const std::size_t size = 2 * n;
    auto mul = binary_table(size, [n](Element x, Element y) {
        const std::size_t i = x % n, a = x / n, k = y % n, b = y / n;
        const std::size_t rot = a == 0 ? (i + k) % n : (i + n - k) % n;
        return rot + n * ((a + b) % 2);
    });
    std::vector<std::string> labels;
    for (std::size_t j = 0; j < 2; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            std::string l = i == 0 ? "" : (i == 1 ? "r" : "r^" + std::to_string(i));
            if (j == 1) l += "s";
            labels.push_back(l.empty() ? "e" : l);
        }
    }
    return make_group(size, std::move(mul), 0, std::move(labels),
                      n <= 2 ? Category::abelian_group : Category::group);
}

Built quaternion_group() {
    // Unit u in {1, i, j, k} with sign bit: index u + 4 * negative.
    static constexpr int unit_product[4][4][2] = {
        {{0, 0}, {1, 0}, {2, 0}, {3, 0}},
        {{1, 0}, {0, 1}, {3, 0}, {2, 1}},
        {{2, 0}, {3, 1}, {0, 1}, {1, 0}},
        {{3, 0}, {2, 0}, {1, 1}, {0, 1}},
    };
    auto mul = binary_table(8, [](Element x, Element y) {
        const auto& [u, neg] = unit_product[x % 4][y % 4];
        const int sign = (neg + static_cast<int>(x / 4) + static_cast<int>(y / 4)) % 2;
        return static_cast<Element>(u + 4 * sign);
    });
    std::vector<std::string> labels{"1", "i", "j", "k", "-1", "-i", "-j", "-k"};
    return make_group(8, std::move(mul), 0, std::move(labels), Category::group);
}

namespace {

Built powerset_unchecked(std::size_t atoms) {
    const std::size_t n = std::size_t{1} << atoms;
    const Element mask = static_cast<Element>(n - 1);
    std::vector<std::string> labels;
    for (Element x = 0; x < n; ++x) {
        std::string l = "{";
        bool first = true;
        for (std::size_t a = 0; a < atoms; ++a) {
            if ((x >> a) & 1U) {
                l += (first ? "" : ",") + std::to_string(a + 1);
                first = false;
            }
        }
        labels.push_back(l + "}");
    }
    StructureDraft d{boolean_signature(),
                     n,
                     {binary_table(n, [](Element x, Element y) { return x | y; }),
                      binary_table(n, [](Element x, Element y) { return x & y; }),
                      unary_table(n, [mask](Element x) { return ~x & mask; }),
                      {0},
                      {mask}},
                     {},
                     std::move(labels)};
    return {FiniteStructure(std::move(d)), CategoryTag{Category::boolean_algebra}};
}

} // namespace

Built powerset_boolean_algebra(std::size_t atoms) {
    if (atoms > 5) throw InputError("powerset_boolean_algebra: at most 5 atoms");
    Built built = powerset_unchecked(atoms);
    if (auto f = boolean_law_failure(built.structure)) throw InputError("powerset_boolean_algebra: " + *f);
    return built;
}

Built vector_space(unsigned p, std::size_t dim) {
    if (!is_prime(p)) throw InputError("vector_space: p must be prime");
    std::size_t n = 1;
    for (std::size_t i = 0; i < dim; ++i) {
        n *= p;
        if (n > 64) throw InputError("vector_space: p^dim must be at most 64");
    }
    auto digits = [p, dim](Element x) {
        std::vector<unsigned> d(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            d[i] = x % p;
            x /= p;
        }
        return d;
    };
    auto encode = [p](const std::vector<unsigned>& d) {
        Element x = 0;
        for (std::size_t i = d.size(); i-- > 0;) x = x * p + d[i];
        return x;
    };
    StructureDraft d;
    d.sig = vector_space_signature(p);
    d.size = n;
    d.op_tables.push_back(binary_table(n, [&](Element x, Element y) {
        auto a = digits(x), b = digits(y);
        for (std::size_t i = 0; i < dim; ++i) a[i] = (a[i] + b[i]) % p;
        return encode(a);
    }));
    d.op_tables.push_back(unary_table(n, [&](Element x) {
        auto a = digits(x);
        for (auto& v : a) v = (p - v) % p;
        return encode(a);
    }));
    d.op_tables.push_back({0});
    for (unsigned c = 0; c < p; ++c) {
        d.op_tables.push_back(unary_table(n, [&](Element x) {
            auto a = digits(x);
            for (auto& v : a) v = (v * c) % p;
            return encode(a);
        }));
    }
    for (Element x = 0; x < n; ++x) {
        std::string l = "(";
        const auto a = digits(x);
        for (std::size_t i = 0; i < dim; ++i) l += (i ? "," : "") + std::to_string(a[i]);
        d.labels.push_back(l + ")");
    }
    Built built{FiniteStructure(std::move(d)), CategoryTag{Category::vector_space, p}};
    if (auto f = vector_space_law_failure(built.structure, p)) throw InputError("vector_space: " + *f);
    return built;
}

Built graph(std::size_t n, std::span<const ElementPair> edges) {
    require_size(n, kMaxSetSize, "graph");
    std::vector<Tuple> tuples;
    for (const auto& [u, v] : edges) tuples.push_back({u, v});
    return {FiniteStructure(StructureDraft{graph_signature(), n, {}, {std::move(tuples)}, {}}),
            CategoryTag{Category::graph}};
}

std::vector<std::string> family_names() {
    return {"empty_sig_set", "cyclic_group", "symmetric_group", "alternating_group", "dihedral_group",
            "quaternion_group", "powerset_boolean_algebra", "vector_space", "graph", "rigid_graph"};
}

Built build(std::string_view family, std::span<const long long> params, std::span<const ElementPair> edges) {
    auto param = [&](std::size_t i, const char* what) -> long long {
        if (i >= params.size()) throw InputError(std::string(family) + ": missing parameter " + what);
        if (params[i] < 0) throw InputError(std::string(family) + ": parameter " + what + " must be non-negative");
        return params[i];
    };
    auto expect = [&](std::size_t count) {
        if (params.size() > count) throw InputError(std::string(family) + ": too many parameters");
    };
    if (family == "empty_sig_set") {
        expect(1);
        return empty_sig_set(static_cast<std::size_t>(param(0, "n")));
    }
    if (family == "cyclic_group") {
        expect(1);
        return cyclic_group(static_cast<std::size_t>(param(0, "n")));
    }
    if (family == "symmetric_group") {
        expect(1);
        return symmetric_group(static_cast<std::size_t>(param(0, "n")));
    }
    if (family == "alternating_group") {
        expect(1);
        return alternating_group(static_cast<std::size_t>(param(0, "n")));
    }
    if (family == "dihedral_group") {
        expect(1);
        return dihedral_group(static_cast<std::size_t>(param(0, "n")));
    }
    if (family == "quaternion_group") {
        expect(0);
        return quaternion_group();
    }
    if (family == "powerset_boolean_algebra") {
        expect(1);
        return powerset_boolean_algebra(static_cast<std::size_t>(param(0, "atoms")));
    }
    if (family == "vector_space") {
        expect(2);
        return vector_space(static_cast<unsigned>(param(0, "p")), static_cast<std::size_t>(param(1, "dim")));
    }
    if (family == "graph") {
        expect(1);
        return graph(static_cast<std::size_t>(param(0, "n")), edges);
    }
    if (family == "rigid_graph") {
        expect(2);
        const auto n = static_cast<std::size_t>(param(0, "n"));
        const std::uint64_t seed = params.size() > 1 ? static_cast<std::uint64_t>(param(1, "seed")) : kDefaultSeed;
        return {find_rigid_graph(n, seed), CategoryTag{Category::graph}};
    }
    throw InputError("unknown family '" + std::string(family) + "'");
}

// ---------------------------------------------------------------------------
// Coproducts

HomMode category_mode(const CategoryTag& tag) {
    return tag.kind == Category::graph ? HomMode::weak : HomMode::strong;
}

namespace {

void require_category(const CategoryTag& tag, const FiniteStructure& s, const char* which) {
    if (auto f = category_law_failure(tag, s)) {
        throw InputError(std::string("coproduct: ") + which + " is not in category " + to_string(tag) + ": " + *f);
    }
}

std::string_view unit_name(const CategoryTag& tag) {
    return tag.kind == Category::vector_space ? names::zero : names::unit;
}

} // namespace

std::size_t coproduct_size(const CategoryTag& tag, const FiniteStructure& x, const FiniteStructure& y) {
    switch (tag.kind) {
    case Category::set:
    case Category::graph: return x.size() + y.size();
    case Category::abelian_group:
    case Category::vector_space: return x.size() * y.size();
    case Category::boolean_algebra: {
        const std::size_t atoms = boolean_atoms(x).size() * boolean_atoms(y).size();
        if (atoms >= 63) throw ResourceError("boolean coproduct too large");
        return std::size_t{1} << atoms;
    }
    case Category::group: break;
    }
    throw UnsupportedError("coproduct of groups is the free product, which is infinite for non-trivial factors");
}

Coproduct coproduct(const CategoryTag& tag, const FiniteStructure& x, const FiniteStructure& y) {
    if (tag.kind == Category::group) {
        throw UnsupportedError("coproduct of groups is the free product, which is infinite for non-trivial factors");
    }
    if (!(x.signature() == y.signature())) throw InputError("coproduct: signature mismatch");
    require_category(tag, x, "first argument");
    require_category(tag, y, "second argument");
    const HomMode mode = category_mode(tag);

    switch (tag.kind) {
    case Category::set:
    case Category::graph: {
        StructureDraft d{x.signature(), x.size() + y.size(), {}, {}, {}};
        const auto shift = static_cast<Element>(x.size());
        for (std::size_t r = 0; r < x.signature().rels().size(); ++r) {
            std::vector<Tuple> tuples = x.relation(r).tuples();
            for (auto t : y.relation(r).tuples()) {
                for (auto& v : t) v += shift;
                tuples.push_back(std::move(t));
            }
            d.relations.push_back(std::move(tuples));
        }
        Homomorphism left{{}, mode};
        Homomorphism right{{}, mode};
        for (Element i = 0; i < x.size(); ++i) left.map.push_back(i);
        for (Element j = 0; j < y.size(); ++j) right.map.push_back(shift + j);
        return {FiniteStructure(std::move(d)), std::move(left), std::move(right)};
    }
    case Category::abelian_group:
    case Category::vector_space: {
        FiniteStructure sum = direct_product(x, y);
        const Element ex = constant_named(x, unit_name(tag));
        const Element ey = constant_named(y, unit_name(tag));
        const auto ny = static_cast<Element>(y.size());
        Homomorphism left{{}, mode};
        Homomorphism right{{}, mode};
        for (Element i = 0; i < x.size(); ++i) left.map.push_back(i * ny + ey);
        for (Element j = 0; j < y.size(); ++j) right.map.push_back(ex * ny + j);
        return {std::move(sum), std::move(left), std::move(right)};
    }
    case Category::boolean_algebra: {
        const auto ax = boolean_atoms(x);
        const auto ay = boolean_atoms(y);
        const std::size_t atoms = ax.size() * ay.size();
        if (atoms > kMaxBooleanCoproductAtoms) {
            throw ResourceError("boolean coproduct would have " + std::to_string(atoms) + " atoms; the cap is " +
                                std::to_string(kMaxBooleanCoproductAtoms));
        }
        Built sum = powerset_unchecked(atoms);
        const std::size_t mx = x.signature().op_index(names::meet);
        const std::size_t my = y.signature().op_index(names::meet);
        Homomorphism left{{}, mode};
        Homomorphism right{{}, mode};
        for (Element a = 0; a < x.size(); ++a) {
            Element bits = 0;
            for (std::size_t i = 0; i < ax.size(); ++i) {
                if (x.apply(mx, {ax[i], a}) != ax[i]) continue;
                for (std::size_t j = 0; j < ay.size(); ++j) bits |= Element{1} << (i * ay.size() + j);
            }
            left.map.push_back(bits);
        }
        for (Element b = 0; b < y.size(); ++b) {
            Element bits = 0;
            for (std::size_t j = 0; j < ay.size(); ++j) {
                if (y.apply(my, {ay[j], b}) != ay[j]) continue;
                for (std::size_t i = 0; i < ax.size(); ++i) bits |= Element{1} << (i * ay.size() + j);
            }
            right.map.push_back(bits);
        }
        return {std::move(sum.structure), std::move(left), std::move(right)};
    }
    case Category::group: break;
    }
    throw UnsupportedError("unsupported category");
}

CanonicalQuotient canonical_quotient(const FiniteStructure& parent, const SubUniverse& a, const SubUniverse& b,
                                     const CategoryTag& tag) {
    if (&a.parent() != &parent || &b.parent() != &parent) {
        throw InputError("canonical quotient: subuniverses belong to a different parent");
    }
    const InducedStructure sa = induced_substructure(a);
    const InducedStructure sb = induced_substructure(b);
    Coproduct cop = coproduct(tag, sa.structure, sb.structure);
    SubUniverse j = join(parent, a, b).sub;
    InducedStructure sj = induced_substructure(j);

    std::vector<ElementPair> seed;
    for (Element i = 0; i < a.size(); ++i) seed.emplace_back(cop.embed_left(i), *j.index_of(a.members()[i]));
    for (Element i = 0; i < b.size(); ++i) seed.emplace_back(cop.embed_right(i), *j.index_of(b.members()[i]));
    const auto graph = generated_relation(cop.structure, sj.structure, seed);

    Homomorphism q{std::vector<Element>(cop.structure.size(), kNoElement), category_mode(tag)};
    for (const auto& [c, t] : graph) {
        if (q.map[c] != kNoElement && q.map[c] != t) {
            throw InputError("canonical quotient: the induced map is not well-defined; the join is not in category " +
                             to_string(tag));
        }
        q.map[c] = t;
    }
    for (Element v : q.map) {
        if (v == kNoElement) throw InputError("canonical quotient: coproduct not generated by the embedded summands");
    }
    return {std::move(cop), std::move(j), std::move(sj.structure), std::move(q)};
}

bool verify_coproduct_property(const CategoryTag& tag, const FiniteStructure& x, const FiniteStructure& y,
                               const FiniteStructure& cop, const Homomorphism& e_a, const Homomorphism& e_b,
                               std::span<const FiniteStructure> targets) {
    const HomMode mode = category_mode(tag);
    if (!is_homomorphism(x, cop, e_a.map, mode) || !is_homomorphism(y, cop, e_b.map, mode)) return false;
    for (const auto& target : targets) {
        if (!(target.signature() == cop.signature())) throw InputError("coproduct property: target signature mismatch");
        std::map<std::pair<std::vector<Element>, std::vector<Element>>, std::size_t> mediating;
        enumerate_homs(cop, target, mode, [&](const Homomorphism& g) {
            std::vector<Element> ga;
            std::vector<Element> gb;
            for (Element v : e_a.map) ga.push_back(g(v));
            for (Element v : e_b.map) gb.push_back(g(v));
            ++mediating[{std::move(ga), std::move(gb)}];
            return true;
        });
        const auto fas = all_homs(x, target, mode);
        const auto fbs = all_homs(y, target, mode);
        for (const auto& fa : fas) {
            for (const auto& fb : fbs) {
                auto it = mediating.find({fa.map, fb.map});
                if (it == mediating.end() || it->second != 1) return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Rigid graphs

FiniteStructure find_rigid_graph(std::size_t n, std::uint64_t seed) {
    if (n < 2 || n > 16) throw InputError("rigid_graph: n must be in 2..16");
    std::mt19937_64 rng(seed);
    for (std::size_t attempt = 0; attempt < 100000; ++attempt) {
        std::vector<ElementPair> edges;
        for (Element u = 0; u < n; ++u) {
            for (Element v = 0; v < n; ++v) {
                if (u != v && rng() % 100 < 35) edges.emplace_back(u, v);
            }
        }
        FiniteStructure g = graph(n, edges).structure;
        std::size_t count = 0;
        enumerate_homs(g, g, HomMode::weak, [&](const Homomorphism&) { return ++count < 2; });
        if (count == 1) return g;
    }
    throw ResourceError("rigid_graph: no rigid graph found in 100000 attempts");
}

const RigidCertificate& frozen_rigid_graph() {
    // Output of find_rigid_graph(8, kDefaultSeed); the search test re-derives it.
    static const RigidCertificate certificate{
        8,
        {{0, 1}, {0, 3}, {1, 4}, {1, 7}, {2, 1}, {2, 6}, {3, 0}, {3, 1}, {3, 2}, {4, 1},
         {4, 5}, {4, 7}, {5, 0}, {5, 2}, {5, 4}, {5, 7}, {6, 0}, {6, 5}, {7, 2}},
        kDefaultSeed,
        1,
    };
    return certificate;
}

FiniteStructure certificate_graph(const RigidCertificate& certificate) {
    return graph(certificate.vertices, certificate.edges).structure;
}

FiniteStructure overlapping_union(const FiniteStructure& g, std::size_t overlap) {
    if (!g.signature().ops().empty() || g.signature().rels().size() != 1) {
        throw InputError("overlapping_union: expects a graph");
    }
    if (overlap > g.size()) throw InputError("overlapping_union: overlap exceeds the vertex count");
    const auto shift = static_cast<Element>(g.size() - overlap);
    std::vector<Tuple> tuples = g.relation(0).tuples();
    for (auto t : g.relation(0).tuples()) {
        for (auto& v : t) v += shift;
        tuples.push_back(std::move(t));
    }
    return FiniteStructure(StructureDraft{g.signature(), 2 * g.size() - overlap, {}, {std::move(tuples)}, {}});
}

} // namespace subindep::zoo
