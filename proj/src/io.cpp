#include "subindep/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace subindep::io {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw ParseError(path + ": " + what); }

const json& field(const json& obj, const std::string& path, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(path, std::string("missing field \"") + key + "\"");
    return *it;
}

void only_keys(const json& obj, const std::string& path, std::initializer_list<std::string_view> keys) {
    for (const auto& [key, value] : obj.items()) {
        if (std::ranges::find(keys, key) == keys.end()) fail(path, "unknown field \"" + key + "\"");
    }
}

std::string as_string(const json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
}

std::uint64_t as_count(const json& v, const std::string& path) {
    if (!v.is_number_integer()) fail(path, "expected a non-negative integer");
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    const auto i = v.get<std::int64_t>();
    if (i < 0) fail(path, "expected a non-negative integer, got " + std::to_string(i));
    return static_cast<std::uint64_t>(i);
}

Element as_element(const json& v, const std::string& path, std::size_t size) {
    const std::uint64_t x = as_count(v, path);
    if (x >= size) fail(path, "element " + std::to_string(x) + " out of range for size " + std::to_string(size));
    return static_cast<Element>(x);
}

const json& as_array(const json& v, const std::string& path) {
    if (!v.is_array()) fail(path, "expected an array");
    return v;
}

std::string line_and_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

json pairs_json(std::span<const Element> domain, std::span<const Element> image) {
    json out = json::array();
    for (std::size_t i = 0; i < domain.size(); ++i) out.push_back({domain[i], image[i]});
    return out;
}

std::vector<Element> image_in_parent(const SubUniverse& s, const Homomorphism& h) {
    std::vector<Element> out;
    for (Element v : h.map) out.push_back(s.members()[v]);
    return out;
}

json blocks_json(const Congruence& theta, std::span<const Element> members) {
    json out = json::array();
    for (const auto& block : theta.blocks()) {
        json b = json::array();
        for (Element x : block) b.push_back(members[x]);
        out.push_back(std::move(b));
    }
    return out;
}

std::string tuple_text(const std::string& rel, const Tuple& t) {
    std::string out = rel + "(";
    for (std::size_t i = 0; i < t.size(); ++i) out += (i ? "," : "") + std::to_string(t[i]);
    return out + ")";
}

} // namespace

json to_json(const FiniteStructure& structure, std::string_view name) {
    const auto& sig = structure.signature();
    json doc;
    doc["name"] = std::string(name);
    doc["size"] = structure.size();
    doc["ops"] = json::array();
    for (std::size_t i = 0; i < sig.ops().size(); ++i) {
        doc["ops"].push_back({{"name", sig.ops()[i].name}, {"arity", sig.ops()[i].arity}, {"table", structure.table(i)}});
    }
    doc["rels"] = json::array();
    for (std::size_t i = 0; i < sig.rels().size(); ++i) {
        doc["rels"].push_back(
            {{"name", sig.rels()[i].name}, {"arity", sig.rels()[i].arity}, {"tuples", structure.relation(i).tuples()}});
    }
    if (!structure.labels().empty()) doc["labels"] = structure.labels();
    return doc;
}

std::string serialize(const FiniteStructure& structure, std::string_view name) {
    return to_json(structure, name).dump(2) + "\n";
}

NamedStructure from_json(const json& doc) {
    if (!doc.is_object()) fail("$", "expected an object");
    only_keys(doc, "$", {"name", "size", "ops", "rels", "labels"});
    NamedStructure out{"", FiniteStructure(StructureDraft{Signature{}, 1, {}, {}, {}})};
    if (doc.contains("name")) out.name = as_string(doc["name"], "name");

    const std::uint64_t size = as_count(field(doc, "$", "size"), "size");
    if (size == 0) fail("size", "universe must be non-empty");
    if (size > (std::uint64_t{1} << 31)) fail("size", "too large");

    std::vector<Symbol> ops;
    std::vector<Symbol> rels;
    StructureDraft draft;
    draft.size = static_cast<std::size_t>(size);
    if (doc.contains("ops")) {
        const json& arr = as_array(doc["ops"], "ops");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string path = "ops[" + std::to_string(i) + "]";
            if (!arr[i].is_object()) fail(path, "expected an object");
            only_keys(arr[i], path, {"name", "arity", "table"});
            const std::string name = as_string(field(arr[i], path, "name"), path + ".name");
            const std::uint64_t arity = as_count(field(arr[i], path, "arity"), path + ".arity");
            std::size_t expected = 0;
            try {
                expected = tuple_count(draft.size, static_cast<std::size_t>(arity));
            } catch (const ResourceError& e) {
                fail(path + ".table", e.what());
            }
            const json& table = as_array(field(arr[i], path, "table"), path + ".table");
            if (table.size() != expected) {
                fail(path + ".table", "non-total table: expected " + std::to_string(expected) + " entries, got " +
                                          std::to_string(table.size()));
            }
            std::vector<Element> entries;
            entries.reserve(table.size());
            for (std::size_t k = 0; k < table.size(); ++k) {
                entries.push_back(as_element(table[k], path + ".table[" + std::to_string(k) + "]", draft.size));
            }
            ops.push_back({name, static_cast<std::size_t>(arity)});
            draft.op_tables.push_back(std::move(entries));
        }
    }
    if (doc.contains("rels")) {
        const json& arr = as_array(doc["rels"], "rels");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string path = "rels[" + std::to_string(i) + "]";
            if (!arr[i].is_object()) fail(path, "expected an object");
            only_keys(arr[i], path, {"name", "arity", "tuples"});
            const std::string name = as_string(field(arr[i], path, "name"), path + ".name");
            const std::uint64_t arity = as_count(field(arr[i], path, "arity"), path + ".arity");
            if (arity == 0) fail(path + ".arity", "relation arity must be at least 1");
            const json& tuples = as_array(field(arr[i], path, "tuples"), path + ".tuples");
            std::vector<Tuple> rel;
            for (std::size_t k = 0; k < tuples.size(); ++k) {
                const std::string tpath = path + ".tuples[" + std::to_string(k) + "]";
                const json& t = as_array(tuples[k], tpath);
                if (t.size() != arity) {
                    fail(tpath, "wrong tuple arity: expected " + std::to_string(arity) + ", got " +
                                    std::to_string(t.size()));
                }
                Tuple tuple;
                for (std::size_t m = 0; m < t.size(); ++m) {
                    tuple.push_back(as_element(t[m], tpath + "[" + std::to_string(m) + "]", draft.size));
                }
                rel.push_back(std::move(tuple));
            }
            rels.push_back({name, static_cast<std::size_t>(arity)});
            draft.relations.push_back(std::move(rel));
        }
    }
    if (doc.contains("labels")) {
        const json& arr = as_array(doc["labels"], "labels");
        if (arr.size() != draft.size) {
            fail("labels", "expected " + std::to_string(draft.size) + " labels, got " + std::to_string(arr.size()));
        }
        for (std::size_t i = 0; i < arr.size(); ++i) {
            draft.labels.push_back(as_string(arr[i], "labels[" + std::to_string(i) + "]"));
        }
    }
    try {
        draft.sig = Signature(std::move(ops), std::move(rels));
    } catch (const InputError& e) {
        fail("$", e.what());
    }
    if (auto diag = validate(draft)) fail("$", diag->message());
    out.structure = FiniteStructure(std::move(draft));
    return out;
}

NamedStructure parse(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("syntax error at " + line_and_column(text, e.byte) + ": " + e.what());
    }
    return from_json(doc);
}

NamedStructure load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse(buffer.str());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void save(const std::filesystem::path& path, const FiniteStructure& structure, std::string_view name) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    out << serialize(structure, name);
}

std::vector<Element> parse_subset(std::string_view text, std::size_t size) {
    std::vector<Element> out;
    if (text.find_first_not_of(" \t") == std::string_view::npos) return out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view item = text.substr(start, end - start);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        std::uint64_t value = 0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
        if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
            throw InputError("bad element \"" + std::string(item) + "\" in subset \"" + std::string(text) + "\"");
        }
        if (value >= size) {
            throw InputError("element " + std::to_string(value) + " out of range for size " + std::to_string(size));
        }
        out.push_back(static_cast<Element>(value));
        start = end + 1;
    }
    return out;
}

std::vector<ElementPair> parse_edges(std::string_view text) {
    std::vector<ElementPair> out;
    if (text.empty()) return out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view item = text.substr(start, end - start);
        const std::size_t dash = item.find('-');
        Element u = 0;
        Element v = 0;
        bool ok = dash != std::string_view::npos;
        if (ok) {
            const auto r1 = std::from_chars(item.data(), item.data() + dash, u);
            const auto r2 = std::from_chars(item.data() + dash + 1, item.data() + item.size(), v);
            ok = dash > 0 && r1.ec == std::errc{} && r1.ptr == item.data() + dash && r2.ec == std::errc{} &&
                 r2.ptr == item.data() + item.size();
        }
        if (!ok) throw InputError("bad edge \"" + std::string(item) + "\"; expected u-v");
        out.emplace_back(u, v);
        start = end + 1;
    }
    return out;
}

std::string render_map(std::span<const Element> domain, std::span<const Element> image) {
    std::string out;
    for (std::size_t i = 0; i < domain.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(domain[i]) + " ↦ " + std::to_string(image[i]);
    }
    return out;
}

std::string render_blocks(const Congruence& theta, std::span<const Element> members) {
    std::string out;
    for (const auto& block : theta.blocks()) {
        if (!out.empty()) out += ' ';
        out += '{';
        for (std::size_t i = 0; i < block.size(); ++i) out += (i ? "," : "") + std::to_string(members[block[i]]);
        out += '}';
    }
    return out;
}

Report subalgebra_report(const JointExtender& context, const Verdict& verdict) {
    Report r;
    const auto& s = verdict.stats;
    r.json["verdict"] = verdict.independent;
    r.json["stats"] = {{"pairs_checked", s.pairs_checked},
                       {"endomorphisms_a", s.left_count},
                       {"endomorphisms_b", s.right_count},
                       {"join_size", s.join_size},
                       {"mode", context.mode() == HomMode::weak ? "weak" : "strong"}};
    std::ostringstream text;
    text << (verdict.independent ? "independent" : "not independent") << "; " << s.pairs_checked
         << " hom pairs checked\n";
    text << "endomorphisms: " << s.left_count << " on A, " << s.right_count << " on B; join size " << s.join_size
         << "; mode " << (context.mode() == HomMode::weak ? "weak" : "strong") << "\n";

    const auto* w = std::get_if<SubalgebraWitness>(&verdict.witness);
    if (!w) {
        r.json["witness"] = nullptr;
        r.text = text.str();
        return r;
    }
    const auto alpha_image = image_in_parent(context.a(), w->alpha);
    const auto beta_image = image_in_parent(context.b(), w->beta);
    json witness{{"kind", "subalgebra"},
                 {"alpha", pairs_json(context.a().members(), alpha_image)},
                 {"beta", pairs_json(context.b().members(), beta_image)}};
    text << "alpha: " << render_map(context.a().members(), alpha_image) << "\n";
    text << "beta: " << render_map(context.b().members(), beta_image) << "\n";
    const Refusal& refusal = w->refusal;
    if (refusal.kind == Refusal::Kind::not_functional) {
        witness["refusal"] = {{"kind", "not_functional"},
                              {"element", refusal.element},
                              {"images", {refusal.image_1, refusal.image_2}}};
        text << "refusal: element " << refusal.element << " is forced to both " << refusal.image_1 << " and "
             << refusal.image_2 << "\n";
    } else {
        const auto& v = *refusal.violation;
        witness["refusal"] = {{"kind", "relation_violated"},
                              {"relation", v.relation},
                              {"tuple", v.tuple},
                              {"image", v.image},
                              {"in_domain", v.in_domain}};
        text << "refusal: " << tuple_text(v.relation, v.tuple) << " maps to " << tuple_text(v.relation, v.image);
        text << (v.in_domain ? ", which does not hold\n" : ", which holds although the source does not\n");
    }
    r.json["witness"] = std::move(witness);
    r.text = text.str();
    return r;
}

Report congruence_report(const SubUniverse& a, const SubUniverse& b, const SubUniverse& join, const Verdict& verdict) {
    Report r;
    const auto& s = verdict.stats;
    r.json["verdict"] = verdict.independent;
    r.json["stats"] = {{"pairs_checked", s.pairs_checked},
                       {"congruences_a", s.left_count},
                       {"congruences_b", s.right_count},
                       {"join_size", s.join_size},
                       {"shortcut", s.shortcut}};
    std::ostringstream text;
    text << (verdict.independent ? "congruence-independent" : "not congruence-independent") << "; "
         << s.pairs_checked << " congruence pairs checked\n";
    if (s.shortcut) {
        text << "decided by |A ∩ B| >= 2; join size " << s.join_size << "\n";
    } else {
        text << "congruences: " << s.left_count << " on A, " << s.right_count << " on B; join size " << s.join_size
             << "\n";
    }
    const auto* w = std::get_if<CongruenceWitness>(&verdict.witness);
    if (!w) {
        r.json["witness"] = nullptr;
        r.text = text.str();
        return r;
    }
    const bool on_a = w->side == CongruenceWitness::Side::a;
    r.json["witness"] = {{"kind", "congruence"},
                         {"theta_a", blocks_json(w->theta_a, a.members())},
                         {"theta_b", blocks_json(w->theta_b, b.members())},
                         {"generated", blocks_json(w->generated, join.members())},
                         {"side", on_a ? "a" : "b"},
                         {"pair", {w->x, w->y}}};
    text << "theta_A: " << render_blocks(w->theta_a, a.members()) << "\n";
    text << "theta_B: " << render_blocks(w->theta_b, b.members()) << "\n";
    text << "generated on the join: " << render_blocks(w->generated, join.members()) << "\n";
    text << "restriction to " << (on_a ? "A" : "B") << " relates " << w->x << " and " << w->y << ", theta_"
         << (on_a ? "A" : "B") << " does not\n";
    r.text = text.str();
    return r;
}

} // namespace subindep::io
