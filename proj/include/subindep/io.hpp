#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "subindep/error.hpp"
#include "subindep/independence.hpp"
#include "subindep/structure.hpp"
#include "subindep/zoo.hpp"

namespace subindep::io {

/// Malformed structure file or argument. The message names the field path
/// ("ops[1].table[4]") or the line and column of a syntax error.
class ParseError : public InputError {
  public:
    using InputError::InputError;
};

struct NamedStructure {
    std::string name;
    FiniteStructure structure;
};

/// Canonical JSON: sorted keys, sorted relation tuples, tables row-major.
[[nodiscard]] nlohmann::json to_json(const FiniteStructure& structure, std::string_view name);
[[nodiscard]] std::string serialize(const FiniteStructure& structure, std::string_view name);

[[nodiscard]] NamedStructure from_json(const nlohmann::json& doc);
[[nodiscard]] NamedStructure parse(std::string_view text);

[[nodiscard]] NamedStructure load(const std::filesystem::path& path);
void save(const std::filesystem::path& path, const FiniteStructure& structure, std::string_view name);

/// "0,3" -> {0, 3}. Rejects elements >= size, empty entries and junk.
[[nodiscard]] std::vector<Element> parse_subset(std::string_view text, std::size_t size);

/// "0-1,1-2" -> {(0,1), (1,2)}.
[[nodiscard]] std::vector<ElementPair> parse_edges(std::string_view text);

struct Report {
    std::string text;
    nlohmann::json json; // {"verdict", "witness", "stats"}
};

[[nodiscard]] Report subalgebra_report(const JointExtender& context, const Verdict& verdict);
[[nodiscard]] Report congruence_report(const SubUniverse& a, const SubUniverse& b, const SubUniverse& join,
                                       const Verdict& verdict);

/// "0 ↦ 0, 3 ↦ 0" with parent elements on both sides.
[[nodiscard]] std::string render_map(std::span<const Element> domain, std::span<const Element> image);
/// "{0,3} {1,4} {2,5}" with parent elements.
[[nodiscard]] std::string render_blocks(const Congruence& theta, std::span<const Element> members);

} // namespace subindep::io
