#pragma once

#include "vchain/diagnostic.hpp"
#include "vchain/gate.hpp"
#include "vchain/model.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vchain {

inline constexpr std::size_t kMaxSourceBytes = std::size_t{16} * 1024 * 1024;

template <typename T>
struct ParseResult {
    std::optional<T> value;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return value.has_value(); }
};

/// Parses a `.vchain` document. Never throws on malformed input; every
/// failure is an ERROR diagnostic with a line:column inside the source.
/// A successful parse is structurally complete but not yet validated.
ParseResult<ValueChainModel> parse(std::string_view source);

/// Canonical text: 2-space indent, catalog order for scores, declaration
/// order for everything else. The catalog and weights blocks are omitted
/// when they equal the defaults.
std::string serialize(const ValueChainModel& model);

/// Parses a `.vtree` document holding one `tree` block.
ParseResult<DecisionTree> parse_tree(std::string_view source);
std::string serialize_tree(const DecisionTree& tree);

/// Imports an indicator-rows x step-columns matrix. The first header cell is
/// the literal `indicator`; the remaining header cells become step names.
ParseResult<EndToEndProcess> import_matrix_csv(std::string_view csv,
                                               std::string_view process_name,
                                               const Catalog& catalog = default_catalog());

} // namespace vchain
