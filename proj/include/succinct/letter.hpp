#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace succinct {

/// A set of propositions drawn from one ordered proposition list. Bit i is
/// the i-th proposition in declaration order.
using Letter = std::uint64_t;

/// Hard limit on the size of a single proposition list.
inline constexpr std::size_t kMaxPropositions = 24;

inline std::size_t alphabet_size(std::size_t num_props) {
  return std::size_t{1} << num_props;
}

inline bool has_bit(Letter l, std::size_t i) { return ((l >> i) & 1U) != 0; }

/// Renders `l` as `{a,b}` listing names in declaration order.
std::string format_letter(Letter l, std::span<const std::string> names);

/// Parses `{a, b}` (or `_` for the empty set) against `names`.
/// Throws ParseError on unknown names or bad syntax.
Letter parse_letter(std::string_view text, std::span<const std::string> names);

/// Parses a comma separated list of names without braces; empty text is ∅.
Letter parse_name_list(std::string_view text, std::span<const std::string> names);

std::optional<std::size_t> index_of(std::span<const std::string> names,
                                    std::string_view name);

}  // namespace succinct
