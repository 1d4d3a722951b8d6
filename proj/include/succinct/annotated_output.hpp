#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "succinct/letter.hpp"

namespace succinct {

/// Bit layout of an automaton output letter: the visible output bits come
/// first (declaration order), then the claimed current input, then one
/// fixed-width big-endian field per choice slot.
struct LetterLayout {
  std::size_t output_bits = 0;
  std::size_t input_bits = 0;
  std::vector<unsigned> field_widths;

  std::size_t width() const;
  std::size_t field_offset(std::size_t field) const;

  bool operator==(const LetterLayout&) const = default;
};

/// An output letter extended with the claimed current input and, per choice
/// slot, the index of the chosen satisfying assignment.
struct AnnotatedOutput {
  Letter output = 0;
  Letter claimed_input = 0;
  std::vector<std::uint32_t> choices;

  bool operator==(const AnnotatedOutput&) const = default;
  auto operator<=>(const AnnotatedOutput&) const = default;
};

/// '0'/'1' string of exactly layout.width() characters.
std::string encode_bits(const AnnotatedOutput& a, const LetterLayout& layout);
AnnotatedOutput decode_bits(const std::string& bits, const LetterLayout& layout);

/// Lexicographic comparison of the canonical bit strings.
bool lex_less(const AnnotatedOutput& a, const AnnotatedOutput& b, const LetterLayout& layout);

}  // namespace succinct
