#include "succinct/annotated_output.hpp"

#include "succinct/error.hpp"

namespace succinct {

std::size_t LetterLayout::width() const {
  std::size_t w = output_bits + input_bits;
  for (auto f : field_widths) w += f;
  return w;
}

std::size_t LetterLayout::field_offset(std::size_t field) const {
  std::size_t off = output_bits + input_bits;
  for (std::size_t i = 0; i < field; ++i) off += field_widths[i];
  return off;
}

std::string encode_bits(const AnnotatedOutput& a, const LetterLayout& layout) {
  std::string bits;
  bits.reserve(layout.width());
  for (std::size_t i = 0; i < layout.output_bits; ++i) bits += has_bit(a.output, i) ? '1' : '0';
  for (std::size_t i = 0; i < layout.input_bits; ++i) bits += has_bit(a.claimed_input, i) ? '1' : '0';
  for (std::size_t f = 0; f < layout.field_widths.size(); ++f) {
    const std::uint32_t v = f < a.choices.size() ? a.choices[f] : 0;
    for (unsigned b = layout.field_widths[f]; b-- > 0;) bits += ((v >> b) & 1U) ? '1' : '0';
  }
  return bits;
}

AnnotatedOutput decode_bits(const std::string& bits, const LetterLayout& layout) {
  if (bits.size() != layout.width())
    throw ValidationError("letter has " + std::to_string(bits.size()) + " bits, layout expects " +
                          std::to_string(layout.width()));
  AnnotatedOutput a;
  std::size_t pos = 0;
  auto bit = [&]() {
    const char c = bits[pos++];
    if (c != '0' && c != '1') throw ValidationError("letter bits must be '0' or '1'");
    return c == '1';
  };
  for (std::size_t i = 0; i < layout.output_bits; ++i)
    if (bit()) a.output |= Letter{1} << i;
  for (std::size_t i = 0; i < layout.input_bits; ++i)
    if (bit()) a.claimed_input |= Letter{1} << i;
  a.choices.resize(layout.field_widths.size());
  for (std::size_t f = 0; f < layout.field_widths.size(); ++f) {
    std::uint32_t v = 0;
    for (unsigned b = 0; b < layout.field_widths[f]; ++b) v = (v << 1) | (bit() ? 1U : 0U);
    a.choices[f] = v;
  }
  return a;
}

bool lex_less(const AnnotatedOutput& a, const AnnotatedOutput& b, const LetterLayout& layout) {
  return encode_bits(a, layout) < encode_bits(b, layout);
}

}  // namespace succinct
