#include "succinct/letter.hpp"

#include <cctype>

#include "succinct/error.hpp"

namespace succinct {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string format_letter(Letter l, std::span<const std::string> names) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!has_bit(l, i)) continue;
    if (!first) out += ',';
    out += names[i];
    first = false;
  }
  out += '}';
  return out;
}

std::optional<std::size_t> index_of(std::span<const std::string> names,
                                    std::string_view name) {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  return std::nullopt;
}

Letter parse_name_list(std::string_view text, std::span<const std::string> names) {
  Letter l = 0;
  text = trim(text);
  if (text.empty()) return 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    auto name = trim(text.substr(pos, comma - pos));
    if (name.empty()) throw ParseError("empty proposition name in letter", 0, 0);
    auto idx = index_of(names, name);
    if (!idx) throw ParseError("unknown proposition '" + std::string(name) + "'", 0, 0);
    l |= Letter{1} << *idx;
    pos = comma + 1;
  }
  return l;
}

Letter parse_letter(std::string_view text, std::span<const std::string> names) {
  text = trim(text);
  if (text == "_") return 0;
  if (text.size() < 2 || text.front() != '{' || text.back() != '}')
    throw ParseError("expected letter of the form {a,b}, got '" + std::string(text) + "'", 0, 0);
  return parse_name_list(text.substr(1, text.size() - 2), names);
}

}  // namespace succinct
