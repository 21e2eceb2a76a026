#pragma once

// Gap patterns and loose tuples, plus the membership constraint both reduce to.

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hawkins {

namespace detail {

inline std::vector<std::uint32_t> parse_uint_list(const std::string& text, const char* what) {
  std::vector<std::uint32_t> out;
  std::string cleaned;
  for (char ch : text)
    if (ch != '[' && ch != ']' && ch != '(' && ch != ')' && ch != ' ') cleaned.push_back(ch);
  if (cleaned.empty()) throw std::invalid_argument(std::string(what) + ": empty list");
  std::stringstream ss(cleaned);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument(std::string(what) + ": bad entry '" + item + "' in '" + text + "'");
    const unsigned long v = std::stoul(item);
    if (v > 4096) throw std::invalid_argument(std::string(what) + ": entry too large");
    out.push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

inline std::string join(const std::vector<std::uint32_t>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(xs[i]);
  }
  return s;
}

}  // namespace detail

// Exact gap pattern [0 = i_0 < i_1 < ... < i_{l+1} = k]: the listed offsets are
// members and every other offset in [0, k] is not.
class Pattern {
 public:
  explicit Pattern(std::vector<std::uint32_t> offsets) : offsets_(std::move(offsets)) {
    if (offsets_.size() < 2) throw std::invalid_argument("Pattern: need at least two offsets");
    if (offsets_.front() != 0) throw std::invalid_argument("Pattern: first offset must be 0");
    for (std::size_t i = 1; i < offsets_.size(); ++i)
      if (offsets_[i] <= offsets_[i - 1])
        throw std::invalid_argument("Pattern: offsets must be strictly increasing");
  }

  static Pattern parse(const std::string& text) {
    return Pattern(detail::parse_uint_list(text, "Pattern"));
  }

  const std::vector<std::uint32_t>& offsets() const { return offsets_; }
  std::uint32_t span() const { return offsets_.back(); }
  std::uint32_t interior() const { return static_cast<std::uint32_t>(offsets_.size() - 2); }
  std::string str() const { return "[" + detail::join(offsets_) + "]"; }

  friend bool operator==(const Pattern&, const Pattern&) = default;

 private:
  std::vector<std::uint32_t> offsets_;
};

// {m, m + k_1, ..., m + k_{l-1}} all members; other offsets unconstrained.
class LooseTuple {
 public:
  explicit LooseTuple(std::vector<std::uint32_t> gaps) : gaps_(std::move(gaps)) {
    if (gaps_.empty()) throw std::invalid_argument("LooseTuple: need at least one gap");
    if (gaps_.front() == 0) throw std::invalid_argument("LooseTuple: gaps must be positive");
    for (std::size_t i = 1; i < gaps_.size(); ++i)
      if (gaps_[i] <= gaps_[i - 1])
        throw std::invalid_argument("LooseTuple: gaps must be strictly increasing");
  }

  static LooseTuple parse(const std::string& text) {
    return LooseTuple(detail::parse_uint_list(text, "LooseTuple"));
  }

  // gaps d, 2d, ..., (l-1)d
  static LooseTuple progression(std::uint32_t d, std::uint32_t l) {
    if (d == 0 || l < 2) throw std::invalid_argument("LooseTuple::progression: need d >= 1, l >= 2");
    std::vector<std::uint32_t> g;
    for (std::uint32_t j = 1; j < l; ++j) g.push_back(j * d);
    return LooseTuple(std::move(g));
  }

  const std::vector<std::uint32_t>& gaps() const { return gaps_; }
  std::uint32_t span() const { return gaps_.back(); }
  // number of members in the tuple, l
  std::uint32_t size() const { return static_cast<std::uint32_t>(gaps_.size() + 1); }
  std::string str() const { return "(" + detail::join(gaps_) + ")"; }

 private:
  std::vector<std::uint32_t> gaps_;
};

// Offsets relative to a start m that must be in / out of the sequence.
struct Constraint {
  std::uint32_t span = 0;
  std::vector<std::uint32_t> required;
  std::vector<std::uint32_t> forbidden;

  static Constraint of(const Pattern& p) {
    Constraint c;
    c.span = p.span();
    c.required = p.offsets();
    for (std::uint32_t h = 0; h <= p.span(); ++h)
      if (!std::binary_search(p.offsets().begin(), p.offsets().end(), h)) c.forbidden.push_back(h);
    return c;
  }

  static Constraint of(const LooseTuple& t) {
    Constraint c;
    c.span = t.span();
    c.required.push_back(0);
    c.required.insert(c.required.end(), t.gaps().begin(), t.gaps().end());
    return c;
  }

  static Constraint twin(std::uint32_t k) {
    if (k == 0) throw std::invalid_argument("twin gap must be positive");
    return Constraint{k, {0, k}, {}};
  }
};

}  // namespace hawkins
