#pragma once

// Finite abelian groups given as direct products of cyclic groups and
// additive groups of finite fields, with subsets and difference multisets.
//
// Elements are stored as an index in [0, |G|): the mixed-radix number whose
// digits are the coordinates (a field factor contributes one digit per
// polynomial coefficient), first coordinate most significant. Index order is
// therefore lexicographic order on coordinate tuples.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pgds/error.hpp"
#include "pgds/field.hpp"

namespace pgds {

struct Element {
  std::uint32_t index = 0;
  auto operator<=>(const Element&) const = default;
};

/// One direct factor: Z_n when `field` is null, else (F_q, +).
struct Factor {
  std::uint32_t order = 1;
  FieldPtr field;

  static Factor cyclic(std::uint32_t n) { return {n, nullptr}; }
  static Factor additive(FieldPtr f) {
    const auto q = f->order();
    return {q, std::move(f)};
  }
  bool operator==(const Factor& o) const noexcept {
    if (order != o.order || static_cast<bool>(field) != static_cast<bool>(o.field)) return false;
    return !field || *field == *o.field;
  }
};

class Group {
 public:
  static constexpr std::uint64_t kMaxOrder = 1u << 24;

  /// make_group: Z_{n_1} x ... x Z_{n_r} (x (F, +) when a field is given).
  static Group make(const std::vector<std::int64_t>& cyclic_orders, FieldPtr field = nullptr) {
    std::vector<Factor> factors;
    for (auto n : cyclic_orders) {
      if (n < 1) throw ParameterError("cyclic factor order must be >= 1, got " + std::to_string(n));
      if (static_cast<std::uint64_t>(n) > kMaxOrder) throw ParameterError("cyclic factor order too large");
      factors.push_back(Factor::cyclic(static_cast<std::uint32_t>(n)));
    }
    if (field) factors.push_back(Factor::additive(std::move(field)));
    return Group(std::move(factors));
  }

  explicit Group(std::vector<Factor> factors) {
    auto data = std::make_shared<Data>();
    std::uint64_t order = 1;
    for (const auto& f : factors) {
      if (f.order < 1) throw ParameterError("factor order must be >= 1");
      if (f.field) {
        for (std::uint32_t i = 0; i < f.field->degree(); ++i) data->radices.push_back(f.field->characteristic());
      } else {
        data->radices.push_back(f.order);
      }
      order *= f.order;
      if (order > kMaxOrder) throw ParameterError("group order exceeds supported size");
    }
    data->factors = std::move(factors);
    data->order = static_cast<std::uint32_t>(order);
    data->strides.assign(data->radices.size(), 1);
    for (std::size_t i = data->radices.size(); i-- > 1;) {
      data->strides[i - 1] = data->strides[i] * data->radices[i];
    }
    d_ = std::move(data);
  }

  Group() : Group(std::vector<Factor>{}) {}

  std::uint32_t order() const noexcept { return d_->order; }
  const std::vector<Factor>& factors() const noexcept { return d_->factors; }
  /// Radix of every flattened coordinate digit.
  const std::vector<std::uint32_t>& radices() const noexcept { return d_->radices; }

  Element zero() const noexcept { return {0}; }

  bool contains(Element e) const noexcept { return e.index < d_->order; }

  Element add(Element a, Element b) const noexcept {
    std::uint32_t out = 0;
    const auto& r = d_->radices;
    const auto& s = d_->strides;
    for (std::size_t i = 0; i < r.size(); ++i) {
      const std::uint32_t x = (a.index / s[i]) % r[i];
      const std::uint32_t y = (b.index / s[i]) % r[i];
      const std::uint32_t z = x + y >= r[i] ? x + y - r[i] : x + y;
      out += z * s[i];
    }
    return {out};
  }

  Element neg(Element a) const noexcept {
    std::uint32_t out = 0;
    const auto& r = d_->radices;
    const auto& s = d_->strides;
    for (std::size_t i = 0; i < r.size(); ++i) {
      const std::uint32_t x = (a.index / s[i]) % r[i];
      out += (x == 0 ? 0 : r[i] - x) * s[i];
    }
    return {out};
  }

  Element sub(Element a, Element b) const noexcept { return add(a, neg(b)); }

  /// Integer multiple n*a.
  Element times(std::int64_t n, Element a) const noexcept {
    std::uint32_t out = 0;
    const auto& r = d_->radices;
    const auto& s = d_->strides;
    for (std::size_t i = 0; i < r.size(); ++i) {
      const std::int64_t x = (a.index / s[i]) % r[i];
      const std::int64_t m = static_cast<std::int64_t>(r[i]);
      out += static_cast<std::uint32_t>((((n % m) * x) % m + m) % m) * s[i];
    }
    return {out};
  }

  /// Flattened digits of an element.
  std::vector<std::uint32_t> digits(Element e) const {
    std::vector<std::uint32_t> out(d_->radices.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (e.index / d_->strides[i]) % d_->radices[i];
    return out;
  }

  Element from_digits(std::span<const std::uint32_t> digits) const {
    if (digits.size() != d_->radices.size()) throw ParameterError("element has wrong number of coordinates");
    std::uint32_t idx = 0;
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (digits[i] >= d_->radices[i]) throw ParameterError("coordinate out of range");
      idx += digits[i] * d_->strides[i];
    }
    return {idx};
  }

  /// Builds an element from per-factor integer coordinates (cyclic factors
  /// reduced mod n) and field elements for field factors, in factor order.
  Element from_parts(std::span<const std::int64_t> cyclic_coords, std::span<const FieldElement> field_coords = {}) const {
    std::vector<std::uint32_t> dig;
    std::size_t ci = 0, fi = 0;
    for (const auto& f : d_->factors) {
      if (f.field) {
        if (fi >= field_coords.size()) throw ParameterError("missing field coordinate");
        for (auto c : f.field->coefficients(field_coords[fi++])) dig.push_back(c);
      } else {
        if (ci >= cyclic_coords.size()) throw ParameterError("missing cyclic coordinate");
        const std::int64_t n = f.order;
        dig.push_back(static_cast<std::uint32_t>(((cyclic_coords[ci++] % n) + n) % n));
      }
    }
    if (ci != cyclic_coords.size() || fi != field_coords.size()) throw ParameterError("too many coordinates");
    return from_digits(dig);
  }

  /// Coordinate of factor `f` as an integer (cyclic) or field element code.
  std::uint32_t factor_coordinate(Element e, std::size_t f) const {
    std::size_t digit = 0;
    for (std::size_t i = 0; i < f; ++i) digit += d_->factors[i].field ? d_->factors[i].field->degree() : 1;
    const auto& fac = d_->factors.at(f);
    if (!fac.field) return (e.index / d_->strides[digit]) % d_->radices[digit];
    std::uint32_t code = 0;
    for (std::uint32_t k = 0; k < fac.field->degree(); ++k) {
      code = code * fac.field->characteristic() + (e.index / d_->strides[digit + k]) % d_->radices[digit + k];
    }
    return code;
  }

  /// Canonical text "(a,b,...)"; field coordinates of degree > 1 appear as
  /// nested coefficient tuples.
  std::string format(Element e) const {
    std::string s = "(";
    for (std::size_t f = 0; f < d_->factors.size(); ++f) {
      if (f) s += ',';
      const auto c = factor_coordinate(e, f);
      if (d_->factors[f].field) {
        s += d_->factors[f].field->format(FieldElement{c});
      } else {
        s += std::to_string(c);
      }
    }
    return s + ")";
  }

  /// Inverse of format(). Degree-1 field coordinates may be written either as
  /// an integer or as a one-element tuple.
  Element parse(const std::string& text) const {
    std::size_t pos = 0;
    auto skip = [&] {
      while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    };
    auto expect = [&](char c) {
      skip();
      if (pos >= text.size() || text[pos] != c) {
        throw FormatError("expected '" + std::string(1, c) + "' in element \"" + text + "\"");
      }
      ++pos;
    };
    auto number = [&]() -> std::uint64_t {
      skip();
      const std::size_t start = pos;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
      if (start == pos) throw FormatError("expected digit in element \"" + text + "\"");
      return std::stoull(text.substr(start, pos - start));
    };
    std::vector<std::uint32_t> dig;
    expect('(');
    for (std::size_t f = 0; f < d_->factors.size(); ++f) {
      if (f) expect(',');
      const auto& fac = d_->factors[f];
      skip();
      if (fac.field && pos < text.size() && text[pos] == '(') {
        ++pos;
        for (std::uint32_t k = 0; k < fac.field->degree(); ++k) {
          if (k) expect(',');
          dig.push_back(static_cast<std::uint32_t>(number()));
        }
        expect(')');
      } else if (fac.field) {
        if (fac.field->degree() != 1) throw FormatError("field coordinate must be a coefficient tuple in \"" + text + "\"");
        dig.push_back(static_cast<std::uint32_t>(number()));
      } else {
        dig.push_back(static_cast<std::uint32_t>(number()));
      }
    }
    expect(')');
    skip();
    if (pos != text.size()) throw FormatError("trailing characters in element \"" + text + "\"");
    for (std::size_t i = 0; i < dig.size(); ++i) {
      if (dig[i] >= d_->radices[i]) throw FormatError("coordinate out of range in element \"" + text + "\"");
    }
    return from_digits(dig);
  }

  /// Human-readable description, e.g. "Z_6 x F_9".
  std::string describe() const {
    if (d_->factors.empty()) return "Z_1";
    std::string s;
    for (std::size_t f = 0; f < d_->factors.size(); ++f) {
      if (f) s += " x ";
      s += (d_->factors[f].field ? "F_" : "Z_") + std::to_string(d_->factors[f].order);
    }
    return s;
  }

  bool operator==(const Group& o) const noexcept { return d_ == o.d_ || d_->factors == o.d_->factors; }

 private:
  struct Data {
    std::vector<Factor> factors;
    std::vector<std::uint32_t> radices;
    std::vector<std::uint32_t> strides;
    std::uint32_t order = 1;
  };
  std::shared_ptr<const Data> d_;
};

/// Duplicate-free subset kept in canonical (lexicographic) order.
class Subset {
 public:
  Subset(Group group, std::vector<Element> elements) : group_(std::move(group)), elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end());
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      if (!group_.contains(elements_[i])) throw ParameterError("subset element outside the group");
      if (i && elements_[i] == elements_[i - 1]) {
        throw ParameterError("subset contains duplicate element " + group_.format(elements_[i]));
      }
    }
  }

  /// Union of element lists, duplicates removed.
  static Subset from_union(Group group, std::vector<Element> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    return Subset(std::move(group), std::move(elements));
  }

  const Group& group() const noexcept { return group_; }
  const std::vector<Element>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  auto begin() const noexcept { return elements_.begin(); }
  auto end() const noexcept { return elements_.end(); }

  bool contains(Element e) const noexcept { return std::binary_search(elements_.begin(), elements_.end(), e); }

  Subset translate(Element g) const {
    std::vector<Element> out;
    out.reserve(elements_.size());
    for (auto x : elements_) out.push_back(group_.add(x, g));
    return Subset(group_, std::move(out));
  }

  /// {g - x : x in S}.
  Subset reflect(Element g) const {
    std::vector<Element> out;
    out.reserve(elements_.size());
    for (auto x : elements_) out.push_back(group_.sub(g, x));
    return Subset(group_, std::move(out));
  }

  std::string format() const {
    std::string s = "{";
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      if (i) s += ", ";
      s += group_.format(elements_[i]);
    }
    return s + "}";
  }

  bool operator==(const Subset& o) const noexcept { return group_ == o.group_ && elements_ == o.elements_; }
  bool operator<(const Subset& o) const noexcept { return elements_ < o.elements_; }

 private:
  Group group_;
  std::vector<Element> elements_;
};

/// Multiset over a group stored densely by element index.
class DifferenceMultiset {
 public:
  explicit DifferenceMultiset(Group group) : group_(std::move(group)), counts_(group_.order(), 0) {}

  const Group& group() const noexcept { return group_; }
  std::int64_t count(Element z) const { return counts_.at(z.index); }
  std::int64_t operator[](Element z) const { return counts_[z.index]; }
  const std::vector<std::int64_t>& counts() const noexcept { return counts_; }

  void add(Element z, std::int64_t c = 1) { counts_.at(z.index) += c; }

  std::int64_t total() const noexcept {
    std::int64_t t = 0;
    for (auto c : counts_) t += c;
    return t;
  }

  DifferenceMultiset& operator+=(const DifferenceMultiset& o) {
    if (!(group_ == o.group_)) throw ParameterError("difference multisets over different groups");
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += o.counts_[i];
    return *this;
  }

  DifferenceMultiset scaled(std::int64_t n) const {
    DifferenceMultiset out(group_);
    for (std::size_t i = 0; i < counts_.size(); ++i) out.counts_[i] = n * counts_[i];
    return out;
  }

  bool operator==(const DifferenceMultiset& o) const noexcept { return group_ == o.group_ && counts_ == o.counts_; }

 private:
  Group group_;
  std::vector<std::int64_t> counts_;
};

/// Delta(S): multiplicity of every z as x - y over ordered pairs of S,
/// diagonal pairs included.
inline DifferenceMultiset delta_multiset(const Subset& s) {
  if (s.empty()) throw ParameterError("difference multiset of an empty set");
  DifferenceMultiset d(s.group());
  const auto& g = s.group();
  for (auto x : s) {
    for (auto y : s) d.add(g.sub(x, y));
  }
  return d;
}

/// Pointwise sum of Delta(S_i) over the family.
inline DifferenceMultiset delta_family(std::span<const Subset> family) {
  if (family.empty()) throw ParameterError("difference multiset of an empty family");
  DifferenceMultiset d(family.front().group());
  for (const auto& s : family) {
    if (!(s.group() == d.group())) throw ParameterError("family mixes subsets of different groups");
    d += delta_multiset(s);
  }
  return d;
}

inline Subset cyclic_subgroup(const Group& g, Element generator) {
  if (!g.contains(generator)) throw ParameterError("generator outside the group");
  std::vector<Element> out{g.zero()};
  for (Element x = generator; x != g.zero(); x = g.add(x, generator)) out.push_back(x);
  return Subset(g, std::move(out));
}

/// Cosets of H, sorted by minimal representative.
inline std::vector<Subset> cosets(const Group& g, const Subset& h) {
  if (!(h.group() == g)) throw ParameterError("subgroup belongs to a different group");
  std::vector<char> seen(g.order(), 0);
  std::vector<Subset> out;
  for (std::uint32_t i = 0; i < g.order(); ++i) {
    if (seen[i]) continue;
    Subset c = h.translate(Element{i});
    for (auto x : c) {
      if (seen[x.index]) throw ParameterError("subset is not a subgroup: cosets overlap");
      seen[x.index] = 1;
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace pgds
