#pragma once

// Cyclotomic classes C_i = g^i <g^e> of a finite field, their cyclotomic
// numbers (i,j) = |C_i ∩ (C_j + 1)|, and exact checks of the group-ring
// product of two classes and of the class-intersection property of F_{p^2}.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pgds/field.hpp"
#include "pgds/group.hpp"

namespace pgds {

class CyclotomicTable {
 public:
  CyclotomicTable(FieldPtr field, std::uint32_t e) : field_(std::move(field)), e_(e), additive_(Group::make({}, field_)) {
    const std::uint32_t q = field_->order();
    if (e_ == 0 || (q - 1) % e_ != 0) {
      throw ParameterError("cyclotomic order " + std::to_string(e_) + " does not divide q - 1 = " + std::to_string(q - 1));
    }
    class_size_ = (q - 1) / e_;
    class_of_.assign(q, -1);
    std::vector<std::vector<Element>> members(e_);
    for (std::uint32_t k = 0; k + 1 < q; ++k) {
      const FieldElement x = field_->exp(k);
      class_of_[x.code] = static_cast<int>(k % e_);
      members[k % e_].push_back(Element{x.code});
    }
    for (auto& m : members) classes_.emplace_back(additive_, std::move(m));

    numbers_.assign(e_, std::vector<std::int64_t>(e_, 0));
    const FieldElement one = field_->one();
    for (std::uint32_t i = 0; i < e_; ++i) {
      for (auto x : classes_[i]) {
        const FieldElement y = field_->sub(FieldElement{x.index}, one);
        if (y.code != 0) ++numbers_[i][class_of_[y.code]];
      }
    }
  }

  const FieldPtr& field() const noexcept { return field_; }
  std::uint32_t order() const noexcept { return e_; }
  /// (q - 1) / e.
  std::uint32_t class_size() const noexcept { return class_size_; }
  const Group& additive_group() const noexcept { return additive_; }
  const std::vector<Subset>& classes() const noexcept { return classes_; }
  const Subset& cls(std::uint32_t i) const { return classes_.at(i); }
  const std::vector<std::vector<std::int64_t>>& numbers() const noexcept { return numbers_; }

  /// Index of the class containing a nonzero element.
  std::uint32_t class_index(FieldElement x) const {
    if (x.code == 0) throw std::domain_error("zero lies in no cyclotomic class");
    return static_cast<std::uint32_t>(class_of_.at(x.code));
  }

 private:
  FieldPtr field_;
  std::uint32_t e_;
  Group additive_;
  std::uint32_t class_size_ = 0;
  std::vector<int> class_of_;
  std::vector<Subset> classes_;
  std::vector<std::vector<std::int64_t>> numbers_;
};

inline CyclotomicTable cyclotomic_classes(const FieldPtr& field, std::uint32_t e) { return CyclotomicTable(field, e); }

/// (i,j) = |C_i ∩ (C_j + 1)|; indices taken as given, not reduced.
inline std::int64_t cyclotomic_number(const CyclotomicTable& t, std::int64_t i, std::int64_t j) {
  const std::int64_t e = t.order();
  if (i < 0 || j < 0 || i >= e || j >= e) throw std::out_of_range("cyclotomic number index out of range");
  return t.numbers()[i][j];
}

/// Which index order the coefficient of C_k uses.
enum class CoefficientOrder {
  as_printed,  // (j - i, k - i)
  transposed,  // (k - i, j - i)
};

struct GroupRingReport {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  std::int64_t constant_term = 0;  // a_ij
  bool holds = false;
  std::optional<FieldElement> first_discrepancy;
  std::int64_t expected_at_discrepancy = 0;
  std::int64_t actual_at_discrepancy = 0;
};

/// Expands C_i * C_j in Z[F_q] by direct convolution (sums x + y) and compares
/// it with a_ij * 1 + sum_k c_k * C_k, where a_ij equals the class size when
/// the class size is even and j = i, or when it is odd and j = i + e/2, and 0
/// otherwise.
///
/// The two products C_i * C_j and C_i * (-C_j) coincide when the class size is
/// even because then -1 lies in C_0.
inline GroupRingReport verify_group_ring_identity(const CyclotomicTable& t, std::uint32_t i, std::uint32_t j,
                                                  CoefficientOrder order = CoefficientOrder::as_printed) {
  const std::uint32_t e = t.order();
  if (i >= e || j >= e) throw std::out_of_range("class index out of range");
  const auto& f = *t.field();
  const std::uint32_t m = t.class_size();

  GroupRingReport rep;
  rep.i = i;
  rep.j = j;
  if (m % 2 == 0) {
    rep.constant_term = (j == i) ? m : 0;
  } else if (e % 2 == 0 && j == (i + e / 2) % e) {
    rep.constant_term = m;
  }

  std::vector<std::int64_t> actual(f.order(), 0);
  for (auto x : t.cls(i)) {
    for (auto y : t.cls(j)) ++actual[f.add(FieldElement{x.index}, FieldElement{y.index}).code];
  }

  auto mod_e = [e](std::int64_t a) { return static_cast<std::uint32_t>(((a % e) + e) % e); };
  std::vector<std::int64_t> expected(f.order(), 0);
  expected[0] = rep.constant_term;
  for (std::uint32_t k = 0; k < e; ++k) {
    const std::int64_t a = static_cast<std::int64_t>(j) - i;
    const std::int64_t b = static_cast<std::int64_t>(k) - i;
    const std::int64_t c = order == CoefficientOrder::as_printed ? t.numbers()[mod_e(a)][mod_e(b)]
                                                                 : t.numbers()[mod_e(b)][mod_e(a)];
    for (auto z : t.cls(k)) expected[z.index] += c;
  }

  rep.holds = true;
  for (std::uint32_t z = 0; z < f.order(); ++z) {
    if (actual[z] != expected[z]) {
      rep.holds = false;
      rep.first_discrepancy = FieldElement{z};
      rep.expected_at_discrepancy = expected[z];
      rep.actual_at_discrepancy = actual[z];
      break;
    }
  }
  return rep;
}

struct IntersectionCounts {
  std::uint32_t j = 0;
  FieldElement x;
  std::vector<std::int64_t> counts;  // |(x - S_j) ∩ C_i| for every i
  bool holds = false;                // counts[i] == 1 for every i != j
};

/// For F_{p^2} with classes of order p + 1 and S_j = C_j ∪ {0}, counts
/// |(x - S_j) ∩ C_i| for each i. Requires x outside S_j.
inline IntersectionCounts intersection_property_check(const FieldPtr& field, std::uint32_t j, FieldElement x) {
  if (field->degree() != 2) throw ParameterError("intersection property needs a field F_{p^2}");
  const std::uint32_t p = field->characteristic();
  const CyclotomicTable t(field, p + 1);
  if (j > p) throw std::out_of_range("class index out of range");
  if (x.code >= field->order()) throw ParameterError("element outside the field");
  if (x.code == 0 || t.class_index(x) == j) throw ParameterError("x must lie outside S_j = C_j ∪ {0}");

  IntersectionCounts out;
  out.j = j;
  out.x = x;
  out.counts.assign(p + 1, 0);
  std::vector<FieldElement> sj{field->zero()};
  for (auto y : t.cls(j)) sj.push_back(FieldElement{y.index});
  for (auto y : sj) {
    const FieldElement d = field->sub(x, y);
    if (d.code != 0) ++out.counts[t.class_index(d)];
  }
  out.holds = true;
  for (std::uint32_t i = 0; i <= p; ++i) {
    if (i != j && out.counts[i] != 1) out.holds = false;
  }
  return out;
}

}  // namespace pgds
