#include <gtest/gtest.h>

#include "helpers.hpp"
#include "pgds/cyclotomy.hpp"

using namespace pgds;

namespace {

/// Naive product of coefficient tuples modulo the field modulus.
std::vector<std::uint32_t> naive_mul(const Field& f, std::vector<std::uint32_t> a, std::vector<std::uint32_t> b) {
  const std::uint32_t p = f.characteristic(), d = f.degree();
  std::vector<std::uint64_t> prod(2 * d, 0);
  for (std::uint32_t i = 0; i < d; ++i) {
    for (std::uint32_t j = 0; j < d; ++j) prod[i + j] += static_cast<std::uint64_t>(a[i]) * b[j];
  }
  const auto& mod = f.modulus();
  for (std::uint32_t deg = 2 * d - 1; deg >= d; --deg) {
    const std::uint64_t c = prod[deg] % p;
    prod[deg] = 0;
    for (std::uint32_t t = 0; t < d; ++t) prod[deg - d + t] += c * (p - mod[t]);
  }
  std::vector<std::uint32_t> out(d);
  for (std::uint32_t i = 0; i < d; ++i) out[i] = static_cast<std::uint32_t>(prod[i] % p);
  return out;
}

}  // namespace

TEST(Field, PrimeFields) {
  const auto f3 = build_field(3, 1);
  EXPECT_EQ(f3->order(), 3u);
  EXPECT_EQ(f3->format(f3->primitive_element()), "2");
  const auto f2 = build_field(2, 1);
  EXPECT_EQ(f2->order(), 2u);
  EXPECT_THROW(build_field(4, 1), ParameterError);
  EXPECT_THROW(build_field(1, 1), ParameterError);
  EXPECT_THROW(build_field(3, 0), ParameterError);
}

TEST(Field, F9PrimitiveByExhaustiveOrder) {
  const auto f = build_field(3, 2);
  EXPECT_EQ(f->order(), 9u);
  // order of the primitive element by repeated naive multiplication
  const auto g = f->coefficients(f->primitive_element());
  std::vector<std::uint32_t> x = g;
  int order = 1;
  while (x != std::vector<std::uint32_t>{1, 0}) {
    x = naive_mul(*f, x, g);
    ++order;
  }
  EXPECT_EQ(order, 8);
  // and no element that precedes it has order 8
  for (std::uint32_t c = 1; c < f->primitive_element().code; ++c) EXPECT_LT(f->multiplicative_order(FieldElement{c}), 8u);
}

TEST(Field, ModulusIsIrreducible) {
  for (auto [p, d] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 2}, {5, 2}, {7, 2}, {3, 3}, {2, 4}}) {
    const auto f = build_field(p, d);
    const auto& m = f->modulus();
    ASSERT_EQ(m.size(), d + 1);
    EXPECT_EQ(m.back(), 1u);
    if (d <= 3) {
      for (std::uint32_t r = 0; r < p; ++r) {
        std::uint64_t v = 0;
        for (std::uint32_t i = d + 1; i-- > 0;) v = (v * r + m[i]) % p;
        EXPECT_NE(v, 0u) << "root " << r << " of modulus over F_" << p;
      }
    }
  }
}

TEST(Field, MultiplicationAgreesWithNaive) {
  for (auto [p, d] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 2}, {5, 2}, {2, 3}, {3, 3}}) {
    const auto f = build_field(p, d);
    for (std::uint32_t a = 0; a < f->order(); ++a) {
      for (std::uint32_t b = 0; b < f->order(); ++b) {
        const auto got = f->coefficients(f->mul(FieldElement{a}, FieldElement{b}));
        EXPECT_EQ(got, naive_mul(*f, f->coefficients(FieldElement{a}), f->coefficients(FieldElement{b})));
      }
    }
  }
}

TEST(Field, LogTableIsBijection) {
  const auto f = build_field(5, 2);
  std::vector<int> hit(f->order() - 1, 0);
  for (std::uint32_t c = 1; c < f->order(); ++c) {
    const auto l = f->log(FieldElement{c});
    ASSERT_LT(l, f->order() - 1);
    ++hit[l];
    EXPECT_EQ(f->exp(l).code, c);
  }
  for (int h : hit) EXPECT_EQ(h, 1);
}

TEST(Field, Deterministic) {
  const auto a = build_field(7, 2), b = build_field(7, 2);
  EXPECT_EQ(a->modulus(), b->modulus());
  EXPECT_EQ(a->primitive_element(), b->primitive_element());
  const CyclotomicTable ta(a, 8), tb(b, 8);
  for (std::uint32_t i = 0; i < 8; ++i) EXPECT_EQ(ta.cls(i), tb.cls(i));
}

TEST(Cyclotomy, F9OrderFourClasses) {
  const auto f = build_field(3, 2);
  const CyclotomicTable t(f, 4);
  ASSERT_EQ(t.classes().size(), 4u);
  for (const auto& c : t.classes()) EXPECT_EQ(c.size(), 2u);
  EXPECT_THROW(CyclotomicTable(f, 3), ParameterError);
}

TEST(Cyclotomy, OrderOneIsAllNonzero) {
  for (auto [p, d] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{5, 1}, {3, 2}, {7, 1}}) {
    const auto f = build_field(p, d);
    const CyclotomicTable t(f, 1);
    EXPECT_EQ(t.cls(0).size(), f->order() - 1);
    EXPECT_EQ(cyclotomic_number(t, 0, 0), static_cast<std::int64_t>(f->order()) - 2);
  }
}

TEST(Cyclotomy, F9OrderTwoNumbersFromOracle) {
  // squares and non-squares do not depend on the primitive element
  const oracle::Fp2 o(3);
  const auto squares = o.power_subgroup(2);
  auto is_sq = [&](int a, int b) { return squares.count({a, b}) > 0; };
  long long n[2][2] = {};
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      if (!a && !b) continue;
      const int a1 = (a + 2) % 3;  // x - 1
      if (!a1 && !b) continue;
      n[is_sq(a, b) ? 0 : 1][is_sq(a1, b) ? 0 : 1]++;
    }
  }
  const CyclotomicTable t(build_field(3, 2), 2);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) EXPECT_EQ(cyclotomic_number(t, i, j), n[i][j]) << i << j;
  }
  EXPECT_EQ(cyclotomic_number(t, 0, 0), 1);
  EXPECT_EQ(cyclotomic_number(t, 0, 1), 2);
  EXPECT_EQ(cyclotomic_number(t, 1, 0), 2);
  EXPECT_EQ(cyclotomic_number(t, 1, 1), 2);
  EXPECT_THROW(cyclotomic_number(t, 2, 0), std::out_of_range);
}

TEST(Cyclotomy, OrderQPlusOneTable) {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const CyclotomicTable t(build_field(p, 2), p + 1);
    for (std::uint32_t i = 0; i <= p; ++i) {
      for (std::uint32_t j = 0; j <= p; ++j) {
        std::int64_t want = 1;
        if (i == 0 && j == 0) {
          want = p - 2;
        } else if (i == j || i == 0 || j == 0) {
          want = 0;
        }
        EXPECT_EQ(cyclotomic_number(t, i, j), want) << "p=" << p << " (" << i << "," << j << ")";
      }
    }
  }
}

TEST(Cyclotomy, PartitionClosureAndRowSums) {
  for (auto [p, d, e] : std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>>{{3, 2, 2}, {3, 2, 4}, {5, 2, 6}, {5, 2, 3}, {7, 1, 3}}) {
    const auto f = build_field(p, d);
    const CyclotomicTable t(f, e);
    std::vector<int> seen(f->order(), 0);
    const FieldElement ge = f->exp(e);
    for (std::uint32_t i = 0; i < e; ++i) {
      EXPECT_EQ(t.cls(i).size(), (f->order() - 1) / e);
      for (auto x : t.cls(i)) {
        ++seen[x.index];
        EXPECT_TRUE(t.cls(i).contains(Element{f->mul(FieldElement{x.index}, ge).code}));
      }
      // each x in C_i has x - 1 in exactly one class, unless x = 1
      std::int64_t row = 0;
      for (std::uint32_t j = 0; j < e; ++j) row += t.numbers()[i][j];
      EXPECT_EQ(row, static_cast<std::int64_t>(t.cls(i).size()) - (t.cls(i).contains(Element{f->one().code}) ? 1 : 0));
    }
    EXPECT_EQ(seen[0], 0);
    for (std::uint32_t c = 1; c < f->order(); ++c) EXPECT_EQ(seen[c], 1);
  }
}

TEST(Cyclotomy, QPlusOneSubgroupMatchesOracle) {
  for (int p : {3, 5}) {
    const oracle::Fp2 o(p);
    const auto h = o.power_subgroup(p + 1);  // index p + 1, the class C_0
    const auto f = build_field(static_cast<std::uint32_t>(p), 2);
    const CyclotomicTable t(f, static_cast<std::uint32_t>(p + 1));
    EXPECT_EQ(h.size(), t.cls(0).size());
    // C_0 is the multiplicative group of F_p, which is model independent
    for (auto x : t.cls(0)) EXPECT_EQ(f->coefficients(FieldElement{x.index})[1], 0u);
  }
}

TEST(GroupRing, SpecCasesHoldExhaustively) {
  for (std::uint32_t p : {3u, 5u}) {
    const auto f = build_field(p, 2);
    for (std::uint32_t e : {2u, p + 1}) {
      const CyclotomicTable t(f, e);
      for (std::uint32_t i = 0; i < e; ++i) {
        for (std::uint32_t j = 0; j < e; ++j) {
          const auto r = verify_group_ring_identity(t, i, j);
          EXPECT_TRUE(r.holds) << "F_" << f->order() << " e=" << e << " (" << i << "," << j << ")";
          EXPECT_EQ(r.constant_term, i == j ? static_cast<std::int64_t>(t.class_size()) : 0);
        }
      }
    }
  }
  const CyclotomicTable t5(build_field(5, 1), 2);
  const auto r = verify_group_ring_identity(t5, 0, 0);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.constant_term, 2);
}

TEST(GroupRing, ConvolutionMatchesPairCount) {
  const auto f = build_field(3, 2);
  const CyclotomicTable t(f, 4);
  const auto r = verify_group_ring_identity(t, 0, 0);
  // C_0 = F_3^*: sums x + y over {1,2}^2 give 0 twice, 2 once, 1 once
  EXPECT_EQ(r.constant_term, 2);
  EXPECT_TRUE(r.holds);
}

TEST(GroupRing, OddClassSizeUsesTransposedIndices) {
  // F_7 with e = 2: class size 3 is odd
  const CyclotomicTable t(build_field(7, 1), 2);
  bool printed_all = true, transposed_all = true;
  for (std::uint32_t i = 0; i < 2; ++i) {
    for (std::uint32_t j = 0; j < 2; ++j) {
      printed_all = printed_all && verify_group_ring_identity(t, i, j).holds;
      const auto r = verify_group_ring_identity(t, i, j, CoefficientOrder::transposed);
      transposed_all = transposed_all && r.holds;
    }
  }
  EXPECT_FALSE(printed_all);
  EXPECT_TRUE(transposed_all);
  const auto bad = verify_group_ring_identity(t, 0, 1);
  EXPECT_FALSE(bad.holds);
  ASSERT_TRUE(bad.first_discrepancy.has_value());
  EXPECT_NE(bad.expected_at_discrepancy, bad.actual_at_discrepancy);
}

TEST(Intersection, F9AllOutsidePoints) {
  const auto f = build_field(3, 2);
  const CyclotomicTable t(f, 4);
  int checked = 0;
  for (std::uint32_t c = 1; c < 9; ++c) {
    if (t.cls(0).contains(Element{c})) continue;
    const auto r = intersection_property_check(f, 0, FieldElement{c});
    EXPECT_TRUE(r.holds);
    for (std::uint32_t i = 1; i < 4; ++i) EXPECT_EQ(r.counts[i], 1);
    ++checked;
  }
  EXPECT_EQ(checked, 6);
  EXPECT_THROW(intersection_property_check(f, 0, FieldElement{0}), ParameterError);
  EXPECT_THROW(intersection_property_check(f, 0, FieldElement{t.cls(0).elements()[0].index}), ParameterError);
}

TEST(Intersection, F25ClassTwo) {
  const auto f = build_field(5, 2);
  const CyclotomicTable t(f, 6);
  for (std::uint32_t c = 1; c < 25; ++c) {
    if (t.cls(2).contains(Element{c})) continue;
    const auto r = intersection_property_check(f, 2, FieldElement{c});
    ASSERT_EQ(r.counts.size(), 6u);
    EXPECT_TRUE(r.holds) << c;
  }
  EXPECT_THROW(intersection_property_check(build_field(5, 1), 0, FieldElement{1}), ParameterError);
}
