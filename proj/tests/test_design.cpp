#include <gtest/gtest.h>

#include <sstream>

#include "helpers.hpp"
#include "pgds/cyclotomy.hpp"
#include "pgds/profile.hpp"
#include "pgds/twoindex.hpp"

using namespace pgds;

namespace {

Design triangle() { return Design(3, {{0, 1}, {0, 2}, {1, 2}}); }

Design develop_one(const ConstructedFamily& f) { return develop(f.blocks).design; }

Design subgroup_dev() {
  const Group z15 = Group::make({15});
  const std::vector<Subset> fam{cyclic_subgroup(z15, Element{5})};
  return develop(fam).design;
}

Design class_dev(std::uint32_t p, std::uint32_t i) {
  const CyclotomicTable t(build_field(p, 2), p + 1);
  const std::vector<Subset> fam{t.cls(i)};
  return develop(fam).design;
}

/// Checks a report against the naive flag count and the naive triple product.
void expect_matches_oracle(const Design& d) {
  const auto nd = naive(d);
  const auto [flag, anti] = oracle::s_values(nd);
  const PGReport direct = s_counts(d);
  const PGReport matrix = pg_check_matrix(d);
  std::set<long long> df, da;
  for (auto [v, c] : direct.flag_values) df.insert(v);
  for (auto [v, c] : direct.antiflag_values) da.insert(v);
  EXPECT_EQ(df, flag);
  EXPECT_EQ(da, anti);
  const bool pg = flag.size() <= 1 && anti.size() <= 1;
  EXPECT_EQ(direct.partial_geometric, pg);
  EXPECT_EQ(matrix.partial_geometric, pg);
  EXPECT_TRUE(pg_reports_agree(direct, matrix));
  if (pg) {
    const auto a = oracle::incidence(nd);
    const auto m = oracle::mul(oracle::mul(a, oracle::transpose(a)), a);
    for (std::size_t u = 0; u < a.size(); ++u) {
      for (std::size_t b = 0; b < a[u].size(); ++b) EXPECT_EQ(m[u][b], *matrix.n_prime * a[u][b] + *matrix.j_coefficient);
    }
  }
}

}  // namespace

TEST(Design, TriangleIsPartialGeometric) {
  const Design d = triangle();
  const auto r = s_counts(d);
  EXPECT_TRUE(r.partial_geometric);
  EXPECT_EQ(r.k, 2);
  EXPECT_EQ(r.r, 2);
  EXPECT_EQ(*r.s_flag, 0);
  EXPECT_EQ(*r.s_antiflag, 2);
  expect_matches_oracle(d);
}

TEST(Design, Mod4Development) {
  const auto dev = develop(mod4_pair_set(1, Mod4Variant::A).blocks);
  EXPECT_EQ(dev.design.b(), 8u);
  EXPECT_EQ(dev.design.v(), 8u);
  EXPECT_EQ(dev.collapsed, 0);
  const auto o = oracle::develop(oracle_group(dev.group), indices(mod4_pair_set(1, Mod4Variant::A).blocks));
  EXPECT_EQ(o.size(), 8u);
  const auto r = pg_check_matrix(dev.design);
  EXPECT_TRUE(r.partial_geometric);
  EXPECT_EQ(*r.s_flag, 3);
  EXPECT_EQ(*r.s_antiflag, 6);
  EXPECT_EQ(*r.n_prime, 4);
  EXPECT_EQ(*r.n_prime, r.r + r.k - 1 + *r.s_flag - *r.s_antiflag);
  expect_matches_oracle(dev.design);
}

TEST(Design, RemovingABlockIsNotTactical) {
  const Design d = develop_one(mod4_pair_set(1, Mod4Variant::A));
  auto blocks = d.blocks();
  blocks.pop_back();
  const Design cut(d.v(), blocks, d.labels());
  EXPECT_THROW(s_counts(cut), NotTacticalError);
  EXPECT_THROW(pg_check_matrix(cut), NotTacticalError);
  try {
    require_tactical(cut);
  } catch (const NotTacticalError& e) {
    EXPECT_NE(std::string(e.what()).find("point"), std::string::npos);
  }
  const Design uneven(4, {{0, 1}, {2}});
  EXPECT_THROW(require_tactical(uneven), NotTacticalError);
}

TEST(Design, SubgroupDevelopment) {
  const Group z15 = Group::make({15});
  const std::vector<Subset> fam{cyclic_subgroup(z15, Element{5})};
  const auto set_dev = develop(fam);
  EXPECT_EQ(set_dev.design.b(), 5u);
  EXPECT_EQ(set_dev.collapsed, 10);
  const auto multi = develop(fam, DevelopMode::multiset);
  EXPECT_EQ(multi.design.b(), 15u);
  const auto r = pg_check_matrix(set_dev.design);
  EXPECT_TRUE(r.partial_geometric);
  EXPECT_TRUE(r.residual_zero);
  expect_matches_oracle(set_dev.design);
  expect_matches_oracle(multi.design);
}

TEST(Design, PlanarDevelopment) {
  const Design d = develop_one(planar_set(3, 1, 2));
  EXPECT_EQ(d.b(), 9u);
  const auto r = pg_check_matrix(d);
  EXPECT_TRUE(r.partial_geometric);
  EXPECT_EQ(*r.s_flag, 0);
  EXPECT_EQ(*r.s_antiflag, 2);
  expect_matches_oracle(d);
}

TEST(Design, NonPgResidualNamed) {
  const Design d = class_dev(3, 1);
  const auto r = pg_check_matrix(d);
  EXPECT_FALSE(r.partial_geometric);
  EXPECT_TRUE(r.first_residual.has_value());
  expect_matches_oracle(d);
}

TEST(Design, WindowPassImpliesPartialGeometric) {
  const Group z15 = Group::make({15});
  std::vector<ConstructedFamily> fams{sigma_product_set(2, 3, 0, 1),
                                      sigma_product_set(4, 3, 0, 1),
                                      sigma_product_set(2, 5, 0, 1),
                                      z6_product_set(3, 0, 1),
                                      planar_set(3, 1, 2),
                                      planar_set(5, 1, 2),
                                      mod4_pair_set(1, Mod4Variant::A),
                                      mod4_pair_set(2, Mod4Variant::B),
                                      multiplier_family(3, 2),
                                      multiplier_family(5, 2),
                                      coset_pair_family(z15, cyclic_subgroup(z15, Element{5}), {Element{1}, Element{2}})};
  for (const auto& f : fams) {
    const auto prof = family_profile(f.blocks, Semantics::family_window);
    ASSERT_TRUE(prof.two_valued) << to_string(f.provenance.id);
    const Design d = develop_one(f);
    const auto a = s_counts(d), b = pg_check_matrix(d);
    EXPECT_TRUE(a.partial_geometric) << to_string(f.provenance.id);
    EXPECT_TRUE(b.partial_geometric) << to_string(f.provenance.id);
    EXPECT_TRUE(pg_reports_agree(a, b));
  }
}

TEST(Design, DevelopmentBlockCountsMatchOracle) {
  const Group z15 = Group::make({15});
  std::vector<ConstructedFamily> fams{multiplier_family(3, 2), z6_product_set(3, 0, 1), sigma_product_set(2, 3, 0, 1),
                                      coset_pair_family(z15, cyclic_subgroup(z15, Element{5}), {Element{1}, Element{2}})};
  for (const auto& f : fams) {
    const auto o = oracle::develop(oracle_group(f.group), indices(f.blocks));
    const auto dev = develop(f.blocks);
    EXPECT_EQ(dev.design.b(), o.size());
    std::set<std::vector<int>> got;
    for (const auto& b : dev.design.blocks()) got.insert(std::vector<int>(b.begin(), b.end()));
    EXPECT_EQ(got, o);
  }
  EXPECT_EQ(develop(multiplier_family(3, 2).blocks).design.b(), 27u);
  EXPECT_EQ(develop(z6_product_set(3, 0, 1).blocks).design.b(), 27u);
}

TEST(Indices, Examples) {
  const auto a = index_profile(class_dev(3, 1));
  EXPECT_TRUE(a.two_index);
  EXPECT_TRUE(a.adesign);
  EXPECT_EQ(*a.mu1, 1);
  EXPECT_EQ(*a.mu2, 0);
  const auto b = index_profile(develop_one(planar_set(3, 1, 2)));
  EXPECT_TRUE(b.adesign);
  EXPECT_EQ(b.indices.size(), 2u);
  const Design complete(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  const auto c = index_profile(complete);
  EXPECT_FALSE(c.two_index);
  EXPECT_EQ(c.indices, (std::map<std::int64_t, std::int64_t>{{1, 6}}));
  EXPECT_THROW(a1_srg_check(complete), ParameterError);
  EXPECT_THROW(a1_srg_check(develop_one(sigma_product_set(2, 3, 0, 1))), ParameterError);
}

TEST(TwoIndex, PlanarSpecialClass) {
  const auto r = a1_srg_check(develop_one(planar_set(3, 1, 2)));
  EXPECT_TRUE(r.pg.partial_geometric);
  EXPECT_TRUE(r.counts_constant);
  EXPECT_EQ(*r.nu, 2);
  EXPECT_EQ(*r.zeta, 2);
  EXPECT_EQ(r.nu_closed, r.nu);
  EXPECT_EQ(r.zeta_closed, r.zeta);
  EXPECT_TRUE(r.a1.certified);
  EXPECT_TRUE(r.residual_zero);
  EXPECT_EQ(std::make_tuple(r.a1.v, *r.a1.k, *r.a1.lambda, *r.a1.mu), std::make_tuple(9, 6, 3, 6));
  EXPECT_EQ(*r.kappa, 6);
  EXPECT_TRUE(r.kappa_is_degree);
  EXPECT_EQ(*r.k_prime, 6);
  EXPECT_TRUE(r.prediction_holds);
  EXPECT_TRUE(r.special_class);
}

TEST(TwoIndex, Mod4NonAdesign) {
  const auto r = a1_srg_check(develop_one(mod4_pair_set(1, Mod4Variant::A)));
  EXPECT_FALSE(r.adesign);
  EXPECT_EQ(r.mu1, 2);
  EXPECT_EQ(r.mu2, 0);
  EXPECT_EQ(*r.nu, 3);
  EXPECT_EQ(*r.zeta, 3);
  EXPECT_EQ(*r.nu_closed, 3);
  EXPECT_EQ(*r.nu_short, 6);  // without the division by phi
  EXPECT_EQ(*r.epsilon, 12);
  EXPECT_EQ(std::make_tuple(*r.a1.k, *r.a1.lambda, *r.a1.mu), std::make_tuple(6, 4, 6));
  EXPECT_TRUE(r.special_class);
}

TEST(TwoIndex, SubgroupSignOfKPrime) {
  const auto r = a1_srg_check(subgroup_dev());
  EXPECT_EQ(*r.nu, 2);
  EXPECT_EQ(*r.zeta, 0);
  EXPECT_EQ(std::make_tuple(r.a1.v, *r.a1.k, *r.a1.lambda, *r.a1.mu), std::make_tuple(15, 2, 1, 0));
  EXPECT_EQ(*r.k_prime, 2);
  EXPECT_EQ(*r.k_prime_minus, -2);
  EXPECT_TRUE(r.prediction_holds);
}

TEST(TwoIndex, CyclotomicClassIsAdesignButNotPg) {
  for (std::uint32_t i = 0; i < 4; ++i) {
    const Design d = class_dev(3, i);
    const auto r = a1_srg_check(d);
    EXPECT_TRUE(r.adesign);
    EXPECT_FALSE(r.pg.partial_geometric);
    EXPECT_FALSE(r.counts_constant);
    EXPECT_TRUE(r.a1.certified);
    EXPECT_TRUE(r.residual_zero);
    EXPECT_EQ(std::make_tuple(r.a1.v, *r.a1.k, *r.a1.lambda, *r.a1.mu), std::make_tuple(9, 2, 1, 0));
    EXPECT_EQ(*r.kappa, 2);
    EXPECT_TRUE(r.kappa_is_degree);
    EXPECT_FALSE(r.special_class);
  }
}

TEST(Srg, RejectsIrregular) {
  IntMatrix path(3, 3);
  path(0, 1) = path(1, 0) = path(1, 2) = path(2, 1) = 1;
  EXPECT_FALSE(srg_check(path).certified);
  IntMatrix tri(3, 3, 1);
  for (int i = 0; i < 3; ++i) tri(i, i) = 0;
  const auto c = srg_check(tri);
  EXPECT_TRUE(c.certified);
  EXPECT_FALSE(c.mu.has_value());
}

TEST(Grid, RoundTrip) {
  const Design d = develop_one(planar_set(3, 1, 2));
  const std::string text = export_incidence_grid(d);
  EXPECT_EQ(text.substr(0, text.find('\n')), "9 9 3 3");
  std::istringstream in(text);
  const Design back = read_incidence_grid(in);
  EXPECT_EQ(back.blocks(), d.blocks());
  std::istringstream bad("3 2 2 1\n1 0\n1 1\n0 x\n");
  EXPECT_THROW(read_incidence_grid(bad), FormatError);
  std::istringstream lie("3 3 1 1\n1 1 0\n0 1 1\n1 0 1\n");
  EXPECT_THROW(read_incidence_grid(lie), FormatError);
}

TEST(Matrix, CheckedOverflow) {
  IntMatrix a(1, 2, std::int64_t{1} << 62);
  IntMatrix b(2, 1, 2);
  EXPECT_THROW(a * b, std::overflow_error);
}
