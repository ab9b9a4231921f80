#include <gtest/gtest.h>

#include "helpers.hpp"
#include "pgds/io.hpp"

using namespace pgds;

TEST(Io, FamilyRoundTrip) {
  for (const auto& f : {mod4_pair_set(1, Mod4Variant::A), planar_set(3, 1, 2), multiplier_family(3, 2), z6_product_set(3, 0, 1)}) {
    const Json j = family_to_json(f);
    const auto back = family_from_json(Json::parse(j.dump()));
    EXPECT_EQ(back.group.radices(), f.group.radices());
    ASSERT_EQ(back.blocks.size(), f.blocks.size());
    for (std::size_t i = 0; i < f.blocks.size(); ++i) EXPECT_EQ(indices(back.blocks[i]), indices(f.blocks[i]));
    EXPECT_EQ(back.claimed.first, f.claimed.first);
    EXPECT_EQ(back.claimed.second, f.claimed.second);
    EXPECT_EQ(family_to_json(back), j);
  }
}

TEST(Io, GroupFields) {
  const Group g = Group::make({2}, build_field(3, 2));
  const Json j = group_to_json(g);
  EXPECT_EQ(j["factors"][1]["type"], "field");
  EXPECT_EQ(group_from_json(j).radices(), g.radices());
  Json bad = j;
  bad["factors"][1]["modulus"] = {1, 1, 1};
  EXPECT_THROW(group_from_json(bad), FormatError);
  bad = j;
  bad["factors"][0]["type"] = "dihedral";
  EXPECT_THROW(group_from_json(bad), FormatError);
  bad = j;
  bad["order"] = 17;
  EXPECT_THROW(group_from_json(bad), FormatError);
}

TEST(Io, DesignRoundTrip) {
  const Design d = develop(planar_set(3, 1, 2).blocks).design;
  const Design back = design_from_json(Json::parse(design_to_json(d).dump()));
  EXPECT_EQ(back.blocks(), d.blocks());
  EXPECT_EQ(back.labels(), d.labels());
}

TEST(Io, MalformedDocuments) {
  EXPECT_THROW(family_from_json(Json::parse("{}")), FormatError);
  Json f = family_to_json(mod4_pair_set(1, Mod4Variant::A));
  Json g = f;
  g["blocks"][0][0] = "(9,9)";
  EXPECT_THROW(family_from_json(g), FormatError);
  g = f;
  g["blocks"][0].push_back(g["blocks"][0][0]);
  EXPECT_THROW(family_from_json(g), FormatError);
  g = f;
  g["blocks"] = Json::array();
  EXPECT_THROW(family_from_json(g), FormatError);
  g = f;
  g["construction"] = "th99";
  EXPECT_THROW(family_from_json(g), FormatError);
  g = f;
  g["claimed"]["first"] = "many";
  EXPECT_THROW(family_from_json(g), FormatError);
  EXPECT_THROW(design_from_json(Json::parse(R"({"v": 3, "blocks": [[0, 3]]})")), FormatError);
  EXPECT_THROW(design_from_json(Json::parse(R"({"v": 3, "blocks": [[0, 0]]})")), FormatError);
  EXPECT_THROW(design_from_json(Json::parse(R"({"blocks": [[0]]})")), FormatError);
}

TEST(Io, FidelityRecordShape) {
  const auto f = mod4_pair_set(1, Mod4Variant::A);
  const auto rec = pgds_verdict(f, SemanticsChoice::both);
  const Json j = fidelity_to_json(rec);
  for (const char* key : {"construction", "params", "semantics_used", "in_value", "off_value", "claimed", "verdict", "profiles", "notes"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["verdict"], "ORDER-SWAPPED");
  EXPECT_EQ(j["profiles"].size(), 2u);
}
