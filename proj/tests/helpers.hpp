#pragma once

#include <vector>

#include "oracle.hpp"
#include "pgds/design.hpp"
#include "pgds/group.hpp"

inline oracle::AbGroup oracle_group(const pgds::Group& g) {
  oracle::AbGroup o;
  for (auto r : g.radices()) o.radices.push_back(static_cast<int>(r));
  return o;
}

inline std::vector<int> indices(const pgds::Subset& s) {
  std::vector<int> out;
  for (auto x : s) out.push_back(static_cast<int>(x.index));
  return out;
}

inline std::vector<std::vector<int>> indices(const std::vector<pgds::Subset>& fam) {
  std::vector<std::vector<int>> out;
  for (const auto& s : fam) out.push_back(indices(s));
  return out;
}

inline oracle::NaiveDesign naive(const pgds::Design& d) {
  oracle::NaiveDesign n;
  n.v = static_cast<int>(d.v());
  for (const auto& b : d.blocks()) n.blocks.emplace_back(b.begin(), b.end());
  return n;
}

inline pgds::Subset subset_of(const pgds::Group& g, std::initializer_list<std::vector<std::int64_t>> coords) {
  std::vector<pgds::Element> es;
  for (const auto& c : coords) es.push_back(g.from_parts(c));
  return pgds::Subset(g, es);
}
