#pragma once

// Window-sum profiles of a family of subsets under the two readings of the
// partial geometric difference family condition, and the fidelity verdict
// comparing a computed profile with a printed parameter tuple.
//
//   blockwise:     T(x)   = sum_i sum_{y in S_i} delta_{S_i}(x - y), classified
//                  by whether x is covered by some block.
//   family-window: T_i(x) = sum_{y in S_i} Delta(family)(x - y), classified by
//                  whether x lies in S_i.
//
// Both reduce to sum_{y in S} delta_S(x - y) for a single block.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pgds/constructions.hpp"
#include "pgds/group.hpp"

namespace pgds {

enum class Semantics { blockwise, family_window };

inline std::string to_string(Semantics s) { return s == Semantics::blockwise ? "blockwise" : "family-window"; }

struct FamilyProfile {
  Semantics semantics = Semantics::family_window;
  /// family-window: sums[i][x] for block i; blockwise: a single row sums[0][x].
  std::vector<std::vector<std::int64_t>> sums;
  /// Distinct values with multiplicities, on in-block (covered) and
  /// off-block (uncovered) pairs respectively.
  std::map<std::int64_t, std::int64_t> in_values;
  std::map<std::int64_t, std::int64_t> off_values;
  bool two_valued = false;
  std::optional<std::int64_t> in_value;
  std::optional<std::int64_t> off_value;
};

namespace detail {

inline void finish_profile(FamilyProfile& prof) {
  prof.two_valued = prof.in_values.size() == 1 && prof.off_values.size() == 1;
  if (prof.two_valued) {
    prof.in_value = prof.in_values.begin()->first;
    prof.off_value = prof.off_values.begin()->first;
  }
}

inline void check_family(std::span<const Subset> family) {
  if (family.empty()) throw ParameterError("profile of an empty family");
  for (const auto& s : family) {
    if (!(s.group() == family.front().group())) throw ParameterError("family mixes subsets of different groups");
    if (s.empty()) throw ParameterError("family contains an empty block");
  }
}

}  // namespace detail

inline FamilyProfile family_profile(std::span<const Subset> family, Semantics semantics) {
  detail::check_family(family);
  const Group& g = family.front().group();
  const std::uint32_t v = g.order();
  FamilyProfile prof;
  prof.semantics = semantics;

  if (semantics == Semantics::family_window) {
    const DifferenceMultiset all = delta_family(family);
    for (const auto& s : family) {
      std::vector<std::int64_t> row(v, 0);
      for (std::uint32_t x = 0; x < v; ++x) {
        std::int64_t t = 0;
        for (auto y : s) t += all[g.sub(Element{x}, y)];
        row[x] = t;
        ++(s.contains(Element{x}) ? prof.in_values : prof.off_values)[t];
      }
      prof.sums.push_back(std::move(row));
    }
  } else {
    std::vector<std::int64_t> row(v, 0);
    std::vector<char> covered(v, 0);
    for (const auto& s : family) {
      const DifferenceMultiset d = delta_multiset(s);
      for (std::uint32_t x = 0; x < v; ++x) {
        for (auto y : s) row[x] += d[g.sub(Element{x}, y)];
      }
      for (auto x : s) covered[x.index] = 1;
    }
    for (std::uint32_t x = 0; x < v; ++x) ++(covered[x] ? prof.in_values : prof.off_values)[row[x]];
    prof.sums.push_back(std::move(row));
  }
  detail::finish_profile(prof);
  return prof;
}

enum class Verdict { pass, order_swapped, value_mismatch, not_pg };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "PASS";
    case Verdict::order_swapped: return "ORDER-SWAPPED";
    case Verdict::value_mismatch: return "VALUE-MISMATCH";
    case Verdict::not_pg: return "NOT-PG";
  }
  return "?";
}

inline Verdict verdict_from_string(const std::string& s) {
  for (auto v : {Verdict::pass, Verdict::order_swapped, Verdict::value_mismatch, Verdict::not_pg}) {
    if (to_string(v) == s) return v;
  }
  throw FormatError("unknown verdict \"" + s + "\"");
}

/// CLI exit status for a verdict.
inline int exit_code(Verdict v) {
  switch (v) {
    case Verdict::pass: return 0;
    case Verdict::order_swapped: return 3;
    case Verdict::value_mismatch: return 4;
    case Verdict::not_pg: return 5;
  }
  return 1;
}

enum class SemanticsChoice { both, blockwise, family_window };

struct ProfileSummary {
  Semantics semantics;
  bool two_valued = false;
  std::optional<std::int64_t> in_value;
  std::optional<std::int64_t> off_value;
  std::map<std::int64_t, std::int64_t> in_values;
  std::map<std::int64_t, std::int64_t> off_values;
};

struct FidelityRecord {
  std::string construction;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  /// "family-window", "blockwise", or "none" when neither is two-valued.
  std::string semantics_used;
  std::optional<std::int64_t> in_value;
  std::optional<std::int64_t> off_value;
  std::int64_t claimed_first = 0;
  std::int64_t claimed_second = 0;
  Verdict verdict = Verdict::not_pg;
  std::vector<ProfileSummary> profiles;
  std::vector<std::string> notes;
};

inline ProfileSummary summarize(const FamilyProfile& p) {
  return {p.semantics, p.two_valued, p.in_value, p.off_value, p.in_values, p.off_values};
}

/// Compares a two-valued (in, off) pair with the printed (first, second).
inline Verdict compare_with_claim(std::int64_t in, std::int64_t off, const ClaimedProfile& c) {
  if (in == c.first && off == c.second) return Verdict::pass;
  if (in == c.second && off == c.first) return Verdict::order_swapped;
  return Verdict::value_mismatch;
}

/// Profiles the family under the requested semantics; family-window is
/// preferred when both are two-valued.
inline FidelityRecord pgds_verdict(const ConstructedFamily& fam, SemanticsChoice choice = SemanticsChoice::both) {
  FidelityRecord rec;
  rec.construction = to_string(fam.provenance.id);
  rec.params = fam.provenance.params;
  rec.claimed_first = fam.claimed.first;
  rec.claimed_second = fam.claimed.second;
  rec.notes = fam.notes;

  std::vector<FamilyProfile> runs;
  if (choice != SemanticsChoice::blockwise) runs.push_back(family_profile(fam.blocks, Semantics::family_window));
  if (choice != SemanticsChoice::family_window) runs.push_back(family_profile(fam.blocks, Semantics::blockwise));
  for (const auto& r : runs) rec.profiles.push_back(summarize(r));

  rec.semantics_used = "none";
  rec.verdict = Verdict::not_pg;
  for (const auto& r : runs) {
    if (!r.two_valued) continue;
    rec.semantics_used = to_string(r.semantics);
    rec.in_value = r.in_value;
    rec.off_value = r.off_value;
    rec.verdict = compare_with_claim(*r.in_value, *r.off_value, fam.claimed);
    break;
  }
  if (runs.size() == 2 && runs[0].two_valued != runs[1].two_valued) {
    rec.notes.push_back("blockwise and family-window readings disagree on two-valuedness");
  }
  return rec;
}

struct DifferenceSpectrum {
  /// Multiplicity of each value of delta_S(z) over z != 0.
  std::map<std::int64_t, std::int64_t> values;
  bool almost_difference_set = false;
};

/// Values of delta_S off zero; an almost difference set takes exactly two
/// consecutive values.
inline DifferenceSpectrum difference_spectrum(const Subset& s) {
  const DifferenceMultiset d = delta_multiset(s);
  DifferenceSpectrum out;
  for (std::uint32_t z = 1; z < s.group().order(); ++z) ++out.values[d[Element{z}]];
  out.almost_difference_set = out.values.size() == 2 && out.values.rbegin()->first - out.values.begin()->first == 1;
  return out;
}

}  // namespace pgds
