#pragma once

// Constructors for the candidate partial geometric difference sets and
// families, each paired with the parameter tuple printed for it. The printed
// tuple is a claim under test; nothing here assumes it is correct.

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pgds/arith.hpp"
#include "pgds/cyclotomy.hpp"
#include "pgds/field.hpp"
#include "pgds/group.hpp"

namespace pgds {

enum class ConstructionId { th30, th31, th32, th33, th40, cor40, cor41, th41, th42 };

inline constexpr ConstructionId kAllConstructions[] = {
    ConstructionId::th30, ConstructionId::th31, ConstructionId::th32, ConstructionId::th33, ConstructionId::th41,
    ConstructionId::th40, ConstructionId::cor40, ConstructionId::cor41, ConstructionId::th42,
};

inline std::string to_string(ConstructionId id) {
  switch (id) {
    case ConstructionId::th30: return "th30";
    case ConstructionId::th31: return "th31";
    case ConstructionId::th32: return "th32";
    case ConstructionId::th33: return "th33";
    case ConstructionId::th40: return "th40";
    case ConstructionId::cor40: return "cor40";
    case ConstructionId::cor41: return "cor41";
    case ConstructionId::th41: return "th41";
    case ConstructionId::th42: return "th42";
  }
  return "?";
}

inline ConstructionId construction_from_string(const std::string& s) {
  for (auto id : kAllConstructions) {
    if (to_string(id) == s) return id;
  }
  throw ParameterError("unknown construction id \"" + s + "\"");
}

/// The tuple printed for a construction, stored verbatim: `first` and
/// `second` are the last two tuple positions in printed order, with no
/// assumption about which one is the in-set value.
struct ClaimedProfile {
  std::int64_t v = 0;
  std::int64_t k = 0;
  std::int64_t n = 1;
  std::int64_t first = 0;
  std::int64_t second = 0;
  std::string source;

  bool operator==(const ClaimedProfile&) const = default;
};

struct Provenance {
  ConstructionId id = ConstructionId::th30;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
};

struct ConstructedFamily {
  Group group;
  std::vector<Subset> blocks;
  ClaimedProfile claimed;
  Provenance provenance;
  /// Observations made while building, e.g. a printed block count that
  /// differs from the number of blocks produced.
  std::vector<std::string> notes;

  std::size_t block_size() const { return blocks.empty() ? 0 : blocks.front().size(); }
};

/// Parameters a printed tuple depends on. Unused fields stay zero.
struct ClaimParams {
  std::int64_t m = 0;      // cyclic factor order (th30/th40/cor40) or subgroup order (th42)
  std::int64_t p = 0;
  std::int64_t l = 0;
  std::int64_t u = 0;
  std::int64_t kappa = 0;
  std::int64_t m_exp = 0;  // th32: field F_{p^m_exp}
  std::int64_t n = 0;      // th42: group order
  int pattern = 0;         // cor41: 0 or 1
};

namespace detail {

inline void require(bool ok, const std::string& constraint) {
  if (!ok) throw ParameterError(constraint);
}

inline bool odd_prime(std::int64_t p) { return p > 2 && is_prime(static_cast<std::uint64_t>(p)); }

inline void require_odd_prime(std::int64_t p, const std::string& id) {
  require(odd_prime(p), id + " requires p an odd prime (got p = " + std::to_string(p) + ")");
}

}  // namespace detail

/// Evaluates the printed parameter formula of a construction.
inline ClaimedProfile claimed_profile(ConstructionId id, const ClaimParams& c) {
  using detail::require;
  ClaimedProfile out;
  const std::int64_t p = c.p, m = c.m, k = c.kappa;
  switch (id) {
    case ConstructionId::th30: {
      detail::require_odd_prime(p, "th30");
      require(m > 0 && m % 2 == 0, "th30 requires m even (got m = " + std::to_string(m) + ")");
      out = {m * p * p, m * p, 1, (m / 2) * (m / 2) * p * (p + 3), 3 * m * m * p / 4,
             "th30: (mp^2, mp; (m/2)^2 p(p+3), (3/4)m^2 p)"};
      break;
    }
    case ConstructionId::th31: {
      detail::require_odd_prime(p, "th31");
      out = {6 * p * p, 4 * p, 1, 20 * p, 8 * p, "th31: (6p^2, 4p; 20p, 8p)"};
      break;
    }
    case ConstructionId::th32: {
      detail::require_odd_prime(p, "th32");
      require(c.m_exp >= 1, "th32 requires m >= 1");
      const std::int64_t n = checked_pow(p, static_cast<std::uint32_t>(c.m_exp));
      out = {n * n, n, 1, 2 * n - 1, n - 1, "th32: (n^2, n; 2n-1, n-1), n = p^m"};
      break;
    }
    case ConstructionId::th33: {
      require(c.l >= 1, "th33 requires n = 4l for a positive integer l (got l = " + std::to_string(c.l) + ")");
      const std::int64_t l = c.l;
      out = {8 * l, 4 * l, 1, 6 * l * l, 10 * l * l, "th33: (8l, 4l; 6l^2, 10l^2)"};
      break;
    }
    case ConstructionId::th41: {
      detail::require_odd_prime(p, "th41");
      require(c.u >= 2, "th41 requires u >= 2 an integer (got u = " + std::to_string(c.u) + ")");
      const auto u = static_cast<std::uint32_t>(c.u);
      const std::int64_t pu = checked_pow(p, u), pu1 = checked_pow(p, u - 1), pu2 = checked_pow(p, u - 2);
      const std::int64_t b = checked_mul(checked_mul(pu1 - 1, pu1), pu2);
      out = {pu, pu1, pu1, b, pu + b, "th41: (p^u, p^(u-1), p^(u-1); (p^(u-1)-1)p^(u-1)p^(u-2), p^u+(p^(u-1)-1)p^(u-1)p^(u-2))"};
      break;
    }
    case ConstructionId::th40:
    case ConstructionId::cor40: {
      const std::string name = to_string(id);
      detail::require_odd_prime(p, name);
      require(m > 0 && m % 2 == 0, name + " requires m even (got m = " + std::to_string(m) + ")");
      require(k >= 1 && 2 * k <= p + 1, name + " requires 1 <= kappa <= (p+1)/2");
      const std::int64_t base = (m / 2) * (m / 2) * p * (p + 3);
      const std::int64_t q = 3 * m * m * p / 4;  // (3/4) m^2 p
      if (id == ConstructionId::th40) {
        out = {m * p * p, m * p, k, base + (k - 1) * q, k * q,
               "th40: (mp^2, mp, kappa; (m/2)^2 p(p+3)+(kappa-1)(3/4)m^2 p, kappa(3/4)m^2 p)"};
      } else {
        out = {m * p * p, m * p, k, base + (2 * k - 1) * q, k * 3 * m * m * p / 2,
               "cor40: (mp^2, mp, kappa; (m/2)^2 p(p+3)+(2kappa-1)(3/4)m^2 p, kappa(3/2)m^2 p)"};
      }
      break;
    }
    case ConstructionId::cor41: {
      detail::require_odd_prime(p, "cor41");
      require(k >= 1 && 2 * k <= p + 1, "cor41 requires 1 <= kappa <= (p+1)/2");
      require(c.pattern == 0 || c.pattern == 1, "cor41 pattern must be theta0 or theta1");
      if (c.pattern == 0) {
        out = {6 * p * p, 4 * p, k, 20 * p + 8 * (k - 1) * p, 8 * k * p,
               "cor41/theta0: (6p^2, 4p, kappa; 20p+8(kappa-1)p, 8kappa p)"};
      } else {
        out = {6 * p * p, 4 * p, 2 * k, 20 * p + 8 * (2 * k - 1) * p, 16 * k * p,
               "cor41/theta1: (6p^2, 4p, 2kappa; 20p+8(2kappa-1)p, 16kappa p)"};
      }
      break;
    }
    case ConstructionId::th42: {
      const std::int64_t n = c.n;
      require(n > 1 && n % 2 == 1 && !is_prime(static_cast<std::uint64_t>(n)),
              "th42 requires G abelian of odd, composite order n (got n = " + std::to_string(n) + ")");
      require(m > 1 && m < n && n % m == 0, "th42 requires a proper, nontrivial subgroup order m with m | n");
      const std::int64_t kk = (n / m - 1) / 2;
      out = {n, 2 * m, kk, n + m * (m - 1), 2 * m * m, "th42: (n, 2m, kappa; n+m(m-1), 2m^2), kappa = (n/m-1)/2"};
      break;
    }
  }
  return out;
}

namespace detail {

/// S_i = C_i ∪ {0} for the classes of order p + 1 in F_{p^2}, as field elements.
inline std::vector<FieldElement> line_through_zero(const CyclotomicTable& t, std::uint32_t i) {
  std::vector<FieldElement> out{FieldElement{0}};
  for (auto x : t.cls(i)) out.push_back(FieldElement{x.index});
  return out;
}

/// Union over parts of {h} x S for h in the listed residues of the cyclic factor.
inline Subset product_block(const Group& g, const std::vector<std::pair<std::vector<std::int64_t>, std::vector<FieldElement>>>& parts) {
  std::vector<Element> out;
  for (const auto& [hs, zs] : parts) {
    for (auto h : hs) {
      for (auto z : zs) {
        const std::int64_t hc[] = {h};
        const FieldElement zc[] = {z};
        out.push_back(g.from_parts(hc, zc));
      }
    }
  }
  return Subset::from_union(g, std::move(out));
}

inline std::vector<std::int64_t> residues(std::int64_t start, std::int64_t step, std::int64_t end) {
  std::vector<std::int64_t> out;
  for (std::int64_t x = start; x < end; x += step) out.push_back(x);
  return out;
}

inline void check_class_pair(std::int64_t p, std::int64_t i, std::int64_t j, const std::string& id) {
  require(i >= 0 && i <= p && j >= 0 && j <= p, id + " requires class indices in {0, ..., p}");
  require(i != j, id + " requires i' != j'");
}

inline void note_duplicates(ConstructedFamily& fam) {
  std::set<std::vector<Element>> seen;
  for (const auto& b : fam.blocks) {
    if (!seen.insert(b.elements()).second) {
      fam.notes.push_back("duplicate blocks: family is not a collection of distinct k-subsets");
      return;
    }
  }
}

inline void note_block_count(ConstructedFamily& fam) {
  if (fam.claimed.n != static_cast<std::int64_t>(fam.blocks.size())) {
    fam.notes.push_back("printed block count " + std::to_string(fam.claimed.n) + " differs from the " +
                        std::to_string(fam.blocks.size()) + " blocks produced");
  }
}

}  // namespace detail

/// Sigma_0 x S_i ∪ Sigma_1 x S_j in Z_m x F_{p^2}, Sigma_l = l + {0, 2, ..., m-2}.
inline ConstructedFamily sigma_product_set(std::int64_t m, std::int64_t p, std::int64_t i, std::int64_t j) {
  ClaimParams cp;
  cp.m = m;
  cp.p = p;
  ConstructedFamily fam{Group{}, {}, claimed_profile(ConstructionId::th30, cp), {ConstructionId::th30, {}}, {}};
  detail::check_class_pair(p, i, j, "th30");
  const auto field = build_field(static_cast<std::uint32_t>(p), 2);
  const CyclotomicTable t(field, static_cast<std::uint32_t>(p + 1));
  fam.group = Group::make({m}, field);
  fam.blocks.push_back(detail::product_block(fam.group, {{detail::residues(0, 2, m), detail::line_through_zero(t, i)},
                                                         {detail::residues(1, 2, m), detail::line_through_zero(t, j)}}));
  fam.provenance.params = {{"m", m}, {"p", p}, {"i", i}, {"j", j}};
  return fam;
}

/// {0,3} x S_i ∪ {1,4} x S_j in Z_6 x F_{p^2}.
inline ConstructedFamily z6_product_set(std::int64_t p, std::int64_t i, std::int64_t j) {
  ClaimParams cp;
  cp.p = p;
  ConstructedFamily fam{Group{}, {}, claimed_profile(ConstructionId::th31, cp), {ConstructionId::th31, {}}, {}};
  detail::check_class_pair(p, i, j, "th31");
  const auto field = build_field(static_cast<std::uint32_t>(p), 2);
  const CyclotomicTable t(field, static_cast<std::uint32_t>(p + 1));
  fam.group = Group::make({6}, field);
  fam.blocks.push_back(
      detail::product_block(fam.group, {{{0, 3}, detail::line_through_zero(t, i)}, {{1, 4}, detail::line_through_zero(t, j)}}));
  fam.provenance.params = {{"p", p}, {"i", i}, {"j", j}};
  return fam;
}

/// A shift a != 0 and value b hit more than once by x -> f(x + a) - f(x).
struct NonlinearityWitness {
  FieldElement a;
  FieldElement b;
  std::int64_t count = 0;
};

/// Checks that every nonzero-shift difference map of x^s is a bijection.
/// Returns the first failing (a, b) pair, or nothing when x^s is planar.
inline std::optional<NonlinearityWitness> certify_perfect_nonlinearity(const Field& f, std::uint64_t s) {
  const std::uint32_t q = f.order();
  std::vector<FieldElement> power(q);
  for (std::uint32_t x = 0; x < q; ++x) power[x] = f.pow(FieldElement{x}, s);
  std::vector<std::int64_t> hits(q);
  for (std::uint32_t a = 1; a < q; ++a) {
    std::fill(hits.begin(), hits.end(), 0);
    for (std::uint32_t x = 0; x < q; ++x) {
      const FieldElement xa = f.add(FieldElement{x}, FieldElement{a});
      ++hits[f.sub(power[xa.code], power[x]).code];
    }
    for (std::uint32_t b = 0; b < q; ++b) {
      if (hits[b] != 1) {
        std::uint32_t worst = b;
        for (std::uint32_t c = 0; c < q; ++c) {
          if (hits[c] > hits[worst]) worst = c;
        }
        return NonlinearityWitness{FieldElement{a}, FieldElement{worst}, hits[worst]};
      }
    }
  }
  return std::nullopt;
}

/// Which listed planar exponent family s belongs to for F_{p^m}, if any.
inline std::optional<std::string> planar_exponent_case(std::int64_t p, std::int64_t m, std::int64_t s) {
  if (s == 2) return "s = 2";
  for (std::int64_t k = 1;; ++k) {
    const std::int64_t pk = checked_pow(p, static_cast<std::uint32_t>(k));
    if (pk + 1 > s) break;
    if (pk + 1 == s && (m / std::gcd(m, k)) % 2 == 1) return "s = p^" + std::to_string(k) + " + 1";
  }
  if (p == 3) {
    for (std::int64_t k = 1;; k += 2) {
      const std::int64_t v = (checked_pow(3, static_cast<std::uint32_t>(k)) + 1) / 2;
      if (v > s) break;
      if (v == s && std::gcd(m, k) == 1) return "s = (3^" + std::to_string(k) + " + 1)/2";
    }
  }
  return std::nullopt;
}

struct PlanarFunction {
  FieldPtr field;
  std::uint64_t exponent = 2;
  /// preimages[b.code] = {x : x^s = b}.
  std::vector<std::vector<FieldElement>> preimages;
};

inline PlanarFunction make_planar_function(FieldPtr field, std::uint64_t s) {
  PlanarFunction f{field, s, std::vector<std::vector<FieldElement>>(field->order())};
  for (std::uint32_t x = 0; x < field->order(); ++x) f.preimages[field->pow(FieldElement{x}, s).code].push_back(FieldElement{x});
  return f;
}

/// C = ∪_b {b} x C_b in B x A = F_{p^m} x F_{p^m}, C_b the preimage of b under x^s.
inline ConstructedFamily planar_set(std::int64_t p, std::int64_t m_exp, std::int64_t s) {
  ClaimParams cp;
  cp.p = p;
  cp.m_exp = m_exp;
  ConstructedFamily fam{Group{}, {}, claimed_profile(ConstructionId::th32, cp), {ConstructionId::th32, {}}, {}};
  const auto kase = planar_exponent_case(p, m_exp, s);
  detail::require(kase.has_value(), "th32 exponent s = " + std::to_string(s) +
                                        " is not one of: s = 2; s = p^k + 1 with m/gcd(m,k) odd; s = (3^k + 1)/2 with p = 3, k odd, gcd(m,k) = 1");
  const auto field = build_field(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(m_exp));
  if (auto w = certify_perfect_nonlinearity(*field, static_cast<std::uint64_t>(s))) {
    throw ParameterError("th32 exponent s = " + std::to_string(s) + " is not perfect nonlinear: shift a = " +
                         field->format(w->a) + " hits b = " + field->format(w->b) + " " + std::to_string(w->count) + " times");
  }
  fam.group = Group({Factor::additive(field), Factor::additive(field)});
  const auto f = make_planar_function(field, static_cast<std::uint64_t>(s));
  std::vector<Element> out;
  for (std::uint32_t b = 0; b < field->order(); ++b) {
    for (auto x : f.preimages[b]) {
      const FieldElement coords[] = {FieldElement{b}, x};
      out.push_back(fam.group.from_parts({}, coords));
    }
  }
  fam.blocks.emplace_back(fam.group, std::move(out));
  fam.provenance.params = {{"p", p}, {"m", m_exp}, {"s", s}};
  fam.notes.push_back("planar exponent case: " + *kase);
  return fam;
}

enum class Mod4Variant { A, B };

/// In Z_2 x Z_{4l} with H = <4>: variant A is {0} x (H ∪ (H+1)) ∪ {1} x (H ∪ (H+3));
/// variant B swaps the first coordinates.
inline ConstructedFamily mod4_pair_set(std::int64_t l, Mod4Variant variant) {
  ClaimParams cp;
  cp.l = l;
  ConstructedFamily fam{Group{}, {}, claimed_profile(ConstructionId::th33, cp), {ConstructionId::th33, {}}, {}};
  const std::int64_t n = 4 * l;
  fam.group = Group::make({2, n});
  const std::int64_t first = variant == Mod4Variant::A ? 0 : 1;
  std::vector<Element> out;
  for (std::int64_t x = 0; x < n; ++x) {
    if (x % 4 == 0 || x % 4 == 1) {
      const std::int64_t c[] = {first, x};
      out.push_back(fam.group.from_parts(c));
    }
    if (x % 4 == 0 || x % 4 == 3) {
      const std::int64_t c[] = {1 - first, x};
      out.push_back(fam.group.from_parts(c));
    }
  }
  fam.blocks.emplace_back(fam.group, std::move(out));
  fam.provenance.params = {{"l", l}, {"variant", variant == Mod4Variant::A ? "A" : "B"}};
  return fam;
}

/// S_l = (pl - 1) * {0, ..., p^(u-1) - 1} in Z_{p^u} for l = 1, ..., p^(u-1).
inline ConstructedFamily multiplier_family(std::int64_t p, std::int64_t u) {
  ClaimParams cp;
  cp.p = p;
  cp.u = u;
  ConstructedFamily fam{Group{}, {}, claimed_profile(ConstructionId::th41, cp), {ConstructionId::th41, {}}, {}};
  const std::int64_t n = fam.claimed.v, k = fam.claimed.k;
  fam.group = Group::make({n});
  for (std::int64_t l = 1; l <= k; ++l) {
    std::vector<Element> out;
    for (std::int64_t s = 0; s < k; ++s) {
      const std::int64_t c[] = {(p * l - 1) % n * s % n};
      out.push_back(fam.group.from_parts(c));
    }
    fam.blocks.push_back(Subset::from_union(fam.group, std::move(out)));
  }
  fam.provenance.params = {{"p", p}, {"u", u}};
  detail::note_duplicates(fam);
  return fam;
}

struct ThetaBase {
  enum class Kind { sigma, z6 } kind = Kind::sigma;
  std::int64_t m = 2;  // cyclic factor order for sigma
};

enum class ThetaPattern { theta0, theta1 };

/// Default ordered pairs for I = (i_1, ..., i_2k): theta0 pairs consecutive
/// entries, theta1 is the cyclic chain (i_2k, i_1), (i_1, i_2), ..., (i_2k-1, i_2k).
inline std::vector<std::pair<std::int64_t, std::int64_t>> default_theta_pairs(const std::vector<std::int64_t>& index_set, ThetaPattern pattern) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  const std::size_t n = index_set.size();
  if (n == 0) return out;
  if (pattern == ThetaPattern::theta0) {
    for (std::size_t a = 0; a + 1 < n; a += 2) out.emplace_back(index_set[a], index_set[a + 1]);
  } else {
    out.emplace_back(index_set[n - 1], index_set[0]);
    for (std::size_t a = 0; a + 1 < n; ++a) out.emplace_back(index_set[a], index_set[a + 1]);
  }
  return out;
}

/// One block per ordered pair (i', j'), built as in the sigma or z6 single-set
/// construction.
inline ConstructedFamily theta_family(ThetaBase base, std::int64_t p, const std::vector<std::int64_t>& index_set, ThetaPattern pattern,
                                      std::optional<std::vector<std::pair<std::int64_t, std::int64_t>>> pairs = std::nullopt) {
  using detail::require;
  const bool sigma = base.kind == ThetaBase::Kind::sigma;
  ConstructionId id = sigma ? (pattern == ThetaPattern::theta0 ? ConstructionId::th40 : ConstructionId::cor40) : ConstructionId::cor41;
  const std::string name = to_string(id);
  detail::require_odd_prime(p, name);
  const std::set<std::int64_t> iset(index_set.begin(), index_set.end());
  require(iset.size() == index_set.size(), name + " requires I to have distinct entries");
  for (auto i : index_set) require(i >= 0 && i <= p, name + " requires I ⊆ {0, ..., p}");
  require(!index_set.empty() && index_set.size() % 2 == 0, name + " requires |I| = 2kappa even and positive");
  const std::int64_t kappa = static_cast<std::int64_t>(index_set.size() / 2);

  auto ps = pairs ? *pairs : default_theta_pairs(index_set, pattern);
  std::map<std::int64_t, int> as_first, as_second;
  for (auto [a, b] : ps) {
    require(iset.count(a) && iset.count(b) && a != b, name + " pattern pairs must be ordered pairs of distinct members of I");
    ++as_first[a];
    ++as_second[b];
  }
  if (pattern == ThetaPattern::theta0) {
    require(ps.size() == static_cast<std::size_t>(kappa), name + " theta0 must pair each member of I exactly once");
    std::map<std::int64_t, int> uses;
    for (auto [a, b] : ps) {
      ++uses[a];
      ++uses[b];
    }
    for (auto i : index_set) require(uses[i] == 1, name + " theta0 must pair each member of I exactly once");
  } else {
    require(ps.size() == index_set.size(), name + " theta1 must be a cyclic chain through all of I");
    for (auto i : index_set) require(as_first[i] == 1 && as_second[i] == 1, name + " theta1 must be a cyclic chain through all of I");
    std::map<std::int64_t, std::int64_t> next;
    for (auto [a, b] : ps) next[a] = b;
    std::int64_t cur = index_set.front();
    std::size_t steps = 0;
    do {
      cur = next[cur];
      ++steps;
    } while (cur != index_set.front() && steps <= ps.size());
    require(steps == ps.size(), name + " theta1 must be a single cycle through all of I");
  }

  ClaimParams cp;
  cp.p = p;
  cp.m = base.m;
  cp.kappa = kappa;
  cp.pattern = pattern == ThetaPattern::theta0 ? 0 : 1;
  ConstructedFamily fam{Group{}, {}, claimed_profile(id, cp), {id, {}}, {}};

  const auto field = build_field(static_cast<std::uint32_t>(p), 2);
  const CyclotomicTable t(field, static_cast<std::uint32_t>(p + 1));
  fam.group = Group::make({sigma ? base.m : 6}, field);
  for (auto [a, b] : ps) {
    if (sigma) {
      fam.blocks.push_back(detail::product_block(fam.group, {{detail::residues(0, 2, base.m), detail::line_through_zero(t, a)},
                                                             {detail::residues(1, 2, base.m), detail::line_through_zero(t, b)}}));
    } else {
      fam.blocks.push_back(
          detail::product_block(fam.group, {{{0, 3}, detail::line_through_zero(t, a)}, {{1, 4}, detail::line_through_zero(t, b)}}));
    }
  }
  nlohmann::ordered_json jpairs = nlohmann::ordered_json::array();
  for (auto [a, b] : ps) jpairs.push_back({a, b});
  fam.provenance.params = {{"base", sigma ? "sigma" : "z6"}};
  if (sigma) fam.provenance.params["m"] = base.m;
  fam.provenance.params["p"] = p;
  fam.provenance.params["I"] = index_set;
  fam.provenance.params["pattern"] = pattern == ThetaPattern::theta0 ? "theta0" : "theta1";
  fam.provenance.params["pairs"] = jpairs;
  detail::note_duplicates(fam);
  detail::note_block_count(fam);
  return fam;
}

/// Blocks H ∪ (H + g_i), after checking that the cosets H ± g_i partition G \ H.
inline ConstructedFamily coset_pair_family(const Group& g, const Subset& h, const std::vector<Element>& reps) {
  using detail::require;
  require(h.group() == g, "th42 subgroup must belong to the group");
  ClaimParams cp;
  cp.n = g.order();
  cp.m = static_cast<std::int64_t>(h.size());
  ConstructedFamily fam{g, {}, claimed_profile(ConstructionId::th42, cp), {ConstructionId::th42, {}}, {}};
  require(h.contains(g.zero()), "th42 H must be a subgroup");
  for (auto a : h) {
    for (auto b : h) require(h.contains(g.add(a, b)), "th42 H must be a subgroup (not closed under addition)");
  }
  const std::size_t kappa = static_cast<std::size_t>(fam.claimed.n);
  require(reps.size() == kappa, "th42 requires kappa = (n/m - 1)/2 = " + std::to_string(kappa) + " representatives");

  std::vector<char> covered(g.order(), 0);
  for (auto x : h) covered[x.index] = 1;
  for (auto r : reps) {
    require(g.contains(r), "th42 representative outside the group");
    for (Element shift : {r, g.neg(r)}) {
      const Subset c = h.translate(shift);
      for (auto x : c) {
        if (covered[x.index]) {
          throw ParameterError("th42 requires {H ± g_i} to partition G \\ H; coset " + c.format() + " overlaps an earlier coset or H");
        }
        covered[x.index] = 1;
      }
    }
  }
  for (auto r : reps) {
    std::vector<Element> block(h.begin(), h.end());
    for (auto x : h) block.push_back(g.add(x, r));
    fam.blocks.emplace_back(g, std::move(block));
  }
  nlohmann::ordered_json jreps = nlohmann::ordered_json::array();
  for (auto r : reps) jreps.push_back(g.format(r));
  fam.provenance.params = {{"n", g.order()}, {"m", h.size()}, {"H", h.format()}, {"reps", jreps}};
  return fam;
}

/// Greedy representatives g_1 < g_2 < ... (in element order) whose cosets
/// H ± g_i partition G \ H. Always succeeds for odd |G|.
inline std::vector<Element> greedy_coset_pair_reps(const Group& g, const Subset& h) {
  std::vector<char> covered(g.order(), 0);
  for (auto x : h) covered[x.index] = 1;
  std::vector<Element> reps;
  for (std::uint32_t i = 0; i < g.order(); ++i) {
    if (covered[i]) continue;
    const Element r{i};
    const Subset plus = h.translate(r), minus = h.translate(g.neg(r));
    if (plus == minus) continue;
    for (auto x : plus) covered[x.index] = 1;
    for (auto x : minus) covered[x.index] = 1;
    reps.push_back(r);
  }
  return reps;
}

}  // namespace pgds
