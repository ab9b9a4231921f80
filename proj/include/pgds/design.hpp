#pragma once

// Incidence structures, developments of difference families, and two
// independent certifications of the partial geometric property: direct flag
// counting s(u,b) and the incidence-matrix identity A A^T A = n' A + c J.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "pgds/error.hpp"
#include "pgds/group.hpp"
#include "pgds/matrix.hpp"

namespace pgds {

/// Points 0..v-1 with optional labels, and a list of blocks (sorted point
/// lists; repeated blocks allowed).
class Design {
 public:
  Design(std::size_t v, std::vector<std::vector<std::uint32_t>> blocks, std::vector<std::string> labels = {})
      : v_(v), blocks_(std::move(blocks)), labels_(std::move(labels)) {
    if (!labels_.empty() && labels_.size() != v_) throw ParameterError("label count differs from point count");
    for (auto& b : blocks_) {
      std::sort(b.begin(), b.end());
      if (b.empty()) throw ParameterError("design contains an empty block");
      for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i] >= v_) throw ParameterError("block point out of range");
        if (i && b[i] == b[i - 1]) throw ParameterError("block repeats a point");
      }
    }
  }

  std::size_t v() const noexcept { return v_; }
  std::size_t b() const noexcept { return blocks_.size(); }
  const std::vector<std::vector<std::uint32_t>>& blocks() const noexcept { return blocks_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::string label(std::size_t u) const { return labels_.empty() ? std::to_string(u) : labels_.at(u); }

  bool incident(std::size_t u, std::size_t blk) const {
    const auto& bl = blocks_[blk];
    return std::binary_search(bl.begin(), bl.end(), static_cast<std::uint32_t>(u));
  }

  /// v x b 0/1 matrix.
  IntMatrix incidence() const {
    IntMatrix a(v_, blocks_.size());
    for (std::size_t j = 0; j < blocks_.size(); ++j) {
      for (auto u : blocks_[j]) a(u, j) = 1;
    }
    return a;
  }

  std::vector<std::int64_t> replication_numbers() const {
    std::vector<std::int64_t> r(v_, 0);
    for (const auto& bl : blocks_) {
      for (auto u : bl) ++r[u];
    }
    return r;
  }

  /// r_uw counted block by block (diagonal holds r_u).
  IntMatrix pair_indices() const {
    IntMatrix n(v_, v_);
    for (const auto& bl : blocks_) {
      for (auto u : bl) {
        for (auto w : bl) ++n(u, w);
      }
    }
    return n;
  }

  /// Same design with one incidence toggled.
  Design with_flipped(std::size_t u, std::size_t blk) const {
    auto blocks = blocks_;
    auto& bl = blocks.at(blk);
    auto it = std::find(bl.begin(), bl.end(), static_cast<std::uint32_t>(u));
    if (it == bl.end()) {
      bl.push_back(static_cast<std::uint32_t>(u));
    } else {
      bl.erase(it);
    }
    return Design(v_, std::move(blocks), labels_);
  }

 private:
  std::size_t v_;
  std::vector<std::vector<std::uint32_t>> blocks_;
  std::vector<std::string> labels_;
};

struct TacticalParameters {
  std::int64_t k = 0;
  std::int64_t r = 0;
};

inline std::optional<TacticalParameters> tactical_parameters(const Design& d) noexcept {
  if (d.b() == 0 || d.v() == 0) return std::nullopt;
  const auto r = d.replication_numbers();
  const auto k = static_cast<std::int64_t>(d.blocks().front().size());
  for (const auto& bl : d.blocks()) {
    if (static_cast<std::int64_t>(bl.size()) != k) return std::nullopt;
  }
  for (auto x : r) {
    if (x != r.front()) return std::nullopt;
  }
  return TacticalParameters{k, r.front()};
}

/// Throws NotTacticalError naming the first offending block or point.
inline TacticalParameters require_tactical(const Design& d) {
  if (d.b() == 0) throw NotTacticalError("design has no blocks");
  const auto k = d.blocks().front().size();
  for (std::size_t j = 0; j < d.b(); ++j) {
    if (d.blocks()[j].size() != k) {
      throw NotTacticalError("block " + std::to_string(j) + " has size " + std::to_string(d.blocks()[j].size()) + ", block 0 has size " +
                             std::to_string(k));
    }
  }
  const auto r = d.replication_numbers();
  for (std::size_t u = 0; u < d.v(); ++u) {
    if (r[u] != r.front()) {
      throw NotTacticalError("point " + d.label(u) + " has replication number " + std::to_string(r[u]) + ", point " + d.label(0) +
                             " has " + std::to_string(r.front()));
    }
  }
  return {static_cast<std::int64_t>(k), r.front()};
}

enum class DevelopMode { set, multiset };

struct Development {
  Design design;
  Group group;
  std::int64_t translates = 0;  // n * |G| before collapsing
  std::int64_t collapsed = 0;   // translates dropped as repeats (set mode)
};

/// All translates S_i + g. Set mode keeps each distinct block once, sorted;
/// multiset mode keeps every translate.
inline Development develop(std::span<const Subset> family, DevelopMode mode = DevelopMode::set) {
  if (family.empty()) throw ParameterError("development of an empty family");
  const Group& g = family.front().group();
  std::vector<std::vector<std::uint32_t>> blocks;
  for (const auto& s : family) {
    if (!(s.group() == g)) throw ParameterError("family mixes subsets of different groups");
    for (std::uint32_t t = 0; t < g.order(); ++t) {
      std::vector<std::uint32_t> bl;
      bl.reserve(s.size());
      for (auto x : s) bl.push_back(g.add(x, Element{t}).index);
      std::sort(bl.begin(), bl.end());
      blocks.push_back(std::move(bl));
    }
  }
  const auto total = static_cast<std::int64_t>(blocks.size());
  std::sort(blocks.begin(), blocks.end());
  if (mode == DevelopMode::set) blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
  std::vector<std::string> labels;
  labels.reserve(g.order());
  for (std::uint32_t x = 0; x < g.order(); ++x) labels.push_back(g.format(Element{x}));
  const auto kept = static_cast<std::int64_t>(blocks.size());
  return Development{Design(g.order(), std::move(blocks), std::move(labels)), g, total, total - kept};
}

struct PGReport {
  std::string method;  // "flag-count" or "matrix"
  std::int64_t v = 0, b = 0, k = 0, r = 0;
  /// s(u,b) values with multiplicities on flags (u in b) and anti-flags.
  std::map<std::int64_t, std::int64_t> flag_values;
  std::map<std::int64_t, std::int64_t> antiflag_values;
  bool partial_geometric = false;
  /// Constant s on flags / on anti-flags when partial geometric.
  std::optional<std::int64_t> s_flag;
  std::optional<std::int64_t> s_antiflag;
  /// A A^T A = n' A + c J, with c = s_antiflag and n' = r + k - 1 + s_flag - s_antiflag.
  std::optional<std::int64_t> n_prime;
  std::optional<std::int64_t> j_coefficient;
  /// Matrix method only.
  bool residual_zero = false;
  bool sums_ok = false;  // A J = r J and J A = k J
  std::optional<std::string> first_residual;
};

namespace detail {

inline void classify_s(PGReport& rep) {
  rep.partial_geometric = rep.flag_values.size() <= 1 && rep.antiflag_values.size() <= 1;
  if (!rep.partial_geometric) return;
  if (!rep.flag_values.empty()) rep.s_flag = rep.flag_values.begin()->first;
  if (!rep.antiflag_values.empty()) rep.s_antiflag = rep.antiflag_values.begin()->first;
  const std::int64_t sa = rep.s_antiflag.value_or(0);
  const std::int64_t sf = rep.s_flag.value_or(0);
  rep.j_coefficient = sa;
  rep.n_prime = rep.r + rep.k - 1 + sf - sa;
}

}  // namespace detail

/// s(u,b) from pair indices: sum_{w in b, w != u} (r_uw - 1) for u in b,
/// sum_{w in b} r_uw otherwise.
inline PGReport s_counts(const Design& d) {
  const auto tp = require_tactical(d);
  PGReport rep;
  rep.method = "flag-count";
  rep.v = static_cast<std::int64_t>(d.v());
  rep.b = static_cast<std::int64_t>(d.b());
  rep.k = tp.k;
  rep.r = tp.r;
  const IntMatrix idx = d.pair_indices();
  for (std::size_t j = 0; j < d.b(); ++j) {
    const auto& bl = d.blocks()[j];
    for (std::size_t u = 0; u < d.v(); ++u) {
      std::int64_t s = 0;
      const bool in = d.incident(u, j);
      for (auto w : bl) {
        if (w == u) continue;
        s += in ? idx(u, w) - 1 : idx(u, w);
      }
      ++(in ? rep.flag_values : rep.antiflag_values)[s];
    }
  }
  detail::classify_s(rep);
  rep.sums_ok = true;
  rep.residual_zero = rep.partial_geometric;
  return rep;
}

/// Solves A A^T A = n' A + c J from one incident and one non-incident entry,
/// then checks the identity at every entry.
inline PGReport pg_check_matrix(const Design& d) {
  const auto tp = require_tactical(d);
  PGReport rep;
  rep.method = "matrix";
  rep.v = static_cast<std::int64_t>(d.v());
  rep.b = static_cast<std::int64_t>(d.b());
  rep.k = tp.k;
  rep.r = tp.r;
  const IntMatrix a = d.incidence();
  const IntMatrix m = a * a.transpose() * a;

  rep.sums_ok = true;
  for (auto s : a.row_sums()) rep.sums_ok = rep.sums_ok && s == tp.r;
  for (auto s : a.col_sums()) rep.sums_ok = rep.sums_ok && s == tp.k;

  std::optional<std::int64_t> at_flag, at_anti;
  for (std::size_t u = 0; u < a.rows() && !(at_flag && at_anti); ++u) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(u, j) && !at_flag) at_flag = m(u, j);
      if (!a(u, j) && !at_anti) at_anti = m(u, j);
    }
  }
  const std::int64_t c = at_anti.value_or(0);
  const std::int64_t n_prime = at_flag.value_or(c) - c;

  rep.residual_zero = true;
  for (std::size_t u = 0; u < a.rows(); ++u) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const std::int64_t want = n_prime * a(u, j) + c;
      if (m(u, j) != want && rep.residual_zero) {
        rep.residual_zero = false;
        std::ostringstream os;
        os << "(AA^TA)[" << d.label(u) << "][" << j << "] = " << m(u, j) << ", expected " << want;
        rep.first_residual = os.str();
      }
      // s(u,b) recovered from the entry: flags carry r + k - 1 extra.
      const std::int64_t s = a(u, j) ? m(u, j) - (tp.r + tp.k - 1) : m(u, j);
      ++(a(u, j) ? rep.flag_values : rep.antiflag_values)[s];
    }
  }
  rep.partial_geometric = rep.residual_zero && rep.sums_ok;
  if (rep.partial_geometric) {
    rep.n_prime = n_prime;
    rep.j_coefficient = c;
    rep.s_antiflag = at_anti ? std::optional<std::int64_t>(c) : std::nullopt;
    rep.s_flag = at_flag ? std::optional<std::int64_t>(*at_flag - (tp.r + tp.k - 1)) : std::nullopt;
  }
  return rep;
}

/// Both certifications agree on the verdict and on (s_flag, s_antiflag).
inline bool pg_reports_agree(const PGReport& a, const PGReport& b) {
  return a.partial_geometric == b.partial_geometric && a.s_flag == b.s_flag && a.s_antiflag == b.s_antiflag &&
         a.n_prime == b.n_prime && a.j_coefficient == b.j_coefficient;
}

struct IndexProfile {
  /// r_xy over unordered pairs of distinct points, with pair counts.
  std::map<std::int64_t, std::int64_t> indices;
  bool two_index = false;
  std::optional<std::int64_t> mu1;  // larger index
  std::optional<std::int64_t> mu2;
  bool adesign = false;  // two indices differing by one
};

inline IndexProfile index_profile(const Design& d) {
  require_tactical(d);
  const IntMatrix idx = d.pair_indices();
  IndexProfile out;
  for (std::size_t u = 0; u < d.v(); ++u) {
    for (std::size_t w = u + 1; w < d.v(); ++w) ++out.indices[idx(u, w)];
  }
  out.two_index = out.indices.size() == 2;
  if (out.two_index) {
    out.mu2 = out.indices.begin()->first;
    out.mu1 = out.indices.rbegin()->first;
    out.adesign = *out.mu1 - *out.mu2 == 1;
  }
  return out;
}

/// Strongly regular graph parameters read off a symmetric 0/1 adjacency
/// matrix by squaring it.
struct SrgCertificate {
  bool certified = false;
  std::int64_t v = 0;
  std::optional<std::int64_t> k, lambda, mu;
  std::optional<std::string> failure;
};

inline SrgCertificate srg_check(const IntMatrix& adj) {
  SrgCertificate c;
  const std::size_t n = adj.rows();
  c.v = static_cast<std::int64_t>(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (adj(i, i) != 0) {
      c.failure = "nonzero diagonal at " + std::to_string(i);
      return c;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (adj(i, j) != adj(j, i) || (adj(i, j) != 0 && adj(i, j) != 1)) {
        c.failure = "not a symmetric 0/1 matrix at (" + std::to_string(i) + "," + std::to_string(j) + ")";
        return c;
      }
    }
  }
  const auto deg = adj.row_sums();
  for (std::size_t i = 0; i < n; ++i) {
    if (deg[i] != deg.front()) {
      c.failure = "degree of vertex " + std::to_string(i) + " is " + std::to_string(deg[i]) + ", vertex 0 has " + std::to_string(deg.front());
      return c;
    }
  }
  if (n) c.k = deg.front();
  const IntMatrix sq = adj * adj;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::optional<std::int64_t>* slot = nullptr;
      const char* name = "";
      if (i == j) {
        if (sq(i, i) != *c.k) {
          c.failure = "A^2 diagonal differs from the degree at " + std::to_string(i);
          return c;
        }
        continue;
      }
      if (adj(i, j)) {
        slot = &c.lambda;
        name = "lambda";
      } else {
        slot = &c.mu;
        name = "mu";
      }
      if (!*slot) {
        *slot = sq(i, j);
      } else if (**slot != sq(i, j)) {
        c.failure = std::string(name) + " not constant at (" + std::to_string(i) + "," + std::to_string(j) + ")";
        return c;
      }
    }
  }
  c.certified = true;
  return c;
}

/// Incidence grid: header "v b k r" (k, r written as * when not constant),
/// then v rows of b space-separated 0/1 entries.
inline std::string export_incidence_grid(const Design& d) {
  std::ostringstream os;
  const auto tp = tactical_parameters(d);
  os << d.v() << ' ' << d.b() << ' ';
  if (tp) {
    os << tp->k << ' ' << tp->r;
  } else {
    os << "* *";
  }
  os << '\n';
  const IntMatrix a = d.incidence();
  for (std::size_t u = 0; u < d.v(); ++u) {
    for (std::size_t j = 0; j < d.b(); ++j) os << (j ? " " : "") << a(u, j);
    os << '\n';
  }
  return os.str();
}

inline Design read_incidence_grid(std::istream& in) {
  std::string sv, sb, sk, sr;
  if (!(in >> sv >> sb >> sk >> sr)) throw FormatError("incidence grid: missing header \"v b k r\"");
  std::size_t v = 0, b = 0;
  try {
    v = std::stoul(sv);
    b = std::stoul(sb);
  } catch (const std::exception&) {
    throw FormatError("incidence grid: bad header");
  }
  std::vector<std::vector<std::uint32_t>> blocks(b);
  for (std::size_t u = 0; u < v; ++u) {
    for (std::size_t j = 0; j < b; ++j) {
      int x = -1;
      if (!(in >> x) || (x != 0 && x != 1)) throw FormatError("incidence grid: expected 0/1 entry at row " + std::to_string(u));
      if (x) blocks[j].push_back(static_cast<std::uint32_t>(u));
    }
  }
  std::string extra;
  if (in >> extra) throw FormatError("incidence grid: trailing data");
  Design d(v, std::move(blocks));
  if (sk != "*" && sr != "*") {
    const auto tp = tactical_parameters(d);
    if (!tp || std::to_string(tp->k) != sk || std::to_string(tp->r) != sr) throw FormatError("incidence grid: header k r disagree with matrix");
  }
  return d;
}

}  // namespace pgds
