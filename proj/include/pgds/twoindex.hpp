#pragma once

// Two-index tactical configurations: the graph A_1 on pairs of points with the
// larger index, the per-flag counts nu/zeta, and the strongly regular graph
// parameters predicted from them.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pgds/design.hpp"

namespace pgds {

struct TwoIndexReport {
  std::int64_t v = 0, k = 0, r = 0;
  std::int64_t mu1 = 0, mu2 = 0;
  std::int64_t sigma = 0;  // r - mu2
  std::int64_t phi = 0;    // mu1 - mu2
  bool adesign = false;

  PGReport pg;  // matrix certification

  /// nu(x,b) = |{y in b, y != x : r_xy = mu1}| on flags, zeta on anti-flags.
  std::map<std::int64_t, std::int64_t> nu_values;
  std::map<std::int64_t, std::int64_t> zeta_values;
  bool counts_constant = false;
  std::optional<std::int64_t> nu, zeta;

  /// From the partial geometric constants (c = J coefficient):
  ///   nu   = (n' + c - r + mu2 - mu2 k) / phi
  ///   zeta = (c - mu2 k) / phi
  std::optional<std::int64_t> nu_closed, zeta_closed;
  /// The same without the mu2 k term in nu and without dividing by phi.
  std::optional<std::int64_t> nu_short, zeta_short;

  std::optional<std::int64_t> psi;      // nu - zeta
  std::optional<std::int64_t> kappa;    // ((k-1) r + mu2 (1 - v)) / phi
  std::optional<std::int64_t> epsilon;  // zeta r - mu2 (kappa - psi)
  /// Predicted parameters: k' = (eps + psi sigma)/phi, a = (eps + psi phi - sigma)/phi, b = eps/phi.
  std::optional<std::int64_t> k_prime, a, b;
  /// (eps - psi sigma)/phi, kept for comparison.
  std::optional<std::int64_t> k_prime_minus;

  /// Direct certificate of A_1 and the identity residual for the extracted
  /// parameters.
  SrgCertificate a1;
  bool residual_zero = false;
  bool kappa_is_degree = false;   // A_1 J = kappa J
  bool prediction_holds = false;  // A_1^2 = k'I + aA_1 + b(J-I-A_1) for the predicted triple
  /// Partial geometric, constant nu/zeta, and the predicted identity holds.
  bool special_class = false;
  std::vector<std::string> notes;
};

namespace detail {

inline std::optional<std::int64_t> exact_div(std::int64_t num, std::int64_t den) {
  if (den == 0 || num % den != 0) return std::nullopt;
  return num / den;
}

/// A^2 - (kk I + lam A + mu (J - I - A)) is zero everywhere.
inline bool srg_residual_zero(const IntMatrix& adj, const IntMatrix& sq, std::int64_t kk, std::int64_t lam, std::int64_t mu) {
  for (std::size_t i = 0; i < adj.rows(); ++i) {
    for (std::size_t j = 0; j < adj.cols(); ++j) {
      const std::int64_t want = i == j ? kk : (adj(i, j) ? lam : mu);
      if (sq(i, j) != want) return false;
    }
  }
  return true;
}

}  // namespace detail

inline IntMatrix a1_matrix(const Design& d, std::int64_t mu1) {
  const IntMatrix idx = d.pair_indices();
  IntMatrix a(d.v(), d.v());
  for (std::size_t u = 0; u < d.v(); ++u) {
    for (std::size_t w = 0; w < d.v(); ++w) a(u, w) = (u != w && idx(u, w) == mu1) ? 1 : 0;
  }
  return a;
}

/// Requires a two-index tactical configuration. The partial geometric
/// property and constancy of nu/zeta are reported, not required; A_1 is
/// certified by squaring whether or not they hold.
inline TwoIndexReport a1_srg_check(const Design& d) {
  const auto tp = require_tactical(d);
  const IndexProfile ip = index_profile(d);
  if (!ip.two_index) {
    throw ParameterError("design has " + std::to_string(ip.indices.size()) + " pair indices, a two-index configuration is required");
  }
  TwoIndexReport rep;
  rep.v = static_cast<std::int64_t>(d.v());
  rep.k = tp.k;
  rep.r = tp.r;
  rep.mu1 = *ip.mu1;
  rep.mu2 = *ip.mu2;
  rep.sigma = rep.r - rep.mu2;
  rep.phi = rep.mu1 - rep.mu2;
  rep.adesign = ip.adesign;
  rep.pg = pg_check_matrix(d);

  const IntMatrix idx = d.pair_indices();
  for (std::size_t j = 0; j < d.b(); ++j) {
    for (std::size_t x = 0; x < d.v(); ++x) {
      std::int64_t c = 0;
      for (auto y : d.blocks()[j]) {
        if (y != x && idx(x, y) == rep.mu1) ++c;
      }
      ++(d.incident(x, j) ? rep.nu_values : rep.zeta_values)[c];
    }
  }
  rep.counts_constant = rep.nu_values.size() <= 1 && rep.zeta_values.size() <= 1;
  if (rep.counts_constant) {
    rep.nu = rep.nu_values.empty() ? 0 : rep.nu_values.begin()->first;
    rep.zeta = rep.zeta_values.empty() ? 0 : rep.zeta_values.begin()->first;
  } else {
    rep.notes.push_back("nu/zeta not constant");
  }
  if (!rep.pg.partial_geometric) rep.notes.push_back("design is not partial geometric");

  if (rep.pg.partial_geometric) {
    const std::int64_t np = *rep.pg.n_prime, c = *rep.pg.j_coefficient;
    rep.nu_closed = detail::exact_div(np + c - rep.r + rep.mu2 - rep.mu2 * rep.k, rep.phi);
    rep.zeta_closed = detail::exact_div(c - rep.mu2 * rep.k, rep.phi);
    rep.nu_short = np + c - rep.r + rep.mu2;
    rep.zeta_short = c - rep.mu2 * rep.k;
  }

  rep.kappa = detail::exact_div((rep.k - 1) * rep.r + rep.mu2 * (1 - rep.v), rep.phi);
  if (rep.counts_constant && rep.kappa) {
    rep.psi = *rep.nu - *rep.zeta;
    rep.epsilon = *rep.zeta * rep.r - rep.mu2 * (*rep.kappa - *rep.psi);
    rep.k_prime = detail::exact_div(*rep.epsilon + *rep.psi * rep.sigma, rep.phi);
    rep.a = detail::exact_div(*rep.epsilon + *rep.psi * rep.phi - rep.sigma, rep.phi);
    rep.b = detail::exact_div(*rep.epsilon, rep.phi);
    rep.k_prime_minus = detail::exact_div(*rep.epsilon - *rep.psi * rep.sigma, rep.phi);
  }

  const IntMatrix a1 = a1_matrix(d, rep.mu1);
  rep.a1 = srg_check(a1);
  const IntMatrix sq = a1 * a1;
  if (rep.a1.certified) {
    rep.residual_zero = detail::srg_residual_zero(a1, sq, *rep.a1.k, rep.a1.lambda.value_or(0), rep.a1.mu.value_or(0));
  }
  if (rep.kappa) {
    rep.kappa_is_degree = true;
    for (auto s : a1.row_sums()) rep.kappa_is_degree = rep.kappa_is_degree && s == *rep.kappa;
  }
  if (rep.k_prime && rep.a && rep.b) {
    rep.prediction_holds = detail::srg_residual_zero(a1, sq, *rep.k_prime, *rep.a, *rep.b);
  }
  rep.special_class = rep.pg.partial_geometric && rep.counts_constant && rep.prediction_holds;
  return rep;
}

}  // namespace pgds
