#pragma once

// Exhaustive search for single-block difference sets whose window sums are
// two-valued. Candidates are k-subsets in lexicographic order of element
// indices; with fix_zero every candidate contains 0.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

#include "pgds/arith.hpp"
#include "pgds/error.hpp"
#include "pgds/group.hpp"
#include "pgds/profile.hpp"

namespace pgds {

struct SearchJob {
  Group group;
  std::uint32_t k = 0;
  bool fix_zero = true;
  /// Single blocks give the same profile under both readings; recorded only.
  Semantics semantics = Semantics::family_window;
  std::uint64_t budget = 10'000'000;
  unsigned threads = 0;
};

struct SearchHit {
  Subset set;
  std::int64_t in_value = 0;
  std::int64_t off_value = 0;
};

struct SearchResult {
  std::uint64_t candidates = 0;
  std::vector<SearchHit> hits;  // in candidate order
};

/// Number of candidates the job would examine.
inline std::uint64_t search_space(const SearchJob& job) {
  const std::uint64_t v = job.group.order();
  if (job.k == 0 || job.k > v) return 0;
  return job.fix_zero ? binomial(v - 1, job.k - 1) : binomial(v, job.k);
}

namespace detail {

/// Combination of rank `rank` (lexicographic) among c-subsets of {0..n-1}.
inline std::vector<std::uint32_t> unrank_combination(std::uint64_t rank, std::uint32_t n, std::uint32_t c) {
  std::vector<std::uint32_t> out;
  std::uint32_t x = 0;
  for (std::uint32_t slot = 0; slot < c; ++slot) {
    for (;; ++x) {
      const std::uint64_t with_x = binomial(n - x - 1, c - slot - 1);
      if (rank < with_x) break;
      rank -= with_x;
    }
    out.push_back(x++);
  }
  return out;
}

inline bool next_combination(std::vector<std::uint32_t>& c, std::uint32_t n) {
  const std::size_t m = c.size();
  for (std::size_t i = m; i-- > 0;) {
    if (c[i] < n - (m - i)) {
      ++c[i];
      for (std::size_t j = i + 1; j < m; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace detail

/// Throws BudgetError when the candidate count exceeds job.budget. Every hit
/// is re-profiled with family_profile before it is returned.
inline SearchResult run_search(const SearchJob& job) {
  const std::uint32_t v = job.group.order();
  if (job.k == 0 || job.k > v) throw ParameterError("block size k must satisfy 1 <= k <= |G|");
  const std::uint64_t total = search_space(job);
  if (total > job.budget) throw BudgetError(total, job.budget);

  const Group& g = job.group;
  std::vector<std::uint32_t> diff(static_cast<std::size_t>(v) * v);
  for (std::uint32_t x = 0; x < v; ++x) {
    for (std::uint32_t y = 0; y < v; ++y) diff[static_cast<std::size_t>(x) * v + y] = g.sub(Element{x}, Element{y}).index;
  }

  // fix_zero picks k-1 of the v-1 nonzero elements; pool index i -> element i+1.
  const std::uint32_t pool = job.fix_zero ? v - 1 : v;
  const std::uint32_t choose = job.fix_zero ? job.k - 1 : job.k;

  unsigned threads = job.threads ? job.threads : std::max(1u, std::thread::hardware_concurrency());
  if (total < 4096) threads = 1;
  threads = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, total)));

  struct Local {
    std::vector<std::pair<std::vector<std::uint32_t>, std::pair<std::int64_t, std::int64_t>>> hits;
  };
  std::vector<Local> locals(threads);

  auto work = [&](unsigned w) {
    const std::uint64_t lo = total * w / threads, hi = total * (w + 1) / threads;
    if (lo >= hi) return;
    auto comb = detail::unrank_combination(lo, pool, choose);
    std::vector<std::uint32_t> set(job.k);
    std::vector<std::int64_t> delta(v);
    std::vector<char> member(v, 0);
    for (std::uint64_t rank = lo; rank < hi; ++rank) {
      if (job.fix_zero) {
        set[0] = 0;
        for (std::uint32_t i = 0; i < choose; ++i) set[i + 1] = comb[i] + 1;
      } else {
        std::copy(comb.begin(), comb.end(), set.begin());
      }
      std::fill(delta.begin(), delta.end(), 0);
      for (auto x : set) {
        for (auto y : set) ++delta[diff[static_cast<std::size_t>(x) * v + y]];
      }
      for (auto x : set) member[x] = 1;
      std::optional<std::int64_t> in, off;
      bool ok = true;
      for (std::uint32_t x = 0; x < v && ok; ++x) {
        std::int64_t t = 0;
        for (auto y : set) t += delta[diff[static_cast<std::size_t>(x) * v + y]];
        auto& slot = member[x] ? in : off;
        if (!slot) {
          slot = t;
        } else if (*slot != t) {
          ok = false;
        }
      }
      for (auto x : set) member[x] = 0;
      if (ok && in && off) locals[w].hits.push_back({set, {*in, *off}});
      if (rank + 1 < hi) detail::next_combination(comb, pool);
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool_threads;
    for (unsigned w = 0; w < threads; ++w) pool_threads.emplace_back(work, w);
  }

  SearchResult res;
  res.candidates = total;
  for (auto& l : locals) {
    for (auto& [elems, vals] : l.hits) {
      std::vector<Element> es;
      for (auto x : elems) es.push_back(Element{x});
      Subset s(g, std::move(es));
      const std::vector<Subset> fam{s};
      const FamilyProfile check = family_profile(fam, job.semantics);
      if (!check.two_valued || *check.in_value != vals.first || *check.off_value != vals.second) {
        throw std::logic_error("search hit " + s.format() + " failed re-verification");
      }
      res.hits.push_back({std::move(s), vals.first, vals.second});
    }
  }
  return res;
}

}  // namespace pgds
