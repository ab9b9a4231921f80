#pragma once

// Flag and anti-flag digraphs of an incidence structure, exact certification
// of directed strong regularity, and text export/import.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "pgds/design.hpp"
#include "pgds/error.hpp"

namespace pgds {

/// 0/1 digraph stored as bitset rows and columns.
class Digraph {
 public:
  struct Vertex {
    std::uint32_t point = 0;
    std::uint32_t block = 0;
    auto operator<=>(const Vertex&) const = default;
  };

  explicit Digraph(std::size_t n, std::string kind = "digraph")
      : n_(n), words_((n + 63) / 64), rows_(n * words_, 0), cols_(n * words_, 0), kind_(std::move(kind)) {}

  std::size_t size() const noexcept { return n_; }
  const std::string& kind() const noexcept { return kind_; }
  /// (point, block) of each vertex for flag/anti-flag graphs; empty otherwise.
  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  void set_vertices(std::vector<Vertex> v) {
    if (v.size() != n_) throw std::invalid_argument("vertex list size mismatch");
    vertices_ = std::move(v);
  }

  void add_edge(std::size_t i, std::size_t j) {
    if (i >= n_ || j >= n_) throw std::out_of_range("edge endpoint out of range");
    rows_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
    cols_[j * words_ + i / 64] |= std::uint64_t{1} << (i % 64);
  }

  bool has_edge(std::size_t i, std::size_t j) const noexcept { return (rows_[i * words_ + j / 64] >> (j % 64)) & 1u; }

  std::int64_t out_degree(std::size_t i) const noexcept { return popcount_range(&rows_[i * words_]); }
  std::int64_t in_degree(std::size_t j) const noexcept { return popcount_range(&cols_[j * words_]); }

  std::int64_t edge_count() const noexcept {
    std::int64_t e = 0;
    for (std::size_t i = 0; i < n_; ++i) e += out_degree(i);
    return e;
  }

  /// (A^2)_{ij}: walks of length two from i to j.
  std::int64_t two_paths(std::size_t i, std::size_t j) const noexcept {
    std::int64_t s = 0;
    const std::uint64_t* r = &rows_[i * words_];
    const std::uint64_t* c = &cols_[j * words_];
    for (std::size_t w = 0; w < words_; ++w) s += std::popcount(r[w] & c[w]);
    return s;
  }

  IntMatrix adjacency() const {
    IntMatrix a(n_, n_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) a(i, j) = has_edge(i, j);
    }
    return a;
  }

  bool same_edges(const Digraph& o) const { return n_ == o.n_ && rows_ == o.rows_; }

 private:
  std::int64_t popcount_range(const std::uint64_t* p) const noexcept {
    std::int64_t s = 0;
    for (std::size_t w = 0; w < words_; ++w) s += std::popcount(p[w]);
    return s;
  }

  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> rows_;
  std::vector<std::uint64_t> cols_;
  std::vector<Vertex> vertices_;
  std::string kind_;
};

namespace detail {

template <bool Flags>
Digraph incidence_graph(const Design& d, bool check_tactical) {
  if (check_tactical) require_tactical(d);
  std::vector<Digraph::Vertex> verts;
  for (std::uint32_t u = 0; u < d.v(); ++u) {
    for (std::uint32_t b = 0; b < d.b(); ++b) {
      if (d.incident(u, b) == Flags) verts.push_back({u, b});
    }
  }
  Digraph g(verts.size(), Flags ? "flag" : "anti-flag");
  for (std::size_t i = 0; i < verts.size(); ++i) {
    for (std::size_t j = 0; j < verts.size(); ++j) {
      if (i != j && d.incident(verts[i].point, verts[j].block)) g.add_edge(i, j);
    }
  }
  g.set_vertices(std::move(verts));
  return g;
}

}  // namespace detail

/// Vertices (u,b) with u in b; (u,b) -> (w,c) iff the pairs differ and u in c.
inline Digraph flag_graph(const Design& d, bool check_tactical = true) { return detail::incidence_graph<true>(d, check_tactical); }

/// Vertices (u,b) with u not in b; (u,b) -> (w,c) iff u in c.
inline Digraph antiflag_graph(const Design& d, bool check_tactical = true) { return detail::incidence_graph<false>(d, check_tactical); }

struct DSRGCertificate {
  bool certified = false;
  std::int64_t v = 0;
  std::optional<std::int64_t> k, t;
  /// Empty when no entry of that kind exists (the constraint is vacuous).
  std::optional<std::int64_t> lambda, mu;
  std::optional<std::string> failure;
};

namespace detail {

struct EntryClass {
  // value -> first (row-major) position where it occurs
  std::map<std::int64_t, std::pair<std::size_t, std::size_t>> first;
  void see(std::int64_t value, std::size_t i, std::size_t j) {
    auto [it, fresh] = first.emplace(value, std::make_pair(i, j));
    if (!fresh && std::make_pair(i, j) < it->second) it->second = {i, j};
  }
  void merge(const EntryClass& o) {
    for (const auto& [value, pos] : o.first) see(value, pos.first, pos.second);
  }
  /// Value at the earliest position, and the earliest position holding any
  /// other value.
  std::pair<std::optional<std::int64_t>, std::optional<std::pair<std::size_t, std::size_t>>> resolve() const {
    if (first.empty()) return {std::nullopt, std::nullopt};
    auto ref = std::min_element(first.begin(), first.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
    std::optional<std::pair<std::size_t, std::size_t>> bad;
    for (auto it = first.begin(); it != first.end(); ++it) {
      if (it != ref && (!bad || it->second < *bad)) bad = it->second;
    }
    return {ref->first, bad};
  }
};

}  // namespace detail

/// Reads k from row sums (and checks column sums), t from the diagonal of A^2,
/// lambda from entries with A = 1 and mu from off-diagonal entries with A = 0.
inline DSRGCertificate dsrg_check(const Digraph& g, unsigned threads = 0) {
  DSRGCertificate c;
  const std::size_t n = g.size();
  c.v = static_cast<std::int64_t>(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (g.has_edge(i, i)) {
      c.failure = "loop at vertex " + std::to_string(i);
      return c;
    }
  }
  if (n == 0) {
    c.certified = true;
    return c;
  }
  const std::int64_t k = g.out_degree(0);
  for (std::size_t i = 0; i < n; ++i) {
    if (g.out_degree(i) != k) {
      c.failure = "out-degree of vertex " + std::to_string(i) + " is " + std::to_string(g.out_degree(i)) + ", vertex 0 has " + std::to_string(k);
      return c;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (g.in_degree(j) != k) {
      c.failure = "in-degree of vertex " + std::to_string(j) + " is " + std::to_string(g.in_degree(j)) + ", out-degree is " + std::to_string(k);
      return c;
    }
  }
  c.k = k;

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  if (n < 256) threads = 1;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  struct Chunk {
    detail::EntryClass t, lam, mu;
  };
  std::vector<Chunk> chunks(threads);
  auto work = [&](unsigned w) {
    const std::size_t lo = n * w / threads, hi = n * (w + 1) / threads;
    for (std::size_t i = lo; i < hi; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const std::int64_t s = g.two_paths(i, j);
        if (i == j) {
          chunks[w].t.see(s, i, j);
        } else if (g.has_edge(i, j)) {
          chunks[w].lam.see(s, i, j);
        } else {
          chunks[w].mu.see(s, i, j);
        }
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
  }
  Chunk all;
  for (const auto& ch : chunks) {
    all.t.merge(ch.t);
    all.lam.merge(ch.lam);
    all.mu.merge(ch.mu);
  }

  std::optional<std::pair<std::size_t, std::size_t>> worst;
  std::string what;
  auto take = [&](const detail::EntryClass& cls, std::optional<std::int64_t>& slot, const char* name) {
    auto [ref, bad] = cls.resolve();
    slot = ref;
    if (bad && (!worst || *bad < *worst)) {
      worst = bad;
      what = name;
    }
  };
  take(all.t, c.t, "t");
  take(all.lam, c.lambda, "lambda");
  take(all.mu, c.mu, "mu");
  if (worst) {
    c.failure = what + " not constant: (A^2)[" + std::to_string(worst->first) + "][" + std::to_string(worst->second) + "] = " +
                std::to_string(g.two_paths(worst->first, worst->second));
    return c;
  }
  c.certified = true;
  return c;
}

enum class GraphFormat { edge_list, dot, matrix };

inline GraphFormat graph_format_from_string(const std::string& s) {
  if (s == "edge-list" || s == "edges") return GraphFormat::edge_list;
  if (s == "dot") return GraphFormat::dot;
  if (s == "matrix") return GraphFormat::matrix;
  throw ParameterError("unknown graph format \"" + s + "\" (expected edge-list, dot or matrix)");
}

namespace detail {

inline std::string opt_str(const std::optional<std::int64_t>& x) { return x ? std::to_string(*x) : "*"; }

inline std::string graph_header(const Digraph& g, const DSRGCertificate& c) {
  if (!c.certified) return "# digraph v=" + std::to_string(g.size());
  return "# dsrg v=" + std::to_string(c.v) + " k=" + opt_str(c.k) + " t=" + opt_str(c.t) + " lambda=" + opt_str(c.lambda) +
         " mu=" + opt_str(c.mu);
}

}  // namespace detail

/// Vertices numbered in (point, block) order; "*" marks a vacuous parameter.
inline std::string export_graph(const Digraph& g, GraphFormat fmt) {
  const DSRGCertificate c = dsrg_check(g);
  std::ostringstream os;
  const std::size_t n = g.size();
  switch (fmt) {
    case GraphFormat::edge_list:
      os << detail::graph_header(g, c) << '\n';
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (g.has_edge(i, j)) os << i << ' ' << j << '\n';
        }
      }
      break;
    case GraphFormat::dot:
      os << "digraph " << (g.kind() == "anti-flag" ? "antiflag" : g.kind()) << " {\n";
      os << "  // " << detail::graph_header(g, c).substr(2) << '\n';
      for (std::size_t i = 0; i < n; ++i) {
        os << "  " << i;
        if (!g.vertices().empty()) os << " [label=\"" << g.vertices()[i].point << "," << g.vertices()[i].block << "\"]";
        os << ";\n";
      }
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (g.has_edge(i, j)) os << "  " << i << " -> " << j << ";\n";
        }
      }
      os << "}\n";
      break;
    case GraphFormat::matrix:
      os << detail::graph_header(g, c) << '\n';
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) os << (j ? " " : "") << (g.has_edge(i, j) ? 1 : 0);
        os << '\n';
      }
      break;
  }
  return os.str();
}

namespace detail {

inline std::size_t header_vertex_count(const std::string& line) {
  static const std::regex re(R"(v=(\d+))");
  std::smatch m;
  if (!std::regex_search(line, m, re)) throw FormatError("graph header lacks v=<n>");
  return std::stoul(m[1]);
}

}  // namespace detail

inline Digraph read_graph(std::istream& in, GraphFormat fmt) {
  std::string line;
  if (fmt == GraphFormat::dot) {
    static const std::regex edge(R"(^\s*(\d+)\s*->\s*(\d+)\s*;?\s*$)");
    static const std::regex node(R"(^\s*(\d+)\s*(\[.*\])?\s*;?\s*$)");
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::size_t n = 0;
    bool opened = false;
    while (std::getline(in, line)) {
      std::smatch m;
      if (line.find("digraph") != std::string::npos && line.find('{') != std::string::npos) {
        opened = true;
      } else if (std::regex_match(line, m, edge)) {
        edges.emplace_back(std::stoul(m[1]), std::stoul(m[2]));
        n = std::max({n, edges.back().first + 1, edges.back().second + 1});
      } else if (std::regex_match(line, m, node)) {
        n = std::max(n, std::stoul(m[1]) + 1);
      } else if (line.find("//") != std::string::npos || line.find('}') != std::string::npos || line.find_first_not_of(" \t") == std::string::npos) {
        continue;
      } else {
        throw FormatError("dot: cannot parse line \"" + line + "\"");
      }
    }
    if (!opened) throw FormatError("dot: missing digraph header");
    Digraph g(n);
    for (auto [a, b] : edges) g.add_edge(a, b);
    return g;
  }

  if (!std::getline(in, line) || line.rfind("#", 0) != 0) throw FormatError("graph: missing header line");
  const std::size_t n = detail::header_vertex_count(line);
  Digraph g(n);
  if (fmt == GraphFormat::edge_list) {
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      std::istringstream ls(line);
      std::size_t a = 0, b = 0;
      std::string extra;
      if (!(ls >> a >> b) || (ls >> extra)) throw FormatError("edge list: bad line \"" + line + "\"");
      if (a >= n || b >= n) throw FormatError("edge list: vertex out of range in \"" + line + "\"");
      g.add_edge(a, b);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        int x = -1;
        if (!(in >> x) || (x != 0 && x != 1)) throw FormatError("matrix: expected 0/1 entry at row " + std::to_string(i));
        if (x) g.add_edge(i, j);
      }
    }
    std::string extra;
    if (in >> extra) throw FormatError("matrix: trailing data");
  }
  return g;
}

}  // namespace pgds
