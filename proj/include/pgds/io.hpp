#pragma once

// JSON documents: groups, families, fidelity records and verification reports.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pgds/constructions.hpp"
#include "pgds/design.hpp"
#include "pgds/dsrg.hpp"
#include "pgds/profile.hpp"
#include "pgds/search.hpp"
#include "pgds/twoindex.hpp"

namespace pgds {

using Json = nlohmann::ordered_json;

namespace detail {

template <class T>
Json opt(const std::optional<T>& x) {
  return x ? Json(*x) : Json(nullptr);
}

inline Json value_map(const std::map<std::int64_t, std::int64_t>& m) {
  Json o = Json::object();
  for (const auto& [value, count] : m) o[std::to_string(value)] = count;
  return o;
}

template <class T>
T get_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw FormatError(std::string("field \"") + key + "\" has the wrong type");
  }
}

}  // namespace detail

inline Json group_to_json(const Group& g) {
  Json factors = Json::array();
  for (const auto& f : g.factors()) {
    if (f.field) {
      factors.push_back({{"type", "field"},
                         {"p", f.field->characteristic()},
                         {"d", f.field->degree()},
                         {"modulus", f.field->modulus()},
                         {"primitive", f.field->format(f.field->primitive_element())}});
    } else {
      factors.push_back({{"type", "cyclic"}, {"order", f.order}});
    }
  }
  return {{"description", g.describe()}, {"order", g.order()}, {"factors", factors}};
}

inline Group group_from_json(const Json& j) {
  const Json factors = detail::get_field<Json>(j, "factors");
  if (!factors.is_array()) throw FormatError("\"factors\" must be an array");
  std::vector<Factor> out;
  for (const auto& f : factors) {
    const auto type = detail::get_field<std::string>(f, "type");
    if (type == "cyclic") {
      const auto n = detail::get_field<std::int64_t>(f, "order");
      if (n < 1 || static_cast<std::uint64_t>(n) > Group::kMaxOrder) throw FormatError("cyclic factor order out of range");
      out.push_back(Factor::cyclic(static_cast<std::uint32_t>(n)));
    } else if (type == "field") {
      const auto p = detail::get_field<std::uint32_t>(f, "p");
      const auto d = detail::get_field<std::uint32_t>(f, "d");
      FieldPtr field = build_field(p, d);
      if (f.contains("modulus") && f.at("modulus").get<std::vector<std::uint32_t>>() != field->modulus()) {
        throw FormatError("field modulus differs from the canonical modulus of F_" + std::to_string(field->order()));
      }
      out.push_back(Factor::additive(std::move(field)));
    } else {
      throw FormatError("unknown factor type \"" + type + "\"");
    }
  }
  Group g(std::move(out));
  if (j.contains("order") && j.at("order").get<std::uint64_t>() != g.order()) throw FormatError("group order disagrees with factors");
  return g;
}

inline Json subset_to_json(const Subset& s) {
  Json a = Json::array();
  for (auto x : s) a.push_back(s.group().format(x));
  return a;
}

inline Subset subset_from_json(const Group& g, const Json& j) {
  if (!j.is_array()) throw FormatError("block must be an array of elements");
  std::vector<Element> es;
  for (const auto& e : j) {
    if (!e.is_string()) throw FormatError("element must be a string such as \"(0,1)\"");
    es.push_back(g.parse(e.get<std::string>()));
  }
  try {
    return Subset(g, std::move(es));
  } catch (const ParameterError& e) {
    throw FormatError(e.what());
  }
}

inline Json claimed_to_json(const ClaimedProfile& c) {
  return {{"v", c.v}, {"k", c.k}, {"n", c.n}, {"first", c.first}, {"second", c.second}, {"source", c.source}};
}

inline Json family_to_json(const ConstructedFamily& f) {
  Json blocks = Json::array();
  for (const auto& b : f.blocks) blocks.push_back(subset_to_json(b));
  return {{"construction", to_string(f.provenance.id)},
          {"params", f.provenance.params},
          {"group", group_to_json(f.group)},
          {"blocks", blocks},
          {"claimed", claimed_to_json(f.claimed)},
          {"notes", f.notes}};
}

inline ConstructedFamily family_from_json(const Json& j) {
  ConstructedFamily f;
  f.group = group_from_json(detail::get_field<Json>(j, "group"));
  const Json blocks = detail::get_field<Json>(j, "blocks");
  if (!blocks.is_array() || blocks.empty()) throw FormatError("\"blocks\" must be a nonempty array");
  for (const auto& b : blocks) f.blocks.push_back(subset_from_json(f.group, b));
  try {
    f.provenance.id = construction_from_string(detail::get_field<std::string>(j, "construction"));
  } catch (const ParameterError& e) {
    throw FormatError(e.what());
  }
  if (j.contains("params")) f.provenance.params = j.at("params");
  const Json c = detail::get_field<Json>(j, "claimed");
  f.claimed.v = detail::get_field<std::int64_t>(c, "v");
  f.claimed.k = detail::get_field<std::int64_t>(c, "k");
  f.claimed.n = detail::get_field<std::int64_t>(c, "n");
  f.claimed.first = detail::get_field<std::int64_t>(c, "first");
  f.claimed.second = detail::get_field<std::int64_t>(c, "second");
  if (c.contains("source")) f.claimed.source = c.at("source").get<std::string>();
  if (j.contains("notes")) f.notes = j.at("notes").get<std::vector<std::string>>();
  return f;
}

inline Json fidelity_to_json(const FidelityRecord& r) {
  Json profiles = Json::array();
  for (const auto& p : r.profiles) {
    profiles.push_back({{"semantics", to_string(p.semantics)},
                        {"two_valued", p.two_valued},
                        {"in_value", detail::opt(p.in_value)},
                        {"off_value", detail::opt(p.off_value)},
                        {"in_values", detail::value_map(p.in_values)},
                        {"off_values", detail::value_map(p.off_values)}});
  }
  return {{"construction", r.construction},
          {"params", r.params},
          {"semantics_used", r.semantics_used},
          {"in_value", detail::opt(r.in_value)},
          {"off_value", detail::opt(r.off_value)},
          {"claimed", {r.claimed_first, r.claimed_second}},
          {"verdict", to_string(r.verdict)},
          {"profiles", profiles},
          {"notes", r.notes}};
}

inline Json pg_report_to_json(const PGReport& r) {
  return {{"method", r.method},
          {"v", r.v},
          {"b", r.b},
          {"k", r.k},
          {"r", r.r},
          {"partial_geometric", r.partial_geometric},
          {"s_flag", detail::opt(r.s_flag)},
          {"s_antiflag", detail::opt(r.s_antiflag)},
          {"n_prime", detail::opt(r.n_prime)},
          {"j_coefficient", detail::opt(r.j_coefficient)},
          {"flag_values", detail::value_map(r.flag_values)},
          {"antiflag_values", detail::value_map(r.antiflag_values)},
          {"sums_ok", r.sums_ok},
          {"residual_zero", r.residual_zero},
          {"first_residual", detail::opt(r.first_residual)}};
}

inline Json index_profile_to_json(const IndexProfile& p) {
  return {{"indices", detail::value_map(p.indices)},
          {"two_index", p.two_index},
          {"mu1", detail::opt(p.mu1)},
          {"mu2", detail::opt(p.mu2)},
          {"adesign", p.adesign}};
}

inline Json srg_to_json(const SrgCertificate& c) {
  return {{"certified", c.certified},
          {"v", c.v},
          {"k", detail::opt(c.k)},
          {"lambda", detail::opt(c.lambda)},
          {"mu", detail::opt(c.mu)},
          {"failure", detail::opt(c.failure)}};
}

inline Json two_index_to_json(const TwoIndexReport& r) {
  return {{"v", r.v},
          {"k", r.k},
          {"r", r.r},
          {"mu1", r.mu1},
          {"mu2", r.mu2},
          {"adesign", r.adesign},
          {"partial_geometric", r.pg.partial_geometric},
          {"nu_values", detail::value_map(r.nu_values)},
          {"zeta_values", detail::value_map(r.zeta_values)},
          {"counts_constant", r.counts_constant},
          {"nu", detail::opt(r.nu)},
          {"zeta", detail::opt(r.zeta)},
          {"nu_closed", detail::opt(r.nu_closed)},
          {"zeta_closed", detail::opt(r.zeta_closed)},
          {"nu_short", detail::opt(r.nu_short)},
          {"zeta_short", detail::opt(r.zeta_short)},
          {"sigma", r.sigma},
          {"phi", r.phi},
          {"psi", detail::opt(r.psi)},
          {"kappa", detail::opt(r.kappa)},
          {"epsilon", detail::opt(r.epsilon)},
          {"k_prime", detail::opt(r.k_prime)},
          {"a", detail::opt(r.a)},
          {"b", detail::opt(r.b)},
          {"k_prime_minus", detail::opt(r.k_prime_minus)},
          {"a1", srg_to_json(r.a1)},
          {"residual_zero", r.residual_zero},
          {"kappa_is_degree", r.kappa_is_degree},
          {"prediction_holds", r.prediction_holds},
          {"special_class", r.special_class},
          {"notes", r.notes}};
}

inline Json dsrg_to_json(const DSRGCertificate& c, const Digraph& g) {
  return {{"graph", g.kind()},
          {"certified", c.certified},
          {"v", c.v},
          {"edges", g.edge_count()},
          {"k", detail::opt(c.k)},
          {"t", detail::opt(c.t)},
          {"lambda", detail::opt(c.lambda)},
          {"mu", detail::opt(c.mu)},
          {"failure", detail::opt(c.failure)}};
}

inline Json design_to_json(const Design& d) {
  Json blocks = Json::array();
  for (const auto& b : d.blocks()) {
    Json row = Json::array();
    for (auto u : b) row.push_back(u);
    blocks.push_back(row);
  }
  Json out = {{"v", d.v()}, {"b", d.b()}, {"blocks", blocks}};
  if (!d.labels().empty()) out["labels"] = d.labels();
  return out;
}

inline Design design_from_json(const Json& j) {
  const auto v = detail::get_field<std::size_t>(j, "v");
  const auto blocks = detail::get_field<std::vector<std::vector<std::uint32_t>>>(j, "blocks");
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  try {
    return Design(v, blocks, labels);
  } catch (const ParameterError& e) {
    throw FormatError(e.what());
  }
}

inline Json search_to_json(const SearchJob& job, const SearchResult& r) {
  Json hits = Json::array();
  for (const auto& h : r.hits) hits.push_back({{"set", subset_to_json(h.set)}, {"in_value", h.in_value}, {"off_value", h.off_value}});
  return {{"group", group_to_json(job.group)},
          {"k", job.k},
          {"mode", job.fix_zero ? "translates-fixed" : "all"},
          {"semantics", to_string(job.semantics)},
          {"candidates", r.candidates},
          {"hits", hits}};
}

}  // namespace pgds
