// pgds: construct, verify, develop and certify partial geometric difference
// sets and families.
//
// Exit codes: 0 ok/PASS, 1 malformed input, 2 parameter rejection,
// 3 ORDER-SWAPPED, 4 VALUE-MISMATCH, 5 NOT-PG (or uncertified), 6 over budget.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pgds/io.hpp"

namespace fs = std::filesystem;
using namespace pgds;

namespace {

struct Global {
  std::string out;
  std::string format = "json";
  std::uint64_t budget = 10'000'000;
  std::string semantics = "both";
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

SemanticsChoice semantics_choice(const std::string& s) {
  if (s == "both") return SemanticsChoice::both;
  if (s == "blockwise") return SemanticsChoice::blockwise;
  if (s == "window" || s == "family-window") return SemanticsChoice::family_window;
  throw ParameterError("--semantics must be both, blockwise or window");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void emit(const Global& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw InputError("cannot write " + g.out);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

std::string opt_text(const Json& j) { return j.is_null() ? "-" : j.dump(); }

Element parse_element(const Group& g, std::string s) {
  if (s.empty() || s.front() != '(') s = "(" + s + ")";
  return g.parse(s);
}

std::vector<std::int64_t> parse_int_list(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParameterError("expected an integer list, got \"" + s + "\"");
    }
  }
  return out;
}

// ---------------------------------------------------------------- construct

struct ConstructArgs {
  std::string id;
  std::int64_t m = 0, p = 0, i = 0, j = 1, s = 2, l = 1, u = 2;
  std::string variant = "A";
  std::string base = "sigma";
  std::string index_set;
  std::string pattern;
  std::string pairs;
  std::string group = "15";
  std::string h;
  std::string reps;
};

ConstructedFamily build_family(const ConstructArgs& a) {
  const ConstructionId id = construction_from_string(a.id);
  switch (id) {
    case ConstructionId::th30:
      return sigma_product_set(a.m ? a.m : 2, a.p ? a.p : 3, a.i, a.j);
    case ConstructionId::th31:
      return z6_product_set(a.p ? a.p : 3, a.i, a.j);
    case ConstructionId::th32:
      return planar_set(a.p ? a.p : 3, a.m ? a.m : 1, a.s);
    case ConstructionId::th33:
      if (a.variant != "A" && a.variant != "B") throw ParameterError("th33 --variant must be A or B");
      return mod4_pair_set(a.l, a.variant == "A" ? Mod4Variant::A : Mod4Variant::B);
    case ConstructionId::th41:
      return multiplier_family(a.p ? a.p : 3, a.u);
    case ConstructionId::th40:
    case ConstructionId::cor40:
    case ConstructionId::cor41: {
      ThetaBase base;
      if (id == ConstructionId::cor41) {
        base.kind = ThetaBase::Kind::z6;
      } else if (a.base != "sigma") {
        throw ParameterError(a.id + " uses --base sigma");
      }
      base.m = a.m ? a.m : 2;
      const std::int64_t p = a.p ? a.p : 3;
      std::vector<std::int64_t> iset = a.index_set.empty() ? std::vector<std::int64_t>{0, 1} : parse_int_list(a.index_set);
      ThetaPattern pat = id == ConstructionId::cor40 ? ThetaPattern::theta1 : ThetaPattern::theta0;
      if (!a.pattern.empty()) {
        if (a.pattern == "theta0") {
          pat = ThetaPattern::theta0;
        } else if (a.pattern == "theta1") {
          pat = ThetaPattern::theta1;
        } else {
          throw ParameterError("--pattern must be theta0 or theta1");
        }
      }
      if (id == ConstructionId::th40 && pat != ThetaPattern::theta0) throw ParameterError("th40 uses pattern theta0");
      if (id == ConstructionId::cor40 && pat != ThetaPattern::theta1) throw ParameterError("cor40 uses pattern theta1");
      std::optional<std::vector<std::pair<std::int64_t, std::int64_t>>> pairs;
      if (!a.pairs.empty()) {
        const auto flat = parse_int_list(a.pairs);
        if (flat.size() % 2) throw ParameterError("--pairs takes an even-length list a1,b1,a2,b2,...");
        pairs.emplace();
        for (std::size_t t = 0; t < flat.size(); t += 2) pairs->emplace_back(flat[t], flat[t + 1]);
      }
      return theta_family(base, p, iset, pat, pairs);
    }
    case ConstructionId::th42: {
      const Group g = Group::make(parse_int_list(a.group));
      Subset h = a.h.empty() ? Subset(g, {g.zero()}) : cyclic_subgroup(g, parse_element(g, a.h));
      if (a.h.empty()) {
        // smallest nontrivial proper cyclic subgroup
        std::optional<Subset> best;
        for (std::uint32_t x = 1; x < g.order(); ++x) {
          Subset c = cyclic_subgroup(g, Element{x});
          if (c.size() > 1 && c.size() < g.order() && (!best || c.size() < best->size())) best = c;
        }
        if (!best) throw ParameterError("th42 requires a proper, nontrivial subgroup");
        h = *best;
      }
      std::vector<Element> reps;
      if (a.reps.empty()) {
        reps = greedy_coset_pair_reps(g, h);
      } else {
        std::stringstream ss(a.reps);
        std::string item;
        // elements separated by ';' or, for one-factor groups, ','
        const char sep = a.reps.find(';') != std::string::npos || a.reps.find('(') != std::string::npos ? ';' : ',';
        while (std::getline(ss, item, sep)) {
          if (!item.empty()) reps.push_back(parse_element(g, item));
        }
      }
      return coset_pair_family(g, h, reps);
    }
  }
  throw ParameterError("unknown construction");
}

std::string family_text(const ConstructedFamily& f) {
  std::ostringstream os;
  os << "construction " << to_string(f.provenance.id) << ' ' << f.provenance.params.dump() << '\n';
  os << "group " << f.group.describe() << " (order " << f.group.order() << ")\n";
  for (const auto& fac : f.group.factors()) {
    if (!fac.field) continue;
    os << "field F_" << fac.field->order() << " modulus";
    for (auto c : fac.field->modulus()) os << ' ' << c;
    os << " primitive " << fac.field->format(fac.field->primitive_element()) << '\n';
  }
  os << "claimed v=" << f.claimed.v << " k=" << f.claimed.k << " n=" << f.claimed.n << " (" << f.claimed.first << ", " << f.claimed.second
     << ")  " << f.claimed.source << '\n';
  for (std::size_t b = 0; b < f.blocks.size(); ++b) os << "block " << b << ' ' << f.blocks[b].format() << '\n';
  for (const auto& n : f.notes) os << "note " << n << '\n';
  return os.str();
}

// ------------------------------------------------------------------- verify

std::string fidelity_text(const Json& r) {
  std::ostringstream os;
  os << r["construction"].get<std::string>() << ' ' << r["params"].dump() << '\n';
  os << "verdict " << r["verdict"].get<std::string>() << '\n';
  os << "semantics_used " << r["semantics_used"].get<std::string>() << '\n';
  os << "computed (in, off) = (" << opt_text(r["in_value"]) << ", " << opt_text(r["off_value"]) << ")\n";
  os << "claimed " << r["claimed"].dump() << '\n';
  for (const auto& p : r["profiles"]) {
    os << "  " << p["semantics"].get<std::string>() << ": in " << p["in_values"].dump() << " off " << p["off_values"].dump()
       << (p["two_valued"].get<bool>() ? "  two-valued" : "  not two-valued") << '\n';
  }
  for (const auto& n : r["notes"]) os << "note " << n.get<std::string>() << '\n';
  return os.str();
}

// ------------------------------------------------------------------ designs

struct LoadedDesign {
  Design design;
  std::optional<ConstructedFamily> family;
  std::int64_t collapsed = 0;
};

LoadedDesign load_design(const std::string& path, bool multiset) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw FormatError(path + ": " + e.what());
    }
    if (j.contains("group")) {
      ConstructedFamily fam = family_from_json(j);
      Development dev = develop(fam.blocks, multiset ? DevelopMode::multiset : DevelopMode::set);
      return {std::move(dev.design), std::move(fam), dev.collapsed};
    }
    return {design_from_json(j), std::nullopt, 0};
  }
  std::istringstream in(text);
  return {read_incidence_grid(in), std::nullopt, 0};
}

Json design_report(const Design& d) {
  Json out = Json::object();
  const auto tp = tactical_parameters(d);
  out["v"] = d.v();
  out["b"] = d.b();
  out["tactical"] = tp.has_value();
  if (!tp) {
    try {
      require_tactical(d);
    } catch (const NotTacticalError& e) {
      out["not_tactical"] = e.what();
    }
    return out;
  }
  const PGReport direct = s_counts(d);
  const PGReport matrix = pg_check_matrix(d);
  out["k"] = tp->k;
  out["r"] = tp->r;
  out["pg_direct"] = pg_report_to_json(direct);
  out["pg_matrix"] = pg_report_to_json(matrix);
  out["pg_agree"] = pg_reports_agree(direct, matrix);
  const IndexProfile ip = index_profile(d);
  out["index_profile"] = index_profile_to_json(ip);
  if (ip.two_index) out["two_index"] = two_index_to_json(a1_srg_check(d));
  return out;
}

std::string design_text(const Json& r) {
  std::ostringstream os;
  os << "v " << r["v"] << " b " << r["b"];
  if (!r["tactical"].get<bool>()) {
    os << "\nnot tactical: " << r["not_tactical"].get<std::string>() << '\n';
    return os.str();
  }
  os << " k " << r["k"] << " r " << r["r"] << '\n';
  for (const char* key : {"pg_direct", "pg_matrix"}) {
    const auto& p = r[key];
    os << p["method"].get<std::string>() << ": " << (p["partial_geometric"].get<bool>() ? "partial geometric" : "not partial geometric")
       << "  s_flag " << opt_text(p["s_flag"]) << " s_antiflag " << opt_text(p["s_antiflag"]) << " n' " << opt_text(p["n_prime"])
       << " J-coefficient " << opt_text(p["j_coefficient"]) << '\n';
    if (!p["first_residual"].is_null()) os << "  residual " << p["first_residual"].get<std::string>() << '\n';
  }
  os << "certifications agree: " << (r["pg_agree"].get<bool>() ? "yes" : "NO") << '\n';
  os << "pair indices " << r["index_profile"]["indices"].dump() << (r["index_profile"]["adesign"].get<bool>() ? "  2-adesign" : "") << '\n';
  if (r.contains("two_index")) {
    const auto& t = r["two_index"];
    os << "A_1: " << (t["a1"]["certified"].get<bool>() ? "strongly regular" : "not strongly regular") << " (v,k',a,b) = (" << t["a1"]["v"]
       << ", " << opt_text(t["a1"]["k"]) << ", " << opt_text(t["a1"]["lambda"]) << ", " << opt_text(t["a1"]["mu"]) << ")  kappa "
       << opt_text(t["kappa"]) << "  nu " << t["nu_values"].dump() << " zeta " << t["zeta_values"].dump() << '\n';
  }
  return os.str();
}

bool design_ok(const Json& r) { return r["tactical"].get<bool>() && r["pg_matrix"]["partial_geometric"].get<bool>(); }

// --------------------------------------------------------------------- dsrg

Json graph_report(const Design& d, const std::string& which, bool check_tactical, std::vector<Digraph>* keep = nullptr) {
  Json out = Json::object();
  for (const std::string kind : {"flag", "anti-flag"}) {
    if (which != "both" && which != kind) continue;
    Digraph g = kind == "flag" ? flag_graph(d, check_tactical) : antiflag_graph(d, check_tactical);
    out[kind] = dsrg_to_json(dsrg_check(g), g);
    if (kind == "anti-flag") out[kind]["vertex_rule"] = "u not in b";
    if (keep) keep->push_back(std::move(g));
  }
  return out;
}

// -------------------------------------------------------------------- atlas

struct AtlasRange {
  std::vector<std::int64_t> p, l, u, m, kappa, n, h, mexp;
  std::vector<std::string> ids;
  std::vector<std::string> patterns;
};

AtlasRange parse_range(const std::string& spec) {
  AtlasRange r;
  if (spec.find_first_not_of(" \t") == std::string::npos) return r;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ';')) {
    if (part.find_first_not_of(" \t") == std::string::npos) continue;
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw ParameterError("range term \"" + part + "\" lacks '='");
    const std::string key = part.substr(0, eq), val = part.substr(eq + 1);
    auto list = [&] {
      std::vector<std::string> items;
      std::stringstream vs(val);
      std::string it;
      while (std::getline(vs, it, ',')) {
        if (!it.empty()) items.push_back(it);
      }
      return items;
    };
    if (key == "ids") {
      for (auto& id : list()) {
        construction_from_string(id);
        r.ids.push_back(id);
      }
    } else if (key == "pattern") {
      r.patterns = list();
    } else {
      auto ints = parse_int_list(val);
      if (key == "p") {
        r.p = ints;
      } else if (key == "l") {
        r.l = ints;
      } else if (key == "u") {
        r.u = ints;
      } else if (key == "m") {
        r.m = ints;
      } else if (key == "kappa") {
        r.kappa = ints;
      } else if (key == "n") {
        r.n = ints;
      } else if (key == "h") {
        r.h = ints;
      } else if (key == "mexp") {
        r.mexp = ints;
      } else {
        throw ParameterError("unknown range key \"" + key + "\" (p, l, u, m, kappa, n, h, mexp, pattern, ids)");
      }
    }
  }
  if (r.ids.empty()) {
    for (auto id : kAllConstructions) r.ids.push_back(to_string(id));
  }
  return r;
}

std::vector<ConstructArgs> expand_range(const AtlasRange& r) {
  std::vector<ConstructArgs> out;
  auto or_default = [](const std::vector<std::int64_t>& v, std::vector<std::int64_t> d) { return v.empty() ? d : v; };
  const auto ps = or_default(r.p, {3});
  for (const auto& id : r.ids) {
    const ConstructionId cid = construction_from_string(id);
    ConstructArgs base;
    base.id = id;
    switch (cid) {
      case ConstructionId::th30:
        for (auto m : or_default(r.m, {2})) {
          for (auto p : ps) {
            ConstructArgs a = base;
            a.m = m;
            a.p = p;
            out.push_back(a);
          }
        }
        break;
      case ConstructionId::th31:
      case ConstructionId::th32:
        for (auto p : ps) {
          for (auto me : cid == ConstructionId::th32 ? or_default(r.mexp, {1}) : std::vector<std::int64_t>{0}) {
            ConstructArgs a = base;
            a.p = p;
            a.m = me;
            out.push_back(a);
          }
        }
        break;
      case ConstructionId::th33:
        for (auto l : or_default(r.l, {1})) {
          ConstructArgs a = base;
          a.l = l;
          out.push_back(a);
        }
        break;
      case ConstructionId::th41:
        for (auto p : ps) {
          for (auto u : or_default(r.u, {2})) {
            ConstructArgs a = base;
            a.p = p;
            a.u = u;
            out.push_back(a);
          }
        }
        break;
      case ConstructionId::th40:
      case ConstructionId::cor40:
      case ConstructionId::cor41:
        for (auto p : ps) {
          for (auto m : cid == ConstructionId::cor41 ? std::vector<std::int64_t>{0} : or_default(r.m, {2})) {
            for (auto k : or_default(r.kappa, {1})) {
              std::vector<std::string> pats{""};
              if (cid == ConstructionId::cor41) pats = r.patterns.empty() ? std::vector<std::string>{"theta0", "theta1"} : r.patterns;
              for (const auto& pat : pats) {
                ConstructArgs a = base;
                a.p = p;
                a.m = m;
                a.pattern = pat;
                std::string iset;
                for (std::int64_t t = 0; t < 2 * k; ++t) iset += (t ? "," : "") + std::to_string(t);
                a.index_set = iset;
                out.push_back(a);
              }
            }
          }
        }
        break;
      case ConstructionId::th42:
        for (auto n : or_default(r.n, {15})) {
          for (auto h : r.h.empty() ? std::vector<std::int64_t>{0} : r.h) {
            ConstructArgs a = base;
            a.group = std::to_string(n);
            if (h) {
              if (h < 1 || n % h) throw ParameterError("th42 subgroup order h must divide n");
              a.h = std::to_string(n / h);
            }
            out.push_back(a);
          }
        }
        break;
    }
  }
  return out;
}

struct AtlasLimits {
  std::int64_t max_v = 400;
  std::int64_t max_blocks = 2000;
  std::int64_t max_graph = 3000;
};

Json atlas_entry(const ConstructArgs& a, const AtlasLimits& lim, SemanticsChoice choice) {
  using clock = std::chrono::steady_clock;
  auto ms = [](clock::time_point t0) { return std::chrono::duration<double, std::milli>(clock::now() - t0).count(); };
  Json e = Json::object();
  e["construction"] = a.id;
  Json timings = Json::object();
  auto t0 = clock::now();
  ConstructedFamily fam;
  try {
    fam = build_family(a);
  } catch (const ParameterError& err) {
    e["skipped"] = std::string("parameter rejected: ") + err.what();
    return e;
  }
  timings["construct_ms"] = ms(t0);
  e["params"] = fam.provenance.params;
  e["group"] = fam.group.describe();
  e["claimed"] = claimed_to_json(fam.claimed);
  e["blocks"] = fam.blocks.size();
  e["k"] = fam.block_size();

  t0 = clock::now();
  e["fidelity"] = fidelity_to_json(pgds_verdict(fam, choice));
  timings["verify_ms"] = ms(t0);

  const std::int64_t v = fam.group.order();
  const std::int64_t translates = v * static_cast<std::int64_t>(fam.blocks.size());
  if (v > lim.max_v || translates > lim.max_blocks) {
    e["development"] = {{"skipped", "over budget: v = " + std::to_string(v) + ", translates = " + std::to_string(translates)}};
    e["timings"] = timings;
    return e;
  }
  t0 = clock::now();
  const Development dev = develop(fam.blocks);
  Json dj = design_report(dev.design);
  dj["collapsed"] = dev.collapsed;
  timings["design_ms"] = ms(t0);
  e["development"] = dj;

  Json graphs = Json::object();
  if (dj["tactical"].get<bool>()) {
    const std::int64_t k = static_cast<std::int64_t>(fam.block_size()), b = static_cast<std::int64_t>(dev.design.b());
    t0 = clock::now();
    for (const std::string kind : {"flag", "anti-flag"}) {
      const std::int64_t nv = kind == "flag" ? b * k : b * (v - k);
      if (nv > lim.max_graph) {
        graphs[kind] = {{"skipped", "over budget: " + std::to_string(nv) + " vertices"}};
        continue;
      }
      graphs.update(graph_report(dev.design, kind, true));
    }
    timings["dsrg_ms"] = ms(t0);
  }
  e["dsrg"] = graphs;
  e["timings"] = timings;
  return e;
}

std::string cert_cell(const Json& g) {
  if (g.is_null()) return "-";
  if (g.contains("skipped")) return "skipped";
  if (!g["certified"].get<bool>()) return "no";
  return "(" + g["v"].dump() + "," + opt_text(g["k"]) + "," + opt_text(g["t"]) + "," + opt_text(g["lambda"]) + "," + opt_text(g["mu"]) + ")";
}

std::string atlas_table(const Json& entries) {
  std::ostringstream os;
  os << "id\tparams\tgroup\tv\tk\tblocks\tclaimed\tcomputed\tsemantics\tverdict\tdev_blocks\tPG\ts_flag/s_anti\tflag_dsrg\tantiflag_dsrg\n";
  for (const auto& e : entries) {
    if (e.contains("skipped")) {
      os << e["construction"].get<std::string>() << "\t-\tskipped: " << e["skipped"].get<std::string>() << '\n';
      continue;
    }
    const auto& f = e["fidelity"];
    const auto& c = e["claimed"];
    const auto& d = e["development"];
    os << e["construction"].get<std::string>() << '\t' << e["params"].dump() << '\t' << e["group"].get<std::string>() << '\t' << c["v"]
       << '\t' << c["k"] << '\t' << e["blocks"] << '\t' << "(" << c["first"] << "," << c["second"] << ")\t"
       << "(" << opt_text(f["in_value"]) << "," << opt_text(f["off_value"]) << ")\t" << f["semantics_used"].get<std::string>() << '\t'
       << f["verdict"].get<std::string>() << '\t';
    if (d.contains("skipped")) {
      os << "skipped\t-\t-";
    } else if (!d["tactical"].get<bool>()) {
      os << d["b"] << "\tnot tactical\t-";
    } else {
      const auto& p = d["pg_matrix"];
      os << d["b"] << '\t' << (p["partial_geometric"].get<bool>() ? "yes" : "no") << '\t' << opt_text(p["s_flag"]) << "/"
         << opt_text(p["s_antiflag"]);
    }
    const Json none;
    const auto& g = e.contains("dsrg") ? e["dsrg"] : none;
    os << '\t' << cert_cell(g.is_object() && g.contains("flag") ? g["flag"] : none) << '\t'
       << cert_cell(g.is_object() && g.contains("anti-flag") ? g["anti-flag"] : none) << '\n';
  }
  return os.str();
}

std::string entry_name(const Json& e, std::size_t idx) {
  std::string s = std::to_string(idx) + "_" + e["construction"].get<std::string>();
  if (e.contains("params")) {
    for (const auto& [k, v] : e["params"].items()) {
      if (v.is_number_integer() || (v.is_string() && v.get<std::string>().find('{') == std::string::npos)) {
        s += "_" + k + (v.is_string() ? v.get<std::string>() : v.dump());
      }
    }
  }
  for (auto& ch : s) {
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') ch = '-';
  }
  return s + ".json";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partial geometric difference sets: construct, verify, develop, certify."};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--out,-o", g.out, "Output file (atlas: output directory)");
  app.add_option("--format", g.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--budget", g.budget, "Candidate cap for exhaustive search");
  app.add_option("--semantics", g.semantics, "both, blockwise or window")->check(CLI::IsMember({"both", "blockwise", "window", "family-window"}));

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "Build a family and write its JSON document");
  construct->add_option("id", ca.id, "th30 th31 th32 th33 th40 cor40 cor41 th41 th42")->required();
  construct->add_option("--m", ca.m, "th30/th40/cor40: order of the cyclic factor; th32: field degree");
  construct->add_option("--p", ca.p, "odd prime");
  construct->add_option("--i", ca.i, "first class index");
  construct->add_option("--j", ca.j, "second class index");
  construct->add_option("--s", ca.s, "th32 exponent");
  construct->add_option("--l", ca.l, "th33: n = 4l");
  construct->add_option("--variant", ca.variant, "th33: A or B");
  construct->add_option("--u", ca.u, "th41 exponent");
  construct->add_option("--base", ca.base, "th40/cor40: sigma (cor41 is the z6 base)");
  construct->add_option("--I", ca.index_set, "index set, comma separated");
  construct->add_option("--pattern", ca.pattern, "theta0 or theta1");
  construct->add_option("--pairs", ca.pairs, "explicit ordered pairs a1,b1,a2,b2,...");
  construct->add_option("--group", ca.group, "th42: cyclic orders, comma separated");
  construct->add_option("--H", ca.h, "th42: generator of the subgroup H");
  construct->add_option("--reps", ca.reps, "th42: coset representatives");

  std::string input;
  auto* verify = app.add_subcommand("verify", "Profile a family and compare with its printed tuple");
  verify->add_option("family", input, "family JSON")->required();

  bool multiset = false, grid = false;
  auto* developc = app.add_subcommand("develop", "Develop a family and certify the design");
  developc->add_option("family", input, "family JSON")->required();
  developc->add_flag("--multiset", multiset, "keep repeated translates");
  developc->add_flag("--grid", grid, "write the incidence grid instead of the report");

  auto* check = app.add_subcommand("check-design", "Certify a design given as JSON or incidence grid");
  check->add_option("design", input, "design JSON, family JSON or incidence grid")->required();

  std::string which = "both", export_fmt;
  bool no_tactical = false;
  auto* dsrg = app.add_subcommand("dsrg", "Certify flag and anti-flag digraphs");
  dsrg->add_option("design", input, "family JSON, design JSON or incidence grid")->required();
  dsrg->add_option("--graph", which, "flag, anti-flag or both")->check(CLI::IsMember({"flag", "anti-flag", "both"}));
  dsrg->add_option("--export", export_fmt, "edge-list, dot or matrix (written to --out or stdout)");
  dsrg->add_flag("--no-tactical-check", no_tactical, "build graphs even for non-tactical designs");

  std::string range;
  AtlasLimits lim;
  auto* atlas = app.add_subcommand("atlas", "Sweep constructions and certify each entry");
  atlas->add_option("--range", range, "e.g. \"p=3,5;l=1,2;u=2,3;m=2,4;kappa=1;ids=th30,th33\"")->required();
  atlas->add_option("--max-v", lim.max_v, "skip developments with more points");
  atlas->add_option("--max-blocks", lim.max_blocks, "skip developments with more translates");
  atlas->add_option("--max-graph", lim.max_graph, "skip digraphs with more vertices");

  std::string group_spec, field_spec;
  std::uint32_t k = 0;
  bool all_mode = false;
  auto* search = app.add_subcommand("search", "Exhaustive search for difference sets with two-valued profile");
  search->add_option("--group", group_spec, "cyclic orders, comma separated")->required();
  search->add_option("--field", field_spec, "optional field factor p,d");
  search->add_option("--k", k, "block size")->required();
  search->add_flag("--fix-zero", [](std::int64_t) {}, "require 0 in the set (default)");
  search->add_flag("--all", all_mode, "search every k-subset");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const bool text = g.format == "text";
    const SemanticsChoice choice = semantics_choice(g.semantics);

    if (*construct) {
      const ConstructedFamily fam = build_family(ca);
      emit(g, text ? family_text(fam) : family_to_json(fam).dump(2));
      return 0;
    }
    if (*verify) {
      const ConstructedFamily fam = family_from_json(read_json(input));
      const FidelityRecord rec = pgds_verdict(fam, choice);
      const Json j = fidelity_to_json(rec);
      emit(g, text ? fidelity_text(j) : j.dump(2));
      return exit_code(rec.verdict);
    }
    if (*developc) {
      LoadedDesign ld = load_design(input, multiset);
      if (!ld.family) throw FormatError("develop expects a family document");
      if (grid) {
        emit(g, export_incidence_grid(ld.design));
        return 0;
      }
      Json r = design_report(ld.design);
      r["collapsed"] = ld.collapsed;
      r["mode"] = multiset ? "multiset" : "set";
      r["design"] = design_to_json(ld.design);
      emit(g, text ? design_text(r) : r.dump(2));
      return design_ok(r) ? 0 : 5;
    }
    if (*check) {
      const LoadedDesign ld = load_design(input, false);
      const Json r = design_report(ld.design);
      emit(g, text ? design_text(r) : r.dump(2));
      return design_ok(r) ? 0 : 5;
    }
    if (*dsrg) {
      const LoadedDesign ld = load_design(input, false);
      std::vector<Digraph> graphs;
      const Json r = graph_report(ld.design, which, !no_tactical, &graphs);
      bool ok = true;
      for (const auto& [kind, c] : r.items()) ok = ok && c["certified"].get<bool>();
      if (!export_fmt.empty()) {
        const GraphFormat fmt = graph_format_from_string(export_fmt);
        std::string out;
        for (const auto& gr : graphs) out += export_graph(gr, fmt);
        emit(g, out);
        std::cerr << r.dump() << '\n';
      } else if (text) {
        std::ostringstream os;
        for (const auto& [kind, c] : r.items()) {
          os << kind << ": " << (c["certified"].get<bool>() ? "DSRG " : "not DSRG ") << cert_cell(c);
          if (!c["failure"].is_null()) os << "  " << c["failure"].get<std::string>();
          os << '\n';
        }
        emit(g, os.str());
      } else {
        emit(g, r.dump(2));
      }
      return ok ? 0 : 5;
    }
    if (*atlas) {
      const auto args = expand_range(parse_range(range));
      std::vector<std::future<Json>> jobs;
      for (const auto& a : args) jobs.push_back(std::async(std::launch::async, atlas_entry, a, lim, choice));
      Json entries = Json::array();
      for (auto& j : jobs) entries.push_back(j.get());
      const std::string table = atlas_table(entries);
      if (!g.out.empty()) {
        fs::create_directories(g.out);
        for (std::size_t i = 0; i < entries.size(); ++i) {
          std::ofstream f(fs::path(g.out) / entry_name(entries[i], i));
          f << entries[i].dump(2) << '\n';
        }
        std::ofstream(fs::path(g.out) / "summary.tsv") << table;
      }
      if (text) {
        std::cout << table;
      } else {
        std::cout << Json{{"entries", entries.size()}, {"records", entries}}.dump(2) << '\n';
      }
      return 0;
    }
    if (*search) {
      SearchJob job;
      FieldPtr field;
      if (!field_spec.empty()) {
        const auto pd = parse_int_list(field_spec);
        if (pd.size() != 2) throw ParameterError("--field takes p,d");
        field = build_field(static_cast<std::uint32_t>(pd[0]), static_cast<std::uint32_t>(pd[1]));
      }
      job.group = Group::make(parse_int_list(group_spec), field);
      job.k = k;
      job.fix_zero = !all_mode;
      job.budget = g.budget;
      if (choice == SemanticsChoice::blockwise) job.semantics = Semantics::blockwise;
      const SearchResult res = run_search(job);
      const Json j = search_to_json(job, res);
      if (text) {
        std::ostringstream os;
        os << "group " << job.group.describe() << " k " << k << " candidates " << res.candidates << " hits " << res.hits.size() << '\n';
        for (const auto& h : res.hits) os << h.set.format() << "  (" << h.in_value << ", " << h.off_value << ")\n";
        emit(g, os.str());
      } else {
        emit(g, j.dump(2));
      }
      return 0;
    }
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 6;
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const FormatError& e) {
    std::cerr << "error: malformed input: " << e.what() << '\n';
    return 1;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const NotTacticalError& e) {
    std::cerr << "error: not tactical: " << e.what() << '\n';
    return 5;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
