// orchard: verify, search, construct, and tabulate line arrangements with
// maximal numbers of triple intersection points, over exact arithmetic.
//
// Exit codes: 0 success/verified, 1 negative result (exhausted search,
// failed verification, no center/frame), 2 malformed input or configuration.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "orchard/construct.hpp"
#include "orchard/datasets.hpp"
#include "orchard/io.hpp"

using njson = nlohmann::ordered_json;
using namespace orchard;

namespace {

struct Cfg {
  bool json = false;
  unsigned workers = 1;
  std::uint64_t seed = 0;
  std::uint64_t max_q = 1ull << 16;  // largest field size a sweep may touch
};

void emit(const Cfg& cfg, const njson& doc, const std::string& human) {
  if (cfg.json) {
    njson out = doc;
    out["seed"] = cfg.seed;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << human << "# seed " << cfg.seed << "\n";
  }
}

// ---------------------------------------------------------------------------
// Dataset addressing: @name anywhere a file path is accepted.

bool parse_pg_name(const std::string& name, std::uint32_t& k, std::uint64_t& q) {
  if (name.rfind("pg:", 0) != 0) return false;
  std::string body = name.substr(3);
  size_t comma = body.find(',');
  if (comma == std::string::npos) fail(Err::ParseError, "@pg wants @pg:<k>,<q>");
  try {
    size_t pos = 0;
    unsigned long kk = std::stoul(body.substr(0, comma), &pos);
    if (pos != comma) throw std::invalid_argument("");
    pos = 0;
    std::string qs = body.substr(comma + 1);
    unsigned long long qq = std::stoull(qs, &pos);
    if (pos != qs.size()) throw std::invalid_argument("");
    k = std::uint32_t(kk);
    q = qq;
  } catch (const Error&) {
    throw;
  } catch (...) {
    fail(Err::ParseError, "@pg wants @pg:<k>,<q>, got '@" + name + "'");
  }
  return true;
}

IncidenceStructure load_incidence(const std::string& src) {
  if (!src.empty() && src[0] == '@') {
    std::string name = src.substr(1);
    std::uint32_t k;
    std::uint64_t q;
    if (parse_pg_name(name, k, q)) return generate_pg_truncation(k, q);
    try {
      return builtin_incidence(name);
    } catch (const Error& e) {
      if (e.kind() != Err::UnknownName) throw;
    }
    // bundled arrangements answer for their intersection structure
    try {
      return incidence_of(builtin_arrangement(name)).inc;
    } catch (const Error& e) {
      if (e.kind() != Err::UnknownName) throw;
      fail(Err::UnknownName, "no bundled dataset named '" + name + "'");
    }
  }
  return parse_incidence(read_text_file(src));
}

Arrangement load_arrangement(const std::string& src) {
  if (!src.empty() && src[0] == '@') return builtin_arrangement(src.substr(1));
  return parse_arrangement(read_text_file(src));
}

// ---------------------------------------------------------------------------
// Shared rendering.

std::string t_string(const TVector& t) {
  std::string s;
  for (auto it = t.t.rbegin(); it != t.t.rend(); ++it) {
    if (it->second == 0 && it->first != 2) continue;
    if (!s.empty()) s += " ";
    s += "t" + std::to_string(it->first) + "=" + std::to_string(it->second);
  }
  return s;
}

njson t_json(const TVector& t) {
  njson o = njson::object();
  for (const auto& [k, cnt] : t.t)
    if (cnt != 0 || k == 2) o[std::to_string(k)] = cnt;
  return o;
}

njson blocks_json(const IncidenceStructure& inc) {
  njson a = njson::array();
  for (const auto& b : inc.blocks) {
    njson row = njson::array();
    for (auto x : b) row.push_back(x + 1);
    a.push_back(std::move(row));
  }
  return a;
}

std::string drop_column(const Arrangement& arr, size_t j, Arrangement& out) {
  if (arr.f->finite()) {
    auto cols = arr.gcols;
    cols.erase(cols.begin() + std::ptrdiff_t(j));
    out = make_arrangement(arr.f, std::move(cols));
  } else {
    auto cols = arr.qcols;
    cols.erase(cols.begin() + std::ptrdiff_t(j));
    out = make_arrangement(arr.f, std::move(cols));
  }
  return "line " + std::to_string(j + 1) + " removed";
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const Cfg& cfg, const std::string& src, const std::string& against) {
  Arrangement arr = load_arrangement(src);
  auto res = incidence_of(arr);

  njson doc{{"command", "verify"},
            {"source", src},
            {"n", arr.n()},
            {"field", arr.f->spec.name()},
            {"t", t_json(res.t)},
            {"blocks", blocks_json(res.inc)}};
  std::string human = "n " + std::to_string(arr.n()) + " over " + arr.f->spec.name() + "\n" +
                      t_string(res.t) + "\n";
  for (const auto& b : res.inc.blocks) {
    std::string row = "block";
    for (auto x : b) row += " " + std::to_string(x + 1);
    human += row + "\n";
  }

  int rc = 0;
  if (!against.empty()) {
    IncidenceStructure want = load_incidence(against);
    auto v = verify_realization(arr, want);
    doc["against"] = against;
    doc["ok"] = v.ok;
    doc["discrepancy"] = v.discrepancy;
    human += v.ok ? "against " + against + ": realized exactly\n"
                  : "against " + against + ": MISMATCH — " + v.discrepancy + "\n";
    rc = v.ok ? 0 : 1;
  }
  emit(cfg, doc, human);
  return rc;
}

// ---------------------------------------------------------------------------
// realize

std::vector<FieldSpec> sweep_fields(std::uint64_t upto, std::uint64_t max_q) {
  if (upto < 2) fail(Err::OutOfRange, "--all-fields-up-to wants a bound >= 2");
  if (upto > max_q)
    fail(Err::CapExceeded, "field sweep bound exceeds the cap (" + std::to_string(max_q) +
                               "; raise ORCHARD_MAX_Q to override)");
  std::vector<FieldSpec> out;
  for (std::uint64_t q = 2; q <= upto; ++q)
    if (auto pp = prime_power(q)) out.push_back(FieldSpec::finite(std::uint32_t(pp->first), pp->second));
  return out;
}

int cmd_realize(const Cfg& cfg, const std::string& src, const std::vector<std::uint32_t>& field,
                std::uint64_t upto, bool allow_big) {
  IncidenceStructure inc = load_incidence(src);
  bool single = !field.empty();
  std::vector<FieldSpec> fields;
  if (single)
    fields.push_back(FieldSpec::finite(field[0], field[1]));
  else
    fields = sweep_fields(upto, cfg.max_q);

  SearchOptions opts;
  opts.workers = cfg.workers;
  opts.allow_big_blocks = allow_big;

  njson rows = njson::array();
  std::string human = "n " + std::to_string(inc.n) + ", " + std::to_string(inc.blocks.size()) +
                      " blocks\n";
  bool any_found = false;
  for (const auto& fs : fields) {
    SearchOutcome out;
    try {
      out = search_realization(inc, fs, opts);
    } catch (const Error& e) {
      if (e.kind() != Err::NoFrame) throw;
      // frame existence does not depend on the field: report once and stop
      njson row{{"field", fs.name()}, {"status", "no_frame"}, {"detail", e.what()}};
      rows.push_back(std::move(row));
      human += std::string("no frame: ") + e.what() + "\n";
      emit(cfg, njson{{"command", "realize"}, {"source", src}, {"fields", rows}}, human);
      return 1;
    }
    bool found = out.status == SearchStatus::Found;
    any_found |= found;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: %s (nodes=%llu, %.3fs)\n", fs.name().c_str(),
                  found ? "found" : "exhausted", (unsigned long long)out.nodes,
                  out.elapsed_seconds);
    human += buf;
    njson row{{"field", fs.name()},
              {"status", found ? "found" : "exhausted"},
              {"nodes", out.nodes},
              {"seconds", out.elapsed_seconds}};
    if (found) {
      std::string text = serialize_arrangement(*out.witness);
      row["witness"] = text;
      human += text;
    }
    rows.push_back(std::move(row));
  }
  emit(cfg, njson{{"command", "realize"}, {"source", src}, {"found_any", any_found},
                  {"fields", rows}},
       human);
  return any_found ? 0 : 1;
}

// ---------------------------------------------------------------------------
// construct

int cmd_construct(const Cfg& cfg, std::uint32_t k, std::uint64_t q, std::uint32_t m,
                  const std::string& out_path) {
  ConstructionReport rep = build_arrangement(k, q, m);
  const GF& big = *rep.arrangement.f->gf;

  std::string text = serialize_arrangement(rep.arrangement);
  njson centers = njson::array();
  std::string human;
  human += "k " + std::to_string(rep.k) + "\n";
  human += "q " + std::to_string(rep.q) + "\n";
  human += "m " + std::to_string(rep.m_used) + " (default " + std::to_string(rep.m_auto) + ")\n";
  human += "field " + rep.arrangement.f->spec.name() + "\n";
  human += "lines " + std::to_string(rep.counts.lines) + "\n";
  human += "points " + std::to_string(rep.counts.points) + " of multiplicity " +
           std::to_string(rep.counts.multiplicity) + "\n";
  human += t_string(rep.t) + "\n";
  for (size_t i = 0; i < rep.centers.size(); ++i) {
    std::string row = "center " + std::to_string(i + 1) + ":";
    njson jc = njson::array();
    for (auto x : rep.centers[i]) {
      row += " " + gf_elem_to_string(big, x);
      jc.push_back(gf_elem_to_string(big, x));
    }
    centers.push_back(std::move(jc));
    human += row + "\n";
  }
  if (!rep.deviation.empty()) human += "deviation: " + rep.deviation + "\n";
  human += text;

  njson doc{{"command", "construct"},
            {"k", rep.k},
            {"q", rep.q},
            {"m", rep.m_used},
            {"m_default", rep.m_auto},
            {"field", rep.arrangement.f->spec.name()},
            {"lines", rep.counts.lines},
            {"points", rep.counts.points},
            {"multiplicity", rep.counts.multiplicity},
            {"t", t_json(rep.t)},
            {"centers", centers},
            {"deviation", rep.deviation},
            {"arrangement", text}};
  if (!out_path.empty()) {
    write_text_file(out_path, text);
    doc["out"] = out_path;
    human += "written to " + out_path + "\n";
  }
  emit(cfg, doc, human);
  return 0;
}

// ---------------------------------------------------------------------------
// table

struct Achieved {
  std::uint64_t t3;
  std::string via;
};

std::optional<Achieved> achieved_for(std::uint64_t s) {
  auto inc_t3 = [](const Arrangement& a) { return incidence_of(a).t.at(3); };
  switch (s) {
    case 7: {
      auto out = search_realization(builtin_incidence("fano"), FieldSpec::finite(2, 1));
      return Achieved{inc_t3(*out.witness), "search over F_2 of @fano"};
    }
    case 9: {
      auto out = search_realization(builtin_incidence("dual_hesse"), FieldSpec::finite(3, 1));
      return Achieved{inc_t3(*out.witness), "search over F_3 of @dual_hesse"};
    }
    case 13:
      return Achieved{inc_t3(builtin_arrangement("f7_13")), "@f7_13"};
    case 14: {
      auto out = search_realization(generate_pg_truncation(3, 2), FieldSpec::finite(2, 4));
      Arrangement less;
      std::string note = drop_column(*out.witness, 0, less);
      return Achieved{inc_t3(less), "@pg:3,2 realized over F_16, " + note};
    }
    case 15: {
      auto out = search_realization(generate_pg_truncation(3, 2), FieldSpec::finite(2, 4));
      return Achieved{inc_t3(*out.witness), "search over F_16 of @pg:3,2"};
    }
    case 16:
      return Achieved{inc_t3(builtin_arrangement("f11_16")), "@f11_16"};
    case 18: {
      Arrangement less;
      std::string note = drop_column(builtin_arrangement("sporadic19"), 0, less);
      return Achieved{inc_t3(less), "@sporadic19, " + note};
    }
    case 19:
      return Achieved{inc_t3(builtin_arrangement("sporadic19")), "@sporadic19"};
    default:
      return std::nullopt;
  }
}

int cmd_table(const Cfg& cfg, std::uint64_t a, std::uint64_t b) {
  if (a < 1 || b < a) fail(Err::OutOfRange, "--s-range wants 1 <= a <= b");
  njson rows = njson::array();
  std::string human = "s     U_3(s)  t_3 achieved  via\n";
  for (std::uint64_t s = a; s <= b; ++s) {
    std::uint64_t u3 = schonheim_bound(s);
    auto ach = achieved_for(s);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%-5llu %-7llu %-13s ", (unsigned long long)s,
                  (unsigned long long)u3,
                  ach ? std::to_string(ach->t3).c_str() : "-");
    human += buf;
    human += (ach ? ach->via : "-") + "\n";
    njson row{{"s", s}, {"u3", u3}};
    if (ach) {
      row["achieved"] = ach->t3;
      row["via"] = ach->via;
    } else {
      row["achieved"] = nullptr;
      row["via"] = nullptr;
    }
    rows.push_back(std::move(row));
  }
  emit(cfg, njson{{"command", "table"}, {"rows", rows}}, human);
  return 0;
}

// ---------------------------------------------------------------------------
// aut

int cmd_aut(const Cfg& cfg, const std::string& src) {
  IncidenceStructure inc = load_incidence(src);
  AutGroupReport rep = automorphisms(inc);

  std::string human = "n " + std::to_string(inc.n) + ", " + std::to_string(inc.blocks.size()) +
                      " blocks\n";
  human += "order " + rep.order.get_str() + "\n";
  human += "block orbits " + std::to_string(rep.block_orbits.size()) +
           (rep.block_transitive ? " (transitive)" : "") + "\n";
  njson gens = njson::array();
  for (const auto& g : rep.generators) {
    std::string row = "generator";
    njson jg = njson::array();
    for (auto x : g) {
      row += " " + std::to_string(x + 1);
      jg.push_back(x + 1);
    }
    gens.push_back(std::move(jg));
    human += row + "\n";
  }
  emit(cfg,
       njson{{"command", "aut"},
             {"source", src},
             {"n", inc.n},
             {"blocks", inc.blocks.size()},
             {"order", rep.order.get_str()},
             {"block_orbits", rep.block_orbits.size()},
             {"block_transitive", rep.block_transitive},
             {"generators", gens}},
       human);
  return 0;
}

// ---------------------------------------------------------------------------
// ideal

int cmd_ideal(const Cfg& cfg, const std::string& src, const std::string& out_path) {
  IncidenceStructure inc = load_incidence(src);
  IdealExport ide = build_ideal(inc);
  std::string text = serialize_ideal(ide);

  njson doc{{"command", "ideal"},
            {"source", src},
            {"variables", ide.variables},
            {"factored_saturation", ide.factored_saturation},
            {"generators", ide.generators}};
  std::string human;
  if (!out_path.empty()) {
    write_text_file(out_path, text);
    doc["out"] = out_path;
    human = "written to " + out_path + " (" + std::to_string(ide.generators.size()) +
            " generators, " + std::to_string(ide.variables.size()) + " variables)\n";
  } else {
    human = text;
  }
  emit(cfg, doc, human);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orchard — line arrangements with many triple points, in exact arithmetic"};
  app.require_subcommand(1);

  Cfg cfg;
  if (const char* env = std::getenv("ORCHARD_MAX_Q")) {
    try {
      cfg.max_q = std::stoull(env);
    } catch (...) {
      std::cerr << "error: ORCHARD_MAX_Q is not a number\n";
      return 2;
    }
  }
  app.add_flag("--json", cfg.json, "machine-readable output");
  app.add_option("--workers", cfg.workers, "worker count forwarded to the search")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "seed recorded in every output for replayability");

  auto* v = app.add_subcommand("verify", "t-vector and blocks of an arrangement file");
  std::string v_src, v_against;
  v->add_option("arrangement", v_src, "arrangement file or @name")->required();
  v->add_option("--against", v_against, "incidence file the arrangement must realize exactly");
  v->fallthrough();

  auto* r = app.add_subcommand("realize", "search for realizations over finite fields");
  std::string r_src;
  std::vector<std::uint32_t> r_field;
  std::uint64_t r_upto = 0;
  bool r_big = false;
  r->add_option("incidence", r_src, "incidence file or @name")->required();
  auto* r_field_opt = r->add_option("--field", r_field, "single field as: p k")->expected(2);
  auto* r_upto_opt =
      r->add_option("--all-fields-up-to", r_upto, "sweep all prime powers q <= bound");
  r_field_opt->excludes(r_upto_opt);
  r->add_flag("--allow-big-blocks", r_big, "accept blocks larger than 3");
  r->fallthrough();

  auto* c = app.add_subcommand("construct", "iterated-projection arrangement for PG(k, q)");
  std::uint32_t c_k = 0, c_m = kAutoDegree;
  std::uint64_t c_q = 0;
  std::string c_out;
  c->add_option("--k", c_k, "projective dimension k >= 2")->required();
  c->add_option("--q", c_q, "base field size (prime power)")->required();
  c->add_option("--m", c_m, "extension degree (default: the sufficient degree)");
  c->add_option("--out", c_out, "also write the arrangement file here");
  c->fallthrough();

  auto* t = app.add_subcommand("table", "packing bound vs achieved triple counts");
  std::vector<std::uint64_t> t_range;
  t->add_option("--s-range", t_range, "row range as: a b")->required()->expected(2);
  t->fallthrough();

  auto* a = app.add_subcommand("aut", "automorphism group of an incidence structure");
  std::string a_src;
  a->add_option("incidence", a_src, "incidence file or @name")->required();
  a->fallthrough();

  auto* i = app.add_subcommand("ideal", "determinantal ideal export for CAS tools");
  std::string i_src, i_out;
  i->add_option("incidence", i_src, "incidence file or @name")->required();
  i->add_option("--out", i_out, "write the export here instead of stdout");
  i->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int ec = app.exit(e);
    return ec == 0 ? 0 : 2;
  }

  try {
    if (v->parsed()) return cmd_verify(cfg, v_src, v_against);
    if (r->parsed()) {
      if (r_field.empty() && r_upto == 0)
        fail(Err::OutOfRange, "pick --field p k or --all-fields-up-to Q");
      return cmd_realize(cfg, r_src, r_field, r_upto, r_big);
    }
    if (c->parsed()) return cmd_construct(cfg, c_k, c_q, c_m, c_out);
    if (t->parsed()) return cmd_table(cfg, t_range[0], t_range[1]);
    if (a->parsed()) return cmd_aut(cfg, a_src);
    if (i->parsed()) return cmd_ideal(cfg, i_src, i_out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return (e.kind() == Err::NoFrame || e.kind() == Err::NoCenterFound) ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
