// Command-line front end: parse posets, run the analyses, print human tables
// or JSON (see docs/schema.md), and reproduce the six-column summary table.
//
// Exit codes: 0 success, 1 usage or parse error, 2 mathematical gate failure,
// 3 search exhausted, 4 size guard exceeded.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hibicy/periods.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace hibicy;

struct Options {
  std::string poset_arg;
  std::string degrees;  // raw "a,b,c"
  std::string format = "table";
  int terms = -1;  // -M; per-command default applied after parse
  int max_order = 4;
  int max_zdegree = 4;
  int bps_count = 6;
  bool table1 = false;
  std::size_t cap_ideals = kDefaultIdealCap;
  std::size_t cap_cycles = kDefaultCycleCap;

  EnumerationCaps caps() const { return {cap_ideals, cap_cycles}; }
};

std::vector<long> parse_degree_list(const std::string& raw) {
  std::vector<long> out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    long v = 0;
    try {
      v = std::stol(item, &pos);
    } catch (...) {
      pos = 0;
    }
    if (item.empty() || pos != item.size() || v <= 0)
      throw ParseError("bad degree list '" + raw +
                       "': entries must be positive integers");
    out.push_back(v);
  }
  if (out.empty()) throw ParseError("empty degree list");
  return out;
}

std::string join_longs(const std::vector<long>& v, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

// Degrees from the flag if given, otherwise the unique admissible tuple.
std::vector<long> degrees_for(const Poset& p, const std::string& flag) {
  if (!flag.empty()) return parse_degree_list(flag);
  std::vector<std::vector<long>> tuples = ci_degree_tuples(p);
  if (tuples.size() == 1) return tuples.front();
  if (tuples.empty())
    throw std::invalid_argument(
        "no admissible degree tuple: the poset needs |P| - 3 positive "
        "degrees summing to its bounded height");
  std::string msg = "degree tuple is ambiguous; pass -d with one of:";
  for (const auto& t : tuples) msg += " " + join_longs(t, ",");
  throw std::invalid_argument(msg);
}

json poset_json(const Poset& p) {
  json j;
  j["elements"] = p.names();
  json covers = json::array();
  for (const auto& [a, b] : p.covers())
    covers.push_back(json::array({p.name(a), p.name(b)}));
  j["covers"] = std::move(covers);
  return j;
}

json cycle_json(const BoundedPoset& ph, const ConvexCycle& c) {
  json v = json::array();
  for (int x : c.vertices) v.push_back(ph.vertex_name(x));
  return v;
}

const char* yesno(bool b) { return b ? "yes" : "no"; }

bool poset_is_chain(const Poset& p) {
  return p.is_chain_subset((1u << p.size()) - 1u);
}

// ---- analyze ---------------------------------------------------------------

void run_analyze(const Options& o, std::ostream& out) {
  Poset p = resolve_poset(o.poset_arg);
  BoundedPoset ph(p);
  StructureSummary ss = structure(p);
  IdealLattice lat = ideal_lattice(p, o.cap_ideals);
  std::vector<HibiQuadric> quadrics = hibi_quadrics(lat);
  std::vector<ConvexCycle> cycles = minimal_convex_cycles(ph, 0, o.cap_cycles);
  std::vector<ConvexCycle> four;
  for (const ConvexCycle& c : cycles)
    if (c.size() == 4) four.push_back(c);

  struct Locus {
    const ConvexCycle* cycle;
    Poset quotient;
    Int chains;
    bool chain_locus;
  };
  std::vector<Locus> loci;
  for (const ConvexCycle& c : four) {
    Poset q = contract_cycle(ph, c);
    Int chains = ideal_lattice(q, o.cap_ideals).chain_count;
    loci.push_back({&c, q, chains, poset_is_chain(q)});
  }

  if (o.format == "json") {
    json j;
    j["command"] = "analyze";
    j["poset_source"] = o.poset_arg;
    j["poset"] = poset_json(p);
    j["bounded_vertices"] = ph.vertex_count();
    j["edge_count"] = ph.edge_count();
    j["connected"] = ss.connected;
    j["pure"] = ss.pure;
    j["height"] = ss.height;
    j["ideal_count"] = Int(lat.size()).get_str();
    j["chain_count"] = lat.chain_count.get_str();
    j["hibi_quadric_count"] = quadrics.size();
    j["four_cycle_count"] = four.size();
    json cj = json::array();
    for (const ConvexCycle& c : cycles) {
      json e;
      e["size"] = c.size();
      e["vertices"] = cycle_json(ph, c);
      cj.push_back(std::move(e));
    }
    j["minimal_convex_cycles"] = std::move(cj);
    json nl = json::array();
    for (const Locus& l : loci) {
      json e;
      e["cycle"] = cycle_json(ph, *l.cycle);
      e["locus"] = poset_json(l.quotient);
      e["locus_chain_count"] = l.chains.get_str();
      e["chain_locus"] = l.chain_locus;
      nl.push_back(std::move(e));
    }
    j["node_loci"] = std::move(nl);
    out << j.dump(2) << "\n";
    return;
  }

  out << "poset: " << o.poset_arg << " (" << p.size() << " elements)\n";
  out << "bounded poset: " << ph.vertex_count() << " vertices, "
      << ph.edge_count() << " edges\n";
  out << "connected: " << yesno(ss.connected) << "   pure: " << yesno(ss.pure)
      << "   height h_P: " << ss.height << "\n";
  out << "ideals |J(P)|: " << lat.size() << "\n";
  out << "maximal chains c_J: " << lat.chain_count << "\n";
  out << "Hibi quadrics: " << quadrics.size() << "\n";
  out << "four-cycles |Lambda_4|: " << four.size() << "\n";
  out << "minimal convex cycles: " << cycles.size() << "\n";
  for (const ConvexCycle& c : cycles)
    out << "  size " << c.size() << ": " << describe_cycle(ph, c) << "\n";
  if (loci.empty()) {
    out << "node loci: none\n";
  } else {
    out << "node loci:\n";
    for (const Locus& l : loci) {
      out << "  " << describe_cycle(ph, *l.cycle) << " -> locus {";
      for (int v = 0; v < l.quotient.size(); ++v)
        out << (v ? ", " : "") << l.quotient.name(v);
      out << "}, c_J = " << l.chains
          << ", chain: " << yesno(l.chain_locus) << "\n";
    }
  }
}

// ---- invariants ------------------------------------------------------------

json report_json(const InvariantReport& rep) {
  json j;
  j["degrees"] = rep.degrees;
  j["ideal_count"] = rep.ideal_count.get_str();
  j["chain_count"] = rep.chain_count.get_str();
  j["edge_count"] = rep.edge_count;
  j["h11_Y"] = rep.h11_Y;
  j["h12_Y"] = rep.h12_Y.get_str();
  j["dp"] = rep.dp.get_str();
  j["rk"] = rep.rk;
  j["smoothable"] = rep.smoothable;
  j["smooth_reason"] = rep.smooth_reason;
  if (!rep.witness.empty()) j["witness"] = rep.witness;
  if (rep.h11_X) j["h11_X"] = *rep.h11_X;
  if (rep.h12_X) j["h12_X"] = rep.h12_X->get_str();
  if (rep.chi_X) j["chi_X"] = rep.chi_X->get_str();
  if (rep.deg_X) j["deg_X"] = rep.deg_X->get_str();
  if (rep.c2H) j["c2_H"] = rep.c2H->get_str();
  if (!rep.partial_reason.empty()) j["partial_reason"] = rep.partial_reason;
  j["caveat"] = rep.caveat;
  return j;
}

void run_invariants(const Options& o, std::ostream& out) {
  if (o.table1) {
    static const char* kNames[] = {"P1", "P2", "P3", "P4", "P5", "P6"};
    std::vector<json> rows;
    for (const char* name : kNames) {
      Poset p = builtin_poset(name);
      CicySpec spec(p, degrees_for(p, ""));
      InvariantReport rep = invariant_report(spec, o.caps());
      json row;
      row["poset"] = name;
      row["degrees"] = rep.degrees;
      row["deg"] = rep.deg_X ? rep.deg_X->get_str() : "-";
      row["c2_H"] = rep.c2H ? rep.c2H->get_str() : "-";
      row["chi"] = rep.chi_X ? rep.chi_X->get_str() : "-";
      rows.push_back(std::move(row));
    }
    if (o.format == "json") {
      json j;
      j["command"] = "invariants";
      j["table1"] = rows;
      out << j.dump(2) << "\n";
      return;
    }
    auto cell = [](const std::string& s) {
      std::string pad(s.size() >= 8 ? 1 : 8 - s.size(), ' ');
      return pad + s;
    };
    out << "        ";
    for (const json& r : rows) out << cell(r["poset"].get<std::string>());
    out << "\ndeg     ";
    for (const json& r : rows) out << cell(r["deg"].get<std::string>());
    out << "\nc2.H    ";
    for (const json& r : rows) out << cell(r["c2_H"].get<std::string>());
    out << "\nchi     ";
    for (const json& r : rows) out << cell(r["chi"].get<std::string>());
    out << "\n";
    return;
  }

  Poset p = resolve_poset(o.poset_arg);
  CicySpec spec(p, degrees_for(p, o.degrees));
  InvariantReport rep = invariant_report(spec, o.caps());

  if (o.format == "json") {
    json j;
    j["command"] = "invariants";
    j["poset_source"] = o.poset_arg;
    j["poset"] = poset_json(p);
    json rj = report_json(rep);
    for (auto& [k, v] : rj.items()) j[k] = v;
    out << j.dump(2) << "\n";
    return;
  }

  out << "poset: " << o.poset_arg << " (" << p.size() << " elements), degrees ("
      << join_longs(rep.degrees, ", ") << ")\n";
  out << "|J(P)| = " << rep.ideal_count << "   c_J = " << rep.chain_count
      << "   |E| = " << rep.edge_count << "\n";
  out << "h11(Y) = " << rep.h11_Y << "   h12(Y) = " << rep.h12_Y << "\n";
  out << "nodes dp = " << rep.dp << "   exceptional rank rk = " << rep.rk
      << "\n";
  out << "smoothable: " << yesno(rep.smoothable) << " -- " << rep.smooth_reason
      << "\n";
  if (!rep.witness.empty()) out << "witness cycle: " << rep.witness << "\n";
  if (rep.h11_X) {
    out << "h11(X) = " << *rep.h11_X << "   h12(X) = " << *rep.h12_X
        << "   chi(X) = " << *rep.chi_X << "\n";
  }
  if (rep.deg_X) {
    out << "deg(X) = " << *rep.deg_X << "   c2.H = " << *rep.c2H << "\n";
  } else if (!rep.partial_reason.empty()) {
    out << "deg(X), c2.H: not computed -- " << rep.partial_reason << "\n";
  }
  out << "caveat: " << rep.caveat << "\n";
}

// ---- period / pf-fit / bps -------------------------------------------------

const char* provenance_name(PeriodProvenance p) {
  return p == PeriodProvenance::kLatticeSum ? "lattice-sum" : "binomial-oracle";
}

void run_period(const Options& o, std::ostream& out) {
  Poset p = resolve_poset(o.poset_arg);
  CicySpec spec(p, degrees_for(p, o.degrees));
  const int M = o.terms < 0 ? 10 : o.terms;
  PeriodSeries s = period_coefficients(spec, M);

  if (o.format == "json") {
    json j;
    j["command"] = "period";
    j["poset_source"] = o.poset_arg;
    j["degrees"] = s.degrees;
    j["terms"] = M + 1;
    json c = json::array();
    for (const Int& a : s.coeffs) c.push_back(a.get_str());
    j["coefficients"] = std::move(c);
    j["provenance"] = provenance_name(s.provenance);
    if (!s.note.empty()) j["note"] = s.note;
    out << j.dump(2) << "\n";
    return;
  }

  out << "poset: " << o.poset_arg << ", degrees ("
      << join_longs(s.degrees, ", ") << ")\n";
  out << "period coefficients A_0..A_" << M << ":\n";
  for (std::size_t i = 0; i < s.coeffs.size(); ++i)
    out << (i ? ", " : "") << s.coeffs[i];
  out << "\n";
  if (!s.note.empty()) out << "note: " << s.note << "\n";
}

json operator_json(const ThetaOperator& op) {
  json j;
  j["order"] = op.order;
  j["zdegree"] = op.zdegree;
  json rows = json::array();
  for (const auto& row : op.coeffs) {
    json r = json::array();
    for (const Int& c : row) r.push_back(c.get_str());
    rows.push_back(std::move(r));
  }
  j["coefficients"] = std::move(rows);
  j["pretty"] = format_theta_operator(op);
  return j;
}

void print_operator_table(const ThetaOperator& op, std::ostream& out) {
  out << "operator (order " << op.order << ", z-degree " << op.zdegree
      << "):\n";
  out << "  " << format_theta_operator(op) << "\n";
  out << "coefficients of z^k theta^i (one row per k, i ascending):\n";
  for (int k = 0; k <= op.zdegree; ++k) {
    out << "  z^" << k << ":";
    for (const Int& c : op.coeffs[k]) out << " " << c;
    out << "\n";
  }
}

void run_pf_fit(const Options& o, std::ostream& out) {
  Poset p = resolve_poset(o.poset_arg);
  CicySpec spec(p, degrees_for(p, o.degrees));
  const int M = o.terms < 0 ? 40 : o.terms;
  PeriodSeries s = period_coefficients(spec, M);
  ThetaOperator op = fit_theta_operator(s, o.max_order, o.max_zdegree);

  if (o.format == "json") {
    json j;
    j["command"] = "pf-fit";
    j["poset_source"] = o.poset_arg;
    j["degrees"] = s.degrees;
    j["terms"] = M + 1;
    json oj = operator_json(op);
    for (auto& [k, v] : oj.items()) j[k] = v;
    if (!s.note.empty()) j["note"] = s.note;
    out << j.dump(2) << "\n";
    return;
  }

  out << "poset: " << o.poset_arg << ", degrees ("
      << join_longs(s.degrees, ", ") << "), series A_0..A_" << M << "\n";
  print_operator_table(op, out);
  if (!s.note.empty()) out << "note: " << s.note << "\n";
}

void run_bps(const Options& o, std::ostream& out) {
  Poset p = resolve_poset(o.poset_arg);
  CicySpec spec(p, degrees_for(p, o.degrees));
  const int M = o.terms < 0 ? 40 : o.terms;
  InvariantReport rep = invariant_report(spec, o.caps());
  if (!rep.deg_X)
    throw std::invalid_argument(
        "BPS extraction needs a one-parameter smoothing; " +
        rep.partial_reason);
  PeriodSeries s = period_coefficients(spec, M);
  ThetaOperator op = fit_theta_operator(s, o.max_order, o.max_zdegree);
  std::vector<Rat> counts = genus0_bps(op, *rep.deg_X, o.bps_count);
  bool integral = true;
  for (const Rat& c : counts) integral = integral && c.get_den() == 1;

  if (o.format == "json") {
    json j;
    j["command"] = "bps";
    j["poset_source"] = o.poset_arg;
    j["degrees"] = s.degrees;
    j["deg_X"] = rep.deg_X->get_str();
    j["order"] = op.order;
    j["zdegree"] = op.zdegree;
    json c = json::array();
    for (const Rat& x : counts) c.push_back(x.get_str());
    j["counts"] = std::move(c);
    j["integral"] = integral;
    if (!s.note.empty()) j["note"] = s.note;
    out << j.dump(2) << "\n";
    return;
  }

  out << "poset: " << o.poset_arg << ", degrees ("
      << join_longs(s.degrees, ", ") << "), deg(X) = " << *rep.deg_X << "\n";
  print_operator_table(op, out);
  for (std::size_t e = 0; e < counts.size(); ++e)
    out << "n_" << (e + 1) << " = " << counts[e] << "\n";
  if (!integral) out << "warning: non-integral values above\n";
  if (!s.note.empty()) out << "note: " << s.note << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact invariants of complete-intersection Calabi-Yau threefolds in "
      "Hibi toric varieties"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* cmd, bool poset_required, bool degrees) {
    CLI::Option* pos = cmd->add_option(
        "poset", o.poset_arg, "builtin poset name or @file.poset");
    if (poset_required) pos->required();
    if (degrees)
      cmd->add_option("-d,--degrees", o.degrees,
                      "comma-separated degree tuple (default: inferred)");
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"table", "json"}));
    cmd->add_option("--cap-ideals", o.cap_ideals, "ideal enumeration cap");
    cmd->add_option("--cap-cycles", o.cap_cycles, "cycle enumeration cap");
  };

  CLI::App* analyze = app.add_subcommand(
      "analyze", "structure, ideal lattice, and singular loci of a poset");
  add_common(analyze, true, false);

  CLI::App* invariants = app.add_subcommand(
      "invariants", "full invariant report of the associated threefolds");
  add_common(invariants, false, true);
  invariants->add_flag("--table1", o.table1,
                       "print the six-column deg / c2.H / chi summary table");

  CLI::App* period = app.add_subcommand(
      "period", "fundamental period coefficients of the conjectural mirror");
  add_common(period, true, true);
  period->add_option("-M,--terms", o.terms, "last coefficient index (default 10)");

  CLI::App* pf_fit = app.add_subcommand(
      "pf-fit", "fit the annihilating theta-operator of the period series");
  add_common(pf_fit, true, true);
  pf_fit->add_option("-M,--terms", o.terms, "last coefficient index (default 40)");
  pf_fit->add_option("--max-order", o.max_order, "largest theta order tried");
  pf_fit->add_option("--max-zdegree", o.max_zdegree, "largest z-degree tried");

  CLI::App* bps = app.add_subcommand(
      "bps", "genus-0 BPS numbers through the mirror map");
  add_common(bps, true, true);
  bps->add_option("-M,--terms", o.terms, "last coefficient index (default 40)");
  bps->add_option("--max-order", o.max_order, "largest theta order tried");
  bps->add_option("--max-zdegree", o.max_zdegree, "largest z-degree tried");
  bps->add_option("-D,--count", o.bps_count, "how many BPS numbers to print");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (*invariants && !o.table1 && o.poset_arg.empty()) {
    std::cerr << "error: invariants needs a poset argument or --table1\n";
    return 1;
  }

  try {
    std::ostringstream out;
    if (*analyze) run_analyze(o, out);
    else if (*invariants) run_invariants(o, out);
    else if (*period) run_period(o, out);
    else if (*pf_fit) run_pf_fit(o, out);
    else if (*bps) run_bps(o, out);
    std::cout << out.str();
    return 0;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const GateError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const SearchError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const SizeGuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
