#include "cspk/io.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cspk/config.hpp"

namespace cspk {

using nlohmann::ordered_json;

namespace {

std::string strip(const std::string& line) {
  std::string s = line;
  if (auto pos = s.find('#'); pos != std::string::npos) s.erase(pos);
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

int parse_int(const std::string& s, int line, const std::string& what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "expected an integer for " + what + ", got '" + s + "'");
  }
}

}  // namespace

ConstraintLanguage parse_language_text(const std::string& text) {
  std::istringstream is(text);
  std::string raw;
  int lineno = 0;

  std::vector<BooleanRelation> relations;
  std::set<std::string> names;
  std::optional<BooleanRelation> current;
  std::set<std::uint32_t> current_members;

  auto flush = [&]() {
    if (current) relations.push_back(std::move(*current));
    current.reset();
    current_members.clear();
  };

  while (std::getline(is, raw)) {
    ++lineno;
    std::string line = strip(raw);
    if (line.empty()) continue;
    auto tk = tokens(line);
    if (tk[0] == "relation") {
      if (tk.size() != 3) throw ParseError(lineno, "expected 'relation NAME K'");
      int k = parse_int(tk[2], lineno, "relation arity");
      if (k < 1) throw ParseError(lineno, "relation arity must be >= 1");
      if (k > Config::get().max_arity)
        throw BudgetExceeded("relation arity " + std::to_string(k) + " exceeds the configured cap " +
                             std::to_string(Config::get().max_arity));
      if (!names.insert(tk[1]).second) throw ParseError(lineno, "duplicate relation name " + tk[1]);
      flush();
      current.emplace(tk[1], k);
    } else if (line.find_first_not_of("01") == std::string::npos) {
      if (!current) throw ParseError(lineno, "tuple line before any 'relation' directive");
      if (static_cast<int>(line.size()) != current->arity())
        throw ParseError(lineno, "tuple '" + line + "' has length " +
                                     std::to_string(line.size()) + ", expected " +
                                     std::to_string(current->arity()));
      std::uint32_t idx = tuple_to_index(tuple_from_string(line));
      if (!current_members.insert(idx).second)
        throw ParseError(lineno, "duplicate tuple '" + line + "'");
      current->insert_index(idx);
    } else {
      throw ParseError(lineno, "unrecognized line '" + line + "'");
    }
  }
  flush();
  if (relations.empty()) throw ParseError(0, "language file declares no relations");
  return ConstraintLanguage(std::move(relations));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
}

ConstraintLanguage parse_language(const std::string& path) {
  return parse_language_text(read_text_file(path));
}

std::string write_language_text(const ConstraintLanguage& language) {
  std::ostringstream os;
  bool first = true;
  for (const auto& r : language.relations()) {
    if (!first) os << "\n";
    first = false;
    os << "relation " << r.name() << " " << r.arity() << "\n";
    for (auto i : r.member_indices()) os << tuple_to_string(index_to_tuple(i, r.arity())) << "\n";
  }
  return os.str();
}

CspInstance parse_instance_text(const std::string& text, const ConstraintLanguage& language) {
  std::istringstream is(text);
  std::string raw;
  int lineno = 0;
  CspInstance inst;
  bool header_seen = false;

  while (std::getline(is, raw)) {
    ++lineno;
    std::string line = strip(raw);
    if (line.empty()) continue;
    auto tk = tokens(line);
    if (!header_seen) {
      if (tk.size() != 2 || tk[0] != "csp") throw ParseError(lineno, "expected header 'csp N'");
      inst.num_vars = parse_int(tk[1], lineno, "variable count");
      if (inst.num_vars < 0) throw ParseError(lineno, "variable count must be >= 0");
      header_seen = true;
      continue;
    }
    const BooleanRelation* r = language.find(tk[0]);
    if (!r) throw ParseError(lineno, "undeclared relation '" + tk[0] + "'");
    if (static_cast<int>(tk.size()) - 1 != r->arity())
      throw ParseError(lineno, "relation " + tk[0] + " has arity " + std::to_string(r->arity()) +
                                   ", got " + std::to_string(tk.size() - 1) + " variables");
    Constraint c;
    c.relation = tk[0];
    for (std::size_t i = 1; i < tk.size(); ++i) {
      int v = parse_int(tk[i], lineno, "variable index");
      if (v < 1 || v > inst.num_vars)
        throw ParseError(lineno, "variable " + std::to_string(v) + " out of range [1, " +
                                     std::to_string(inst.num_vars) + "]");
      c.vars.push_back(v);
    }
    inst.constraints.push_back(std::move(c));
  }
  if (!header_seen) throw ParseError(0, "instance file has no 'csp N' header");
  return inst;
}

CspInstance parse_instance(const std::string& path, const ConstraintLanguage& language) {
  return parse_instance_text(read_text_file(path), language);
}

std::string write_instance_text(const CspInstance& instance) {
  std::ostringstream os;
  os << "csp " << instance.num_vars << "\n";
  for (const auto& c : instance.constraints) {
    os << c.relation;
    for (int v : c.vars) os << " " << v;
    os << "\n";
  }
  return os.str();
}

void write_instance(const CspInstance& instance, const std::string& path) {
  write_text_file(path, write_instance_text(instance));
}

namespace {

ordered_json ring_to_json(const Ring& ring) {
  if (ring.kind == Ring::Kind::Rationals) return "Q";
  ordered_json j;
  j["mod"] = ring.mod.q.str();
  j["prime"] = ring.mod.p.str();
  j["exponent"] = ring.mod.k_exp;
  return j;
}

ordered_json polynomial_to_json(const MultilinearPolynomial& p) {
  ordered_json j;
  j["ring"] = ring_to_json(p.ring());
  j["arity"] = p.arity();
  j["degree"] = p.degree();
  std::vector<Monomial> order;
  for (const auto& [m, c] : p.terms()) order.push_back(m);
  std::sort(order.begin(), order.end(), monomial_less);
  ordered_json terms = ordered_json::array();
  for (Monomial m : order) {
    ordered_json t;
    ordered_json vars = ordered_json::array();
    Monomial rest = m;
    while (rest) {
      vars.push_back(std::countr_zero(rest) + 1);
      rest &= rest - 1;
    }
    t["vars"] = std::move(vars);
    t["coeff"] = p.coeff(m).str();
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  j["text"] = p.to_string();
  return j;
}

ordered_json tuples_to_json(const std::vector<Tuple>& tuples) {
  ordered_json a = ordered_json::array();
  for (const auto& t : tuples) a.push_back(tuple_to_string(t));
  return a;
}

ordered_json witness_to_json(const UnbalancedWitness& w) {
  ordered_json j;
  j["target"] = tuple_to_string(w.target);
  j["members"] = tuples_to_json(w.members);
  ordered_json gamma = ordered_json::array();
  for (const auto& g : w.gamma) gamma.push_back(g.str());
  j["gamma"] = std::move(gamma);
  j["alternating"] = tuples_to_json(w.alternating);
  return j;
}

ordered_json certificate_to_json(const CaptureCertificate& cert) {
  ordered_json entries = ordered_json::array();
  for (const auto& e : cert.entries) {
    ordered_json ej;
    ej["u"] = tuple_to_string(index_to_tuple(e.u_index, cert.arity));
    ej["ring"] = ring_to_json(e.ring);
    ej["polynomial"] = polynomial_to_json(e.polynomial);
    entries.push_back(std::move(ej));
  }
  ordered_json j;
  j["relation"] = cert.relation;
  j["captures"] = std::move(entries);
  return j;
}

}  // namespace

ordered_json cone_definition_to_json(const ConeDefinition& def) {
  ordered_json j;
  j["target_arity"] = def.target_arity;
  j["source_arity"] = def.source_arity;
  ordered_json syms = ordered_json::array();
  for (const auto& s : def.symbols) syms.push_back(s.to_string());
  j["tuple"] = std::move(syms);
  j["text"] = def.to_string();
  return j;
}

ordered_json balance_to_json(const BalanceResult& result, const BooleanRelation& r) {
  ordered_json j;
  j["schema"] = 1;
  j["kind"] = "balance";
  j["relation"] = r.name();
  j["arity"] = r.arity();
  j["members"] = r.size();
  j["balanced"] = result.balanced;
  if (result.balanced) j["certificate"] = certificate_to_json(*result.certificate);
  else j["witness"] = witness_to_json(*result.witness);
  return j;
}

namespace {

ordered_json or_arity_entry_to_json(const OrArityEntry& e) {
  ordered_json j;
  j["relation"] = e.relation;
  j["value"] = e.value;
  j["exact"] = e.exact;
  if (e.definition) j["definition"] = cone_definition_to_json(*e.definition);
  return j;
}

ordered_json schaefer_to_json(const SchaeferReport& s) {
  ordered_json ops = ordered_json::array();
  for (const auto& e : s.entries) {
    ordered_json oj;
    oj["operation"] = e.operation;
    oj["preserves"] = e.preserves_all;
    if (!e.preserves_all) {
      ordered_json v;
      v["relation"] = e.failing_relation;
      v["inputs"] = tuples_to_json(e.violation->inputs);
      v["output"] = tuple_to_string(e.violation->output);
      oj["counterexample"] = std::move(v);
    }
    ops.push_back(std::move(oj));
  }
  ordered_json j;
  j["tractable"] = s.tractable;
  j["operations"] = std::move(ops);
  return j;
}

}  // namespace

ordered_json classification_to_json(const ClassificationReport& report) {
  ordered_json j;
  j["schema"] = 1;
  j["kind"] = "classification";

  ordered_json rels = ordered_json::array();
  for (const auto& ra : report.relations) {
    ordered_json rj;
    rj["name"] = ra.name;
    rj["arity"] = ra.arity;
    rj["members"] = ra.size;
    rj["symmetric"] = ra.spectrum.is_symmetric;
    ordered_json weights = ordered_json::array();
    for (int w : ra.spectrum.satisfying_weights) weights.push_back(w);
    rj["satisfying_weights"] = std::move(weights);
    rj["balanced"] = ra.balance.balanced;
    if (ra.balance.balanced) rj["certificate"] = certificate_to_json(*ra.balance.certificate);
    else rj["witness"] = witness_to_json(*ra.balance.witness);
    rj["or_arity"] = or_arity_entry_to_json(ra.or_arity);
    rj["strategy"] = strategy_name(ra.strategy);
    if (ra.or2_interdefinable.has_value()) rj["or2_interdefinable"] = *ra.or2_interdefinable;
    rels.push_back(std::move(rj));
  }
  j["relations"] = std::move(rels);

  j["schaefer"] = schaefer_to_json(report.schaefer);

  ordered_json lang;
  lang["tractable"] = report.tractable;
  lang["balanced"] = report.balanced;
  lang["symmetric"] = report.symmetric;
  lang["max_arity"] = report.max_arity;
  j["language"] = std::move(lang);

  ordered_json spars;
  spars["upper_exponent"] = report.upper_exponent;
  spars["strategy_exponent"] = report.strategy_exponent;
  spars["strengthened"] = report.strategy_exponent < report.upper_exponent;
  ordered_json strat;
  for (const auto& ra : report.relations) strat[ra.name] = strategy_name(ra.strategy);
  spars["strategies"] = std::move(strat);
  j["sparsification"] = std::move(spars);

  ordered_json orj;
  ordered_json per = ordered_json::array();
  for (const auto& e : report.or_report.per_relation) per.push_back(or_arity_entry_to_json(e));
  orj["per_relation"] = std::move(per);
  orj["language_max"] = report.or_report.language_max;
  orj["exact"] = report.or_report.exact;
  j["or_arity"] = std::move(orj);

  if (report.lower_bound) {
    const auto& lb = *report.lower_bound;
    ordered_json lj;
    lj["exponent"] = lb.exponent;
    lj["statement"] = lb.statement;
    lj["basis"] = lb.basis;
    lj["basis_detail"] = lb.basis_detail;
    lj["relation"] = lb.relation;
    lj["or_target_arity"] = lb.certificate_target_arity;
    if (lb.certificate) lj["certificate"] = cone_definition_to_json(*lb.certificate);
    j["lower_bound"] = std::move(lj);
  } else {
    j["lower_bound"] = nullptr;
  }
  j["optimality"] = report.optimality;
  return j;
}

ordered_json kernel_report_to_json(const KernelReport& report, const CspInstance& instance) {
  ordered_json j;
  j["schema"] = 1;
  j["kind"] = "kernel";
  j["num_vars"] = instance.num_vars;
  j["input_constraints"] = instance.constraints.size();
  j["kept_count"] = report.kept.size();
  ordered_json kept = ordered_json::array();
  for (auto i : report.kept) kept.push_back(i);
  j["kept"] = std::move(kept);
  j["total_bound"] = report.total_bound.str();

  ordered_json rels = ordered_json::array();
  for (const auto& rs : report.strategies) {
    ordered_json rj;
    rj["relation"] = rs.relation;
    rj["strategy"] = strategy_name(rs.strategy);
    rj["constraints"] = rs.constraint_count;
    rj["kept"] = rs.kept_count;
    rj["size_bound"] = rs.size_bound.str();
    if (rs.certificate) rj["certificate"] = certificate_to_json(*rs.certificate);
    rels.push_back(std::move(rj));
  }
  j["relations"] = std::move(rels);
  return j;
}

std::string classification_to_text(const ClassificationReport& report) {
  std::ostringstream os;
  os << "classification report (schema 1)\n";
  for (const auto& ra : report.relations) {
    os << "\nrelation " << ra.name << "\n";
    os << "  arity " << ra.arity << ", members " << ra.size << "/" << (1u << ra.arity) << "\n";
    os << "  symmetric: " << (ra.spectrum.is_symmetric ? "yes" : "no");
    if (ra.spectrum.is_symmetric) {
      os << ", satisfying weights {";
      bool first = true;
      for (int w : ra.spectrum.satisfying_weights) {
        os << (first ? "" : ",") << w;
        first = false;
      }
      os << "}";
    }
    os << "\n";
    if (ra.balance.balanced) {
      os << "  balanced: yes; degree-1 captures:";
      for (const auto& e : ra.balance.certificate->entries)
        os << " [" << tuple_to_string(index_to_tuple(e.u_index, ra.arity)) << " over "
           << e.ring.to_string() << ": " << e.polynomial.to_string() << "]";
      os << "\n";
    } else {
      const auto& w = *ra.balance.witness;
      os << "  balanced: no; witness:";
      for (std::size_t i = 0; i < w.alternating.size(); ++i)
        os << (i == 0 ? " " : (i % 2 == 1 ? " - " : " + ")) << tuple_to_string(w.alternating[i]);
      os << " = " << tuple_to_string(w.target) << " (non-member)\n";
    }
    os << "  or-arity: " << (ra.or_arity.exact ? "" : "at least ") << ra.or_arity.value;
    if (ra.or_arity.definition) os << " via " << ra.or_arity.definition->to_string();
    os << "\n  strategy: " << strategy_name(ra.strategy) << "\n";
  }

  os << "\nlanguage\n";
  os << "  tractable: " << (report.tractable ? "yes" : "no (NP-complete)") << "\n";
  os << "  balanced: " << (report.balanced ? "yes" : "no") << "\n";
  os << "  symmetric: " << (report.symmetric ? "yes" : "no") << "\n";
  os << "  max arity: " << report.max_arity << "\n";
  os << "  kernel upper bound: O(n^" << report.upper_exponent << ") constraints";
  if (report.strategy_exponent < report.upper_exponent)
    os << " (per-relation strategies give O(n^" << report.strategy_exponent << "))";
  os << "\n";
  os << "  largest expressible OR: " << (report.or_report.exact ? "" : "at least ")
     << report.or_report.language_max << "\n";
  if (report.lower_bound) {
    os << "  lower bound: " << report.lower_bound->statement << "\n";
    os << "    reason: " << report.lower_bound->basis_detail << "\n";
    if (report.lower_bound->certificate)
      os << "    certificate: " << report.lower_bound->certificate->to_string() << " defines "
         << report.lower_bound->certificate_target_arity << "-OR from "
         << report.lower_bound->relation << "\n";
  } else {
    os << "  lower bound: NOT_APPLICABLE\n";
  }
  os << "  optimality: " << report.optimality << "\n";
  return os.str();
}

std::string to_json_string(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace cspk
