#pragma once

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "quadsq/arith.hpp"
#include "quadsq/criteria.hpp"
#include "quadsq/crosscheck.hpp"
#include "quadsq/dsets.hpp"
#include "quadsq/errors.hpp"
#include "quadsq/localsolve.hpp"
#include "quadsq/oracle.hpp"
#include "quadsq/pell.hpp"
#include "quadsq/quadfield.hpp"

namespace quadsq {
namespace cli {

using nlohmann::ordered_json;
using quadfield::FieldSpec;
using quadfield::QuadInt;

inline constexpr const char* kUsage =
    "usage: quadsq <command> [options]\n"
    "\n"
    "commands:\n"
    "  decide      -m <m> --alpha <a,b> [--bounds <csv>] [--with-oracle] [--json]\n"
    "              decide whether alpha = a + b*sqrt(m) is a sum of two squares\n"
    "  scan        -m <m> --range <R> [--bounds <csv>] [--jobs <N>]\n"
    "              [--report <path>] [--json]\n"
    "              run the criterion against exhaustive search on a grid\n"
    "  classify-d  <d> [--json]\n"
    "              congruence families of prime divisors of d\n"
    "  applicable  <m> [--json]\n"
    "              structural results covering the field Q(sqrt(m))\n"
    "  pell        <D> <N> [--json]\n"
    "              minimal solution of x^2 - D y^2 = N with |N| in {1, 2}\n"
    "  unit        <D> [--json]\n"
    "              fundamental unit of Z[sqrt(D)]\n"
    "  symbol      jacobi <a> <n> | quartic2 <p> [--json]\n"
    "              residue symbols\n"
    "  local       -m <m> --alpha <a,b> [--prime <p>] [--json]\n"
    "              local solvability at one prime or at all relevant places\n"
    "\n"
    "exit codes: 0 ok, 1 bad input, 2 scan found contradictions, 3 undecided\n";

// ---------------------------------------------------------------------------
// Argument parsing
// ---------------------------------------------------------------------------

namespace detail {

struct ParsedArgs {
  std::vector<std::string> positional;
  std::map<std::string, std::string> values;
  std::set<std::string> flags;
};

inline bool looks_signed_int(const std::string& s) {
  if (s.empty()) return false;
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

inline ParsedArgs parse_args(const std::vector<std::string>& tokens) {
  static const std::set<std::string> value_opts = {
      "-m", "--alpha", "--bounds", "--report", "--jobs", "--range", "--prime"};
  static const std::set<std::string> flag_opts = {"--json", "--with-oracle"};
  ParsedArgs out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    const std::string& t = tokens[i];
    if (value_opts.count(t)) {
      if (i + 1 >= tokens.size())
        throw DomainError("option " + t + " requires a value");
      out.values[t] = tokens[++i];
    } else if (flag_opts.count(t)) {
      out.flags.insert(t);
    } else if (!t.empty() && t[0] == '-' && !looks_signed_int(t)) {
      throw DomainError("unknown option '" + t + "'");
    } else {
      out.positional.push_back(t);
    }
  }
  return out;
}

inline Int parse_int(const std::string& s, const char* what) {
  if (!looks_signed_int(s))
    throw DomainError(std::string(what) + ": expected an integer, got '" + s +
                      "'");
  return Int(s);
}

inline long long parse_ll(const std::string& s, const char* what) {
  Int v = parse_int(s, what);
  if (v < std::numeric_limits<long long>::min() ||
      v > std::numeric_limits<long long>::max())
    throw DomainError(std::string(what) + ": value out of range");
  return v.convert_to<long long>();
}

inline const std::string& require_value(const ParsedArgs& a,
                                        const std::string& opt) {
  auto it = a.values.find(opt);
  if (it == a.values.end())
    throw DomainError("missing required option " + opt);
  return it->second;
}

inline std::pair<Int, Int> parse_alpha(const std::string& s) {
  size_t comma = s.find(',');
  if (comma == std::string::npos)
    throw DomainError("--alpha expects two comma-separated integers");
  return {parse_int(s.substr(0, comma), "--alpha"),
          parse_int(s.substr(comma + 1), "--alpha")};
}

inline std::vector<long long> parse_bounds(const std::string& s) {
  std::vector<long long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    out.push_back(parse_ll(item, "--bounds"));
  if (out.empty()) throw DomainError("--bounds expects a list of integers");
  for (size_t i = 0; i < out.size(); ++i) {
    if (out[i] < 1 || (i > 0 && out[i] <= out[i - 1]))
      throw DomainError("--bounds must be positive and strictly increasing");
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON rendering
// ---------------------------------------------------------------------------

inline ordered_json json_int(const Int& v) {
  if (v >= std::numeric_limits<long long>::min() &&
      v <= std::numeric_limits<long long>::max())
    return v.convert_to<long long>();
  return v.str();  // too large for a JSON number: decimal string
}

inline ordered_json json_element(const QuadInt& x) {
  return ordered_json::array({json_int(x.a), json_int(x.b)});
}

inline ordered_json json_pair(const oracle::WitnessPair& w) {
  return ordered_json::array({json_element(w.first), json_element(w.second)});
}

inline std::string text_pair(const oracle::WitnessPair& w) {
  return "[[" + w.first.a.str() + "," + w.first.b.str() + "],[" +
         w.second.a.str() + "," + w.second.b.str() + "]]";
}

inline ordered_json scan_row_json(const oracle::ScanRow& r) {
  ordered_json j;
  j["alpha"] = json_element(r.alpha);
  j["verdict"] = criteria::to_string(r.decision.verdict);
  j["reasons"] = r.decision.reasons;
  j["witness"] = r.witness ? json_pair(*r.witness) : ordered_json(nullptr);
  j["bound_used"] =
      r.bound_used ? ordered_json(*r.bound_used) : ordered_json(nullptr);
  return j;
}

// ---------------------------------------------------------------------------
// Command implementations
// ---------------------------------------------------------------------------

inline int cmd_decide(const ParsedArgs& a, std::ostream& out) {
  long long m = parse_ll(require_value(a, "-m"), "-m");
  auto [aa, ab] = parse_alpha(require_value(a, "--alpha"));
  std::vector<long long> bounds = criteria::default_fallback_bounds();
  if (a.values.count("--bounds")) bounds = parse_bounds(a.values.at("--bounds"));
  FieldSpec f(m);
  QuadInt alpha = quadfield::make(f, aa, ab);
  criteria::Decision dec = criteria::decide(f, alpha, bounds);

  bool with_oracle = a.flags.count("--with-oracle") > 0;
  std::optional<oracle::WitnessPair> witness;
  std::optional<long long> bound_used;
  if (with_oracle) {
    for (long long b : bounds) {
      if (auto w = oracle::brute_force(f, alpha, b)) {
        witness = w;
        bound_used = b;
        break;
      }
    }
  }

  if (a.flags.count("--json")) {
    ordered_json j;
    j["verdict"] = criteria::to_string(dec.verdict);
    j["reasons"] = dec.reasons;
    if (with_oracle) {
      j["witness"] = witness ? json_pair(*witness) : ordered_json(nullptr);
      j["bound_used"] =
          bound_used ? ordered_json(*bound_used) : ordered_json(nullptr);
    }
    out << j.dump() << "\n";
  } else {
    out << criteria::to_string(dec.verdict) << " [";
    for (size_t i = 0; i < dec.reasons.size(); ++i)
      out << (i ? "," : "") << dec.reasons[i];
    out << "]";
    if (with_oracle) {
      if (witness)
        out << " witness=" << text_pair(*witness) << " bound_used="
            << *bound_used;
      else
        out << " witness=none";
    }
    out << "\n";
  }
  return 0;
}

inline int cmd_scan(const ParsedArgs& a, std::ostream& out) {
  long long m = parse_ll(require_value(a, "-m"), "-m");
  long long range = parse_ll(require_value(a, "--range"), "--range");
  std::vector<long long> bounds = criteria::default_fallback_bounds();
  if (a.values.count("--bounds")) bounds = parse_bounds(a.values.at("--bounds"));
  unsigned jobs = 0;
  if (a.values.count("--jobs")) {
    long long j = parse_ll(a.values.at("--jobs"), "--jobs");
    if (j < 1) throw DomainError("--jobs must be >= 1");
    jobs = static_cast<unsigned>(j);
  }
  FieldSpec f(m);
  oracle::ScanReport report = oracle::cross_check(f, range, bounds, jobs);

  if (a.values.count("--report")) {
    std::ofstream rf(a.values.at("--report"));
    if (!rf)
      throw DomainError("cannot open report file '" + a.values.at("--report") +
                        "'");
    for (const auto& row : report.rows) rf << scan_row_json(row).dump() << "\n";
  }

  if (a.flags.count("--json")) {
    ordered_json j;
    j["m"] = m;
    j["range"] = range;
    j["counts"] = {{"solvable", report.count_solvable},
                   {"unsolvable", report.count_unsolvable},
                   {"unknown", report.count_unknown}};
    j["max_witness_bound"] = report.max_witness_bound;
    j["contradictions"] = static_cast<long long>(report.contradictions.size());
    ordered_json unk = ordered_json::array();
    for (size_t i : report.unknowns)
      unk.push_back(json_element(report.rows[i].alpha));
    j["unknowns"] = unk;
    out << j.dump() << "\n";
  } else {
    out << "m=" << m << " range=" << range
        << " solvable=" << report.count_solvable
        << " unsolvable=" << report.count_unsolvable
        << " unknown=" << report.count_unknown
        << " max_witness_bound=" << report.max_witness_bound
        << " contradictions=" << report.contradictions.size() << "\n";
    for (size_t i : report.contradictions) {
      const auto& row = report.rows[i];
      out << "contradiction: alpha=" << quadfield::to_string(row.alpha)
          << " verdict=" << criteria::to_string(row.decision.verdict);
      if (row.witness) out << " witness=" << text_pair(*row.witness);
      out << "\n";
    }
    for (size_t i : report.unknowns)
      out << "unknown: alpha=" << quadfield::to_string(report.rows[i].alpha)
          << "\n";
  }
  return report.contradictions.empty() ? 0 : 2;
}

inline int cmd_classify_d(const ParsedArgs& a, std::ostream& out) {
  if (a.positional.size() != 1)
    throw DomainError("classify-d expects exactly one argument: d");
  Int d = parse_int(a.positional[0], "d");
  auto ws = criteria::classify_D(d);
  if (a.flags.count("--json")) {
    ordered_json j;
    j["d"] = json_int(d);
    ordered_json arr = ordered_json::array();
    for (const auto& w : ws)
      arr.push_back({{"p", json_int(w.p)}, {"cls", criteria::to_string(w.cls)}});
    j["witnesses"] = arr;
    out << j.dump() << "\n";
  } else {
    if (ws.empty()) out << "none\n";
    for (const auto& w : ws)
      out << "p=" << w.p.str() << " " << criteria::to_string(w.cls) << "\n";
  }
  return 0;
}

inline int cmd_applicable(const ParsedArgs& a, std::ostream& out) {
  if (a.positional.size() != 1)
    throw DomainError("applicable expects exactly one argument: m");
  long long m = parse_ll(a.positional[0], "m");
  auto tags = criteria::applicable_results(m);
  if (a.flags.count("--json")) {
    ordered_json j;
    j["m"] = m;
    ordered_json arr = ordered_json::array();
    for (const auto& t : tags) {
      ordered_json e;
      e["tag"] = t.tag;
      e["param"] = t.param ? ordered_json(*t.param) : ordered_json(nullptr);
      arr.push_back(e);
    }
    j["results"] = arr;
    out << j.dump() << "\n";
  } else {
    for (const auto& t : tags) {
      out << t.tag;
      if (t.param) out << "(" << *t.param << ")";
      out << "\n";
    }
  }
  return 0;
}

inline int cmd_pell(const ParsedArgs& a, std::ostream& out) {
  if (a.positional.size() != 2)
    throw DomainError("pell expects exactly two arguments: D N");
  Int D = parse_int(a.positional[0], "D");
  Int N = parse_int(a.positional[1], "N");
  auto sol = pell::solve_small_norm(D, N);
  ordered_json j;
  j["x"] = sol ? json_int(sol->x) : ordered_json(nullptr);
  j["y"] = sol ? json_int(sol->y) : ordered_json(nullptr);
  j["N"] = json_int(N);
  if (a.flags.count("--json")) {
    out << j.dump() << "\n";
  } else {
    if (sol)
      out << "x=" << sol->x.str() << " y=" << sol->y.str() << "\n";
    else
      out << "no solution\n";
  }
  return 0;
}

inline int cmd_unit(const ParsedArgs& a, std::ostream& out) {
  if (a.positional.size() != 1)
    throw DomainError("unit expects exactly one argument: D");
  Int D = parse_int(a.positional[0], "D");
  pell::UnitInfo u = pell::fundamental_unit(D);
  if (a.flags.count("--json")) {
    ordered_json j;
    j["D"] = json_int(D);
    j["eps"] = json_element(u.eps);
    j["norm"] = u.unit_norm;
    out << j.dump() << "\n";
  } else {
    out << "eps=" << quadfield::to_string(u.eps) << " norm=" << u.unit_norm
        << "\n";
  }
  return 0;
}

inline int cmd_symbol(const ParsedArgs& a, std::ostream& out) {
  if (a.positional.empty())
    throw DomainError("symbol expects a kind: jacobi or quartic2");
  const std::string& kind = a.positional[0];
  ordered_json j;
  int value;
  if (kind == "jacobi") {
    if (a.positional.size() != 3)
      throw DomainError("symbol jacobi expects two arguments: a n");
    Int x = parse_int(a.positional[1], "a");
    Int n = parse_int(a.positional[2], "n");
    value = arith::jacobi(x, n);
    j["kind"] = "jacobi";
    j["a"] = json_int(x);
    j["n"] = json_int(n);
  } else if (kind == "quartic2") {
    if (a.positional.size() != 2)
      throw DomainError("symbol quartic2 expects one argument: p");
    Int p = parse_int(a.positional[1], "p");
    value = arith::quartic2(p);
    j["kind"] = "quartic2";
    j["p"] = json_int(p);
  } else {
    throw DomainError("unknown symbol kind '" + kind + "'");
  }
  j["value"] = value;
  if (a.flags.count("--json"))
    out << j.dump() << "\n";
  else
    out << value << "\n";
  return 0;
}

inline int cmd_local(const ParsedArgs& a, std::ostream& out) {
  long long m = parse_ll(require_value(a, "-m"), "-m");
  auto [aa, ab] = parse_alpha(require_value(a, "--alpha"));
  FieldSpec f(m);
  QuadInt alpha = quadfield::make(f, aa, ab);
  bool json = a.flags.count("--json") > 0;

  if (a.values.count("--prime")) {
    Int p = parse_int(a.values.at("--prime"), "--prime");
    localsolve::LocalVerdict v = localsolve::local_sum2(f, alpha, p);
    if (json) {
      ordered_json j;
      j["m"] = m;
      j["alpha"] = json_element(alpha);
      j["prime"] = json_int(p);
      j["solvable"] = v.solvable;
      j["precision"] = v.precision_used;
      out << j.dump() << "\n";
    } else {
      out << p.str() << ": " << (v.solvable ? "solvable" : "unsolvable")
          << " (precision " << v.precision_used << ")\n";
    }
    return 0;
  }

  localsolve::LocalAnalysis an = localsolve::locally_solvable_everywhere(f, alpha);
  if (json) {
    ordered_json j;
    j["m"] = m;
    j["alpha"] = json_element(alpha);
    j["solvable"] = an.solvable;
    ordered_json arr = ordered_json::array();
    for (const auto& v : an.verdicts) {
      ordered_json e;
      e["prime"] = v.archimedean ? ordered_json("real") : json_int(v.prime);
      e["solvable"] = v.solvable;
      e["precision"] = v.precision_used;
      arr.push_back(e);
    }
    j["verdicts"] = arr;
    out << j.dump() << "\n";
  } else {
    for (const auto& v : an.verdicts) {
      out << (v.archimedean ? std::string("real") : v.prime.str()) << ": "
          << (v.solvable ? "solvable" : "unsolvable") << " (precision "
          << v.precision_used << ")\n";
    }
    out << (an.solvable ? "locally solvable everywhere"
                        : "not locally solvable everywhere")
        << "\n";
  }
  return 0;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Entry point (argv[0] excluded); returns the process exit code.
// ---------------------------------------------------------------------------

inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  try {
    if (args.empty()) {
      err << kUsage;
      return 1;
    }
    const std::string& cmd = args[0];
    if (cmd == "--help" || cmd == "-h" || cmd == "help") {
      out << kUsage;
      return 0;
    }
    detail::ParsedArgs pa =
        detail::parse_args({args.begin() + 1, args.end()});
    if (cmd == "decide") return detail::cmd_decide(pa, out);
    if (cmd == "scan") return detail::cmd_scan(pa, out);
    if (cmd == "classify-d") return detail::cmd_classify_d(pa, out);
    if (cmd == "applicable") return detail::cmd_applicable(pa, out);
    if (cmd == "pell") return detail::cmd_pell(pa, out);
    if (cmd == "unit") return detail::cmd_unit(pa, out);
    if (cmd == "symbol") return detail::cmd_symbol(pa, out);
    if (cmd == "local") return detail::cmd_local(pa, out);
    err << "error: unknown command '" << cmd << "'\n" << kUsage;
    return 1;
  } catch (const UndecidedError& e) {
    err << "undecided: " << e.what() << "\n";
    return 3;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const CheckError& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace cli
}  // namespace quadsq
