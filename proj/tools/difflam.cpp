#include <CLI11.hpp>
#include <iostream>
#include <iterator>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "difflam/dmodel.hpp"
#include "difflam/mrel.hpp"
#include "difflam/rewrite.hpp"
#include "difflam/subst.hpp"
#include "difflam/syntax.hpp"
#include "difflam/taylor.hpp"
#include "difflam/translate.hpp"

using namespace difflam;
using json = nlohmann::json;

namespace {

constexpr int kUsage = 64;

int verdict_code(Verdict v) {
  switch (v) {
    case Verdict::Equal: return 0;
    case Verdict::NotEqual: return 1;
    case Verdict::Unknown: return 2;
  }
  return 2;
}

struct Common {
  std::string calculus = "diff";
  std::vector<std::string> lets;
  std::size_t fuel = kDefaultFuel;
  bool eta = false;
  bool idempotent = false;
  std::string strategy = "lo";
};

// Reads "-" from stdin.
std::string input(const std::string& arg) {
  if (arg != "-") return arg;
  return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
}

Prelude prelude(const Common& c) {
  Prelude p;
  for (auto& l : c.lets) {
    auto eq = l.find('=');
    if (eq == std::string::npos || !valid_var_name(l.substr(0, eq)))
      throw CLI::ValidationError("--let", "expected name=term, got '" + l + "'");
    p.emplace_back(l.substr(0, eq), l.substr(eq + 1));
  }
  return p;
}

Strategy strategy(const Common& c) {
  if (c.strategy == "li") return Strategy::LeftmostInnermost;
  if (c.strategy == "head") return Strategy::Head;
  return Strategy::LeftmostOutermost;
}

std::vector<Sym> vars_of(const std::string& list, const diff::Sum& a, const diff::Sum* b, bool given) {
  std::vector<Sym> out;
  if (given) {
    std::string cur;
    for (char ch : list + ",") {
      if (ch == ',' || ch == ' ') {
        if (!cur.empty()) {
          if (!valid_var_name(cur)) throw CLI::ValidationError("--vars", "bad variable '" + cur + "'");
          out.push_back(intern(cur));
        }
        cur.clear();
      } else {
        cur += ch;
      }
    }
    return out;
  }
  std::vector<std::string> names = diff::free_var_names(a);
  if (b)
    for (auto& n : diff::free_var_names(*b)) names.push_back(n);
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  for (auto& n : names) out.push_back(intern(n));
  return out;
}

json delem_json(dmodel::DElem e) {
  json seq = json::array();
  for (auto& m : dmodel::sequence(e)) {
    json ms = json::array();
    for (auto x : m) ms.push_back(delem_json(x));
    seq.push_back(ms);
  }
  return seq;
}

json entries_json(const dmodel::Interpretation& in) {
  json out = json::array();
  for (auto& e : in.entries) {
    json ctx = json::array();
    for (auto& m : e.ctx) {
      json ms = json::array();
      for (auto x : m) ms.push_back(delem_json(x));
      ctx.push_back(ms);
    }
    out.push_back({{"ctx", ctx}, {"val", delem_json(e.val)}});
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differential and resource lambda-calculi: reduction, Taylor expansion, relational model"};
  app.require_subcommand(1);
  Common c;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--calculus", c.calculus, "diff or res")->check(CLI::IsMember({"diff", "res"}));
    sub->add_option("--let", c.lets, "name=term abbreviation, may be repeated");
    sub->add_option("--fuel", c.fuel, "reduction step limit");
    sub->add_flag("--eta", c.eta, "also contract eta redexes");
    sub->add_flag("--idempotent", c.idempotent, "compare sums with 1+1=1");
    sub->add_option("--strategy", c.strategy, "lo, li or head")->check(CLI::IsMember({"lo", "li", "head"}));
  };

  std::string a, b;
  auto* parse = app.add_subcommand("parse", "print the canonical form");
  parse->add_option("term", a, "term, or - for stdin")->required();
  auto* reduce = app.add_subcommand("reduce", "normalize");
  reduce->add_option("term", a)->required();
  auto* eq = app.add_subcommand("eq", "equality in the theory (beta, beta_D, optionally eta)");
  eq->add_option("left", a)->required();
  eq->add_option("right", b)->required();

  diff::TaylorBudget tb;
  auto* taylor = app.add_subcommand("taylor", "finite Taylor expansion");
  taylor->add_option("term", a)->required();
  auto* taylor_eq = app.add_subcommand("taylor-eq", "compare Taylor normal forms");
  taylor_eq->add_option("left", a)->required();
  taylor_eq->add_option("right", b)->required();
  for (auto* s : {taylor, taylor_eq}) {
    s->add_option("--degree", tb.degree, "largest k kept per application");
    s->add_option("--size-cap", tb.size_cap, "drop summands larger than this");
  }

  dmodel::Budgets budgets;
  std::string vars;
  bool normalize_first = false;
  auto* interp = app.add_subcommand("interp", "enumerate the interpretation in the relational model");
  interp->add_option("term", a)->required();
  auto* interp_eq = app.add_subcommand("interp-eq", "compare interpretations");
  interp_eq->add_option("left", a)->required();
  interp_eq->add_option("right", b)->required();
  CLI::Option* vars_opt = nullptr;
  CLI::Option* vars_opt2 = nullptr;
  for (auto* s : {interp, interp_eq}) {
    auto* o = s->add_option("--vars", vars, "comma-separated variable list (default: free variables)");
    (s == interp ? vars_opt : vars_opt2) = o;
    s->add_option("--size", budgets.output, "output bound B");
    s->add_option("--witness", budgets.witness, "witness bound W");
    s->add_flag("--normalize", normalize_first, "normalize before interpreting");
  }

  std::string to;
  auto* translate = app.add_subcommand("translate", "translate between the calculi");
  translate->add_option("term", a)->required();
  translate->add_option("--to", to, "target calculus")->required()->check(CLI::IsMember({"diff", "res"}));

  std::uint64_t seed = 1;
  std::size_t trials = 500;
  unsigned threads = 0;
  auto* axioms = app.add_subcommand("axioms", "check the categorical laws on random relations");
  axioms->add_option("--seed", seed);
  axioms->add_option("--trials", trials);
  axioms->add_option("--threads", threads, "0 = hardware concurrency");

  for (auto* s : {parse, reduce, eq, taylor, taylor_eq, interp, interp_eq, translate}) common(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    Prelude pre = prelude(c);
    bool res_calc = c.calculus == "res";

    if (*axioms) {
      auto results = mrel::check_axioms(seed, trials, {}, threads);
      std::cout << mrel::format_report(results);
      for (auto& r : results)
        if (!r.pass) return 1;
      return 0;
    }

    if (*translate) {
      if (res_calc == (to == "res")) throw CLI::ValidationError("--to", "source and target calculus are the same");
      if (res_calc)
        std::cout << print(to_diff(parse_res(input(a), pre))) << "\n";
      else
        std::cout << print(to_res(parse_diff(input(a), pre))) << "\n";
      return 0;
    }

    if (res_calc && (*taylor || *taylor_eq || *interp || *interp_eq))
      throw CLI::ValidationError("--calculus", "this command works on differential terms only");

    if (*parse) {
      if (res_calc)
        std::cout << print(parse_res(input(a), pre)) << "\n";
      else
        std::cout << print(parse_diff(input(a), pre)) << "\n";
      return 0;
    }

    if (*reduce) {
      if (res_calc) {
        auto n = res::normalize(parse_res(input(a), pre), c.fuel, c.eta, strategy(c));
        std::cout << print(res::canonicalize(n.term, c.idempotent)) << "\n";
        return n.exhausted ? 2 : 0;
      }
      auto n = diff::normalize(parse_diff(input(a), pre), c.fuel, c.eta, strategy(c));
      std::cout << print(diff::canonicalize(n.term, c.idempotent)) << "\n";
      return n.exhausted ? 2 : 0;
    }

    if (*eq) {
      Verdict v = res_calc ? res::theory_eq(parse_res(input(a), pre), parse_res(input(b), pre), c.fuel, c.eta,
                                            c.idempotent)
                           : diff::theory_eq(parse_diff(input(a), pre), parse_diff(input(b), pre), c.fuel, c.eta,
                                             c.idempotent);
      std::cout << to_string(v) << "\n";
      return verdict_code(v);
    }

    if (*taylor) {
      auto r = diff::taylor(parse_diff(input(a), pre), tb);
      std::cout << print(r.term) << "\n";
      return r.clipped ? 2 : 0;
    }

    if (*taylor_eq) {
      Verdict v = diff::taylor_eq(parse_diff(input(a), pre), parse_diff(input(b), pre), tb, c.fuel);
      std::cout << to_string(v) << "\n";
      return verdict_code(v);
    }

    if (*interp) {
      auto s = parse_diff(input(a), pre);
      auto xs = vars_of(vars, s, nullptr, vars_opt->count() > 0);
      auto r = dmodel::interpret(s, xs, budgets, normalize_first, c.fuel);
      std::cout << entries_json(r).dump() << "\n";
      return r.clipped || r.exhausted ? 2 : 0;
    }

    if (*interp_eq) {
      auto s = parse_diff(input(a), pre);
      auto t = parse_diff(input(b), pre);
      auto xs = vars_of(vars, s, &t, vars_opt2->count() > 0);
      auto l = dmodel::interpret(s, xs, budgets, normalize_first, c.fuel);
      auto r = dmodel::interpret(t, xs, budgets, normalize_first, c.fuel);
      Verdict v = dmodel::interp_eq(l, r);
      json out = {{"verdict", to_string(v)}, {"left", entries_json(l)}, {"right", entries_json(r)}};
      std::cout << out.dump() << "\n";
      return verdict_code(v);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const dmodel::InadequateVariables& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return 0;
}
