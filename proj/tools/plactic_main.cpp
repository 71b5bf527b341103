#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "plactic/fo.hpp"
#include "plactic/infinite.hpp"
#include "plactic/interpretation.hpp"
#include "presburger/solve.hpp"
#include "presburger/text.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitBudget = 3;
constexpr int kExitUsage = 64;

std::string read_payload(const std::string& inline_text, const std::string& file) {
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("cannot open file " + file);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
  return inline_text;
}

void print_verdict(bool b) { std::cout << (b ? "TRUE" : "FALSE") << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  static const std::vector<std::string> subcommands = {
      "mult", "nf", "eq", "decide", "identity", "solve", "solve-inf", "interp-dump",
      "pres-decide"};
  if (argc >= 2 && argv[1][0] != '-') {
    bool known = false;
    for (const auto& s : subcommands) known = known || s == argv[1];
    if (!known) {
      std::cerr << "unknown subcommand: " << argv[1] << "\n";
      return kExitUsage;
    }
  }

  CLI::App app{"decision procedures for finite-rank plactic monoids"};
  app.require_subcommand(1);

  int rank = 0;
  long long budget = 10'000'000;
  std::string arg1, arg2, part = "eta", file, alphabet = "nat";
  bool witness = false;

  auto* mult = app.add_subcommand("mult", "product of two words as a tableau");
  mult->add_option("--rank", rank)->required();
  mult->add_option("u", arg1)->required();
  mult->add_option("v", arg2)->required();

  auto* nf = app.add_subcommand("nf", "normal form of a word as exponents");
  nf->add_option("--rank", rank)->required();
  nf->add_option("w", arg1)->required();

  auto* eq = app.add_subcommand("eq", "Knuth equality of two words");
  eq->add_option("--rank", rank)->required();
  eq->add_option("u", arg1)->required();
  eq->add_option("v", arg2)->required();

  auto* decide = app.add_subcommand("decide", "first-order sentence over the monoid");
  decide->add_option("--rank", rank)->required();
  decide->add_option("--budget", budget);
  decide->add_option("sentence", arg1)->required();

  auto* identity = app.add_subcommand("identity", "universal closure of an identity");
  identity->add_option("--rank", rank)->required();
  identity->add_option("--budget", budget);
  identity->add_option("equation", arg1)->required();

  auto* solve = app.add_subcommand("solve", "satisfiability of an equation system");
  solve->add_option("--rank", rank)->required();
  solve->add_option("--budget", budget);
  solve->add_option("--file", file);
  solve->add_flag("--witness", witness);
  solve->add_option("system", arg1);

  auto* solve_inf = app.add_subcommand("solve-inf", "Diophantine system over P(N) or P(Z)");
  solve_inf->add_option("--alphabet", alphabet)->check(CLI::IsMember({"nat", "int"}));
  solve_inf->add_option("--budget", budget);
  solve_inf->add_option("--file", file);
  solve_inf->add_option("system", arg1);

  auto* dump = app.add_subcommand("interp-dump", "formulas of the interpretation");
  dump->add_option("--rank", rank)->required();
  dump->add_option("--part", part);  // S | eq | mu:x | eta
  dump->add_option("--budget", budget);

  auto* pres = app.add_subcommand("pres-decide", "Presburger sentence over the integers");
  pres->add_option("--budget", budget);
  pres->add_option("sentence", arg1)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitParse;
  }

  try {
    if (*mult) {
      plactic::Word u = plactic::word_from_text(arg1);
      plactic::Word v = plactic::word_from_text(arg2);
      plactic::Tableau t = plactic::multiply(plactic::p_map(u, rank), plactic::p_map(v, rank));
      std::cout << plactic::tableau_to_text(t);
    } else if (*nf) {
      plactic::Word w = plactic::word_from_text(arg1);
      std::cout << plactic::exponents_to_text(plactic::normal_form(w, rank)) << "\n";
    } else if (*eq) {
      plactic::Word u = plactic::word_from_text(arg1);
      plactic::Word v = plactic::word_from_text(arg2);
      print_verdict(plactic::knuth_equal(u, v, rank));
    } else if (*decide) {
      auto f = plactic::fo::parse_sentence(arg1);
      print_verdict(plactic::fo::decide_sentence(*f, rank, {budget}));
    } else if (*identity) {
      std::size_t pos = arg1.find('=');
      if (pos == std::string::npos)
        throw plactic::fo::parse_error("identity payload must be 'lhs = rhs'");
      auto u = plactic::fo::parse_term(arg1.substr(0, pos));
      auto v = plactic::fo::parse_term(arg1.substr(pos + 1));
      print_verdict(plactic::fo::check_identity(u, v, rank, {budget}));
    } else if (*solve) {
      auto sys = plactic::fo::parse_system(read_payload(arg1, file));
      auto [sat, w] = plactic::fo::solve_system(sys, rank, witness, {budget});
      print_verdict(sat);
      if (w)
        for (const auto& [name, vec] : *w)
          std::cout << name << " = " << plactic::exponents_to_text(vec) << "\n";
    } else if (*solve_inf) {
      plactic::inf::InfEquationSystem sys;
      sys.alphabet = alphabet == "nat" ? plactic::inf::Alphabet::Natural
                                       : plactic::inf::Alphabet::Integer;
      sys.system = plactic::fo::parse_system(read_payload(arg1, file));
      print_verdict(plactic::inf::decide_diophantine(sys, {budget}));
    } else if (*dump) {
      presburger::FormulaStore st;
      st.set_budget(budget);
      plactic::interp::Interpretation ip = plactic::interp::generate(st, rank);
      presburger::FormulaId f;
      if (part == "S") {
        f = ip.domain;
      } else if (part == "eq") {
        f = ip.equality;
      } else if (part == "eta") {
        f = ip.eta;
      } else if (part.rfind("mu:", 0) == 0) {
        int x = std::stoi(part.substr(3));
        if (x < 1 || x > rank) throw std::invalid_argument("mu letter out of range");
        if (ip.mu.empty()) throw std::invalid_argument("no mu formulas at rank 1");
        f = ip.mu[x - 1];
      } else {
        throw std::invalid_argument("unknown part: " + part);
      }
      std::cout << presburger::to_text(st, f) << "\n";
    } else if (*pres) {
      presburger::FormulaStore st;
      st.set_budget(budget);
      std::vector<std::string> free_names;
      presburger::FormulaId f = presburger::parse_formula(st, arg1, &free_names);
      if (!free_names.empty())
        throw std::invalid_argument("sentence has free variables: " + free_names.front());
      print_verdict(presburger::decide(st, f));
    }
  } catch (const presburger::budget_exhausted& e) {
    std::cout << "BUDGET-EXHAUSTED\n";
    std::cerr << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitOk;
}
