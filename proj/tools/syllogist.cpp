// Command-line front end: parse, eval, normalize, solve, spectrum, gadget, verify.

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "syllogist/gadgets.hpp"
#include "syllogist/io.hpp"
#include "syllogist/normalize.hpp"
#include "syllogist/solver.hpp"
#include "syllogist/syntax.hpp"
#include "syllogist/verify.hpp"

using namespace syllogist;

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitInput = 65;
constexpr int kExitAborted = 2;

// Input problems (bad files, syntax errors) as opposed to usage errors.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SearchFlags {
  std::optional<std::size_t> rank_bound;
  std::optional<std::size_t> card_cap;
  std::optional<std::uint64_t> candidate_cap;
  std::string universe_file;
  unsigned jobs = 1;

  void add_to(CLI::App* app) {
    app->add_option("--rank-bound", rank_bound, "values have rank <= N (N <= 5)");
    app->add_option("--card-cap", card_cap, "values have at most N members");
    app->add_option("--candidate-cap", candidate_cap, "abort after N candidates");
    app->add_option("--universe", universe_file, "JSON array of brace strings used as the value domain");
    app->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1u, 256u));
  }

  SearchConfig config(bool deterministic, std::size_t default_rank = 2) const {
    SearchConfig cfg;
    cfg.rank_bound = rank_bound.value_or(default_rank);
    if (cfg.rank_bound > 5 && universe_file.empty()) throw CLI::ValidationError("--rank-bound", "must be at most 5");
    cfg.per_var_card_cap = card_cap;
    if (candidate_cap) cfg.candidate_cap = *candidate_cap;
    cfg.deterministic = deterministic;
    cfg.jobs = jobs;
    if (!universe_file.empty()) cfg.universe_override = load_universe();
    return cfg;
  }

  std::vector<HfSet> load_universe() const {
    try {
      return universe_from_json(read_json_file(universe_file));
    } catch (const Error& e) {
      throw InputError(e.what());
    }
  }
};

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  try {
    return read_file(path);
  } catch (const Error& e) {
    throw InputError(e.what());
  }
}

Formula read_formula(const std::string& path) {
  auto text = read_input(path);
  try {
    return parse_formula(text);
  } catch (const SyntaxError& e) {
    throw InputError(path + ":" + e.what());
  }
}

HfSet read_hf(const std::string& text) {
  try {
    return parse_hf(text);
  } catch (const SyntaxError& e) {
    throw InputError(std::string("set literal: ") + e.what());
  }
}

GadgetMode parse_mode(const std::string& s) { return s == "literal" ? GadgetMode::Literal : GadgetMode::Semantic; }

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw InputError("cannot write '" + out + "'");
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounded models and gadgets for multi-level syllogistic with set operators"};
  app.require_subcommand(1);
  app.fallthrough();
  bool deterministic = false;
  app.add_flag("--deterministic", deterministic, "reproducible output (least models, no timings)");

  // parse
  std::string file = "-";
  auto* parse_cmd = app.add_subcommand("parse", "check syntax and print the canonical form");
  parse_cmd->add_option("file", file, "formula file, - for stdin");
  bool show_fragment = false;
  parse_cmd->add_flag("--fragment", show_fragment, "also print the least fragment containing the formula");

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a formula under an assignment");
  eval_cmd->add_option("file", file, "formula file, - for stdin");
  std::string assignment_file;
  eval_cmd->add_option("--assignment", assignment_file, "JSON object of brace strings (or a solve report)")
      ->required();

  // normalize
  auto* norm_cmd = app.add_subcommand("normalize", "print the normalized conjunctions, one per line");
  norm_cmd->add_option("file", file, "formula file, - for stdin");

  // solve / spectrum
  SearchFlags solve_flags, spectrum_flags, verify_flags;
  auto* solve_cmd = app.add_subcommand("solve", "search for a model within the bounds");
  solve_cmd->add_option("file", file, "formula file, - for stdin");
  solve_flags.add_to(solve_cmd);
  auto* spectrum_cmd = app.add_subcommand("spectrum", "histogram of model ranks within the bounds");
  spectrum_cmd->add_option("file", file, "formula file, - for stdin");
  spectrum_flags.add_to(spectrum_cmd);

  // gadget
  auto* gadget_cmd = app.add_subcommand("gadget", "emit a gadget formula");
  std::string gadget_name;
  std::vector<std::string> gadget_params;
  std::string mode = "semantic", out;
  gadget_cmd->add_option("name", gadget_name, "gadget name")
      ->required()
      ->check(CLI::IsMember({"repr", "hf-value", "powast", "singleton-alphabeta", "singleton-lemma", "card-eq",
                             "finite", "dichotomy-witness"}));
  gadget_cmd->add_option("params", gadget_params, "repr/hf-value: brace string; powast: arity; card-eq: x y; finite: x");
  gadget_cmd->add_option("--mode", mode, "literal or semantic")->check(CLI::IsMember({"literal", "semantic"}));
  gadget_cmd->add_option("--out", out, "write the formula here and the description to FILE.json");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run a bounded check and print a verdict report");
  std::string claim;
  std::string verify_mode = "semantic";
  std::string target;
  verify_cmd->add_option("claim", claim, "claim to check")
      ->required()
      ->check(CLI::IsMember({"lemdich", "corollary", "ordering", "repr", "powast", "alphabeta", "card-eq", "finite",
                             "singleton-lemma"}));
  verify_cmd->add_option("target", target, "repr: brace string of h");
  verify_cmd->add_option("--mode", verify_mode, "literal or semantic")->check(CLI::IsMember({"literal", "semantic"}));
  verify_flags.add_to(verify_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    set_caps(Caps::from_env());
  } catch (const Error& e) {
    std::cerr << "SYLLOGIST_CAPS: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*parse_cmd) {
      auto f = read_formula(file);
      std::cout << print_formula(f) << "\n";
      if (show_fragment) std::cout << to_string(classify_fragment(f)) << "\n";
      return 0;
    }

    if (*eval_cmd) {
      auto f = read_formula(file);
      Assignment m;
      try {
        Json j = read_json_file(assignment_file);
        if (j.is_object() && j.contains("model")) j = j["model"];
        m = assignment_from_json(j);
      } catch (const Error& e) {
        throw InputError(e.what());
      }
      try {
        std::cout << (eval_formula(m, f) ? "true" : "false") << "\n";
      } catch (const UnboundVariable& e) {
        throw InputError(e.what());
      } catch (const EmptyIntersection&) {
        std::cout << "undefined\n";
      }
      return 0;
    }

    if (*norm_cmd) {
      auto f = read_formula(file);
      try {
        // One block per conjunction, one literal per line; the output parses back as a formula.
        bool first_block = true;
        for (const auto& c : normalize_full(f)) {
          if (!first_block) std::cout << "|\n";
          first_block = false;
          for (std::size_t i = 0; i < c.literals.size(); ++i)
            std::cout << to_string(c.literals[i]) << (i + 1 < c.literals.size() ? " &\n" : "\n");
        }
      } catch (const FiniteUnsupported& e) {
        throw InputError(e.what());
      }
      return 0;
    }

    if (*solve_cmd) {
      auto f = read_formula(file);
      auto rep = solve_bounded(f, solve_flags.config(deterministic));
      print_json(to_json(rep, deterministic));
      return rep.status == ModelReport::Status::Aborted ? kExitAborted : 0;
    }

    if (*spectrum_cmd) {
      auto f = read_formula(file);
      try {
        print_json(to_json(rank_spectrum(f, spectrum_flags.config(deterministic))));
      } catch (const SearchAborted& e) {
        print_json(Json{{"status", "aborted"}, {"reason", e.what()}});
        return kExitAborted;
      }
      return 0;
    }

    if (*gadget_cmd) {
      auto param = [&](std::size_t i, const std::string& fallback) {
        return i < gadget_params.size() ? gadget_params[i] : fallback;
      };
      auto need = [&](std::size_t n) {
        if (gadget_params.size() < n) throw CLI::ValidationError("params", gadget_name + " needs " + std::to_string(n));
      };
      std::optional<GadgetSpec> g;
      if (gadget_name == "repr") {
        need(1);
        g = repr_formula(read_hf(gadget_params[0]));
      } else if (gadget_name == "hf-value") {
        need(1);
        g = hf_value_formula(read_hf(gadget_params[0]));
      } else if (gadget_name == "powast") {
        need(1);
        std::size_t k = std::stoul(gadget_params[0]);
        if (k > 3) throw CLI::ValidationError("params", "powast arity is at most 3");
        g = powast_expression(k);
      } else if (gadget_name == "singleton-alphabeta") {
        AlphaBetaNames n;
        n.x = param(0, "x");
        g = singleton_alphabeta(n);
      } else if (gadget_name == "singleton-lemma") {
        g = singleton_lemma_gadget(param(0, "x"), param(1, "y"));
      } else if (gadget_name == "card-eq") {
        g = card_eq_gadget(param(0, "x"), param(1, "y"), parse_mode(mode));
      } else if (gadget_name == "finite") {
        g = finite_gadget(param(0, "x"), parse_mode(mode));
      } else {
        g = dichotomy_witness(param(0, "y"), param(1, "z"));
      }
      emit(print_formula(g->formula) + "\n", out);
      if (!out.empty()) emit(gadget_json(*g).dump(2) + "\n", out + ".json");
      return 0;
    }

    if (*verify_cmd) {
      VerdictReport r;
      const auto& vf = verify_flags;
      if (claim == "lemdich") {
        r = vf.universe_file.empty() ? verify_lemdich(default_lemdich_universe(), vf.jobs)
                                     : verify_lemdich(vf.load_universe(), vf.jobs);
      } else if (claim == "corollary") {
        std::size_t bound = vf.rank_bound.value_or(4);
        if (bound > 5) throw CLI::ValidationError("--rank-bound", "must be at most 5");
        r = verify_corollary(bound, vf.card_cap.value_or(6), vf.jobs, vf.candidate_cap.value_or(1'000'000'000));
      } else if (claim == "ordering") {
        r = verify_ordering();
      } else if (claim == "repr") {
        if (target.empty()) throw CLI::ValidationError("target", "repr needs a brace string");
        r = verify_repr(read_hf(target), vf.rank_bound.value_or(4));
      } else if (claim == "powast") {
        r = verify_powast(level(3));
      } else if (claim == "alphabeta") {
        r = verify_alphabeta(level(3));
      } else if (claim == "card-eq") {
        SearchConfig cfg = vf.config(true, 2);
        if (!vf.card_cap) cfg.per_var_card_cap = 3;
        SearchConfig tcfg;
        tcfg.rank_bound = 5;
        tcfg.hereditary_card_cap = 2;
        r = verify_card_gadget(parse_mode(verify_mode), cfg, level(3), tcfg);
      } else if (claim == "finite") {
        SearchConfig cfg = vf.config(true, 4);
        if (!vf.card_cap) cfg.per_var_card_cap = 3;
        r = verify_finite_gadget(parse_mode(verify_mode), cfg);
      } else {
        SearchConfig cfg = singleton_audit_config();
        if (vf.rank_bound) cfg.rank_bound = *vf.rank_bound;
        r = audit_singleton_lemma(cfg);
      }
      print_json(to_json(r, deterministic));
      return exit_code(r);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const SyntaxError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const CapExceeded& e) {
    std::cerr << "aborted: " << e.what() << "\n";
    return kExitAborted;
  } catch (const SizeBlowup& e) {
    std::cerr << "aborted: " << e.what() << "\n";
    return kExitAborted;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitUsage;
}
