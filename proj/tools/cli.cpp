#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "sla/constructions.hpp"
#include "sla/epad.hpp"
#include "sla/io.hpp"
#include "sla/minimize.hpp"
#include "sla/signatures.hpp"

namespace sla::cli {

namespace {

// Raised for bad input so that the message can carry the file name.
struct InputError : Error {
  using Error::Error;
};

class Session {
 public:
  Session(std::istream& in, std::ostream& out, std::ostream& err) : in_(in), out_(out), err_(err) {}

  std::string read(const std::string& path) {
    if (path == "-") {
      std::ostringstream ss;
      ss << in_.rdbuf();
      return ss.str();
    }
    std::ifstream f(path);
    if (!f) throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }

  // Parse errors are prefixed with the file name.
  template <typename F>
  auto parsing(const std::string& path, const std::string& text, F parse) {
    try {
      return parse(text);
    } catch (const ParseError& e) {
      throw InputError((path == "-" ? std::string("<stdin>") : path) + ":" + e.what());
    }
  }

  template <typename F>
  auto parsing(const std::string& path, F parse) {
    return parsing(path, read(path), parse);
  }

  EquivariantDFA dfa(const std::string& path) { return dfa(path, read(path)); }

  EquivariantDFA dfa(const std::string& path, const std::string& source) {
    EquivariantDFA d = parsing(path, source, [&](const std::string& text) {
      if (is_nfa_text(text)) throw InputError(path + ": this command needs a deterministic automaton");
      return parse_automaton(text);
    });
    auto diags = validate(d);
    if (!diags.empty()) {
      for (const auto& m : diags) err_ << "invalid automaton: " << m << "\n";
      throw InputError(path + ": invalid automaton");
    }
    return d;
  }

  void write(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
      out_ << text;
      return;
    }
    std::ofstream f(path);
    if (!f) throw InputError("cannot write '" + path + "'");
    f << text;
  }

  void report(const std::string& key, const std::string& value) { report_.emplace_back(key, value); }
  void report(const std::string& key, Int value) { report(key, std::to_string(value)); }
  void report(const std::string& key, bool value) { report(key, std::string(value ? "true" : "false")); }

  void flush_report(const std::string& path) {
    if (path.empty()) return;
    std::ostringstream os;
    for (const auto& [k, v] : report_) os << k << "=" << v << "\n";
    write(path, os.str());
  }

  std::ostream& out() { return out_; }
  std::ostream& err() { return err_; }

 private:
  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
  std::vector<std::pair<std::string, std::string>> report_;
};

std::string join_chars(const EquivalenceSignature& phi) {
  std::vector<Int> c = phi.chars;
  std::sort(c.begin(), c.end());
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s;
}

void report_search(Session& s, const CongruenceSearchReport& r, Int cap) {
  s.report("cap", cap);
  s.report("candidates", static_cast<Int>(r.candidates.size()));
  s.report("complete", r.complete);
  for (std::size_t i = 0; i < r.candidates.size(); ++i) {
    const auto& c = r.candidates[i];
    EquivalenceSignature shape;
    shape.sim = c.sim;
    std::string classes = to_string(shape);
    classes = classes.substr(0, classes.find(';'));
    const std::string key = "candidate." + std::to_string(i);
    s.report(key + ".classes", classes.substr(4));
    s.report(key + ".status", epad::to_string(c.status));
    if (!c.reason.empty()) s.report(key + ".reason", c.reason);
  }
  if (r.found) s.report("signature", to_string(*r.found));
}

CmConfig parse_config(const std::string& text) {
  std::vector<Int> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      Int v = std::stoll(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument("");
      parts.push_back(v);
    } catch (const std::exception&) {
      throw InputError("bad configuration '" + text + "': expected STATE,C1,C2");
    }
  }
  if (parts.size() != 3) throw InputError("bad configuration '" + text + "': expected STATE,C1,C2");
  return {static_cast<std::size_t>(parts[0]), parts[1], parts[2]};
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Session s(in, out, err);
  CLI::App app{"Equivariant automata over the integers with semilinear transitions.", "sla"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  bool deterministic = false;
  std::string report_path;
  app.add_flag("--deterministic", deterministic, "Fixed search order (the default behaviour; kept for scripts)");
  app.add_option("--report", report_path, "Write a key=value report to this file ('-' for stdout)");

  std::function<int()> action;
  std::string file, word_text, output;
  Int cap = epad::SolveConfig{}.char_search_cap, box = 0;
  std::size_t steps = 5;

  auto* check = app.add_subcommand("check", "Validate an automaton file");
  check->add_option("file", file, "Automaton file or '-'")->required();
  check->callback([&] {
    action = [&] {
      std::vector<std::string> diags = s.parsing(file, [](const std::string& text) {
        return is_nfa_text(text) ? validate(parse_nfa(text)) : validate(parse_automaton(text));
      });
      for (const auto& d : diags) s.out() << d << "\n";
      if (diags.empty()) s.out() << "valid\n";
      s.report("valid", diags.empty());
      return diags.empty() ? kYes : kNo;
    };
  });

  auto* acc = app.add_subcommand("accepts", "Run a word such as \"z:0 z:1\"");
  acc->add_option("file", file, "Automaton file or '-'")->required();
  acc->add_option("word", word_text, "Space-separated orbit:value letters")->required();
  acc->callback([&] {
    action = [&] {
      EquivariantDFA d = s.dfa(file);
      Word w;
      try {
        w = parse_word(word_text);
      } catch (const ParseError& e) {
        throw InputError(std::string("word:") + e.what());
      }
      for (const auto& a : w)
        if (!d.alphabet.contains(a.orbit)) throw InputError("unknown letter orbit '" + a.orbit + "'");
      Element q = run(d, w);
      bool yes = d.accepting.count(q.orbit) > 0;
      s.out() << (yes ? "accepted" : "rejected") << " in " << sla::to_string(q) << "\n";
      s.report("accepted", yes);
      s.report("state", sla::to_string(q));
      return yes ? kYes : kNo;
    };
  });

  auto* empty = app.add_subcommand("empty", "Decide language emptiness (exit 0 when empty)");
  empty->add_option("file", file, "Automaton file or '-'")->required();
  empty->callback([&] {
    action = [&] {
      const std::string text = s.read(file);
      bool is;
      if (is_nfa_text(text)) {
        auto n = s.parsing(file, text, [](const std::string& t) { return parse_nfa(t); });
        auto diags = validate(n);
        if (!diags.empty()) throw InputError(file + ": invalid automaton: " + diags.front());
        is = is_empty(n);
      } else {
        is = is_empty(s.dfa(file, text));
      }
      s.out() << (is ? "empty" : "nonempty") << "\n";
      s.report("empty", is);
      return is ? kYes : kNo;
    };
  });

  auto* find = app.add_subcommand("find-word", "Print an accepted word (exit 1 when the language is empty)");
  find->add_option("file", file, "Automaton file or '-'")->required();
  find->callback([&] {
    action = [&] {
      auto w = find_word(s.dfa(file));
      if (!w) {
        s.out() << "empty\n";
        s.report("found", false);
        return kNo;
      }
      s.out() << (w->empty() ? "(empty word)" : sla::to_string(*w)) << "\n";
      s.report("found", true);
      s.report("word", sla::to_string(*w));
      return kYes;
    };
  });

  auto* mini = app.add_subcommand("minimize", "Quotient until no nontrivial congruence is left");
  mini->add_option("file", file, "Automaton file or '-'")->required();
  mini->add_option("--cap", cap, "Bound for characteristics that only the search can limit")->check(CLI::NonNegativeNumber);
  mini->add_option("-o,--output", output, "Output file (default stdout)");
  mini->callback([&] {
    action = [&] {
      epad::SolveConfig cfg;
      cfg.char_search_cap = cap;
      cfg.deterministic = deterministic;
      MinimizeResult r = minimize(s.dfa(file), cfg);
      s.write(output, render_automaton(r.automaton));
      s.err() << "rounds " << r.trace.size() << ", " << r.automaton.states.size() << " orbit(s), "
              << (r.proven_minimal ? "minimal" : "minimal within the search bounds (cap " + std::to_string(cap) + ")")
              << "\n";
      s.report("rounds", static_cast<Int>(r.trace.size()));
      s.report("orbits", static_cast<Int>(r.automaton.states.size()));
      s.report("proven_minimal", r.proven_minimal);
      for (std::size_t i = 0; i < r.trace.size(); ++i)
        s.report("round." + std::to_string(i) + ".signature", to_string(r.trace[i].signature));
      report_search(s, r.last_report, cap);
      return r.proven_minimal ? kYes : kUnknown;
    };
  });

  auto* ismin = app.add_subcommand("is-minimal", "Decide minimality (0 yes, 1 no, 2 unknown)");
  ismin->add_option("file", file, "Automaton file or '-'")->required();
  ismin->add_option("--cap", cap, "Bound for characteristics that only the search can limit")->check(CLI::NonNegativeNumber);
  ismin->callback([&] {
    action = [&] {
      epad::SolveConfig cfg;
      cfg.char_search_cap = cap;
      cfg.deterministic = deterministic;
      MinimalityResult r = is_minimal(s.dfa(file), cfg);
      s.out() << to_string(r.verdict) << "\n";
      if (r.witness) s.out() << "congruence " << to_string(*r.witness) << "\n";
      if (r.verdict == Minimality::Unknown) {
        std::size_t open = 0;
        for (const auto& c : r.report.candidates) open += c.status == epad::SolveResult::Status::Unknown;
        s.out() << open << " candidate grouping(s) undecided up to characteristic " << cap << "\n";
      }
      s.report("verdict", to_string(r.verdict));
      report_search(s, r.report, cap);
      return r.verdict == Minimality::Yes ? kYes : r.verdict == Minimality::No ? kNo : kUnknown;
    };
  });

  auto* ref = app.add_subcommand("refine", "Print the length-bounded future equivalences step by step");
  ref->add_option("file", file, "Automaton file or '-'")->required();
  ref->add_option("--steps", steps, "Number of refinement steps")->check(CLI::NonNegativeNumber);
  ref->callback([&] {
    action = [&] {
      RefinementTrace t = partition_refinement(s.dfa(file), steps);
      s.out() << "step\torbits\tcharacteristics\tsignature\n";
      for (std::size_t i = 0; i < t.steps.size(); ++i) {
        const auto& phi = t.steps[i];
        s.out() << i << "\t" << phi.sim.classes.size() << "\t" << join_chars(phi) << "\t" << to_string(phi) << "\n";
        s.report("step." + std::to_string(i) + ".characteristics", join_chars(phi));
      }
      if (t.stabilized) s.out() << "stable after step " << t.steps.size() - 1 << "\n";
      else s.out() << "not stable after " << steps << " step(s)\n";
      s.report("stabilized", t.stabilized);
      return kYes;
    };
  });

  auto* gen = app.add_subcommand("gen", "Generate an automaton");
  gen->require_subcommand(1);
  std::string kset = "2:1", machine, from = "0,0,0", to;
  auto* gk = gen->add_subcommand("diffk", "Words whose consecutive differences lie in K");
  gk->add_option("--k", kset, "Periodic set K, e.g. '2:1' or 'all' (default odd numbers)");
  gk->add_option("-o,--output", output, "Output file (default stdout)");
  gk->callback([&] {
    action = [&] {
      PeriodicSet1D k;
      try {
        k = PeriodicSet1D::parse(kset);
      } catch (const ParseError& e) {
        throw InputError(std::string("--k:") + e.what());
      }
      s.write(output, render_automaton(gen_diffk(k)));
      return kYes;
    };
  });
  auto* gb = gen->add_subcommand("binprefix", "Binary prefixes; refinement never stabilizes");
  gb->add_option("-o,--output", output, "Output file (default stdout)");
  gb->callback([&] {
    action = [&] {
      s.write(output, render_automaton(gen_binprefix()));
      return kYes;
    };
  });
  auto* gc = gen->add_subcommand("cm2", "Constant-letter DFA of a two-counter machine");
  gc->add_option("--machine", machine, "Program file or '-'")->required();
  gc->add_option("--from", from, "Start configuration STATE,C1,C2");
  gc->add_option("--to", to, "Target configuration STATE,C1,C2")->required();
  gc->add_option("-o,--output", output, "Output file (default stdout)");
  gc->callback([&] {
    action = [&] {
      CounterMachine m = s.parsing(machine, [](const std::string& t) { return parse_counter_machine(t); });
      CmConfig x = parse_config(from), y = parse_config(to);
      if (x.state >= m.size() || y.state >= m.size()) throw InputError("configuration state out of range");
      s.write(output, render_automaton(gen_cm_constant_word_dfa(m, x, y)));
      return kYes;
    };
  });

  auto* ep = app.add_subcommand("epad", "Existential Presburger arithmetic with divisibility");
  ep->require_subcommand(1);
  auto* solve = ep->add_subcommand("solve", "Decide a formula file (0 sat, 1 unsat, 2 unknown)");
  solve->add_option("file", file, "Formula file or '-'")->required();
  solve->add_option("--cap", cap, "Enumeration bound for variable divisors")->check(CLI::NonNegativeNumber);
  solve->add_option("--box", box, "Also brute-force every variable over [-N, N]")->check(CLI::NonNegativeNumber);
  solve->callback([&] {
    action = [&] {
      epad::Formula f = s.parsing(file, [](const std::string& t) { return epad::parse_formula(t); });
      epad::SolveConfig cfg;
      cfg.char_search_cap = cap;
      cfg.witness_box = box;
      cfg.deterministic = deterministic;
      epad::SolveResult r = epad::solve(f, cfg);
      s.out() << epad::to_string(r.status) << "\n";
      s.report("status", epad::to_string(r.status));
      for (const auto& [v, x] : r.witness) {
        s.out() << v << " = " << x << "\n";
        s.report("witness." + v, x);
      }
      if (r.unknown()) {
        s.out() << r.reason << " (cap " << r.bound << ")\n";
        s.report("reason", r.reason);
        s.report("bound", r.bound);
      }
      return r.sat() ? kYes : r.unsat() ? kNo : kUnknown;
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kYes : kInputError;
  }

  int code = kInputError;
  try {
    code = action();
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << "\n";
    return kInputError;
  }
  try {
    s.report("exit", static_cast<Int>(code));
    s.flush_report(report_path);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return code;
}

}  // namespace sla::cli
