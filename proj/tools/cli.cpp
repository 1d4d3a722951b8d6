#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "succinct/automata.hpp"
#include "succinct/benchgen.hpp"
#include "succinct/error.hpp"
#include "succinct/executor.hpp"
#include "succinct/model_check.hpp"
#include "succinct/otm.hpp"
#include "succinct/safety.hpp"
#include "succinct/service.hpp"

namespace succinct::cli {

namespace {

enum Exit { kOk = 0, kNegative = 1, kUsage = 2, kCap = 3 };

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw std::runtime_error("cannot write " + path);
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

struct Flags {
  std::string spec, automaton, machine, out, atm, host = "127.0.0.1", static_dir;
  std::uint32_t k_max = synth::default_k_max();
  std::string mode = "enumerate";
  int port = 8080;
  bool dot = false;
  bool verbose = false;
};

synth::Mode mode_of(const std::string& m) {
  return m == "binsearch" ? synth::Mode::BinarySearch : synth::Mode::Enumerate;
}

int synth_cmd(const Flags& f, std::ostream& out, std::ostream& err) {
  std::shared_ptr<const automata::UniversalAutomaton> u;
  if (!f.automaton.empty())
    u = automata::parse_explicit_automaton(read_file(f.automaton));
  else
    u = automata::to_universal(automata::ctl_to_alternating(ctl::parse_spec(read_file(f.spec))));
  const auto r = synth::solve(u, {.k_max = f.k_max, .mode = mode_of(f.mode)});
  if (f.verbose) {
    err << "tried k:";
    for (auto k : r.tried) err << ' ' << k;
    err << '\n';
  }
  if (!r.realizable) {
    out << "no winning strategy up to k=" << f.k_max << "; unknown at k-cap\n";
    out << "RESULT: unknown at k-cap " << f.k_max << '\n';
    return kNegative;
  }
  const auto m = mealy::restrict_outputs(synth::extract_mealy(r.strategy));
  const std::string text = f.dot ? mealy::to_dot(m) : mealy::serialize(m);
  if (f.out.empty())
    out << text;
  else
    write_file(f.out, text);
  out << "RESULT: realizable k=" << r.k << " states=" << m.num_states << '\n';
  return kOk;
}

int check_cmd(const Flags& f, std::ostream& out) {
  const auto spec = ctl::parse_spec(read_file(f.spec));
  const auto m = mealy::deserialize(read_file(f.machine));
  if (m.inputs != spec.inputs || m.outputs != spec.outputs)
    throw ValidationError("machine propositions differ from the spec's declarations");
  if (m.initial_input != spec.initial_input) throw ValidationError("machine initial input differs from the spec's");
  const bool ok = ctl::check(m, spec.formula);
  out << "RESULT: " << (ok ? "true" : "false") << '\n';
  return ok ? kOk : kNegative;
}

int exec_cmd(const Flags& f, std::istream& in, std::ostream& out, std::ostream& err) {
  const auto spec = ctl::parse_spec(read_file(f.spec));
  std::unique_ptr<exec::Session> s;
  try {
    s = exec::Session::create(spec, {.k_max = f.k_max, .mode = mode_of(f.mode)});
  } catch (const Unrealizable& e) {
    err << e.what() << '\n';
    out << "RESULT: unknown at k-cap " << f.k_max << '\n';
    return kNegative;
  }
  out << "initial: " << format_letter(s->initial_output(), s->outputs()) << '\n';
  std::string line;
  while (true) {
    out << "in> " << std::flush;
    if (!std::getline(in, line)) break;
    line = trim(line);
    if (line == ":quit") break;
    try {
      if (line == ":undo") {
        s->undo();
        out << "undone, depth " << s->depth() << '\n';
      } else if (line == ":state") {
        out << "state: " << s->describe_state() << " digest " << s->digest() << " depth " << s->depth() << '\n';
      } else if (line.rfind(":whatif", 0) == 0) {
        std::map<std::string, bool> assignment;
        std::stringstream ss(line.substr(7));
        std::string item;
        bool ok = true;
        while (std::getline(ss, item, ',')) {
          item = trim(item);
          if (item.empty()) continue;
          const auto eq = item.find('=');
          const auto value = eq == std::string::npos ? "" : trim(item.substr(eq + 1));
          if (value != "0" && value != "1") {
            ok = false;
            break;
          }
          assignment[trim(item.substr(0, eq))] = value == "1";
        }
        if (!ok) {
          err << "usage: :whatif name=0|1,...\n";
          continue;
        }
        out << "whatif: " << exec::verdict_name(s->what_if(assignment)) << '\n';
      } else if (!line.empty() && line.front() == ':') {
        err << "unknown command " << line << '\n';
      } else {
        const Letter x = parse_name_list(line, s->inputs());
        out << "out: " << format_letter(s->step(x), s->outputs()) << '\n';
      }
    } catch (const ContractViolation& e) {
      err << e.what() << '\n';
    } catch (const ParseError& e) {
      err << e.what() << '\n';
    } catch (const InvalidLetter& e) {
      err << e.what() << '\n';
    }
  }
  out << "\nRESULT: exec steps=" << s->depth() << '\n';
  return kOk;
}

int verify_otm_cmd(const Flags& f, std::ostream& out) {
  const auto m = otm::parse_machine(read_file(f.machine));
  const auto spec = ctl::parse_spec(read_file(f.spec));
  const bool ok = otm::verify(m, spec);
  out << "RESULT: " << (ok ? "true" : "false") << '\n';
  return ok ? kOk : kNegative;
}

int gen_bench_cmd(const Flags& f, std::ostream& out) {
  const auto atm = bench::parse_atm(read_file(f.atm));
  const auto spec = bench::gen_phi_b(atm);
  const std::string text = ctl::render(spec);
  if (f.out.empty())
    out << text;
  else
    write_file(f.out, text);
  out << "RESULT: generated size=" << ctl::formula_size(spec.formula) << " inputs=" << spec.inputs.size()
      << " outputs=" << spec.outputs.size() << '\n';
  return kOk;
}

int serve_cmd(const Flags& f, std::ostream& out) {
  service::Options opts;
  opts.solve.k_max = f.k_max;
  opts.solve.mode = mode_of(f.mode);
  service::Service svc(opts);
  out << "listening on " << f.host << ':' << f.port << std::endl;
  service::serve(svc, f.host, f.port, f.static_dir);
  out << "RESULT: stopped\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bounded synthesis and execution of CTL specifications", "succinct"};
  app.require_subcommand(1);
  Flags f;
  auto modes = CLI::IsMember({"enumerate", "binsearch"});
  auto* synth = app.add_subcommand("synth", "Synthesize a Mealy machine");
  auto* spec_or_aut = synth->add_option_group("input");
  spec_or_aut->add_option("--spec", f.spec, "CTL specification")->check(CLI::ExistingFile);
  spec_or_aut->add_option("--automaton", f.automaton, "explicit universal co-Buchi automaton")
      ->check(CLI::ExistingFile);
  spec_or_aut->require_option(1);
  synth->add_option("--k-max", f.k_max, "largest counter bound tried");
  synth->add_option("--out", f.out, "write the machine here instead of stdout");
  synth->add_option("--mode", f.mode, "letter search")->check(modes);
  synth->add_flag("--dot", f.dot, "emit Graphviz instead of the text format");
  synth->add_flag("-v,--verbose", f.verbose);

  auto* check = app.add_subcommand("check", "Model check a machine");
  check->add_option("--spec", f.spec)->required();
  check->add_option("--machine", f.machine)->required();

  auto* exec = app.add_subcommand("exec", "Play the environment interactively");
  exec->add_option("--spec", f.spec)->required()->check(CLI::ExistingFile);
  exec->add_option("--k-max", f.k_max);
  exec->add_option("--mode", f.mode)->check(modes);

  auto* otm = app.add_subcommand("verify-otm", "Model check an online Turing machine");
  otm->add_option("--machine", f.machine)->required();
  otm->add_option("--spec", f.spec)->required();

  auto* gen = app.add_subcommand("gen-bench", "Generate the halting benchmark spec of an ATM");
  gen->add_option("--atm", f.atm)->required();
  gen->add_option("--out", f.out);

  auto* serve = app.add_subcommand("serve", "Serve the session API over HTTP");
  serve->add_option("--port", f.port)->check(CLI::Range(1, 65535));
  serve->add_option("--host", f.host);
  serve->add_option("--static", f.static_dir, "directory of UI assets mounted at /");
  serve->add_option("--k-max", f.k_max);
  serve->add_option("--mode", f.mode)->check(modes);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help() << "RESULT: help\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    out << "RESULT: error usage\n";
    return kUsage;
  }

  try {
    if (synth->parsed()) return synth_cmd(f, out, err);
    if (check->parsed()) return check_cmd(f, out);
    if (exec->parsed()) return exec_cmd(f, in, out, err);
    if (otm->parsed()) return verify_otm_cmd(f, out);
    if (gen->parsed()) return gen_bench_cmd(f, out);
    return serve_cmd(f, out);
  } catch (const ResourceExhausted& e) {
    err << "resource cap: " << e.what() << '\n';
    out << "RESULT: error resource-cap\n";
    return kCap;
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    out << "RESULT: error input\n";
    return kUsage;
  }
}

}  // namespace succinct::cli
