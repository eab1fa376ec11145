#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pmech/pmech.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitClosure = 4;

struct Failure {
  int code;
  std::string message;
};

int exit_code(pmech_status s) {
  switch (s) {
    case PMECH_OK:
      return kExitOk;
    case PMECH_ERR_ARGUMENT:
    case PMECH_ERR_PARSE:
    case PMECH_ERR_DIMENSION:
      return kExitUsage;
    case PMECH_ERR_PRECONDITION:
      return kExitPrecondition;
    case PMECH_ERR_CLOSURE:
      return kExitClosure;
    case PMECH_ERR_IO:
    case PMECH_ERR_INTERNAL:
      break;
  }
  return kExitIo;
}

void check(pmech_status s, const std::string& context) {
  if (s == PMECH_OK) return;
  throw Failure{exit_code(s), context + ": " + pmech_last_error()};
}

struct SymbolDeleter {
  void operator()(pmech_symbol* s) const { pmech_symbol_free(s); }
};
struct StateDeleter {
  void operator()(pmech_state* s) const { pmech_state_free(s); }
};
struct TrajectoryDeleter {
  void operator()(pmech_trajectory* t) const { pmech_trajectory_free(t); }
};
using SymbolPtr = std::unique_ptr<pmech_symbol, SymbolDeleter>;
using StatePtr = std::unique_ptr<pmech_state, StateDeleter>;
using TrajectoryPtr = std::unique_ptr<pmech_trajectory, TrajectoryDeleter>;

SymbolPtr parse(const std::string& text, const char* what) {
  pmech_symbol* s = nullptr;
  check(pmech_symbol_parse(text.c_str(), 1, &s), std::string("cannot parse ") + what);
  return SymbolPtr(s);
}

// "ho" names the oscillator Hamiltonian; anything else is parsed as a polynomial.
SymbolPtr observable(const std::string& text, double m, double omega) {
  pmech_symbol* s = nullptr;
  if (text == "ho") {
    check(pmech_hamiltonian_ho(m, omega, &s), "oscillator Hamiltonian");
    return SymbolPtr(s);
  }
  auto raw = parse(text, "observable");
  check(pmech_symbol_pmechanise(raw.get(), &s), "observable");
  return SymbolPtr(s);
}

std::string to_text(const pmech_symbol* s) {
  size_t needed = 0;
  check(pmech_symbol_to_string(s, nullptr, 0, &needed), "printing symbol");
  std::string buf(needed, '\0');
  check(pmech_symbol_to_string(s, buf.data(), buf.size(), nullptr), "printing symbol");
  buf.resize(needed - 1);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw Failure{kExitIo, "failed writing to standard output"};
    return;
  }
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  os << text;
  if (!os) throw Failure{kExitIo, "cannot write " + path};
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::string t = trim(text);
  if (t.empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto comma = t.find(',', start);
    std::string item = trim(t.substr(start, comma == std::string::npos ? std::string::npos
                                                                         : comma - start));
    double v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
      throw Failure{kExitUsage, std::string("invalid number '") + item + "' in " + what};
    out.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

// key = value lines become --key=value arguments placed straight after the subcommand,
// so flags given on the command line (which come later) take precedence.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::optional<std::string> path;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i > 0 && args[i] == "--config") {
      if (i + 1 >= args.size()) throw Failure{kExitUsage, "--config needs a file"};
      path = args[++i];
    } else if (i > 0 && args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (!path) return args;
  std::ifstream in(*path, std::ios::binary);
  if (!in) throw Failure{kExitIo, "cannot read config file " + *path};
  std::vector<std::string> injected;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Failure{kExitUsage, *path + ":" + std::to_string(lineno) + ": expected key = value"};
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key.empty() || key == "config")
      throw Failure{kExitUsage, *path + ":" + std::to_string(lineno) + ": invalid key"};
    injected.push_back("--" + key + "=" + value);
  }
  std::vector<std::string> out;
  bool placed = false;
  for (std::size_t i = 0; i < rest.size(); ++i) {
    out.push_back(rest[i]);
    if (!placed && i >= 1 && rest[i].rfind("-", 0) != 0) {
      out.insert(out.end(), injected.begin(), injected.end());
      placed = true;
    }
  }
  if (!placed) throw Failure{kExitUsage, "--config requires a subcommand"};
  return out;
}

struct Shared {
  double m = 1;
  double omega = 1;
  int grid_n = 256;
  double grid_L = 0;
  std::string out = "-";
  std::string config;
};

void add_shared(CLI::App* sub, Shared& s, bool grid) {
  sub->add_option("--m", s.m, "mass")->capture_default_str();
  sub->add_option("--omega", s.omega, "natural frequency")->capture_default_str();
  if (grid) {
    sub->add_option("--grid-n", s.grid_n, "grid points per axis (power of two >= 64)")
        ->capture_default_str();
    sub->add_option("--grid-L", s.grid_L, "grid half-width (default: chosen from h, m, omega)");
  }
  sub->add_option("--out", s.out, "output path, - for standard output")->capture_default_str();
  sub->add_option("--config", s.config, "key = value file; command-line flags win");
}

int cmd_bracket(const std::string& f_text, const std::string& g_text, const Shared& s) {
  auto f = parse(f_text, "f");
  auto g = parse(g_text, "g");
  pmech_symbol* b = nullptr;
  check(pmech_symbol_pbracket(f.get(), g.get(), &b), "bracket");
  SymbolPtr owned(b);
  write_text(s.out, to_text(b) + "\n");
  return kExitOk;
}

int cmd_quantize(const std::string& text, double h, const Shared& s) {
  if (!(h > 0)) throw Failure{kExitUsage, "quantisation requires h > 0"};
  auto f = parse(text, "symbol");
  pmech_state* v = nullptr;
  check(pmech_vacuum(h, s.m, s.omega, s.grid_n, s.grid_L, &v), "vacuum");
  StatePtr vac(v);
  pmech_state* w = nullptr;
  check(pmech_state_apply_symbol(vac.get(), f.get(), &w), "quantize");
  StatePtr result(w);
  check(pmech_state_write_csv(result.get(), s.out.c_str()), "writing state");
  return kExitOk;
}

struct EvolveArgs {
  std::string hamiltonian = "ho";
  std::string observable;
  double z0 = 0;
  double drive = 1;
  double t0 = 0;
  double t1 = 1;
  double dt = 1e-3;
  bool closed_form = false;
  unsigned degree_cap = 0;
};

int cmd_evolve(const EvolveArgs& a, const Shared& s) {
  auto f0 = parse(a.observable, "observable");
  pmech_evolve_config cfg;
  pmech_evolve_config_init(&cfg);
  cfg.m = s.m;
  cfg.omega = s.omega;
  cfg.z0 = a.z0;
  cfg.drive_omega = a.drive;
  cfg.t0 = a.t0;
  cfg.t1 = a.t1;
  cfg.dt = a.dt;
  cfg.degree_cap = a.degree_cap;
  SymbolPtr custom;
  if (a.hamiltonian == "ho") {
    cfg.hamiltonian = PMECH_HAMILTONIAN_HO;
  } else if (a.hamiltonian == "forced") {
    cfg.hamiltonian = PMECH_HAMILTONIAN_FORCED;
  } else {
    custom = parse(a.hamiltonian, "Hamiltonian");
    cfg.hamiltonian = PMECH_HAMILTONIAN_SYMBOL;
    cfg.custom = custom.get();
    if (a.closed_form)
      throw Failure{kExitUsage, "--closed-form needs --hamiltonian ho or forced"};
  }
  cfg.closed_form = a.closed_form;
  pmech_trajectory* t = nullptr;
  check(pmech_evolve(f0.get(), &cfg, &t), "evolve");
  TrajectoryPtr main(t);
  if (!custom) {
    cfg.closed_form = !a.closed_form;
    pmech_trajectory* other = nullptr;
    check(pmech_evolve(f0.get(), &cfg, &other), "evolve");
    TrajectoryPtr second(other);
    double diff = 0;
    check(pmech_trajectory_max_difference(main.get(), second.get(), &diff), "comparison");
    std::fprintf(stderr, "summary: RK4 vs closed form max coefficient difference %.3e over %zu samples\n",
                 diff, pmech_trajectory_length(main.get()));
  }
  check(pmech_trajectory_write_csv(main.get(), s.out.c_str()), "writing trajectory");
  return kExitOk;
}

int cmd_limit_scan(const std::string& text, double q0, double p0, const std::string& h_text,
                   const Shared& s) {
  auto hs = parse_list(h_text, "--h");
  if (hs.empty()) throw Failure{kExitUsage, "limit-scan needs a non-empty --h list"};
  auto b = observable(text, s.m, s.omega);
  double order = NAN;
  check(pmech_limit_scan_write_csv(b.get(), q0, p0, s.m, s.omega, hs.data(), hs.size(),
                                   s.out.c_str(), &order),
        "limit scan");
  if (std::isnan(order))
    std::fprintf(stderr, "fitted error order in h: undefined (fewer than two nonzero errors)\n");
  else
    std::fprintf(stderr, "fitted error order in h: %.6f\n", order);
  return kExitOk;
}

struct ResonanceArgs {
  double drive = 1;
  double z0 = 1;
  double t_max = 0;
  std::size_t samples = 2001;
  std::string plot;
};

int cmd_resonance(const ResonanceArgs& a, const Shared& s) {
  double t_max = a.t_max > 0 ? a.t_max : 100 * 2 * M_PI / s.omega;
  check(pmech_resonance_write(a.drive, s.omega, a.z0, t_max, a.samples, s.out.c_str(),
                              a.plot.empty() ? nullptr : a.plot.c_str()),
        "resonance");
  return kExitOk;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  args = expand_config(args);

  CLI::App app{"Phase-space mechanics on the Heisenberg group", "pmech"};
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.set_version_flag("--version", std::string(pmech_version()));

  Shared shared;

  std::string f_text, g_text;
  auto* bracket = app.add_subcommand("bracket", "print the deformed bracket of two symbols");
  bracket->add_option("f,--f", f_text, "first symbol")->required();
  bracket->add_option("g,--g", g_text, "second symbol")->required();
  add_shared(bracket, shared, false);

  std::string q_text;
  double q_h = 1;
  auto* quant = app.add_subcommand("quantize", "apply the quantised symbol to the vacuum");
  quant->add_option("symbol,--symbol", q_text, "symbol")->required();
  quant->add_option("--h", q_h, "Planck constant h > 0")->capture_default_str();
  add_shared(quant, shared, true);

  EvolveArgs ev;
  auto* evolve = app.add_subcommand("evolve", "evolve an observable");
  evolve->add_option("observable,--observable", ev.observable, "initial symbol")->required();
  evolve->add_option("--hamiltonian", ev.hamiltonian, "ho, forced, or a polynomial")
      ->capture_default_str();
  evolve->add_option("--Z0", ev.z0, "forcing amplitude")->capture_default_str();
  evolve->add_option("--Omega", ev.drive, "forcing frequency")->capture_default_str();
  evolve->add_option("--t0", ev.t0)->capture_default_str();
  evolve->add_option("--t1", ev.t1)->capture_default_str();
  evolve->add_option("--dt", ev.dt)->capture_default_str();
  evolve->add_flag("--closed-form", ev.closed_form, "sample the exact flow instead of RK4");
  evolve->add_option("--degree-cap", ev.degree_cap, "0: degree of the observable")
      ->capture_default_str();
  add_shared(evolve, shared, false);

  std::string ls_text, ls_h;
  double q0 = 0, p0 = 0;
  auto* scan = app.add_subcommand("limit-scan", "coherent-state values against the classical one");
  scan->add_option("observable,--observable", ls_text, "polynomial, or ho")->required();
  scan->add_option("--q0", q0)->capture_default_str();
  scan->add_option("--p0", p0)->capture_default_str();
  scan->add_option("--h", ls_h, "comma-separated h values (0 allowed)");
  add_shared(scan, shared, false);

  ResonanceArgs rs;
  auto* res = app.add_subcommand("resonance", "translation envelope of a harmonic force");
  res->add_option("--Omega", rs.drive, "forcing frequency")->capture_default_str();
  res->add_option("--Z0", rs.z0, "forcing amplitude")->capture_default_str();
  res->add_option("--t-max", rs.t_max, "end time (default 100 natural periods)");
  res->add_option("--samples", rs.samples)->capture_default_str();
  res->add_option("--plot", rs.plot, "optional SVG output path");
  add_shared(res, shared, false);

  std::vector<const char*> cargv;
  for (const auto& a : args) cargv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*bracket) return cmd_bracket(f_text, g_text, shared);
  if (*quant) return cmd_quantize(q_text, q_h, shared);
  if (*evolve) return cmd_evolve(ev, shared);
  if (*scan) return cmd_limit_scan(ls_text, q0, p0, ls_h, shared);
  if (*res) return cmd_resonance(rs, shared);
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Failure& f) {
    std::fprintf(stderr, "pmech: %s\n", f.message.c_str());
    return f.code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "pmech: %s\n", e.what());
    return kExitIo;
  }
}
