#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "pmech/pmech.h"

namespace {

std::string text_of(const pmech_symbol* s) {
  size_t needed = 0;
  REQUIRE(pmech_symbol_to_string(s, nullptr, 0, &needed) == PMECH_OK);
  std::string buf(needed, '\0');
  REQUIRE(pmech_symbol_to_string(s, buf.data(), buf.size(), nullptr) == PMECH_OK);
  buf.resize(needed - 1);
  return buf;
}

pmech_symbol* parse(const char* t) {
  pmech_symbol* s = nullptr;
  REQUIRE(pmech_symbol_parse(t, 1, &s) == PMECH_OK);
  return s;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const char* name) {
  auto dir = std::filesystem::temp_directory_path() / "pmech_capi_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("symbols through the C API") {
  auto* f = parse("q^3");
  auto* g = parse("p^3");
  pmech_symbol* b = nullptr;
  REQUIRE(pmech_symbol_pbracket(f, g, &b) == PMECH_OK);
  CHECK(text_of(b) == "9*q^2*p^2 - 3/2*hbar^2");
  CHECK(std::string(pmech_last_error()).empty());

  pmech_symbol* st = nullptr;
  auto* q = parse("q");
  auto* p = parse("p");
  REQUIRE(pmech_symbol_star(q, p, &st) == PMECH_OK);
  CHECK(text_of(st) == "q*p + 1/2*i*hbar");
  pmech_symbol* pb = nullptr;
  REQUIRE(pmech_symbol_poisson(q, p, &pb) == PMECH_OK);
  CHECK(text_of(pb) == "1");

  char small[4];
  size_t needed = 0;
  REQUIRE(pmech_symbol_to_string(b, small, sizeof small, &needed) == PMECH_OK);
  CHECK(std::string(small) == "9*q");
  CHECK(needed == std::string("9*q^2*p^2 - 3/2*hbar^2").size() + 1);

  unsigned deg = 0;
  REQUIRE(pmech_symbol_degree(b, &deg) == PMECH_OK);
  CHECK(deg == 4);

  for (auto* s : {f, g, b, st, q, p, pb}) pmech_symbol_free(s);
  pmech_symbol_free(nullptr);
}

TEST_CASE("errors carry codes, messages and offsets") {
  pmech_symbol* s = nullptr;
  CHECK(pmech_symbol_parse("q^", 1, &s) == PMECH_ERR_PARSE);
  CHECK(s == nullptr);
  CHECK(pmech_last_error_offset() == 2);
  CHECK(!std::string(pmech_last_error()).empty());
  CHECK(pmech_symbol_parse(nullptr, 1, &s) == PMECH_ERR_ARGUMENT);
  CHECK(pmech_last_error_offset() == -1);

  pmech_symbol* h = nullptr;
  CHECK(pmech_hamiltonian_ho(0, 1, &h) == PMECH_ERR_ARGUMENT);
  pmech_state* v = nullptr;
  CHECK(pmech_vacuum(0, 1, 1, 256, 8, &v) == PMECH_ERR_ARGUMENT);
  CHECK(pmech_vacuum(1, 1, 1, 100, 8, &v) == PMECH_ERR_ARGUMENT);
  CHECK(pmech_vacuum(1, 1, 1, 64, 1, &v) == PMECH_ERR_PRECONDITION);

  auto* raw = parse("q^2");
  double re = 0, im = 0;
  CHECK(pmech_eval_coherent(raw, 1, 0, 0, 1, 1, &re, &im) == PMECH_ERR_ARGUMENT);
  pmech_symbol* obs = nullptr;
  REQUIRE(pmech_symbol_pmechanise(raw, &obs) == PMECH_OK);
  REQUIRE(pmech_eval_coherent(obs, 0, 3, 0, 1, 1, &re, &im) == PMECH_OK);
  CHECK(re == 9.0);
  auto* withh = parse("hbar*q");
  pmech_symbol* bad = nullptr;
  CHECK(pmech_symbol_pmechanise(withh, &bad) == PMECH_ERR_ARGUMENT);

  CHECK(pmech_state_write_csv(nullptr, "-") == PMECH_ERR_ARGUMENT);
  for (auto* x : {raw, obs, withh}) pmech_symbol_free(x);
}

TEST_CASE("grid states through the C API") {
  pmech_state* v = nullptr;
  REQUIRE(pmech_vacuum(1, 1, 1, 256, 8, &v) == PMECH_OK);
  pmech_symbol* h = nullptr;
  REQUIRE(pmech_hamiltonian_ho(1, 1, &h) == PMECH_OK);
  double re = 0, im = 0;
  REQUIRE(pmech_state_expectation(v, h, &re, &im) == PMECH_OK);
  CHECK(std::abs(re - 1 / (4 * M_PI)) <= 1e-8);

  auto* one = parse("1");
  pmech_state* w = nullptr;
  REQUIRE(pmech_state_apply_symbol(v, one, &w) == PMECH_OK);
  auto a = scratch("vac.csv"), b = scratch("one.csv");
  REQUIRE(pmech_state_write_csv(v, a.c_str()) == PMECH_OK);
  REQUIRE(pmech_state_write_csv(w, b.c_str()) == PMECH_OK);
  auto text = slurp(a);
  CHECK(text == slurp(b));
  CHECK(text.rfind("q,p,re,im\n", 0) == 0);
  CHECK(text.find('\r') == std::string::npos);
  CHECK(pmech_state_write_csv(v, "/nonexistent-dir/x.csv") == PMECH_ERR_IO);

  pmech_state* dflt = nullptr;
  REQUIRE(pmech_vacuum(0.5, 2, 1, 128, 0, &dflt) == PMECH_OK);
  pmech_state_free(dflt);
  pmech_state_free(w);
  pmech_state_free(v);
  pmech_symbol_free(one);
  pmech_symbol_free(h);
}

TEST_CASE("limit scan through the C API") {
  pmech_symbol* h = nullptr;
  REQUIRE(pmech_hamiltonian_ho(1, 1, &h) == PMECH_OK);
  double hs[] = {1, 0.5, 0.25, 0.125, 0};
  double order = 0;
  auto path = scratch("scan.csv");
  REQUIRE(pmech_limit_scan_write_csv(h, 1, 2, 1, 1, hs, 5, path.c_str(), &order) == PMECH_OK);
  CHECK(order == doctest::Approx(1.0));
  auto text = slurp(path);
  CHECK(text.rfind("h,value_re,value_im,classical_value,abs_error\n", 0) == 0);
  CHECK(text.find("\n0,2.5,0,2.5,0\n") != std::string::npos);
  CHECK(pmech_limit_scan_write_csv(h, 1, 2, 1, 1, nullptr, 0, path.c_str(), &order) ==
        PMECH_ERR_ARGUMENT);
  pmech_symbol_free(h);
}

TEST_CASE("evolution through the C API") {
  auto* q = parse("q");
  pmech_evolve_config cfg;
  pmech_evolve_config_init(&cfg);
  cfg.t1 = 1;
  cfg.dt = 1e-3;
  pmech_trajectory* rk = nullptr;
  pmech_trajectory* exact = nullptr;
  REQUIRE(pmech_evolve(q, &cfg, &rk) == PMECH_OK);
  cfg.closed_form = 1;
  REQUIRE(pmech_evolve(q, &cfg, &exact) == PMECH_OK);
  CHECK(pmech_trajectory_length(rk) == 1001);
  double diff = 1;
  REQUIRE(pmech_trajectory_max_difference(rk, exact, &diff) == PMECH_OK);
  CHECK(diff <= 1e-8);

  double t = 0;
  pmech_symbol* last = nullptr;
  REQUIRE(pmech_trajectory_at(exact, 1000, &t, &last) == PMECH_OK);
  CHECK(t == 1.0);
  CHECK(pmech_trajectory_at(exact, 1001, &t, &last) == PMECH_ERR_ARGUMENT);
  pmech_symbol_free(last);

  cfg.hamiltonian = PMECH_HAMILTONIAN_FORCED;
  cfg.z0 = 0;
  pmech_trajectory* forced = nullptr;
  REQUIRE(pmech_evolve(q, &cfg, &forced) == PMECH_OK);
  auto a = scratch("ho.csv"), b = scratch("forced.csv");
  REQUIRE(pmech_trajectory_write_csv(exact, a.c_str()) == PMECH_OK);
  REQUIRE(pmech_trajectory_write_csv(forced, b.c_str()) == PMECH_OK);
  CHECK(slurp(a) == slurp(b));

  auto* cubic = parse("q^3");
  auto* p3 = parse("p^3");
  cfg.hamiltonian = PMECH_HAMILTONIAN_SYMBOL;
  cfg.custom = cubic;
  cfg.closed_form = 0;
  cfg.degree_cap = 3;
  pmech_trajectory* bad = nullptr;
  CHECK(pmech_evolve(p3, &cfg, &bad) == PMECH_ERR_CLOSURE);
  cfg.closed_form = 1;
  CHECK(pmech_evolve(p3, &cfg, &bad) == PMECH_ERR_ARGUMENT);

  for (auto* tr : {rk, exact, forced}) pmech_trajectory_free(tr);
  for (auto* s : {q, cubic, p3}) pmech_symbol_free(s);
}

TEST_CASE("resonance through the C API") {
  auto csv = scratch("res.csv"), svg = scratch("res.svg");
  REQUIRE(pmech_resonance_write(1, 1, 0, 10, 11, csv.c_str(), svg.c_str()) == PMECH_OK);
  auto text = slurp(csv);
  CHECK(text.rfind("t,envelope\n", 0) == 0);
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  int rows = 0;
  while (std::getline(lines, line)) {
    CHECK(line.substr(line.find(',') + 1) == "0");
    ++rows;
  }
  CHECK(rows == 11);
  CHECK(slurp(svg).find("<svg") != std::string::npos);
  CHECK(pmech_resonance_write(1, 1, 1, 10, 1, csv.c_str(), nullptr) == PMECH_ERR_ARGUMENT);
}
