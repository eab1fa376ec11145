#include "pmech/pmech.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <iostream>
#include <limits>
#include <new>
#include <string>

#include "pmech/dynamics.hpp"
#include "pmech/errors.hpp"
#include "pmech/fock.hpp"
#include "pmech/io.hpp"
#include "pmech/kernels.hpp"
#include "pmech/symbol.hpp"

struct pmech_symbol {
  pmech::Symbol value;
};

struct pmech_state {
  pmech::StateVector value;
};

struct pmech_trajectory {
  pmech::Trajectory<pmech::Symbol> value;
};

namespace {

thread_local std::string g_error;
thread_local long g_offset = -1;

class IoFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

pmech_status fail(pmech_status code, const char* what, long offset = -1) {
  g_error = what;
  g_offset = offset;
  return code;
}

template <class F>
pmech_status guarded(F&& body) {
  g_error.clear();
  g_offset = -1;
  try {
    body();
    return PMECH_OK;
  } catch (const pmech::ParseError& e) {
    return fail(PMECH_ERR_PARSE, e.what(), static_cast<long>(e.offset()));
  } catch (const pmech::InvalidArgument& e) {
    return fail(PMECH_ERR_ARGUMENT, e.what());
  } catch (const pmech::DimensionError& e) {
    return fail(PMECH_ERR_DIMENSION, e.what());
  } catch (const pmech::PreconditionError& e) {
    return fail(PMECH_ERR_PRECONDITION, e.what());
  } catch (const pmech::ClosureError& e) {
    return fail(PMECH_ERR_CLOSURE, e.what());
  } catch (const IoFailure& e) {
    return fail(PMECH_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(PMECH_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PMECH_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(PMECH_ERR_INTERNAL, "unknown failure");
  }
}

void need(const void* p, const char* name) {
  if (p == nullptr) throw pmech::InvalidArgument(std::string(name) + " must not be NULL");
}

// Runs write(os) against stdout for "-" or a freshly truncated file.
template <class W>
void with_output(const char* path, W&& write) {
  need(path, "path");
  if (std::strcmp(path, "-") == 0) {
    write(std::cout);
    std::cout.flush();
    if (!std::cout) throw IoFailure("failed writing to standard output");
    return;
  }
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoFailure(std::string("cannot open ") + path + " for writing");
  write(os);
  os.flush();
  if (!os) throw IoFailure(std::string("failed writing ") + path);
}

pmech_symbol* wrap(pmech::Symbol s) { return new pmech_symbol{std::move(s)}; }

pmech::Rational exact(double v, const char* name) {
  if (!std::isfinite(v)) throw pmech::InvalidArgument(std::string(name) + " must be finite");
  return pmech::rational_from_double(v);
}

std::vector<double> sample_times(double t0, double t1, double dt) {
  std::size_t steps = static_cast<std::size_t>(std::ceil((t1 - t0) / dt - 1e-9));
  std::vector<double> out{t0};
  for (std::size_t i = 1; i <= steps; ++i)
    out.push_back(i == steps ? t1 : t0 + static_cast<double>(i) * dt);
  return out;
}

}  // namespace

extern "C" {

const char* pmech_last_error(void) { return g_error.c_str(); }

long pmech_last_error_offset(void) { return g_offset; }

const char* pmech_version(void) { return "1.0.0"; }

pmech_status pmech_symbol_parse(const char* text, size_t n, pmech_symbol** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = wrap(pmech::parse_symbol(text, n));
  });
}

void pmech_symbol_free(pmech_symbol* s) { delete s; }

pmech_status pmech_symbol_star(const pmech_symbol* f, const pmech_symbol* g, pmech_symbol** out) {
  return guarded([&] {
    need(f, "f");
    need(g, "g");
    need(out, "out");
    *out = wrap(pmech::star(f->value, g->value));
  });
}

pmech_status pmech_symbol_pbracket(const pmech_symbol* f, const pmech_symbol* g,
                                   pmech_symbol** out) {
  return guarded([&] {
    need(f, "f");
    need(g, "g");
    need(out, "out");
    *out = wrap(pmech::pbracket(f->value, g->value));
  });
}

pmech_status pmech_symbol_poisson(const pmech_symbol* f, const pmech_symbol* g,
                                  pmech_symbol** out) {
  return guarded([&] {
    need(f, "f");
    need(g, "g");
    need(out, "out");
    *out = wrap(pmech::poisson(f->value, g->value));
  });
}

pmech_status pmech_symbol_to_string(const pmech_symbol* s, char* buf, size_t cap, size_t* needed) {
  return guarded([&] {
    need(s, "symbol");
    std::string text = pmech::to_string(s->value);
    if (needed) *needed = text.size() + 1;
    if (buf == nullptr || cap == 0) {
      if (buf == nullptr && needed == nullptr)
        throw pmech::InvalidArgument("to_string needs a buffer or a size query");
      return;
    }
    std::size_t len = std::min(cap - 1, text.size());
    std::memcpy(buf, text.data(), len);
    buf[len] = '\0';
  });
}

pmech_status pmech_symbol_degree(const pmech_symbol* s, unsigned* out) {
  return guarded([&] {
    need(s, "symbol");
    need(out, "out");
    *out = s->value.degree();
  });
}

pmech_status pmech_symbol_pmechanise(const pmech_symbol* s, pmech_symbol** out) {
  return guarded([&] {
    need(s, "symbol");
    need(out, "out");
    *out = wrap(pmech::pmechanise(s->value));
  });
}

pmech_status pmech_hamiltonian_ho(double m, double omega, pmech_symbol** out) {
  return guarded([&] {
    need(out, "out");
    if (!(m > 0) || !(omega > 0)) throw pmech::InvalidArgument("m and omega must be positive");
    *out = wrap(pmech::hamiltonian_ho(exact(m, "m"), exact(omega, "omega")));
  });
}

pmech_status pmech_ladder(int plus, double m, double omega, pmech_symbol** out) {
  return guarded([&] {
    need(out, "out");
    if (!(m > 0) || !(omega > 0)) throw pmech::InvalidArgument("m and omega must be positive");
    *out = wrap(pmech::ladder(plus ? pmech::LadderKind::Plus : pmech::LadderKind::Minus,
                              exact(m, "m"), exact(omega, "omega")));
  });
}

pmech_status pmech_symbol_evaluate(const pmech_symbol* s, double h, double q, double p,
                                   double* re, double* im) {
  return guarded([&] {
    need(s, "symbol");
    std::vector<double> qv{q}, pv{p};
    auto v = pmech::evaluate(s->value, pmech::PlanckParameter(h), qv, pv);
    if (re) *re = v.real();
    if (im) *im = v.imag();
  });
}

pmech_status pmech_vacuum(double h, double m, double omega, int grid_n, double grid_half_width,
                          pmech_state** out) {
  return guarded([&] {
    need(out, "out");
    if (!(h > 0) || !std::isfinite(h)) throw pmech::InvalidArgument("quantisation requires h > 0");
    if (!(m > 0) || !(omega > 0)) throw pmech::InvalidArgument("m and omega must be positive");
    pmech::PlanckParameter planck(h);
    double width =
        grid_half_width > 0 ? grid_half_width : pmech::default_half_width(planck, m, omega);
    auto grid = pmech::make_grid(grid_n, width);
    *out = new pmech_state{pmech::vacuum(grid, planck, m, omega)};
  });
}

void pmech_state_free(pmech_state* v) { delete v; }

pmech_status pmech_state_apply_symbol(const pmech_state* v, const pmech_symbol* s,
                                      pmech_state** out) {
  return guarded([&] {
    need(v, "state");
    need(s, "symbol");
    need(out, "out");
    auto result = pmech::quantize(s->value, v->value.planck()).apply(v->value);
    result.require_contained("quantised state");
    *out = new pmech_state{std::move(result)};
  });
}

pmech_status pmech_state_expectation(const pmech_state* v, const pmech_symbol* s, double* re,
                                     double* im) {
  return guarded([&] {
    need(v, "state");
    need(s, "symbol");
    auto e = pmech::expectation(s->value, v->value);
    if (re) *re = e.real();
    if (im) *im = e.imag();
  });
}

pmech_status pmech_state_write_csv(const pmech_state* v, const char* path) {
  return guarded([&] {
    need(v, "state");
    with_output(path, [&](std::ostream& os) { pmech::write_state_csv(os, v->value); });
  });
}

pmech_status pmech_eval_coherent(const pmech_symbol* observable, double h, double q0, double p0,
                                 double m, double omega, double* re, double* im) {
  return guarded([&] {
    need(observable, "observable");
    auto k = pmech::coherent_kernel(pmech::PlanckParameter(h), q0, p0, m, omega);
    auto v = pmech::eval_state(k, observable->value);
    if (re) *re = v.real();
    if (im) *im = v.imag();
  });
}

pmech_status pmech_limit_scan_write_csv(const pmech_symbol* observable, double q0, double p0,
                                        double m, double omega, const double* h_list,
                                        size_t count, const char* path, double* fitted_order) {
  return guarded([&] {
    need(observable, "observable");
    if (count > 0) need(h_list, "h_list");
    std::span<const double> hs(h_list, count);
    auto rows = pmech::classical_limit_scan(observable->value, q0, p0, m, omega, hs);
    with_output(path, [&](std::ostream& os) { pmech::write_limit_scan_csv(os, rows); });
    if (fitted_order) *fitted_order = pmech::fitted_error_order(rows);
  });
}

void pmech_evolve_config_init(pmech_evolve_config* cfg) {
  if (cfg == nullptr) return;
  cfg->hamiltonian = PMECH_HAMILTONIAN_HO;
  cfg->m = 1;
  cfg->omega = 1;
  cfg->z0 = 0;
  cfg->drive_omega = 1;
  cfg->t0 = 0;
  cfg->t1 = 1;
  cfg->dt = 1e-3;
  cfg->closed_form = 0;
  cfg->degree_cap = 0;
  cfg->custom = nullptr;
}

pmech_status pmech_evolve(const pmech_symbol* f0, const pmech_evolve_config* cfg,
                          pmech_trajectory** out) {
  return guarded([&] {
    need(f0, "initial symbol");
    need(cfg, "config");
    need(out, "out");
    if (!(cfg->m > 0) || !(cfg->omega > 0))
      throw pmech::InvalidArgument("m and omega must be positive");
    if (!(cfg->dt > 0) || !std::isfinite(cfg->dt)) throw pmech::InvalidArgument("dt must be positive");
    if (!(cfg->t1 >= cfg->t0)) throw pmech::InvalidArgument("t1 must not precede t0");
    bool forced = cfg->hamiltonian == PMECH_HAMILTONIAN_FORCED;
    bool custom = cfg->hamiltonian == PMECH_HAMILTONIAN_SYMBOL;
    if (!forced && !custom && cfg->hamiltonian != PMECH_HAMILTONIAN_HO)
      throw pmech::InvalidArgument("unknown Hamiltonian kind");
    if (custom) {
      need(cfg->custom, "custom Hamiltonian");
      if (cfg->closed_form)
        throw pmech::InvalidArgument("closed-form flows exist only for the ho and forced Hamiltonians");
    }
    pmech::ForceProfile z = forced ? pmech::ForceProfile::periodic(cfg->z0, cfg->drive_omega)
                                   : pmech::ForceProfile::zero();
    const pmech::Symbol& f = f0->value;
    pmech::Trajectory<pmech::Symbol> traj;
    if (cfg->closed_form) {
      traj.times = sample_times(cfg->t0, cfg->t1, cfg->dt);
      for (double t : traj.times)
        traj.payload.push_back(forced ? pmech::forced_flow(f, cfg->t0, t, cfg->m, cfg->omega, z)
                                      : pmech::ho_flow(f, t - cfg->t0, cfg->m, cfg->omega));
    } else {
      pmech::Symbol h0 = pmech::hamiltonian_ho(exact(cfg->m, "m"), exact(cfg->omega, "omega"));
      unsigned cap = cfg->degree_cap ? cfg->degree_cap : f.degree();
      if (custom) {
        traj = pmech::integrate_bracket_ode(f, cfg->custom->value, cfg->t0, cfg->t1, cfg->dt, cap);
      } else if (forced) {
        pmech::Symbol q = pmech::Symbol::q(1);
        pmech::TimeHamiltonian h = [&](double t) {
          return h0 - pmech::product(pmech::Symbol::constant(1, pmech::CRational(exact(z(t), "z"))), q);
        };
        traj = pmech::integrate_bracket_ode(f, h, cfg->t0, cfg->t1, cfg->dt, cap);
      } else {
        traj = pmech::integrate_bracket_ode(f, h0, cfg->t0, cfg->t1, cfg->dt, cap);
      }
    }
    *out = new pmech_trajectory{std::move(traj)};
  });
}

void pmech_trajectory_free(pmech_trajectory* t) { delete t; }

size_t pmech_trajectory_length(const pmech_trajectory* t) {
  return t ? t->value.times.size() : 0;
}

pmech_status pmech_trajectory_at(const pmech_trajectory* t, size_t i, double* time,
                                 pmech_symbol** out) {
  return guarded([&] {
    need(t, "trajectory");
    if (i >= t->value.times.size()) throw pmech::InvalidArgument("trajectory index out of range");
    if (time) *time = t->value.times[i];
    if (out) *out = wrap(t->value.payload[i]);
  });
}

pmech_status pmech_trajectory_write_csv(const pmech_trajectory* t, const char* path) {
  return guarded([&] {
    need(t, "trajectory");
    with_output(path, [&](std::ostream& os) { pmech::write_trajectory_csv(os, t->value); });
  });
}

pmech_status pmech_trajectory_max_difference(const pmech_trajectory* a, const pmech_trajectory* b,
                                             double* out) {
  return guarded([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    *out = pmech::max_coefficient_difference(a->value, b->value);
  });
}

pmech_status pmech_resonance_write(double drive_omega, double omega, double z0, double t_max,
                                   size_t samples, const char* csv_path, const char* svg_path) {
  return guarded([&] {
    auto rows = pmech::resonance_amplitude(drive_omega, omega, z0, t_max, samples);
    with_output(csv_path, [&](std::ostream& os) { pmech::write_resonance_csv(os, rows); });
    if (svg_path != nullptr) {
      std::string title = "envelope, Omega = " + pmech::format_double(drive_omega) +
                          ", omega = " + pmech::format_double(omega) +
                          ", Z0 = " + pmech::format_double(z0);
      with_output(svg_path,
                  [&](std::ostream& os) { pmech::write_resonance_svg(os, rows, title); });
    }
  });
}

}  // extern "C"
