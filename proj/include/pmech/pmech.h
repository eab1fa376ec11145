#ifndef PMECH_PMECH_H
#define PMECH_PMECH_H

#include <stddef.h>

#if defined(PMECH_BUILDING_LIBRARY)
#define PMECH_API __attribute__((visibility("default")))
#else
#define PMECH_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pmech_status {
  PMECH_OK = 0,
  PMECH_ERR_ARGUMENT = 1,
  PMECH_ERR_PARSE = 2,
  PMECH_ERR_PRECONDITION = 3,
  PMECH_ERR_CLOSURE = 4,
  PMECH_ERR_DIMENSION = 5,
  PMECH_ERR_IO = 6,
  PMECH_ERR_INTERNAL = 7
} pmech_status;

typedef struct pmech_symbol pmech_symbol;
typedef struct pmech_state pmech_state;
typedef struct pmech_trajectory pmech_trajectory;

/* Message of the most recent failure on the calling thread ("" after success). */
PMECH_API const char* pmech_last_error(void);
/* Character offset of the most recent parse error, or -1. */
PMECH_API long pmech_last_error_offset(void);
PMECH_API const char* pmech_version(void);

/* Symbols. Every returned handle is owned by the caller. n is the number of degrees of freedom. */
PMECH_API pmech_status pmech_symbol_parse(const char* text, size_t n, pmech_symbol** out);
PMECH_API void pmech_symbol_free(pmech_symbol* s);
PMECH_API pmech_status pmech_symbol_star(const pmech_symbol* f, const pmech_symbol* g,
                                         pmech_symbol** out);
PMECH_API pmech_status pmech_symbol_pbracket(const pmech_symbol* f, const pmech_symbol* g,
                                             pmech_symbol** out);
PMECH_API pmech_status pmech_symbol_poisson(const pmech_symbol* f, const pmech_symbol* g,
                                            pmech_symbol** out);
/* Writes at most cap bytes including the terminator; *needed receives the full size. */
PMECH_API pmech_status pmech_symbol_to_string(const pmech_symbol* s, char* buf, size_t cap,
                                              size_t* needed);
PMECH_API pmech_status pmech_symbol_degree(const pmech_symbol* s, unsigned* out);
/* Marks a parsed classical polynomial as an observable; rejects hbar. */
PMECH_API pmech_status pmech_symbol_pmechanise(const pmech_symbol* s, pmech_symbol** out);
PMECH_API pmech_status pmech_hamiltonian_ho(double m, double omega, pmech_symbol** out);
PMECH_API pmech_status pmech_ladder(int plus, double m, double omega, pmech_symbol** out);
/* n = 1 only. */
PMECH_API pmech_status pmech_symbol_evaluate(const pmech_symbol* s, double h, double q, double p,
                                             double* re, double* im);

/* Grid states. grid_half_width <= 0 selects the default width. */
PMECH_API pmech_status pmech_vacuum(double h, double m, double omega, int grid_n,
                                    double grid_half_width, pmech_state** out);
PMECH_API void pmech_state_free(pmech_state* v);
/* Weyl quantisation of s applied to v; fails if the result leaves the grid. */
PMECH_API pmech_status pmech_state_apply_symbol(const pmech_state* v, const pmech_symbol* s,
                                                pmech_state** out);
PMECH_API pmech_status pmech_state_expectation(const pmech_state* v, const pmech_symbol* s,
                                               double* re, double* im);
/* Path "-" writes to standard output. */
PMECH_API pmech_status pmech_state_write_csv(const pmech_state* v, const char* path);

/* Coherent kernel pairing; h = 0 gives the classical value. */
PMECH_API pmech_status pmech_eval_coherent(const pmech_symbol* observable, double h, double q0,
                                           double p0, double m, double omega, double* re,
                                           double* im);
/* fitted_order may be NULL; it receives NaN when the fit is undefined. */
PMECH_API pmech_status pmech_limit_scan_write_csv(const pmech_symbol* observable, double q0,
                                                  double p0, double m, double omega,
                                                  const double* h_list, size_t count,
                                                  const char* path, double* fitted_order);

typedef enum pmech_hamiltonian_kind {
  PMECH_HAMILTONIAN_HO = 0,
  PMECH_HAMILTONIAN_FORCED = 1,
  PMECH_HAMILTONIAN_SYMBOL = 2 /* time-independent, taken from `custom`; RK4 only */
} pmech_hamiltonian_kind;

typedef struct pmech_evolve_config {
  pmech_hamiltonian_kind hamiltonian;
  double m;
  double omega;
  double z0;          /* forced only: z(t) = z0 cos(drive_omega t) */
  double drive_omega; /* forced only */
  double t0;
  double t1;
  double dt;
  int closed_form;     /* nonzero: sample the exact flow instead of RK4 */
  unsigned degree_cap; /* 0: degree of the initial symbol */
  const pmech_symbol* custom;
} pmech_evolve_config;

PMECH_API void pmech_evolve_config_init(pmech_evolve_config* cfg);
PMECH_API pmech_status pmech_evolve(const pmech_symbol* f0, const pmech_evolve_config* cfg,
                                    pmech_trajectory** out);
PMECH_API void pmech_trajectory_free(pmech_trajectory* t);
PMECH_API size_t pmech_trajectory_length(const pmech_trajectory* t);
/* Symbol at sample i; owned by the caller. */
PMECH_API pmech_status pmech_trajectory_at(const pmech_trajectory* t, size_t i, double* time,
                                           pmech_symbol** out);
PMECH_API pmech_status pmech_trajectory_write_csv(const pmech_trajectory* t, const char* path);
PMECH_API pmech_status pmech_trajectory_max_difference(const pmech_trajectory* a,
                                                       const pmech_trajectory* b, double* out);

/* Envelope table for z = z0 cos(drive_omega t); svg_path may be NULL. */
PMECH_API pmech_status pmech_resonance_write(double drive_omega, double omega, double z0,
                                             double t_max, size_t samples, const char* csv_path,
                                             const char* svg_path);

#ifdef __cplusplus
}
#endif

#endif
