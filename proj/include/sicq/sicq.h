/* C interface to the sicq library.
 *
 * Objects are opaque handles created by the constructor-style calls and
 * released with the matching *_free. Every fallible call returns a
 * sicq_status; on failure sicq_last_error() describes the problem for the
 * calling thread. JSON documents handed back through char** are owned by the
 * caller and released with sicq_string_free. Probability vectors travel as
 * plain double arrays.
 */
#ifndef SICQ_SICQ_H
#define SICQ_SICQ_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SICQ_API __declspec(dllexport)
#else
#define SICQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sicq_status {
  SICQ_OK = 0,
  SICQ_ERR_ARGUMENT = 1,     /* null pointer, bad enum, buffer too small */
  SICQ_ERR_PARSE = 2,        /* malformed JSON; see sicq_last_error_offset */
  SICQ_ERR_DIMENSION = 3,
  SICQ_ERR_VALIDATION = 4,
  SICQ_ERR_UNSUPPORTED = 5,
  SICQ_ERR_PRECONDITION = 6,
  SICQ_ERR_URUNGLEICHUNG = 7,
  SICQ_ERR_SEARCH_FAILED = 8,
  SICQ_ERR_INTERNAL = 9
} sicq_status;

typedef enum sicq_search_mode { SICQ_SEARCH_EXACT = 0, SICQ_SEARCH_WEYL_HEISENBERG = 1 } sicq_search_mode;

/* Selfcheck outcome. */
enum { SICQ_CHECK_PASS = 0, SICQ_CHECK_FAIL = 1, SICQ_CHECK_SKIP = 2 };

typedef struct sicq_frame sicq_frame;
typedef struct sicq_mub sicq_mub;
typedef struct sicq_operator sicq_operator;
typedef struct sicq_povm sicq_povm;

SICQ_API const char* sicq_version(void);
SICQ_API const char* sicq_last_error(void);
SICQ_API size_t sicq_last_error_offset(void);
/* Best residual of the last failed search on this thread. */
SICQ_API double sicq_last_search_residual(void);
SICQ_API void sicq_string_free(char* s);

/* Frames */
SICQ_API sicq_status sicq_frame_known(size_t dim, sicq_frame** out);
SICQ_API sicq_status sicq_frame_search(size_t dim, const uint64_t* seeds, size_t n_seeds, size_t max_iters,
                                       double target_residual, sicq_search_mode mode, unsigned threads,
                                       sicq_frame** out);
SICQ_API sicq_status sicq_frame_from_json(const char* json, sicq_frame** out);
SICQ_API sicq_status sicq_frame_to_json(const sicq_frame* frame, char** out);
SICQ_API void sicq_frame_free(sicq_frame* frame);
SICQ_API size_t sicq_frame_dim(const sicq_frame* frame);
SICQ_API double sicq_frame_working_tolerance(const sicq_frame* frame);
SICQ_API sicq_status sicq_frame_verify(const sicq_frame* frame, double tol, char** report, int* pass);

SICQ_API sicq_status sicq_mub_build(size_t dim, sicq_mub** out);
SICQ_API sicq_status sicq_mub_to_json(const sicq_mub* mub, char** out);
SICQ_API void sicq_mub_free(sicq_mub* mub);
SICQ_API sicq_status sicq_mub_depolarize_check(const sicq_mub* mub, const sicq_operator* x, double* deviation);

SICQ_API sicq_status sicq_real_feasibility(size_t dim, char** report);

/* Operators and measurements, JSON as {"dim", "matrix"} and {"dim", "effects"}. */
SICQ_API sicq_status sicq_operator_from_json(const char* json, sicq_operator** out);
SICQ_API void sicq_operator_free(sicq_operator* op);
SICQ_API size_t sicq_operator_dim(const sicq_operator* op);
SICQ_API sicq_status sicq_povm_from_json(const char* json, double tol, sicq_povm** out);
SICQ_API void sicq_povm_free(sicq_povm* povm);
SICQ_API size_t sicq_povm_size(const sicq_povm* povm);

/* State <-> probability. out must hold d^2 doubles. */
SICQ_API sicq_status sicq_state_to_prob(const sicq_frame* frame, const sicq_operator* rho, double tol, double* out,
                                        size_t out_len);
SICQ_API sicq_status sicq_prob_to_rho(const sicq_frame* frame, const double* p, size_t n, double tol, char** out);
SICQ_API sicq_status sicq_state_validate(const sicq_frame* frame, const double* p, size_t n, double tol, char** report,
                                         int* valid);
SICQ_API sicq_status sicq_state_purity(const sicq_frame* frame, const double* p, size_t n, double tol, char** report,
                                       int* pure);
SICQ_API sicq_status sicq_sic_inner(const double* p, const double* q, size_t n, size_t dim, double* out);

/* q from the urgleichung for measurement povm on state rho; with compare the
 * report also carries the direct Born values and the largest deviation. */
SICQ_API sicq_status sicq_born(const sicq_frame* frame, const sicq_operator* rho, const sicq_povm* povm, double tol,
                               int compare, char** report);
/* Unitary evolution of p; out must hold d^2 doubles. */
SICQ_API sicq_status sicq_evolve(const sicq_frame* frame, const sicq_operator* unitary, const double* p, size_t n,
                                 double tol, double* out, size_t out_len);

SICQ_API sicq_status sicq_geometry_report(size_t dim, char** report);
SICQ_API sicq_status sicq_geometry_sweep(const sicq_frame* frame, size_t samples, uint64_t seed, unsigned threads,
                                         char** report);
SICQ_API sicq_status sicq_solve_general(int64_t m, char** report);

/* frame_json may be NULL. overall receives one of SICQ_CHECK_*. */
SICQ_API sicq_status sicq_selfcheck(const size_t* dims, size_t n_dims, const char* frame_json, uint64_t seed,
                                    unsigned threads, char** report, int* overall);

#ifdef __cplusplus
}
#endif

#endif /* SICQ_SICQ_H */
