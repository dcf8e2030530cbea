#ifndef ENTCLONE_H
#define ENTCLONE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>

typedef enum EcBellKind {
  EC_BELL_KIND_PSI_MINUS = 0,
  EC_BELL_KIND_PSI_PLUS = 1,
  EC_BELL_KIND_PHI_MINUS = 2,
  EC_BELL_KIND_PHI_PLUS = 3,
} EcBellKind;

typedef enum EcScheme {
  EC_SCHEME_PURE = 0,
  EC_SCHEME_LOCAL = 1,
  EC_SCHEME_NON_LOCAL = 2,
} EcScheme;

typedef enum EcStatus {
  EC_STATUS_OK = 0,
  EC_STATUS_NULL_POINTER = 1,
  EC_STATUS_INVALID_ARGUMENT = 2,
  EC_STATUS_NOT_HERMITIAN = 3,
  EC_STATUS_BAD_TRACE = 4,
  EC_STATUS_NOT_PSD = 5,
  EC_STATUS_BAD_DIMENSION = 6,
  EC_STATUS_NO_CONVERGENCE = 7,
  EC_STATUS_PARSE = 8,
  EC_STATUS_INTERNAL = 9,
  EC_STATUS_PANIC = 10,
} EcStatus;

/*
 Opaque validated density matrix.
 */
typedef struct EcDensity EcDensity;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Library version as a static NUL-terminated string.
 */
const char *ec_version(void);

/*
 Message for the last failed call on this thread; empty after a success.
 Valid until the next `ec_*` call on the same thread.
 */
const char *ec_last_error_message(void);

/*
 Projector onto a Bell-basis state with amplitude `alpha` in [0, 1].
 */
enum EcStatus ec_density_bell(enum EcBellKind kind, double alpha, struct EcDensity **out);

/*
 Validates a `dim`×`dim` row-major matrix given as separate real and
 imaginary parts. `im` may be null for a real matrix.
 */
enum EcStatus ec_density_from_entries(uintptr_t dim,
                                      const double *re,
                                      const double *im,
                                      struct EcDensity **out);

/*
 Parses `{ "dim": d, "re": [[..]], "im": [[..]] }` and validates it.
 */
enum EcStatus ec_density_from_json(const char *json, struct EcDensity **out);

/*
 Serializes a state to the JSON file format. Free with `ec_string_free`.
 Returns null on a null handle.
 */
char *ec_density_to_json(const struct EcDensity *h);

void ec_density_free(struct EcDensity *h);

void ec_string_free(char *s);

/*
 Matrix dimension, or 0 for a null handle.
 */
uintptr_t ec_density_dim(const struct EcDensity *h);

/*
 Copies the row-major entries into `re` and `im`, each of length `len`
 (at least dim²).
 */
enum EcStatus ec_density_entries(const struct EcDensity *h, double *re, double *im, uintptr_t len);

/*
 Applies `steps` cloning steps of `scheme` (local or non-local) to a
 two-qubit state. `steps == 0` returns a copy. `EC_SCHEME_PURE` is
 rejected unless `steps == 0`.
 */
enum EcStatus ec_clone(const struct EcDensity *h,
                       enum EcScheme scheme,
                       uintptr_t steps,
                       struct EcDensity **out);

enum EcStatus ec_min_pt_eigenvalue(const struct EcDensity *h, double *out);

enum EcStatus ec_concurrence(const struct EcDensity *h, double *out);

enum EcStatus ec_entanglement_of_formation(const struct EcDensity *h, double *out);

/*
 Closed-form maximal CHSH value.
 */
enum EcStatus ec_bmax(const struct EcDensity *h, double *out);

/*
 Maximal CHSH value by seeded random-restart search.
 */
enum EcStatus ec_bmax_numeric(const struct EcDensity *h,
                              uintptr_t restarts,
                              uint64_t seed,
                              double *out);

/*
 CHSH value for the coplanar π/4 measurement configuration.
 */
enum EcStatus ec_chsh_pi4(const struct EcDensity *h, double *out);

/*
 α² endpoints of the range where the scheme's output on |Ψ⁻(α)⟩ is
 entangled, located to within `tol`.
 */
enum EcStatus ec_entanglement_interval(enum EcScheme scheme, double tol, double *low, double *high);

/*
 EoF of the singlet after 0..=steps non-local cloning steps, written to
 `out[0..=steps]`; `len` must be at least `steps + 1`.
 */
enum EcStatus ec_table1(uintptr_t steps, double *out, uintptr_t len);

/*
 Sweep CSV (same bytes as the `sweep` subcommand) over `grid` points.
 Free with `ec_string_free`. Returns null on failure.
 */
char *ec_sweep_csv(enum EcScheme scheme, uintptr_t grid, uintptr_t iterations);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ENTCLONE_H */
