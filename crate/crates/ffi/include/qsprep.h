#ifndef QSPREP_H
#define QSPREP_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum QsprepStatus {
  QSPREP_STATUS_OK = 0,
  QSPREP_STATUS_NULL_POINTER = 1,
  QSPREP_STATUS_INVALID_ARGUMENT = 2,
  QSPREP_STATUS_VALIDATION = 3,
  QSPREP_STATUS_CAPACITY = 4,
  QSPREP_STATUS_COMPILE = 5,
  QSPREP_STATUS_PARSE = 6,
  QSPREP_STATUS_IO = 7,
  QSPREP_STATUS_DEGENERATE = 8,
  QSPREP_STATUS_PANIC = 9,
} QsprepStatus;

/**
 * Quantized alias table.
 */
typedef struct QsprepAliasTable QsprepAliasTable;

/**
 * Logical or compiled circuit.
 */
typedef struct QsprepCircuit QsprepCircuit;

/**
 * Target state with real amplitudes.
 */
typedef struct QsprepState QsprepState;

/**
 * Resource counts of a circuit.
 */
typedef struct QsprepCounts {
  uint64_t qubits;
  uint64_t total_gates;
  uint64_t n_t;
  uint64_t n_tdg;
  uint64_t n_ccx;
  /**
   * T + Tdg + 4 per Toffoli-equivalent.
   */
  uint64_t t_proxy;
  /**
   * Literal T and Tdg gates.
   */
  uint64_t compiled_t;
} QsprepCounts;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static nul-terminated string.
 */
const char *qsprep_version(void);

/**
 * Copies the calling thread's last error message into `buf` (truncated and
 * nul-terminated) and returns the full message length, 0 if there is none.
 *
 * # Safety
 * `buf` must be null or valid for `len` bytes.
 */
size_t qsprep_last_error(char *buf, size_t len);

/**
 * Frees a string returned by this library.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void qsprep_string_free(char *s);

/**
 * Builds a state from `2^num_qubits` real amplitudes (little-endian indices);
 * the vector must be normalized within `1e-10`.
 *
 * # Safety
 * `amps` must be valid for `len` doubles and `out` writable.
 */
enum QsprepStatus qsprep_state_from_amplitudes(const double *amps,
                                               size_t len,
                                               struct QsprepState **out);

/**
 * Generates a benchmark state; `family` uses the command-line names
 * (`w`, `dicke`, `magnus`, `thc_file:PATH`, ...).
 *
 * # Safety
 * `family` must be a nul-terminated string and `out` writable.
 */
enum QsprepStatus qsprep_state_generate(const char *family,
                                        size_t n,
                                        size_t k,
                                        uint64_t seed,
                                        struct QsprepState **out);

/**
 * # Safety
 * `state` must be null or a live handle from this library.
 */
size_t qsprep_state_num_qubits(const struct QsprepState *state);

/**
 * # Safety
 * `state` must be null or a live handle from this library.
 */
size_t qsprep_state_support(const struct QsprepState *state);

/**
 * # Safety
 * `state` must be null or an unfreed handle from this library.
 */
void qsprep_state_free(struct QsprepState *state);

/**
 * Logical circuit for `state` with `method` (`dense`, `sparse`, `qrom`,
 * `selectswap`); `bits` is the alias-table width for sampling methods.
 *
 * # Safety
 * Pointers must be valid as documented for the other calls.
 */
enum QsprepStatus qsprep_synthesize(const struct QsprepState *state,
                                    const char *method,
                                    uint32_t bits,
                                    struct QsprepCircuit **out);

/**
 * Lowers a circuit to Clifford+T at tolerance `2^-bits`. `mode` is `gidney`
 * or `textbook`; a nonzero `cost_model` leaves non-exact rotations as
 * placeholders instead of synthesizing them.
 *
 * # Safety
 * Pointers must be valid as documented for the other calls.
 */
enum QsprepStatus qsprep_compile(const struct QsprepCircuit *circuit,
                                 uint32_t bits,
                                 const char *mode,
                                 bool cost_model,
                                 struct QsprepCircuit **out);

/**
 * # Safety
 * `text` must be a nul-terminated string and `out` writable.
 */
enum QsprepStatus qsprep_circuit_from_text(const char *text, struct QsprepCircuit **out);

/**
 * Serializes a circuit; free the result with [`qsprep_string_free`].
 *
 * # Safety
 * `circuit` must be a live handle and `out` writable.
 */
enum QsprepStatus qsprep_circuit_to_text(const struct QsprepCircuit *circuit, char **out);

/**
 * # Safety
 * `circuit` must be a live handle and `out` writable.
 */
enum QsprepStatus qsprep_circuit_counts(const struct QsprepCircuit *circuit,
                                        struct QsprepCounts *out);

/**
 * `|<state|C|0>|^2` by dense simulation, failing with `QSPREP_STATUS_CAPACITY`
 * above `budget_qubits`.
 *
 * # Safety
 * Handles must be live and `out` writable.
 */
enum QsprepStatus qsprep_state_fidelity(const struct QsprepCircuit *circuit,
                                        const struct QsprepState *state,
                                        size_t budget_qubits,
                                        double *out);

/**
 * # Safety
 * `circuit` must be null or a live handle.
 */
size_t qsprep_circuit_num_qubits(const struct QsprepCircuit *circuit);

/**
 * # Safety
 * `circuit` must be null or an unfreed handle.
 */
void qsprep_circuit_free(struct QsprepCircuit *circuit);

/**
 * Alias table for `len` probabilities quantized to `bits` bits.
 *
 * # Safety
 * `probs` must be valid for `len` doubles and `out` writable.
 */
enum QsprepStatus qsprep_alias_table_build(const double *probs,
                                           size_t len,
                                           uint32_t bits,
                                           struct QsprepAliasTable **out);

/**
 * Padded table length (a power of two).
 *
 * # Safety
 * `table` must be null or a live handle.
 */
size_t qsprep_alias_table_len(const struct QsprepAliasTable *table);

/**
 * Writes the realized address distribution into `out[0..len]`; `len` must
 * equal [`qsprep_alias_table_len`].
 *
 * # Safety
 * `table` must be live and `out` valid for `len` doubles.
 */
enum QsprepStatus qsprep_alias_table_marginal(const struct QsprepAliasTable *table,
                                              double *out,
                                              size_t len);

/**
 * # Safety
 * `table` must be null or an unfreed handle.
 */
void qsprep_alias_table_free(struct QsprepAliasTable *table);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QSPREP_H */
