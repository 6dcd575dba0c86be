#ifndef CMFIELD_H
#define CMFIELD_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CmfFieldType {
  CMF_FIELD_TYPE_CM_FIELD = 0,
  CMF_FIELD_TYPE_CM_TYPE_NOT_CM = 1,
  CMF_FIELD_TYPE_TR_TYPE = 2,
} CmfFieldType;

typedef enum CmfStatus {
  CMF_STATUS_OK = 0,
  CMF_STATUS_NULL_POINTER = 1,
  CMF_STATUS_INVALID_UTF8 = 2,
  CMF_STATUS_PARSE = 3,
  CMF_STATUS_DOMAIN = 4,
  CMF_STATUS_PANIC = 5,
} CmfStatus;

/**
 * The classification of a quartic or sextic field.
 */
typedef struct CmfClassification CmfClassification;

/**
 * An integer polynomial.
 */
typedef struct CmfPolynomial CmfPolynomial;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null after a success. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *cmf_last_error(void);

/**
 * Library version as a static string.
 */
const char *cmf_version(void);

/**
 * Parses `x^4 - x + 1` style text or comma-separated ascending coefficients.
 *
 * # Safety
 * `text` must be a valid C string and `out_poly` a writable pointer.
 */
enum CmfStatus cmf_polynomial_parse(const char *text, struct CmfPolynomial **out_poly);

/**
 * # Safety
 * `poly` must come from [`cmf_polynomial_parse`] and not be freed twice. Null is ignored.
 */
void cmf_polynomial_free(struct CmfPolynomial *poly);

/**
 * Degree of a polynomial.
 *
 * # Safety
 * `poly` must be a live handle and `degree` writable.
 */
enum CmfStatus cmf_polynomial_degree(const struct CmfPolynomial *poly, size_t *degree);

/**
 * Signature `(r1, r2)` of a squarefree polynomial.
 *
 * # Safety
 * `poly` must be a live handle; `r1` and `r2` writable.
 */
enum CmfStatus cmf_signature(const struct CmfPolynomial *poly, size_t *r1, size_t *r2);

/**
 * Classifies the field defined by an irreducible quartic or sextic.
 *
 * # Safety
 * `poly` must be a live handle and `out_result` writable.
 */
enum CmfStatus cmf_classify(const struct CmfPolynomial *poly,
                            struct CmfClassification **out_result);

/**
 * # Safety
 * `result` must come from [`cmf_classify`] and not be freed twice. Null is ignored.
 */
void cmf_classification_free(struct CmfClassification *result);

/**
 * # Safety
 * `result` must be a live handle and `field_type` writable.
 */
enum CmfStatus cmf_classification_type(const struct CmfClassification *result,
                                       enum CmfFieldType *field_type);

/**
 * Galois group as the transitive label `degree`T`index`.
 *
 * # Safety
 * `result` must be a live handle; `degree` and `index` writable.
 */
enum CmfStatus cmf_classification_galois(const struct CmfClassification *result,
                                         size_t *degree,
                                         size_t *index);

/**
 * The full result as JSON. Release the string with [`cmf_string_free`].
 *
 * # Safety
 * `result` must be a live handle and `json` writable.
 */
enum CmfStatus cmf_classification_json(const struct CmfClassification *result, char **json);

/**
 * # Safety
 * `s` must come from this library and not be freed twice. Null is ignored.
 */
void cmf_string_free(char *s);

/**
 * Posterior proportions of S4 (TR-type) and D4 (CM-type) among totally imaginary
 * quartic fields. The four densities are decimal strings; null selects the published
 * value for that slot.
 *
 * # Safety
 * Each string argument must be null or a valid C string; the outputs must be writable.
 */
enum CmfStatus cmf_bayes(const char *p_d4,
                         const char *p_s4,
                         const char *p_ti_given_s4,
                         const char *p_ti_given_d4,
                         double *p_s4_given_ti,
                         double *p_cm);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CMFIELD_H */
