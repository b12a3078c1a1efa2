#ifndef MORPHKIT_H
#define MORPHKIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Which inclusion relation to decide.
 */
typedef enum MkRelation {
  MkRelation_Strict = 0,
  MkRelation_Weak = 1,
} MkRelation;

/**
 * Status code returned by every fallible call.
 */
typedef enum MkStatus {
  MkStatus_Ok = 0,
  MkStatus_NullPointer = 1,
  MkStatus_InvalidUtf8 = 2,
  MkStatus_ParseError = 3,
  MkStatus_InvalidInput = 4,
  MkStatus_InternalError = 5,
} MkStatus;

typedef struct MkPixelSet MkPixelSet;

typedef struct MkStructuringElement MkStructuringElement;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a dot diagram with an `o` origin marker into a structuring-element
 * handle.
 *
 * # Safety
 * `text` must be a valid NUL-terminated C string and `out` a valid pointer.
 */
enum MkStatus mk_se_parse(const char *text, struct MkStructuringElement **out);

/**
 * Releases a structuring-element handle. Null is ignored.
 *
 * # Safety
 * `ptr` must come from `mk_se_parse` and not be freed twice.
 */
void mk_se_free(struct MkStructuringElement *ptr);

/**
 * Parses a dot diagram (origin marker optional) into a pixel-set handle.
 *
 * # Safety
 * `text` must be a valid NUL-terminated C string and `out` a valid pointer.
 */
enum MkStatus mk_pixels_parse(const char *text, struct MkPixelSet **out);

/**
 * Releases a pixel-set handle. Null is ignored.
 *
 * # Safety
 * `ptr` must come from `mk_pixels_parse` and not be freed twice.
 */
void mk_pixels_free(struct MkPixelSet *ptr);

/**
 * Decides the chosen relation for `B1` against `B2` relative to `P` and
 * writes the JSON report to `out_json`.
 *
 * # Safety
 * All handles must be live; `out_json` must be a valid pointer.
 */
enum MkStatus mk_check(const struct MkStructuringElement *b1,
                       const struct MkStructuringElement *b2,
                       const struct MkPixelSet *p,
                       enum MkRelation relation,
                       char **out_json);

/**
 * Decides the chosen relation on the whole lattice and writes the JSON
 * report to `out_json`.
 *
 * # Safety
 * All handles must be live; `out_json` must be a valid pointer.
 */
enum MkStatus mk_check_whole_space(const struct MkStructuringElement *b1,
                                   const struct MkStructuringElement *b2,
                                   enum MkRelation relation,
                                   char **out_json);

/**
 * Releases a string returned by a check function. Null is ignored.
 *
 * # Safety
 * `ptr` must come from this library and not be freed twice.
 */
void mk_string_free(char *ptr);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MORPHKIT_H */
