#ifndef CG_H
#define CG_H

/* C interface to the cantor-groups calculus.  All state lives behind an
 * opaque session handle; every entry point returns a status code and hands
 * results back as malloc'd strings released with cg_string_free. */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct cg_session cg_session;

typedef enum cg_status {
  CG_OK = 0,
  CG_ERR_ALPHABET = 1,
  CG_ERR_OVERLAP = 2,
  CG_ERR_GAP = 3,
  CG_ERR_INDEX = 4,
  CG_ERR_SIZE_MISMATCH = 5,
  CG_ERR_NOT_A_GROUP = 6,
  CG_ERR_NOT_FULL = 7,
  CG_ERR_ACTION_MISMATCH = 8,
  CG_ERR_ORACLE_MISMATCH = 9,
  CG_ERR_CONTAINMENT = 10,
  CG_ERR_SHIFT_ZERO_IDENTITY = 11,
  CG_ERR_EMPTY_TARGET = 12,
  CG_ERR_WORD_TOO_LONG = 13,
  CG_ERR_PARSE = 14,
  CG_ERR_UNKNOWN_SUITE = 15,
  CG_ERR_UNKNOWN = 16,
  CG_ERR_INTERNAL = 17,
  /* The command ran and produced a report, but reported failure (a failing
   * selftest property, or an error report in the output). */
  CG_ERR_COMMAND_FAILED = 100,
  CG_ERR_BAD_ARGUMENT = 101
} cg_status;

/* Library version, a static string. */
const char* cg_version(void);

/* Creates a session.  oracle names: trivial, z<N>, s3, f<N>, z^<N>,
 * cayley:<file> (relative paths resolve against CG_ORACLE_PATH).  action
 * names: translation, trivial:<N>, regular:<oracle>.  action may be NULL
 * for the default (translation).  json selects JSON reports. */
cg_status cg_session_new(const char* oracle, const char* action, int json,
                         uint64_t seed, cg_session** out);
void cg_session_free(cg_session* s);

/* Message of the last failed call on this session; valid until the next
 * call.  Empty string when no error occurred. */
const char* cg_last_error(const cg_session* s);

/* Commands.  On CG_OK and CG_ERR_COMMAND_FAILED, *out receives the report
 * (plain text or JSON per the session); other statuses leave *out NULL and
 * set cg_last_error. */
cg_status cg_eval(cg_session* s, const char* expr, char** out);
cg_status cg_act(cg_session* s, const char* expr, const char* point,
                 char** out);
cg_status cg_order(cg_session* s, const char* expr, unsigned max, char** out);
cg_status cg_center(cg_session* s, const char* expr, char** out);
cg_status cg_witness(cg_session* s, const char* u, const char* v, char** out);
cg_status cg_selftest(cg_session* s, const char* suite, unsigned n,
                      char** out);

void cg_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
