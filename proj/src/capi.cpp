#include "cg.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "cg/error.hpp"
#include "cg/parse.hpp"
#include "cg/selftest.hpp"

struct cg_session {
  cg::Session session;
  std::string last_error;
};

namespace {

cg_status status_of(cg::ErrorKind kind) {
  switch (kind) {
    case cg::ErrorKind::Alphabet: return CG_ERR_ALPHABET;
    case cg::ErrorKind::Overlap: return CG_ERR_OVERLAP;
    case cg::ErrorKind::Gap: return CG_ERR_GAP;
    case cg::ErrorKind::Index: return CG_ERR_INDEX;
    case cg::ErrorKind::SizeMismatch: return CG_ERR_SIZE_MISMATCH;
    case cg::ErrorKind::NotAGroup: return CG_ERR_NOT_A_GROUP;
    case cg::ErrorKind::NotFull: return CG_ERR_NOT_FULL;
    case cg::ErrorKind::ActionMismatch: return CG_ERR_ACTION_MISMATCH;
    case cg::ErrorKind::OracleMismatch: return CG_ERR_ORACLE_MISMATCH;
    case cg::ErrorKind::Containment: return CG_ERR_CONTAINMENT;
    case cg::ErrorKind::ShiftZeroIdentity: return CG_ERR_SHIFT_ZERO_IDENTITY;
    case cg::ErrorKind::EmptyTarget: return CG_ERR_EMPTY_TARGET;
    case cg::ErrorKind::WordTooLong: return CG_ERR_WORD_TOO_LONG;
    case cg::ErrorKind::Parse: return CG_ERR_PARSE;
    case cg::ErrorKind::UnknownSuite: return CG_ERR_UNKNOWN_SUITE;
    case cg::ErrorKind::Unknown: return CG_ERR_UNKNOWN;
    case cg::ErrorKind::Internal: return CG_ERR_INTERNAL;
  }
  return CG_ERR_INTERNAL;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs a command body, converting the CommandResult/throw protocol into the
// status-code protocol.
template <typename Fn>
cg_status run_command(cg_session* s, char** out, Fn&& fn) {
  if (!s || !out) return CG_ERR_BAD_ARGUMENT;
  *out = nullptr;
  s->last_error.clear();
  try {
    cg::CommandResult r = fn();
    *out = dup_string(r.output);
    if (!*out) {
      s->last_error = "out of memory";
      return CG_ERR_INTERNAL;
    }
    if (!r.ok) {
      s->last_error = r.output;
      return CG_ERR_COMMAND_FAILED;
    }
    return CG_OK;
  } catch (const cg::Error& err) {
    s->last_error = err.what();
    return status_of(err.kind());
  } catch (const std::bad_alloc&) {
    s->last_error = "out of memory";
    return CG_ERR_INTERNAL;
  } catch (const std::exception& ex) {
    s->last_error = ex.what();
    return CG_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

const char* cg_version(void) { return "cg 1.0.0 (schema 1)"; }

cg_status cg_session_new(const char* oracle, const char* action, int json,
                         uint64_t seed, cg_session** out) {
  if (!oracle || !out) return CG_ERR_BAD_ARGUMENT;
  *out = nullptr;
  try {
    auto s = std::make_unique<cg_session>();
    s->session.oracle = cg::oracle_by_name(oracle);
    s->session.action =
        action ? cg::action_by_name(action) : cg::action_translation_z();
    s->session.json = json != 0;
    s->session.seed = seed;
    *out = s.release();
    return CG_OK;
  } catch (const cg::Error& err) {
    return status_of(err.kind());
  } catch (const std::exception&) {
    return CG_ERR_INTERNAL;
  }
}

void cg_session_free(cg_session* s) { delete s; }

const char* cg_last_error(const cg_session* s) {
  return s ? s->last_error.c_str() : "";
}

cg_status cg_eval(cg_session* s, const char* expr, char** out) {
  if (!expr) return CG_ERR_BAD_ARGUMENT;
  return run_command(s, out,
                     [&] { return cg::cmd_eval(s->session, expr); });
}

cg_status cg_act(cg_session* s, const char* expr, const char* point,
                 char** out) {
  if (!expr || !point) return CG_ERR_BAD_ARGUMENT;
  return run_command(s, out,
                     [&] { return cg::cmd_act(s->session, expr, point); });
}

cg_status cg_order(cg_session* s, const char* expr, unsigned max, char** out) {
  if (!expr) return CG_ERR_BAD_ARGUMENT;
  return run_command(s, out,
                     [&] { return cg::cmd_order(s->session, expr, max); });
}

cg_status cg_center(cg_session* s, const char* expr, char** out) {
  if (!expr) return CG_ERR_BAD_ARGUMENT;
  return run_command(s, out,
                     [&] { return cg::cmd_center(s->session, expr); });
}

cg_status cg_witness(cg_session* s, const char* u, const char* v, char** out) {
  if (!u || !v) return CG_ERR_BAD_ARGUMENT;
  return run_command(s, out,
                     [&] { return cg::cmd_witness(s->session, u, v); });
}

cg_status cg_selftest(cg_session* s, const char* suite, unsigned n,
                      char** out) {
  if (!suite) return CG_ERR_BAD_ARGUMENT;
  return run_command(s, out, [&] {
    // Surface an unknown suite as a status code rather than a failure
    // report, so callers can distinguish "bad request" from "tests failed".
    std::string name(suite);
    if (name != "all") {
      auto names = cg::selftest_suite_names();
      if (std::find(names.begin(), names.end(), name) == names.end())
        cg::fail(cg::ErrorKind::UnknownSuite,
                 "unknown selftest suite: " + name);
    }
    return cg::cmd_selftest(s->session, suite, n);
  });
}

void cg_string_free(char* s) { std::free(s); }

}  // extern "C"
