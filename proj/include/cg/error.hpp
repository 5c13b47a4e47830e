#ifndef CG_ERROR_HPP
#define CG_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cg {

// Error kinds mirror the failure modes of the element calculus; the C API
// maps them onto status codes.
enum class ErrorKind {
  Alphabet,
  Overlap,
  Gap,
  Index,
  SizeMismatch,
  NotAGroup,
  NotFull,
  ActionMismatch,
  OracleMismatch,
  Containment,
  ShiftZeroIdentity,
  EmptyTarget,
  WordTooLong,
  Parse,
  UnknownSuite,
  Unknown,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

inline const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Alphabet: return "alphabet";
    case ErrorKind::Overlap: return "overlap";
    case ErrorKind::Gap: return "gap";
    case ErrorKind::Index: return "index";
    case ErrorKind::SizeMismatch: return "size-mismatch";
    case ErrorKind::NotAGroup: return "not-a-group";
    case ErrorKind::NotFull: return "not-full";
    case ErrorKind::ActionMismatch: return "action-mismatch";
    case ErrorKind::OracleMismatch: return "oracle-mismatch";
    case ErrorKind::Containment: return "containment";
    case ErrorKind::ShiftZeroIdentity: return "shift-zero-identity";
    case ErrorKind::EmptyTarget: return "empty-target";
    case ErrorKind::WordTooLong: return "word-too-long";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::UnknownSuite: return "unknown-suite";
    case ErrorKind::Unknown: return "unknown";
    case ErrorKind::Internal: return "internal";
  }
  return "internal";
}

}  // namespace cg

#endif
