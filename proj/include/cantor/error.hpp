#pragma once

#include <stdexcept>
#include <string>

namespace cantor {

/// Failure categories; the CLI maps these onto distinct exit statuses.
enum class ErrorKind {
  precondition,  // caller supplied something outside an operation's contract
  invariant,     // an exact self-check failed: an implementation bug
  parse,         // malformed textual input
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& detail)
      : std::runtime_error(detail.empty() ? code : code + ": " + detail),
        kind_(kind),
        code_(std::move(code)) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// Short stable identifier, e.g. "field mismatch".
  const std::string& code() const noexcept { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

[[noreturn]] inline void fail_precondition(std::string code, const std::string& detail = {}) {
  throw Error(ErrorKind::precondition, std::move(code), detail);
}

[[noreturn]] inline void fail_invariant(std::string code, const std::string& detail = {}) {
  throw Error(ErrorKind::invariant, std::move(code), detail);
}

[[noreturn]] inline void fail_parse(std::string code, const std::string& detail = {}) {
  throw Error(ErrorKind::parse, std::move(code), detail);
}

/// Throws an invariant error unless `ok`.
inline void ensure(bool ok, const char* what) {
  if (!ok) fail_invariant("invariant violated", what);
}

}  // namespace cantor
