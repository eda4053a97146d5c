#pragma once

#include <stdexcept>
#include <string>

namespace pwenv {

enum class ErrorKind {
  invalid_argument,
  diverges,
  not_in_ep,
  not_hardy,
  invalid_weight,
  pole,
  domain,
  no_decomposition,
  io,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::diverges: return "diverges";
    case ErrorKind::not_in_ep: return "not-in-Ep";
    case ErrorKind::not_hardy: return "not-hardy";
    case ErrorKind::invalid_weight: return "invalid-weight";
    case ErrorKind::pole: return "pole";
    case ErrorKind::domain: return "domain";
    case ErrorKind::no_decomposition: return "no-decomposition";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace pwenv
