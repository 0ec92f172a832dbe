#pragma once

#include <stdexcept>
#include <string>

namespace synsetrank {

// Error category, kept coarse so the C API can map it onto status codes.
enum class ErrorKind {
  io,        // file could not be opened / read / written
  parse,     // malformed input data (line number in the message where known)
  invalid,   // argument or precondition violation
  domain,    // mathematically undefined request (all-zero distribution, one-class AUC, ...)
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  static Error io(const std::string& m) { return {ErrorKind::io, m}; }
  static Error parse(const std::string& m) { return {ErrorKind::parse, m}; }
  static Error invalid(const std::string& m) { return {ErrorKind::invalid, m}; }
  static Error domain(const std::string& m) { return {ErrorKind::domain, m}; }

private:
  ErrorKind kind_;
};

} // namespace synsetrank
