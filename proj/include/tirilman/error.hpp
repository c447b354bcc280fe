#ifndef TIRILMAN_ERROR_HPP
#define TIRILMAN_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tirilman {

/// Base of every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid arguments or violated preconditions.
class invalid_input : public error {
 public:
  using error::error;
};

/// A configured size cap (support size, iteration count) was exceeded.
class cap_exceeded : public error {
 public:
  using error::error;
};

/// Raised by checkers that only make sense when gamma < 3^{-1/q}.
class regime_error : public error {
 public:
  using error::error;
};

/// Pivoting stalled, a cutting-plane loop failed to make progress, etc.
class numerical_failure : public error {
 public:
  using error::error;
};

/// Malformed text input; `line()` is 1-based, 0 when unknown.
class parse_error : public error {
 public:
  parse_error(const std::string& what, std::size_t line)
      : error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace tirilman

#endif  // TIRILMAN_ERROR_HPP
