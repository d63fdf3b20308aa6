#ifndef LACUNA_ERRORS_HPP
#define LACUNA_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lacuna {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class InvalidParameters : public Error
{
public:
  using Error::Error;
};

/// Raised when a guarded computation would exceed its workload limit.
class ResourceLimit : public Error
{
public:
  using Error::Error;
};

class ParseError : public Error
{
public:
  ParseError(std::int64_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line)
  {}

  std::int64_t line() const noexcept { return line_; }

private:
  std::int64_t line_;
};

inline void require(bool condition, const std::string& message)
{
  if (!condition)
    throw InvalidParameters(message);
}

} // namespace lacuna

#endif // LACUNA_ERRORS_HPP
