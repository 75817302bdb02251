#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wreathgen {

/// Malformed textual input (cycle notation, group specs, sequences).
/// `position` is the 0-based character offset of the offending token.
class ParseError : public std::runtime_error
{
public:
  ParseError(std::string message, std::size_t position, std::string token = {})
    : std::runtime_error(message + " at position " + std::to_string(position) +
                         (token.empty() ? std::string{} : " ('" + token + "')")),
      position_(position), token_(std::move(token))
  {}

  std::size_t position() const noexcept { return position_; }
  const std::string& token() const noexcept { return token_; }

private:
  std::size_t position_;
  std::string token_;
};

/// Operands of incompatible degree or shape.
class DegreeMismatch : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// A configured size cap (leaf count, group order, coset index) was exceeded.
class CapExceeded : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// A leaf permutation that does not preserve the tree's block structure.
class NotAutomorphism : public std::invalid_argument
{
public:
  NotAutomorphism(std::string message, std::size_t level, std::size_t block)
    : std::invalid_argument(std::move(message)), level_(level), block_(block)
  {}

  std::size_t level() const noexcept { return level_; }
  std::size_t block() const noexcept { return block_; }

private:
  std::size_t level_;
  std::size_t block_;
};

/// A construction precondition does not hold (e.g. a perfect group passed to
/// the non-perfect builder, or no regrouping width satisfies the witness test).
class ConstructionError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

} // namespace wreathgen
