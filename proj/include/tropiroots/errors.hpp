#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tropiroots {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition on an input value was violated.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class ZeroPolynomial : public InvalidInput {
 public:
  ZeroPolynomial() : InvalidInput("polynomial is identically zero") {}
};

class DimensionMismatch : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class LengthMismatch : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// Both entries handed to a Givens rotation were zero.
class BothZero : public InvalidInput {
 public:
  BothZero() : InvalidInput("givens: both entries are zero") {}
};

/// Optimization over real scaling factors requested for complex data.
class NonRealInput : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class GenerationFailed : public Error {
 public:
  using Error::Error;
};

/// The first block column of a block companion pencil lost rank.
class RankDeficientLeadingBlock : public Error {
 public:
  RankDeficientLeadingBlock(std::size_t rank, std::size_t size)
      : Error("leading block column has numerical rank " + std::to_string(rank) +
              " < " + std::to_string(size)),
        rank_(rank) {}
  std::size_t rank() const { return rank_; }

 private:
  std::size_t rank_;
};

/// QZ iteration hit its cap; `index` is the row that failed to deflate.
class NoConvergence : public Error {
 public:
  NoConvergence(std::ptrdiff_t index, std::size_t iterations)
      : Error("QZ iteration did not converge at index " + std::to_string(index) +
              " after " + std::to_string(iterations) + " iterations"),
        index_(index),
        iterations_(iterations) {}
  std::ptrdiff_t index() const { return index_; }
  std::size_t iterations() const { return iterations_; }

 private:
  std::ptrdiff_t index_;
  std::size_t iterations_;
};

}  // namespace tropiroots
