#pragma once

#include <stdexcept>

namespace mmi {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A constructor argument violates a type invariant (nonpositive hbar, ...).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Two operands live on different momentum grids.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

/// The grid does not extend far enough around a requested wavepacket.
class GridTooNarrow : public Error {
 public:
  using Error::Error;
};

class NonpositiveWidth : public Error {
 public:
  using Error::Error;
};

/// All amplitudes vanish; the distribution cannot be normalized.
class ZeroDistribution : public Error {
 public:
  using Error::Error;
};

/// An operation required unit-norm inputs and got something else.
class NotNormalized : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

/// The Fock state holds no terms (or only exact zeros).
class NullState : public Error {
 public:
  using Error::Error;
};

/// The discrete mode set exceeds the configured oracle cap.
class TooManyModes : public Error {
 public:
  using Error::Error;
};

/// Malformed input text (configs, tabulated files); message carries
/// file/line context.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input that violates a semantic constraint; message names
/// the offending key.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace mmi
