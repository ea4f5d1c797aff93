#pragma once

#include <stdexcept>
#include <string>

namespace nielsen {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands belong to different group models or rings.
class ModelMismatch : public Error {
 public:
  using Error::Error;
};

/// Malformed input (file contents, words, indices).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Structurally well-formed input that violates a mathematical invariant
/// (d^2 != 0, a map that is not a homomorphism, a broken triangle identity).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Semiconjugacy classes cannot be decided for this group/endomorphism pair.
class UnsupportedReduction : public Error {
 public:
  using Error::Error;
};

/// A shadow element holds formal (unmerged) classes where a reduced one is needed.
class FormalShadow : public Error {
 public:
  using Error::Error;
};

/// The degree-2 part of a lifted cellular map is not determined by the data.
class UnderdeterminedLift : public Error {
 public:
  using Error::Error;
};

/// Cells of a bicategory do not compose (wrong source/target or rank).
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

/// Requested feature is outside the supported fragment.
class Unsupported : public Error {
 public:
  using Error::Error;
};

}  // namespace nielsen
