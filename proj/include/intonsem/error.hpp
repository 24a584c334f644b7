#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace intonsem {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. `offset` is a byte offset for type syntax and
/// annotated sentences; `line` is set for file formats (1-based, 0 if unknown).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset, std::size_t line = 0)
      : Error(what), offset_(offset), line_(line) {}
  std::size_t offset() const noexcept { return offset_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t offset_;
  std::size_t line_;
};

/// No planar cup-linking reduces the factor sequence to the target.
class NoReduction : public Error {
 public:
  using Error::Error;
};

/// Tensor shape or order does not match what the type or operation requires.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Two factors were linked that are not an adjoint pair.
class TypeError : public Error {
 public:
  using Error::Error;
};

/// Lexicon content is invalid (duplicates, missing base senses, bad refs).
class LexiconError : public Error {
 public:
  using Error::Error;
};

/// A word is not in the lexicon.
class UnknownWord : public Error {
 public:
  explicit UnknownWord(const std::string& word)
      : Error("word not in lexicon: '" + word + "'"), word_(word) {}
  const std::string& word() const noexcept { return word_; }

 private:
  std::string word_;
};

/// A name is not part of the universe of individuals or relations.
class UnknownIndividual : public Error {
 public:
  using Error::Error;
};

/// No sense assignment reduces every span of an annotated sentence to its
/// role type, or the span pattern itself is not supported.
class InfelicitousStructure : public Error {
 public:
  using Error::Error;
};

/// Meanings of different tensor order live in different spaces.
class OrderMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace intonsem
