//
//   Copyright 2026 The Fidel Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//

#ifndef FIDEL_ERRORS_HPP_
#define FIDEL_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fidel {

// Base class of every error the toolkit throws on purpose.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A character (or phoneme token) that is not in the chart. `position` is a
// byte offset for the ASCII scheme, a codepoint index for the Unicode scheme
// and a token index for the phoneme scheme.
class UnknownGraphemeError : public Error {
 public:
  UnknownGraphemeError(const std::string& what, std::size_t position)
      : Error(what), position(position) {}
  std::size_t position;
};

// A transliteration prefix mark that does not complete any chart symbol.
class AmbiguousTransliterationError : public Error {
 public:
  AmbiguousTransliterationError(const std::string& what, std::size_t position)
      : Error(what), position(position) {}
  std::size_t position;
};

// Derived syllable with no codepoint in the Unicode scheme.
class UnrepresentableSyllableError : public Error {
 public:
  using Error::Error;
};

class DanglingVowelError : public Error {
 public:
  DanglingVowelError(const std::string& what, std::size_t position)
      : Error(what), position(position) {}
  std::size_t position;
};

class DanglingConsonantError : public Error {
 public:
  DanglingConsonantError(const std::string& what, std::size_t position)
      : Error(what), position(position) {}
  std::size_t position;
};

// Malformed table/model/manifest content.
class FormatError : public Error {
 public:
  using Error::Error;
};

class DuplicateIdError : public Error {
 public:
  using Error::Error;
};

class MalformedRowError : public Error {
 public:
  MalformedRowError(const std::string& what, std::size_t line)
      : Error(what), line(line) {}
  std::size_t line;
};

class UnknownIdError : public Error {
 public:
  using Error::Error;
};

class IdMismatchError : public Error {
 public:
  using Error::Error;
};

class BadRatiosError : public Error {
 public:
  using Error::Error;
};

class EmptyReferenceError : public Error {
 public:
  using Error::Error;
};

class EmptyCorpusError : public Error {
 public:
  using Error::Error;
};

class TargetTooSmallError : public Error {
 public:
  using Error::Error;
};

class EmptyBufferError : public Error {
 public:
  using Error::Error;
};

class RateMismatchError : public Error {
 public:
  using Error::Error;
};

class TooManyBackgroundsError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace fidel

#endif  // FIDEL_ERRORS_HPP_
