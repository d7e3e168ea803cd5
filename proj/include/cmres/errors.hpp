// Copyright 2026 The cmres Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CMRES_ERRORS_HPP
#define CMRES_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cmres {

/// Symbol argument shares a factor with the modulus.
class RamifiedInput : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Text input (set expression, curve table, rational) failed to parse.
/// `position` is a 0-based column for expressions and a 1-based line for
/// tables.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// The point-order test left more than one trace candidate standing.
class DisambiguationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cmres

#endif  // CMRES_ERRORS_HPP
