// Copyright 2026 The contextlab Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace contextlab {

// Root of every error the library throws on a broken contract.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands disagree on site count, qudit dimension, or vector length.
class IncompatibleOperands : public Error {
 public:
  using Error::Error;
};

// A dense realization would exceed the configured dimension cap.
class SizeError : public Error {
 public:
  using Error::Error;
};

// A precondition on the inputs does not hold (non-commuting context,
// vector outside its subspace, inconsistent preassignment, ...).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// Text or file input could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Every ABL amplitude vanished, so the conditional distribution is undefined.
class UndefinedDistribution : public Error {
 public:
  using Error::Error;
};

// A magic configuration line does not multiply to a phase times identity.
class MalformedConfiguration : public Error {
 public:
  using Error::Error;
};

}  // namespace contextlab
