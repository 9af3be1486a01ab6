// Copyright 2026 The advforge Authors
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

#ifndef ADVFORGE_ERRORS_HPP_
#define ADVFORGE_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace advforge {

// Root of every fault raised by the library. Rejected LLM generations are
// not faults and never surface as exceptions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Violated precondition on a caller-supplied argument.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class InvalidSample : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class DelimiterInSample : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class EmptyHistory : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class EmptyTraceList : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Failures of the attacker LLM or the target classifier. The attack engine
// turns any of these into an AttackTrace with outcome ClientError.
class ClientFault : public Error {
 public:
  using Error::Error;
};

class TransportError : public ClientFault {
 public:
  using ClientFault::ClientFault;
};

class ContextLengthExceeded : public ClientFault {
 public:
  using ClientFault::ClientFault;
};

class ScriptExhausted : public ClientFault {
 public:
  using ClientFault::ClientFault;
};

class UnparseablePrompt : public ClientFault {
 public:
  using ClientFault::ClientFault;
};

class MalformedResponse : public ClientFault {
 public:
  using ClientFault::ClientFault;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Input file could not be parsed; line() is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class MissingTextField : public ParseError {
 public:
  using ParseError::ParseError;
};

class SchemaVersionMismatch : public Error {
 public:
  SchemaVersionMismatch(int found, int supported)
      : Error("run log schema version " + std::to_string(found) +
              " does not match supported version " +
              std::to_string(supported)),
        found_(found),
        supported_(supported) {}

  int found() const noexcept { return found_; }
  int supported() const noexcept { return supported_; }

 private:
  int found_;
  int supported_;
};

}  // namespace advforge

#endif  // ADVFORGE_ERRORS_HPP_
