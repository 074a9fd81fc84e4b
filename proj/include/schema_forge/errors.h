// Copyright 2026 The Schema Forge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCHEMA_FORGE_ERRORS_H_
#define SCHEMA_FORGE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace schema_forge {

// Base class for all errors raised by the library. Each subclass carries a
// stable name so front ends can report failures without RTTI games.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string &message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string &kind() const { return kind_; }

 private:
  std::string kind_;
};

#define SCHEMA_FORGE_DEFINE_ERROR(Name)                  \
  class Name : public Error {                            \
   public:                                               \
    explicit Name(const std::string &message)            \
        : Error(#Name, message) {}                       \
  }

SCHEMA_FORGE_DEFINE_ERROR(ParseError);
SCHEMA_FORGE_DEFINE_ERROR(ConfigError);
SCHEMA_FORGE_DEFINE_ERROR(ProviderError);
SCHEMA_FORGE_DEFINE_ERROR(EmptySteps);
SCHEMA_FORGE_DEFINE_ERROR(DimensionMismatch);
SCHEMA_FORGE_DEFINE_ERROR(ZeroVector);
SCHEMA_FORGE_DEFINE_ERROR(ResourceLimit);
SCHEMA_FORGE_DEFINE_ERROR(TooLarge);
SCHEMA_FORGE_DEFINE_ERROR(InvariantViolation);
SCHEMA_FORGE_DEFINE_ERROR(UnknownFormat);
SCHEMA_FORGE_DEFINE_ERROR(EmptyGold);
SCHEMA_FORGE_DEFINE_ERROR(EmptyBackbone);
SCHEMA_FORGE_DEFINE_ERROR(EmptyCorpus);
SCHEMA_FORGE_DEFINE_ERROR(IoError);
SCHEMA_FORGE_DEFINE_ERROR(InvalidBundle);

#undef SCHEMA_FORGE_DEFINE_ERROR

}  // namespace schema_forge

#endif  // SCHEMA_FORGE_ERRORS_H_
