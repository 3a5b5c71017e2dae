// Copyright 2026 The gpas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cassert>
#include <optional>
#include <utility>

namespace gpas {

// Failure modes surfaced by the solvers and estimators. Callers are expected
// to branch on these rather than on magic return values.
enum class Error {
  kDegenerateInput,
  kParallelLines,
  kBehindCamera,
  kUnknownPair,
  kSingularConfiguration,
  kNoRealRoot,
  kSolverFailure,
  kDegenerateConfiguration,
  kNoHypothesis,
  kEstimationFailure,
  kInvalidInput,
};

const char* error_name(Error error);

// Minimal value-or-error wrapper. Accessing the wrong side is a programming
// error and trips an assert in debug builds.
template <typename T>
class [[nodiscard]] Result {
 public:
  Result(T value) : value_(std::move(value)), error_(Error::kInvalidInput) {}
  Result(Error error) : error_(error) {}

  bool ok() const { return value_.has_value(); }
  explicit operator bool() const { return ok(); }

  Error error() const {
    assert(!ok());
    return error_;
  }

  const T& value() const& {
    assert(ok());
    return *value_;
  }
  T& value() & {
    assert(ok());
    return *value_;
  }
  T&& value() && {
    assert(ok());
    return *std::move(value_);
  }

  const T& operator*() const& { return value(); }
  T& operator*() & { return value(); }
  const T* operator->() const { return &value(); }
  T* operator->() { return &value(); }

 private:
  std::optional<T> value_;
  Error error_;
};

}  // namespace gpas
