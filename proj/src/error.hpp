// Copyright 2026 The ccmw Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ccmw {

enum class Errc {
  kInvalidArgument,
  kOutOfRange,
  kDimensionMismatch,
  kNotHermitian,
  kNotUnitary,
  kInvalidState,
  kUnsupported,
  kParse,
  kIo,
  kInternal,
};

// All library failures are reported through this exception type; the C API
// maps the code onto ccmw_status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Errc code, std::string_view what) {
  if (!cond) throw Error(code, std::string(what));
}

// Diagnostics sink. Defaults to stderr; the C API can redirect it.
using LogSink = void (*)(int level, const char* message, void* user);
void set_log_sink(LogSink sink, void* user);
void log_warning(std::string_view message);
void log_info(std::string_view message);

}  // namespace ccmw
