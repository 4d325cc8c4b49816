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

#include "error.hpp"

#include <iostream>
#include <mutex>

namespace ccmw {
namespace {

struct SinkState {
  std::mutex mu;
  LogSink sink = nullptr;
  void* user = nullptr;
};

SinkState& sink_state() {
  static SinkState s;
  return s;
}

void emit(int level, std::string_view message) {
  auto& s = sink_state();
  std::lock_guard lock(s.mu);
  std::string msg(message);
  if (s.sink) {
    s.sink(level, msg.c_str(), s.user);
    return;
  }
  if (level >= 2) std::cerr << "warning: " << msg << '\n';
}

}  // namespace

void set_log_sink(LogSink sink, void* user) {
  auto& s = sink_state();
  std::lock_guard lock(s.mu);
  s.sink = sink;
  s.user = user;
}

void log_warning(std::string_view message) { emit(2, message); }
void log_info(std::string_view message) { emit(1, message); }

}  // namespace ccmw
