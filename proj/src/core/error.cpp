/*
Copyright 2026 The irsho Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/
#include "core/error.hpp"

#include <cstdio>
#include <cstdlib>
#include <mutex>

namespace irsho {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Config: return "Config";
    case Errc::NegativeDensity: return "NegativeDensity";
    case Errc::MuOutOfRange: return "MuOutOfRange";
    case Errc::DegenerateLength: return "DegenerateLength";
    case Errc::NonConvergence: return "NonConvergence";
    case Errc::NonFiniteIntegrand: return "NonFiniteIntegrand";
    case Errc::TailNotDecaying: return "TailNotDecaying";
    case Errc::UnnormalizedDensity: return "UnnormalizedDensity";
    case Errc::DegenerateState: return "DegenerateState";
    case Errc::DegenerateCondition: return "DegenerateCondition";
    case Errc::ZeroDistance: return "ZeroDistance";
    case Errc::MissingIrsDistance: return "MissingIrsDistance";
    case Errc::EmptyWorld: return "EmptyWorld";
    case Errc::StuckUser: return "StuckUser";
    case Errc::TooFewValidDrops: return "TooFewValidDrops";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

bool log_enabled() {
  static const bool on = std::getenv("IRSHO_LOG") != nullptr;
  return on;
}

void log_line(const std::string& msg) {
  if (!log_enabled()) return;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  std::fprintf(stderr, "[irsho] %s\n", msg.c_str());
}

}  // namespace irsho
