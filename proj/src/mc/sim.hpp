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
#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "mc/world.hpp"

namespace irsho::mc {

struct LinkClass {
  LosState state = LosState::NLoS;
  const BlockageSegment* irs = nullptr;
  double power = 0.0;
};

// IRS candidates around a user position, sorted by distance.
struct IrsCandidates {
  Point2D user;
  std::vector<const BlockageSegment*> list;
  static IrsCandidates around(const World& w, Point2D user, double d_serve);
};

// Whether `irs` can reflect between user and bs.
bool irs_qualifies(const World& w, const BlockageSegment& irs, Point2D user, Point2D bs, double d_serve);

LinkClass classify_bs(const World& w, const IrsCandidates& cand, Point2D bs, const Scenario& s);

struct Attachment {
  int bs = -1;
  LinkClass link;
};
Attachment associate(const World& w, const IrsCandidates& cand, const Scenario& s);

// Modified random walk; nullopt when every attempt is blocked.
std::optional<Point2D> move_user(const World& w, Point2D user, double v, SplitMix64& rng, int max_tries = 10000);

enum class Protocol { Density, Association, Transition, Handover };
const char* protocol_name(Protocol p);

struct DropRecord {
  bool valid = false;
  bool stuck = false;
  bool empty = false;
  LosState k = LosState::LoS;
  LosState j = LosState::LoS;
  bool ho = false;
  LosState trigger_before = LosState::LoS;  // state at the start point of the BS that triggered HO
};

struct DropConfig {
  Protocol protocol = Protocol::Handover;
  double d_fixed = 100.0;  // density protocol only
  double sim_radius = 0.0;  // 0 selects the default
};

DropRecord run_drop(const Scenario& s, const DropConfig& cfg, std::uint64_t seed, std::uint64_t drop);

struct EstimateWithCI {
  std::uint64_t n = 0;
  double mean = 0.0;
  double ci = 0.0;
  std::uint64_t seed = 0;
  static EstimateWithCI bernoulli(std::uint64_t hits, std::uint64_t n, std::uint64_t seed);
};

struct McResult {
  Protocol protocol = Protocol::Handover;
  std::uint64_t seed = 0;
  std::uint64_t n_drops = 0, n_valid = 0, n_stuck = 0, n_empty = 0;
  std::array<std::uint64_t, 3> k_count{};
  std::array<std::array<std::uint64_t, 3>, 3> kj_count{};
  std::array<std::uint64_t, 3> ho_by_k{};
  std::uint64_t ho_count = 0;

  EstimateWithCI state(LosState k) const;                  // association or density frequency
  EstimateWithCI transition(LosState k, LosState j) const;  // conditional on k
  EstimateWithCI handover() const;
  EstimateWithCI handover_given(LosState k) const;
};

struct EstimateOptions {
  DropConfig drop;
  std::uint64_t n_drops = 100000;
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0 uses hardware concurrency
};

McResult estimate(const Scenario& s, const EstimateOptions& opt);

}  // namespace irsho::mc
