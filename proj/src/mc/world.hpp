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

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <unordered_map>
#include <vector>

#include "core/lowdisc.hpp"
#include "core/scenario.hpp"

namespace irsho::mc {

struct Point2D {
  double x = 0, y = 0;
};

inline Point2D operator-(Point2D a, Point2D b) { return {a.x - b.x, a.y - b.y}; }
inline Point2D operator+(Point2D a, Point2D b) { return {a.x + b.x, a.y + b.y}; }
inline double cross(Point2D a, Point2D b) { return a.x * b.y - a.y * b.x; }
double dist(Point2D a, Point2D b);

struct BlockageSegment {
  Point2D mid;
  double l = 0;
  double beta = 0;  // [0, 2 pi)
  bool has_irs = false;
  Point2D end1() const;
  Point2D end2() const;
};

// True when segments ab and cd share a point (touching counts).
bool segments_intersect(Point2D a, Point2D b, Point2D c, Point2D d);

struct WorldConfig {
  double sim_radius = 2000.0;
  double guard_radius = 200.0;
  std::uint64_t seed = 0;
  std::uint64_t drop = 0;
  bool with_bs = true;
};

double default_sim_radius(double lambda_b);

// Blockage field generated cell by cell on first touch. Each cell has its own
// random stream, so the realization does not depend on query order.
class World {
 public:
  World(const Scenario& s, const WorldConfig& cfg);

  const std::vector<Point2D>& bs() const { return bs_; }
  void set_bs(std::vector<Point2D> bs) { bs_ = std::move(bs); }
  double sim_radius() const { return cfg_.sim_radius; }
  double guard_radius() const { return cfg_.guard_radius; }
  double cell_size() const { return cs_; }

  bool segment_blocked(Point2D a, Point2D b, const BlockageSegment* exclude = nullptr) const;
  // IRS-carrying segments whose midpoint lies within radius of p.
  std::vector<const BlockageSegment*> irs_near(Point2D p, double radius) const;
  // Materialize every cell overlapping the blockage disk.
  std::vector<const BlockageSegment*> all_blockages() const;

  void dump(std::ostream& os) const;

 private:
  const std::vector<BlockageSegment>& cell(std::int64_t cx, std::int64_t cy) const;

  const Scenario* s_;
  WorldConfig cfg_;
  double cs_;
  double blk_radius_;
  std::vector<Point2D> bs_;
  mutable std::unordered_map<std::uint64_t, std::vector<BlockageSegment>> cells_;
};

// Poisson variate by inversion; used for small means.
std::uint64_t poisson_inversion(SplitMix64& g, double mean);

}  // namespace irsho::mc
