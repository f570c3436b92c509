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
#include "mc/world.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include "core/error.hpp"

namespace irsho::mc {

namespace {
constexpr double kPi = M_PI;
constexpr std::uint64_t kBsTag = 0xB5B5B5B5ULL;

std::uint64_t cell_key(std::int64_t cx, std::int64_t cy) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(cx)) << 32) |
         static_cast<std::uint32_t>(cy);
}
}  // namespace

double dist(Point2D a, Point2D b) { return std::hypot(a.x - b.x, a.y - b.y); }

Point2D BlockageSegment::end1() const {
  return {mid.x - 0.5 * l * std::cos(beta), mid.y - 0.5 * l * std::sin(beta)};
}
Point2D BlockageSegment::end2() const {
  return {mid.x + 0.5 * l * std::cos(beta), mid.y + 0.5 * l * std::sin(beta)};
}

bool segments_intersect(Point2D a, Point2D b, Point2D c, Point2D d) {
  if (std::max(a.x, b.x) < std::min(c.x, d.x) || std::max(c.x, d.x) < std::min(a.x, b.x) ||
      std::max(a.y, b.y) < std::min(c.y, d.y) || std::max(c.y, d.y) < std::min(a.y, b.y))
    return false;
  const double o1 = cross(b - a, c - a), o2 = cross(b - a, d - a);
  const double o3 = cross(d - c, a - c), o4 = cross(d - c, b - c);
  if (o1 == 0 && o2 == 0) return true;  // collinear with overlapping boxes
  return o1 * o2 <= 0 && o3 * o4 <= 0;
}

double default_sim_radius(double lambda_b) { return std::max(2000.0, 5.0 / std::sqrt(kPi * lambda_b)); }

std::uint64_t poisson_inversion(SplitMix64& g, double mean) {
  const double u = g.uniform();
  double p = std::exp(-mean), c = p;
  std::uint64_t k = 0;
  while (u >= c && k < 10000) {
    ++k;
    p *= mean / static_cast<double>(k);
    c += p;
    if (p == 0.0) break;
  }
  return k;
}

World::World(const Scenario& s, const WorldConfig& cfg) : s_(&s), cfg_(cfg) {
  cs_ = std::max(20.0, s.l_max());
  blk_radius_ = cfg.sim_radius + 0.5 * s.l_max();
  if (cfg.with_bs) {
    SplitMix64 g(mix_key(cfg.seed, cfg.drop, kBsTag));
    const double r = cfg.sim_radius;
    std::poisson_distribution<std::uint64_t> pd(s.lambda_b() * kPi * r * r);
    const std::uint64_t n = pd(g);
    bs_.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
      const double rr = r * std::sqrt(g.uniform());
      const double th = 2.0 * kPi * g.uniform();
      bs_.push_back({rr * std::cos(th), rr * std::sin(th)});
    }
  }
}

const std::vector<BlockageSegment>& World::cell(std::int64_t cx, std::int64_t cy) const {
  const std::uint64_t key = cell_key(cx, cy);
  auto it = cells_.find(key);
  if (it != cells_.end()) return it->second;
  std::vector<BlockageSegment> v;
  const double x0 = cx * cs_, y0 = cy * cs_;
  // skip cells entirely outside the blockage disk
  const double nx = std::clamp(0.0, x0, x0 + cs_), ny = std::clamp(0.0, y0, y0 + cs_);
  if (nx * nx + ny * ny <= blk_radius_ * blk_radius_) {
    SplitMix64 g(mix_key(cfg_.seed, cfg_.drop, key));
    const std::uint64_t n = poisson_inversion(g, s_->lambda_o() * cs_ * cs_);
    const LengthDist& ld = s_->params().length;
    for (std::uint64_t i = 0; i < n; ++i) {
      BlockageSegment b;
      b.mid = {x0 + cs_ * g.uniform(), y0 + cs_ * g.uniform()};
      b.l = ld.kind == LengthDist::Kind::Constant ? ld.l_max : ld.l_min + (ld.l_max - ld.l_min) * g.uniform();
      b.beta = 2.0 * kPi * g.uniform();
      b.has_irs = g.uniform() < s_->mu();
      if (b.mid.x * b.mid.x + b.mid.y * b.mid.y <= blk_radius_ * blk_radius_) v.push_back(b);
    }
  }
  return cells_.emplace(key, std::move(v)).first->second;
}

bool World::segment_blocked(Point2D a, Point2D b, const BlockageSegment* exclude) const {
  const double h = 0.5 * cs_;
  const double xmin = std::min(a.x, b.x), xmax = std::max(a.x, b.x);
  const auto c0 = static_cast<std::int64_t>(std::floor((xmin - h) / cs_));
  const auto c1 = static_cast<std::int64_t>(std::floor((xmax + h) / cs_));
  const double dx = b.x - a.x;
  for (std::int64_t cx = c0; cx <= c1; ++cx) {
    // y-range of ab over this column widened by half a cell
    const double lo = std::max(xmin, cx * cs_ - h), hi = std::min(xmax, (cx + 1) * cs_ + h);
    double ya, yb;
    if (std::fabs(dx) < 1e-12) {
      ya = std::min(a.y, b.y);
      yb = std::max(a.y, b.y);
    } else {
      const double t0 = (lo - a.x) / dx, t1 = (hi - a.x) / dx;
      const double y0 = a.y + std::clamp(t0, 0.0, 1.0) * (b.y - a.y);
      const double y1 = a.y + std::clamp(t1, 0.0, 1.0) * (b.y - a.y);
      ya = std::min(y0, y1);
      yb = std::max(y0, y1);
    }
    const auto r0 = static_cast<std::int64_t>(std::floor((ya - h) / cs_));
    const auto r1 = static_cast<std::int64_t>(std::floor((yb + h) / cs_));
    for (std::int64_t cy = r0; cy <= r1; ++cy) {
      for (const BlockageSegment& s : cell(cx, cy)) {
        if (&s == exclude) continue;
        if (segments_intersect(a, b, s.end1(), s.end2())) return true;
      }
    }
  }
  return false;
}

std::vector<const BlockageSegment*> World::irs_near(Point2D p, double radius) const {
  std::vector<const BlockageSegment*> out;
  if (!(s_->mu() > 0.0)) return out;
  const auto c0 = static_cast<std::int64_t>(std::floor((p.x - radius) / cs_));
  const auto c1 = static_cast<std::int64_t>(std::floor((p.x + radius) / cs_));
  const auto r0 = static_cast<std::int64_t>(std::floor((p.y - radius) / cs_));
  const auto r1 = static_cast<std::int64_t>(std::floor((p.y + radius) / cs_));
  for (std::int64_t cx = c0; cx <= c1; ++cx)
    for (std::int64_t cy = r0; cy <= r1; ++cy)
      for (const BlockageSegment& s : cell(cx, cy))
        if (s.has_irs && dist(s.mid, p) <= radius) out.push_back(&s);
  return out;
}

std::vector<const BlockageSegment*> World::all_blockages() const {
  std::vector<const BlockageSegment*> out;
  const auto n = static_cast<std::int64_t>(std::ceil(blk_radius_ / cs_));
  for (std::int64_t cx = -n; cx <= n; ++cx)
    for (std::int64_t cy = -n; cy <= n; ++cy)
      for (const BlockageSegment& s : cell(cx, cy)) out.push_back(&s);
  return out;
}

void World::dump(std::ostream& os) const {
  char buf[160];
  for (const Point2D& p : bs_) {
    std::snprintf(buf, sizeof buf, "BS %.6f %.6f\n", p.x, p.y);
    os << buf;
  }
  for (const BlockageSegment* b : all_blockages()) {
    std::snprintf(buf, sizeof buf, "BLK %.6f %.6f %.6f %.9f %d\n", b->mid.x, b->mid.y, b->l, b->beta,
                  b->has_irs ? 1 : 0);
    os << buf;
  }
}

}  // namespace irsho::mc
