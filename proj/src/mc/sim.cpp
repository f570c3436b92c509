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
#include "mc/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numeric>
#include <thread>

#include "core/channel.hpp"
#include "core/error.hpp"

namespace irsho::mc {

namespace {
constexpr double kPi = M_PI;
constexpr std::uint64_t kMoveTag = 0x4D4F5645ULL;
constexpr std::uint64_t kDirTag = 0x44495245ULL;
constexpr double kMinDist = 1e-3;

bool exact_geometry(const Scenario& s) { return s.params().irs_mode == IrsMode::ExactGeometry; }

double reflected_power(const BlockageSegment& irs, Point2D user, Point2D bs, const Scenario& s) {
  const double r = std::max(dist(irs.mid, user), kMinDist);
  const double dp = exact_geometry(s) ? dist(irs.mid, bs) : dist(user, bs);
  return rx_power_reflected(r, std::max(dp, kMinDist), s);
}

// Best qualifying IRS for the pair; in analysis-consistent mode that is the nearest.
const BlockageSegment* best_irs(const World& w, const IrsCandidates& cand, Point2D bs, const Scenario& s,
                                double* power) {
  const BlockageSegment* best = nullptr;
  double bp = 0.0;
  const bool exact = exact_geometry(s);
  for (const BlockageSegment* irs : cand.list) {
    if (!irs_qualifies(w, *irs, cand.user, bs, s.d_serve())) continue;
    const double p = reflected_power(*irs, cand.user, bs, s);
    if (!best || p > bp) {
      best = irs;
      bp = p;
    }
    if (!exact) break;
  }
  if (power) *power = bp;
  return best;
}

// Upper bound on any reflected power reachable from this user at BS distance d.
double reflected_bound(const IrsCandidates& cand, double d, const Scenario& s) {
  if (cand.list.empty()) return 0.0;
  const double r = std::max(dist(cand.list.front()->mid, cand.user), kMinDist);
  const double dp = exact_geometry(s) ? std::max(d - s.d_serve(), kMinDist) : d;
  return rx_power_reflected(r, dp, s);
}

double direct_bound(double d, const Scenario& s) {
  return std::max(rx_power_direct(LosState::LoS, d, s), rx_power_direct(LosState::NLoS, d, s));
}

std::vector<int> order_by_distance(const std::vector<Point2D>& bs, Point2D u, std::vector<double>& d) {
  d.resize(bs.size());
  for (size_t i = 0; i < bs.size(); ++i) d[i] = std::max(dist(bs[i], u), kMinDist);
  std::vector<int> idx(bs.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return d[a] < d[b] || (d[a] == d[b] && a < b); });
  return idx;
}
}  // namespace

IrsCandidates IrsCandidates::around(const World& w, Point2D user, double d_serve) {
  IrsCandidates c;
  c.user = user;
  c.list = w.irs_near(user, d_serve);
  std::sort(c.list.begin(), c.list.end(), [&](const BlockageSegment* a, const BlockageSegment* b) {
    const double da = dist(a->mid, user), db = dist(b->mid, user);
    if (da != db) return da < db;
    return a->mid.x < b->mid.x || (a->mid.x == b->mid.x && a->mid.y < b->mid.y);
  });
  return c;
}

bool irs_qualifies(const World& w, const BlockageSegment& irs, Point2D user, Point2D bs, double d_serve) {
  if (dist(irs.mid, user) > d_serve) return false;
  const Point2D e1 = irs.end1(), e2 = irs.end2();
  const double cu = cross(e2 - e1, user - e1), cb = cross(e2 - e1, bs - e1);
  if (!(cu * cb > 0)) return false;
  if (w.segment_blocked(user, irs.mid, &irs)) return false;
  return !w.segment_blocked(irs.mid, bs, &irs);
}

LinkClass classify_bs(const World& w, const IrsCandidates& cand, Point2D bs, const Scenario& s) {
  LinkClass out;
  const double d = std::max(dist(cand.user, bs), kMinDist);
  if (!w.segment_blocked(cand.user, bs)) {
    out.state = LosState::LoS;
    out.power = rx_power_direct(LosState::LoS, d, s);
    return out;
  }
  double p = 0.0;
  if (const BlockageSegment* irs = best_irs(w, cand, bs, s, &p)) {
    out.state = LosState::RLoS;
    out.irs = irs;
    out.power = p;
    return out;
  }
  out.state = LosState::NLoS;
  out.power = rx_power_direct(LosState::NLoS, d, s);
  return out;
}

Attachment associate(const World& w, const IrsCandidates& cand, const Scenario& s) {
  const auto& bs = w.bs();
  if (bs.empty()) throw Error(Errc::EmptyWorld, "associate: no base station in the world");
  std::vector<double> d;
  const auto order = order_by_distance(bs, cand.user, d);
  Attachment best;
  for (int i : order) {
    const double bound = std::max(direct_bound(d[i], s), reflected_bound(cand, d[i], s));
    if (best.bs >= 0 && bound <= best.link.power) break;
    const LinkClass lc = classify_bs(w, cand, bs[i], s);
    if (best.bs < 0 || lc.power > best.link.power) {
      best.bs = i;
      best.link = lc;
    }
  }
  return best;
}

std::optional<Point2D> move_user(const World& w, Point2D user, double v, SplitMix64& rng, int max_tries) {
  if (v <= 0.0) return user;
  for (int t = 0; t < max_tries; ++t) {
    const double psi = 2.0 * kPi * rng.uniform();
    const Point2D dest{user.x + v * std::cos(psi), user.y + v * std::sin(psi)};
    if (!w.segment_blocked(user, dest)) return dest;
  }
  return std::nullopt;
}

const char* protocol_name(Protocol p) {
  switch (p) {
    case Protocol::Density: return "density";
    case Protocol::Association: return "association";
    case Protocol::Transition: return "transition";
    case Protocol::Handover: return "handover";
  }
  return "?";
}

DropRecord run_drop(const Scenario& s, const DropConfig& cfg, std::uint64_t seed, std::uint64_t drop) {
  DropRecord rec;
  WorldConfig wc;
  wc.sim_radius = cfg.sim_radius > 0 ? cfg.sim_radius : default_sim_radius(s.lambda_b());
  wc.seed = seed;
  wc.drop = drop;
  wc.with_bs = cfg.protocol != Protocol::Density;
  World w(s, wc);
  const Point2D origin{0, 0};
  const IrsCandidates c1 = IrsCandidates::around(w, origin, s.d_serve());

  if (cfg.protocol == Protocol::Density) {
    SplitMix64 g(mix_key(seed, drop, kDirTag));
    const double psi = 2.0 * kPi * g.uniform();
    const Point2D b{cfg.d_fixed * std::cos(psi), cfg.d_fixed * std::sin(psi)};
    rec.k = classify_bs(w, c1, b, s).state;
    rec.valid = true;
    return rec;
  }
  if (w.bs().empty()) {
    rec.empty = true;
    return rec;
  }
  const Attachment a = associate(w, c1, s);
  rec.k = a.link.state;
  if (cfg.protocol == Protocol::Association) {
    rec.valid = true;
    return rec;
  }

  SplitMix64 g(mix_key(seed, drop, kMoveTag));
  const auto u2 = move_user(w, origin, s.v(), g);
  if (!u2) {
    rec.stuck = true;
    return rec;
  }
  const Point2D sb = w.bs()[a.bs];
  const IrsCandidates c2 = IrsCandidates::around(w, *u2, s.d_serve());
  const double d2 = std::max(dist(*u2, sb), kMinDist);
  LinkClass post;
  if (!w.segment_blocked(*u2, sb)) {
    post.state = LosState::LoS;
    post.power = rx_power_direct(LosState::LoS, d2, s);
  } else if (a.link.irs && irs_qualifies(w, *a.link.irs, *u2, sb, s.d_serve())) {
    post.state = LosState::RLoS;
    post.irs = a.link.irs;
    post.power = reflected_power(*a.link.irs, *u2, sb, s);
  } else {
    double p = 0.0;
    if (const BlockageSegment* irs = best_irs(w, c2, sb, s, &p)) {
      post.state = LosState::RLoS;
      post.irs = irs;
      post.power = p;
    } else {
      post.state = LosState::NLoS;
      post.power = rx_power_direct(LosState::NLoS, d2, s);
    }
  }
  rec.j = post.state;
  rec.valid = true;
  if (cfg.protocol == Protocol::Transition) return rec;

  const bool with_r = s.params().ho_include_rlos_candidates;
  const bool frozen = s.params().ho_frozen_candidate_states;
  auto trigger = [&](Point2D b) {
    rec.ho = true;
    rec.trigger_before = classify_bs(w, c1, b, s).state;
  };
  std::vector<double> d;
  const auto order = order_by_distance(w.bs(), *u2, d);
  for (int i : order) {
    if (i == a.bs) continue;
    double bound = direct_bound(d[i], s);
    if (with_r) bound = std::max(bound, reflected_bound(c2, d[i], s));
    if (bound <= post.power) break;
    const Point2D b = w.bs()[i];
    if (frozen) {
      const LinkClass before = classify_bs(w, c1, b, s);
      double p = 0.0;
      if (before.state != LosState::RLoS) p = rx_power_direct(before.state, d[i], s);
      else if (with_r) p = classify_bs(w, c2, b, s).power;
      if (p > post.power) {
        rec.ho = true;
        rec.trigger_before = before.state;
        break;
      }
      continue;
    }
    if (!w.segment_blocked(*u2, b)) {
      if (rx_power_direct(LosState::LoS, d[i], s) > post.power) {
        trigger(b);
        break;
      }
      continue;
    }
    if (with_r) {
      if (classify_bs(w, c2, b, s).power > post.power) {
        trigger(b);
        break;
      }
      continue;
    }
    if (rx_power_direct(LosState::NLoS, d[i], s) > post.power && !best_irs(w, c2, b, s, nullptr)) {
      trigger(b);
      break;
    }
  }
  return rec;
}

EstimateWithCI EstimateWithCI::bernoulli(std::uint64_t hits, std::uint64_t n, std::uint64_t seed) {
  EstimateWithCI e;
  e.n = n;
  e.seed = seed;
  if (n == 0) {
    e.ci = 1.0;
    return e;
  }
  e.mean = static_cast<double>(hits) / static_cast<double>(n);
  e.ci = 1.96 * std::sqrt(e.mean * (1.0 - e.mean) / static_cast<double>(n));
  return e;
}

EstimateWithCI McResult::state(LosState k) const {
  return EstimateWithCI::bernoulli(k_count[static_cast<int>(k)], n_valid, seed);
}

EstimateWithCI McResult::transition(LosState k, LosState j) const {
  const int ki = static_cast<int>(k);
  return EstimateWithCI::bernoulli(kj_count[ki][static_cast<int>(j)], k_count[ki], seed);
}

EstimateWithCI McResult::handover() const { return EstimateWithCI::bernoulli(ho_count, n_valid, seed); }

EstimateWithCI McResult::handover_given(LosState k) const {
  const int ki = static_cast<int>(k);
  return EstimateWithCI::bernoulli(ho_by_k[ki], k_count[ki], seed);
}

McResult estimate(const Scenario& s, const EstimateOptions& opt) {
  if (opt.n_drops < 1) throw Error(Errc::InvalidArgument, "estimate: n_drops must be positive");
  unsigned nt = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  nt = static_cast<unsigned>(std::min<std::uint64_t>(nt, (opt.n_drops + 255) / 256));
  constexpr std::uint64_t kChunk = 256;
  std::atomic<std::uint64_t> next{0};
  std::mutex mu;
  McResult total;
  total.protocol = opt.drop.protocol;
  total.seed = opt.seed;
  total.n_drops = opt.n_drops;
  std::exception_ptr failure;

  auto worker = [&]() {
    McResult local;
    try {
      for (;;) {
        const std::uint64_t b = next.fetch_add(kChunk);
        if (b >= opt.n_drops) break;
        const std::uint64_t e = std::min(opt.n_drops, b + kChunk);
        for (std::uint64_t i = b; i < e; ++i) {
          const DropRecord r = run_drop(s, opt.drop, opt.seed, i);
          if (r.stuck) ++local.n_stuck;
          if (r.empty) ++local.n_empty;
          if (!r.valid) continue;
          ++local.n_valid;
          const int k = static_cast<int>(r.k), j = static_cast<int>(r.j);
          ++local.k_count[k];
          ++local.kj_count[k][j];
          if (r.ho) {
            ++local.ho_count;
            ++local.ho_by_k[k];
          }
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lk(mu);
      if (!failure) failure = std::current_exception();
      next.store(opt.n_drops);
    }
    std::lock_guard<std::mutex> lk(mu);
    total.n_valid += local.n_valid;
    total.n_stuck += local.n_stuck;
    total.n_empty += local.n_empty;
    total.ho_count += local.ho_count;
    for (int k = 0; k < 3; ++k) {
      total.k_count[k] += local.k_count[k];
      total.ho_by_k[k] += local.ho_by_k[k];
      for (int j = 0; j < 3; ++j) total.kj_count[k][j] += local.kj_count[k][j];
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < nt; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  if (2 * (total.n_drops - total.n_valid) > total.n_drops)
    throw Error(Errc::TooFewValidDrops, "estimate: more than half of the drops were discarded");
  if (log_enabled() && total.n_valid < total.n_drops)
    log_line("estimate: discarded " + std::to_string(total.n_drops - total.n_valid) + " drops");
  return total;
}

}  // namespace irsho::mc
