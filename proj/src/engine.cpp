#include "gridres/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <queue>
#include <thread>

#include "gridres/common.hpp"

namespace gridres {

std::string to_string(RepairOrdering ordering) {
  switch (ordering) {
    case RepairOrdering::Proximity: return "proximity";
    case RepairOrdering::Random: return "random";
    case RepairOrdering::Criticality: return "criticality";
    case RepairOrdering::HybridDynamic: return "hybrid_dynamic";
  }
  throw InternalError("unhandled RepairOrdering");
}

RepairOrdering repair_ordering_from_string(const std::string& s) {
  if (s == "proximity") return RepairOrdering::Proximity;
  if (s == "random") return RepairOrdering::Random;
  if (s == "criticality") return RepairOrdering::Criticality;
  if (s == "hybrid_dynamic") return RepairOrdering::HybridDynamic;
  throw InputError("unknown repair ordering '" + s + "'");
}

std::set<std::string> failed_lines_at(const EpisodeResult& result, double hour) {
  std::map<std::string, double> finish;
  for (const auto& r : result.repair_log) finish[r.line_id] = r.finish_h;
  std::set<std::string> failed;
  for (const auto& f : result.failure_log) {
    if (static_cast<double>(f.hour) > hour) continue;
    auto it = finish.find(f.line_id);
    if (it == finish.end() || it->second > hour) failed.insert(f.line_id);
  }
  return failed;
}

namespace {

// Min-max normalization over the candidate set; constant sets contribute 0.
void minmax_normalize(std::vector<double>& values) {
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double span = *hi - *lo;
  if (span <= 0.0) {
    std::fill(values.begin(), values.end(), 0.0);
    return;
  }
  for (double& v : values) v = (v - *lo) / span;
}

}  // namespace

int pick_next_repair(RepairOrdering policy, const std::vector<int>& pool,
                     const CrewState& crew, const NetworkIndex& index, double hour,
                     double hazard_end_h, const std::vector<int>& feeder_backlog,
                     const EpisodeConfig& cfg, rng::Stream& stream) {
  if (pool.empty()) throw InternalError("pick_next_repair: empty candidate set");

  auto id_rank = [&](int line) { return index.line_id_rank(line); };

  switch (policy) {
    case RepairOrdering::Random:
      return pool[stream.uniform_index(pool.size())];

    case RepairOrdering::Proximity: {
      int best = pool.front();
      double best_d = dist(crew.position, index.line_midpoint(best));
      for (std::size_t i = 1; i < pool.size(); ++i) {
        const double d = dist(crew.position, index.line_midpoint(pool[i]));
        if (d < best_d || (d == best_d && id_rank(pool[i]) < id_rank(best))) {
          best = pool[i];
          best_d = d;
        }
      }
      return best;
    }

    case RepairOrdering::Criticality: {
      int best = pool.front();
      for (std::size_t i = 1; i < pool.size(); ++i) {
        const long long c = index.downstream_customers(pool[i]);
        const long long bc = index.downstream_customers(best);
        if (c > bc || (c == bc && id_rank(pool[i]) < id_rank(best))) best = pool[i];
      }
      return best;
    }

    case RepairOrdering::HybridDynamic: {
      std::vector<double> crit(pool.size());
      std::vector<double> distance(pool.size());
      std::vector<double> backlog(pool.size());
      for (std::size_t i = 0; i < pool.size(); ++i) {
        crit[i] = static_cast<double>(index.downstream_customers(pool[i]));
        distance[i] = dist(crew.position, index.line_midpoint(pool[i]));
        backlog[i] = static_cast<double>(feeder_backlog[index.line_feeder(pool[i])]);
      }
      minmax_normalize(crit);
      minmax_normalize(distance);
      minmax_normalize(backlog);

      // Backlog weight ramps from its base to 2x over backlog_ramp_h of recovery.
      const double ramp =
          std::min(1.0, std::max(0.0, hour - hazard_end_h) / cfg.backlog_ramp_h);
      double w_c = cfg.w_crit;
      double w_d = cfg.w_dist;
      double w_b = cfg.w_backlog_base * (1.0 + ramp);
      const double w_sum = w_c + w_d + w_b;
      if (w_sum <= 0.0) throw InputError("hybrid_dynamic weights sum to zero");
      w_c /= w_sum;
      w_d /= w_sum;
      w_b /= w_sum;

      int best = -1;
      double best_score = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < pool.size(); ++i) {
        const double score = w_c * crit[i] + w_d * (1.0 - distance[i]) + w_b * backlog[i];
        if (best < 0 || score > best_score ||
            (score == best_score && id_rank(pool[i]) < id_rank(best))) {
          best = pool[i];
          best_score = score;
        }
      }
      return best;
    }
  }
  throw InternalError("unhandled repair policy");
}

Simulator::Simulator(const PowerNetwork& net, const WeatherEvent& event,
                     FragilityParams frag, EpisodeConfig cfg)
    : index_(net), frag_(frag), cfg_(cfg) {
  if (event.frames.empty()) throw InputError("event has zero frames");
  if (event.hazard_window_hours != static_cast<int>(event.frames.size())) {
    throw InputError("hazard_window_hours does not match frame count");
  }
  if (cfg_.crews < 1) throw InputError("crews must be >= 1");
  if (cfg_.repair_min_h > cfg_.repair_max_h) {
    throw InputError("repair time range is inverted");
  }
  if (cfg_.w_crit < 0 || cfg_.w_dist < 0 || cfg_.w_backlog_base < 0) {
    throw InputError("hybrid weights must be non-negative");
  }

  hazard_hours_ = event.hazard_window_hours;
  const int lines = index_.line_count();
  gust_.resize(static_cast<std::size_t>(hazard_hours_) * lines);
  for (int h = 0; h < hazard_hours_; ++h) {
    const auto& frame = event.frames[h];
    if (frame.hour_index != h) throw InputError("event frames not consecutive");
    for (int l = 0; l < lines; ++l) {
      auto it = frame.gust.find(index_.line_patch(l));
      if (it == frame.gust.end()) {
        throw InputError("frame " + std::to_string(h) + " has no gust for patch '" +
                         index_.line_patch(l) + "'");
      }
      gust_[static_cast<std::size_t>(h) * lines + l] = it->second;
    }
  }

  theta_eff_.resize(lines);
  for (int l = 0; l < lines; ++l) {
    theta_eff_[l] = effective_threshold(net.lines[l], frag_);
  }
}

void Simulator::enable_flood(const SewageNetwork& sewage, const FloodConfig& flood_cfg) {
  auto violations = validate_sewage(sewage, &index_.net());
  if (!violations.empty()) {
    throw InputError("invalid sewage network: [" + violations.front().subject_id +
                     ": " + violations.front().rule + "]" +
                     (violations.size() > 1
                          ? " (+" + std::to_string(violations.size() - 1) + " more)"
                          : ""));
  }
  if (!(flood_cfg.recession_max_m > 0.0)) {
    throw InputError("flood recession range must allow shrinkage");
  }
  sewage_ = &sewage;
  flood_cfg_ = flood_cfg;
  pump_nodes_.clear();
  for (const auto& pump : sewage.pumps) {
    pump_nodes_.push_back(index_.node_index(pump.power_node_id));
  }
}

EpisodeResult Simulator::run_episode(uint64_t seed) const {
  return run_power_episode(seed, nullptr);
}

std::pair<EpisodeResult, FloodResult> Simulator::run_coupled_episode(uint64_t seed) const {
  if (sewage_ == nullptr) throw InternalError("flood coupling not enabled");
  FloodResult flood;
  auto power = run_power_episode(seed, &flood);
  return {std::move(power), std::move(flood)};
}

EpisodeResult Simulator::run_power_episode(uint64_t seed, FloodResult* flood_out) const {
  const int lines = index_.line_count();
  rng::Stream failure_stream(rng::substream_seed(seed, rng::kTagFailure));
  rng::Stream repair_stream(rng::substream_seed(seed, rng::kTagRepair));

  EpisodeResult result;
  result.seed = seed;

  // Hazard window: hourly Bernoulli failure sampling, no repairs yet.
  std::vector<int> fail_hour(lines, -1);
  std::vector<int> failed_order;
  for (int h = 0; h < hazard_hours_; ++h) {
    for (int l = 0; l < lines; ++l) {
      const auto& line = index_.net().lines[l];
      if (!line.overhead || fail_hour[l] >= 0) continue;
      const double u = failure_stream.next_unit();
      const double p = failure_probability_overhead(
          gust_[static_cast<std::size_t>(h) * lines + l], theta_eff_[l], frag_);
      if (u < p) {
        fail_hour[l] = h;
        failed_order.push_back(l);
        result.failure_log.push_back({h, line.id});
      }
    }
  }

  // Restoration: crews start at feeder roots (round-robin) and work the
  // backlog under the configured ordering once the hazard window closes.
  std::vector<double> finish(lines, std::numeric_limits<double>::infinity());
  const double hazard_end = static_cast<double>(hazard_hours_);
  std::vector<CrewState> crews(cfg_.crews);
  for (int c = 0; c < cfg_.crews; ++c) {
    crews[c].crew_id = c;
    crews[c].position = index_.root_position(c % index_.feeder_count());
    crews[c].busy_until = hazard_end;
  }

  std::vector<int> pool = failed_order;
  std::sort(pool.begin(), pool.end());
  std::vector<int> backlog(index_.feeder_count(), 0);
  for (int l : pool) ++backlog[index_.line_feeder(l)];

  using CrewSlot = std::pair<double, int>;
  std::priority_queue<CrewSlot, std::vector<CrewSlot>, std::greater<>> free_at;
  for (const auto& crew : crews) free_at.push({crew.busy_until, crew.crew_id});

  while (!pool.empty()) {
    const auto [t, crew_id] = free_at.top();
    free_at.pop();
    CrewState& crew = crews[crew_id];
    const int line = pick_next_repair(cfg_.ordering, pool, crew, index_, t, hazard_end,
                                      backlog, cfg_, repair_stream);
    pool.erase(std::find(pool.begin(), pool.end(), line));
    --backlog[index_.line_feeder(line)];

    const Point site = index_.line_midpoint(line);
    const double travel = cfg_.travel_speed_m_per_h > 0.0
                              ? dist(crew.position, site) / cfg_.travel_speed_m_per_h
                              : 0.0;
    const double duration = repair_stream.uniform(cfg_.repair_min_h, cfg_.repair_max_h);
    const double done = t + travel + duration;
    finish[line] = done;
    result.repair_log.push_back({t, done, index_.line_id(line), crew_id});
    crew.position = site;
    crew.busy_until = done;
    free_at.push({done, crew_id});
  }

  // Outage trajectory at integer hours; the final entry is always zero.
  int last_active = -1;
  for (int l : failed_order) {
    last_active = std::max(last_active, static_cast<int>(std::ceil(finish[l])) - 1);
  }
  const int horizon = std::max(hazard_hours_ - 1, last_active) + 1;

  std::vector<uint8_t> failed_mask(lines, 0);
  std::vector<uint8_t> reached;
  const bool track_pumps = sewage_ != nullptr;

  // Flood bookkeeping (coupled runs only).
  FloodState flood_state;
  std::map<std::string, int> hours_unpowered;
  rng::Stream flood_stream(rng::substream_seed(seed, rng::kTagFlood));
  const auto& customer_points = index_.customer_points();

  int t = 0;
  while (true) {
    const bool in_power_horizon = t <= horizon;
    if (in_power_horizon) {
      std::fill(failed_mask.begin(), failed_mask.end(), 0);
      for (int l : failed_order) {
        if (fail_hour[l] <= t && finish[l] > static_cast<double>(t)) failed_mask[l] = 1;
      }
      index_.reachable_nodes(failed_mask, reached);
      long long connected = 0;
      for (int n = 0; n < index_.node_count(); ++n) {
        if (reached[n]) connected += index_.node_customers(n);
      }
      result.outage_trajectory.push_back(index_.total_customers() - connected);
    }

    if (track_pumps) {
      std::set<std::string> unpowered;
      if (in_power_horizon) {
        for (std::size_t p = 0; p < pump_nodes_.size(); ++p) {
          if (!reached[pump_nodes_[p]]) unpowered.insert(sewage_->pumps[p].id);
        }
      }
      if (in_power_horizon) {
        result.pump_outage_trajectory.emplace_back(unpowered.begin(), unpowered.end());
      }
      if (flood_out != nullptr) {
        for (const auto& pump : sewage_->pumps) {
          if (unpowered.count(pump.id)) {
            ++hours_unpowered[pump.id];
          } else {
            hours_unpowered[pump.id] = 0;
          }
        }
        flood_state = advance_flood(flood_state, unpowered, hours_unpowered, *sewage_,
                                    flood_cfg_, flood_stream);
        flood_out->flooded_customers_trajectory.push_back(
            flooded_customers(flood_state, *sewage_, customer_points));
        flood_out->flooded_area_trajectory.push_back(
            flooded_area(flood_state, *sewage_, flood_cfg_));
      }
    }

    const bool flood_active = flood_out != nullptr && !flood_state.empty();
    if (t >= horizon && !flood_active) break;
    ++t;
    if (t > horizon + 1000000) {
      throw InternalError("flood recession failed to terminate");
    }
  }

  if (flood_out != nullptr) {
    flood_out->metrics = flood_metrics(flood_out->flooded_customers_trajectory,
                                       flood_out->flooded_area_trajectory);
  }
  return result;
}

EnsembleResult Simulator::run_ensemble(uint64_t base_seed, int n_episodes,
                                       int workers) const {
  if (n_episodes < 1) throw InputError("n_episodes must be >= 1");
  workers = std::max(1, workers);
  const bool coupled = sewage_ != nullptr;

  EnsembleResult out;
  out.episodes.resize(n_episodes);
  if (coupled) out.floods.resize(n_episodes);

  auto run_one = [&](int i) {
    const uint64_t seed = rng::episode_seed(base_seed, static_cast<uint64_t>(i));
    if (coupled) {
      auto [power, flood] = run_coupled_episode(seed);
      power.episode_index = i;
      out.episodes[i] = std::move(power);
      out.floods[i] = std::move(flood);
    } else {
      auto power = run_episode(seed);
      power.episode_index = i;
      out.episodes[i] = std::move(power);
    }
  };

  if (workers == 1 || n_episodes == 1) {
    for (int i = 0; i < n_episodes; ++i) run_one(i);
    return out;
  }

  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  const int n_threads = std::min(workers, n_episodes);
  threads.reserve(n_threads);
  for (int w = 0; w < n_threads; ++w) {
    threads.emplace_back([&] {
      while (!failed.load(std::memory_order_relaxed)) {
        const int i = next.fetch_add(1);
        if (i >= n_episodes) return;
        try {
          run_one(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          failed.store(true);
        }
      }
    });
  }
  for (auto& th : threads) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

EpisodeResult run_episode(const PowerNetwork& net, const WeatherEvent& event,
                          const FragilityParams& frag, const EpisodeConfig& cfg,
                          uint64_t seed) {
  return Simulator(net, event, frag, cfg).run_episode(seed);
}

EnsembleResult run_ensemble(const PowerNetwork& net, const WeatherEvent& event,
                            const FragilityParams& frag, const EpisodeConfig& cfg,
                            uint64_t base_seed, int n_episodes, int workers,
                            const SewageNetwork* sewage, const FloodConfig* flood_cfg) {
  Simulator sim(net, event, frag, cfg);
  if (sewage != nullptr && flood_cfg != nullptr) sim.enable_flood(*sewage, *flood_cfg);
  return sim.run_ensemble(base_seed, n_episodes, workers);
}

}  // namespace gridres
