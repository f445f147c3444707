#include "gridres/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gridres/common.hpp"

namespace gridres {

SummaryMetrics summarize(const std::vector<long long>& trajectory) {
  if (trajectory.empty()) throw InputError("summarize: empty trajectory");
  SummaryMetrics m;
  int first = -1;
  int last = -1;
  for (int i = 0; i < static_cast<int>(trajectory.size()); ++i) {
    const long long v = trajectory[i];
    m.peak_customers = std::max(m.peak_customers, v);
    m.auc_customer_hours += static_cast<double>(v);
    if (v > 0) {
      if (first < 0) first = i;
      last = i;
    }
  }
  m.duration_h = first < 0 ? 0.0 : static_cast<double>(last - first + 1);
  return m;
}

double ratio(double sim_mean, double observed) {
  if (!(observed > 0.0)) {
    throw InputError("observed metric must be positive for ratio assessment");
  }
  return sim_mean / observed;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw InputError("quantile: empty values");
  if (q < 0.0 || q > 1.0) throw InputError("quantile: q outside [0,1]");
  std::sort(values.begin(), values.end());
  const double idx = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(idx));
  const auto hi = static_cast<std::size_t>(std::ceil(idx));
  const double frac = idx - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

EnsembleDistribution EnsembleDistribution::from_values(std::string name,
                                                       std::vector<double> values) {
  if (values.empty()) throw InputError("ensemble distribution needs values");
  EnsembleDistribution d;
  d.metric_name = std::move(name);
  d.mean = std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
  d.p05 = quantile(values, 0.05);
  d.p95 = quantile(values, 0.95);
  d.values = std::move(values);
  return d;
}

HitFlags hits(const EnsembleDistribution& dist, double observed) {
  if (!(observed > 0.0)) {
    throw InputError("observed metric must be positive for hit assessment");
  }
  HitFlags f;
  f.strict = dist.p05 <= observed && observed <= dist.p95;
  const double r = dist.mean / observed;
  f.pragmatic = r >= 0.5 && r <= 2.0;
  return f;
}

AssessmentReport assess_ensemble(const std::string& event_id,
                                 const std::vector<SummaryMetrics>& episode_metrics,
                                 const SummaryMetrics& observed) {
  if (episode_metrics.empty()) throw InputError("assess_ensemble: no episodes");
  AssessmentReport report;
  report.event_id = event_id;
  report.episodes = static_cast<int>(episode_metrics.size());

  const std::vector<std::pair<std::string, double>> observed_values = {
      {"peak", static_cast<double>(observed.peak_customers)},
      {"duration", observed.duration_h},
      {"auc", observed.auc_customer_hours},
  };
  for (const auto& [name, obs] : observed_values) {
    std::vector<double> values;
    values.reserve(episode_metrics.size());
    for (const auto& m : episode_metrics) {
      if (name == "peak") values.push_back(static_cast<double>(m.peak_customers));
      if (name == "duration") values.push_back(m.duration_h);
      if (name == "auc") values.push_back(m.auc_customer_hours);
    }
    auto dist = EnsembleDistribution::from_values(name, std::move(values));
    MetricAssessment a;
    a.metric = name;
    a.observed = obs;
    a.sim_mean = dist.mean;
    a.p05 = dist.p05;
    a.p95 = dist.p95;
    if (obs > 0.0) {
      a.ratio = ratio(dist.mean, obs);
      const auto f = hits(dist, obs);
      a.strict_hit = f.strict;
      a.pragmatic_hit = f.pragmatic;
    } else {
      a.assessable = false;
    }
    report.metrics.push_back(std::move(a));
  }
  return report;
}

std::vector<DecileRow> decile_report(const std::vector<double>& power_auc,
                                     const std::vector<uint8_t>& flood_flags,
                                     const std::vector<double>& flood_customer_auc) {
  const std::size_t n = power_auc.size();
  if (flood_flags.size() != n || flood_customer_auc.size() != n) {
    throw InputError("decile_report: input length mismatch");
  }
  if (n < 10) throw InputError("decile_report: need at least 10 episodes");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return power_auc[a] < power_auc[b]; });

  std::vector<DecileRow> rows;
  const std::size_t base = n / 10;
  const std::size_t extra = n % 10;
  std::size_t cursor = 0;
  for (int d = 0; d < 10; ++d) {
    const std::size_t size = base + (static_cast<std::size_t>(d) < extra ? 1 : 0);
    DecileRow row;
    row.decile = d + 1;
    row.episodes = static_cast<int>(size);
    long long flooded = 0;
    double auc_sum = 0.0;
    for (std::size_t k = 0; k < size; ++k) {
      const int ep = order[cursor++];
      if (flood_flags[ep]) ++flooded;
      auc_sum += flood_customer_auc[ep];
    }
    row.flood_occurrence = static_cast<double>(flooded) / static_cast<double>(size);
    row.mean_flood_customer_auc = auc_sum / static_cast<double>(size);
    rows.push_back(row);
  }
  return rows;
}

ConvergenceReport convergence_report(
    const std::vector<int>& ladder,
    const std::map<std::string, std::vector<double>>& metric_values, double threshold) {
  if (ladder.empty()) throw InputError("convergence_report: empty ladder");
  for (std::size_t i = 1; i < ladder.size(); ++i) {
    if (ladder[i] <= ladder[i - 1]) {
      throw InputError("convergence_report: ladder not strictly ascending");
    }
  }
  const int max_rung = ladder.back();
  for (const auto& [name, values] : metric_values) {
    if (static_cast<int>(values.size()) < max_rung) {
      throw InputError("convergence_report: metric '" + name + "' has " +
                       std::to_string(values.size()) + " values, ladder needs " +
                       std::to_string(max_rung));
    }
  }

  ConvergenceReport report;
  report.threshold = threshold;

  std::map<std::string, std::vector<double>> rung_means;
  for (const auto& [name, values] : metric_values) {
    double running = 0.0;
    std::size_t taken = 0;
    auto& means = rung_means[name];
    for (int rung : ladder) {
      while (taken < static_cast<std::size_t>(rung)) running += values[taken++];
      means.push_back(running / static_cast<double>(rung));
    }
  }

  // Relative change uses the final rung's mean as reference; a zero reference
  // counts as converged only for a zero rung mean.
  auto rel_change = [](double mean, double final_mean) {
    if (final_mean == 0.0) return mean == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::abs(mean - final_mean) / std::abs(final_mean);
  };

  std::map<std::string, std::vector<bool>> metric_stable;
  for (const auto& [name, means] : rung_means) {
    const double final_mean = means.back();
    std::vector<bool> within(ladder.size());
    for (std::size_t i = 0; i < ladder.size(); ++i) {
      within[i] = rel_change(means[i], final_mean) < threshold;
    }
    auto& stable = metric_stable[name];
    stable.assign(ladder.size(), false);
    bool suffix_ok = true;
    for (std::size_t i = ladder.size(); i-- > 0;) {
      suffix_ok = suffix_ok && within[i];
      stable[i] = suffix_ok;
    }
  }

  for (std::size_t i = 0; i < ladder.size(); ++i) {
    bool all_stable = true;
    for (const auto& [name, stable] : metric_stable) all_stable &= stable[i];
    if (all_stable && report.stable_at < 0) report.stable_at = ladder[i];
    for (const auto& [name, means] : rung_means) {
      ConvergenceRow row;
      row.rung = ladder[i];
      row.metric = name;
      row.mean = means[i];
      row.rel_change_vs_final = rel_change(means[i], means.back());
      row.stable = metric_stable[name][i];
      report.rows.push_back(std::move(row));
    }
  }
  // The final rung matches itself by construction; on multi-rung ladders it
  // cannot certify stabilization on its own.
  if (ladder.size() > 1 && report.stable_at == ladder.back()) report.stable_at = -1;
  return report;
}

}  // namespace gridres
