#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace gridres {

// The per-trajectory summary triple: outage peak, restoration duration, and
// outage intensity (area under the customers-out curve).
struct SummaryMetrics {
  long long peak_customers = 0;
  double duration_h = 0.0;
  double auc_customer_hours = 0.0;
  bool operator==(const SummaryMetrics&) const = default;
};

SummaryMetrics summarize(const std::vector<long long>& trajectory);

// Simulated central estimate over observed value.
double ratio(double sim_mean, double observed);

// Empirical quantile with linear interpolation at index q*(n-1).
double quantile(std::vector<double> values, double q);

struct EnsembleDistribution {
  std::string metric_name;
  std::vector<double> values;
  double mean = 0.0;
  double p05 = 0.0;
  double p95 = 0.0;

  static EnsembleDistribution from_values(std::string name, std::vector<double> values);
};

struct HitFlags {
  bool strict = false;     // observed inside the simulated p05-p95 interval
  bool pragmatic = false;  // mean within 0.5x..2.0x of observed
};

HitFlags hits(const EnsembleDistribution& dist, double observed);

struct MetricAssessment {
  std::string metric;
  double observed = 0.0;
  double sim_mean = 0.0;
  double p05 = 0.0;
  double p95 = 0.0;
  double ratio = 0.0;
  bool strict_hit = false;
  bool pragmatic_hit = false;
  bool assessable = true;  // false when the observed metric is not positive
};

struct AssessmentReport {
  std::string event_id;
  int episodes = 0;
  std::vector<MetricAssessment> metrics;  // peak, duration, auc
};

AssessmentReport assess_ensemble(const std::string& event_id,
                                 const std::vector<SummaryMetrics>& episode_metrics,
                                 const SummaryMetrics& observed);

struct DecileRow {
  int decile = 0;  // 1 = lowest power-outage intensity
  int episodes = 0;
  double flood_occurrence = 0.0;
  double mean_flood_customer_auc = 0.0;
};

// Episodes sorted by power AUC and split into 10 near-equal groups; sizes
// differ by at most one, lower deciles take the extra episodes.
std::vector<DecileRow> decile_report(const std::vector<double>& power_auc,
                                     const std::vector<uint8_t>& flood_flags,
                                     const std::vector<double>& flood_customer_auc);

struct ConvergenceRow {
  int rung = 0;
  std::string metric;
  double mean = 0.0;
  double rel_change_vs_final = 0.0;
  bool stable = false;  // this rung and all later rungs within the threshold
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  int stable_at = -1;  // smallest rung stable for all metrics; -1 if none
  double threshold = 0.05;
};

// Nested-prefix means: the N-episode rung uses values[0..N-1]. A rung is
// stable when every metric's mean stays within the threshold-relative band of
// the final rung's mean from that rung onward.
ConvergenceReport convergence_report(
    const std::vector<int>& ladder,
    const std::map<std::string, std::vector<double>>& metric_values,
    double threshold = 0.05);

}  // namespace gridres
