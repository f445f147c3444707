#pragma once

#include <set>
#include <string>

#include "gridres/hazard.hpp"
#include "gridres/network.hpp"
#include "gridres/rng.hpp"

namespace gridres {

// Logistic gust fragility. The fragility factor divides the base threshold,
// so larger factors shift failure probability toward lower gust speeds.
// Curve constants are calibration knobs, not measured values.
struct FragilityParams {
  double theta0_ms = 30.0;
  double slope_ms = 3.0;
  double fragility_factor = 0.80;
  double veg_sensitivity = 0.2;
  double p_cap = 0.95;
};

double effective_threshold(const PowerLine& line, const FragilityParams& p);

// Underground lines return 0; overhead lines follow the capped logistic.
double failure_probability(double gust_ms, const PowerLine& line,
                           const FragilityParams& p);

// Core shared with the engine's hot loop.
double failure_probability_overhead(double gust_ms, double theta_eff_ms,
                                    const FragilityParams& p);

// One hour of independent per-line Bernoulli draws. Exactly one variate is
// consumed per intact overhead line, in network line order, so a fixed stream
// state pins the outcome. Exposure patch = patch of the line's to_node.
std::set<std::string> sample_hourly_failures(const PowerNetwork& net,
                                             const WeatherFrame& frame,
                                             const std::set<std::string>& already_failed,
                                             const FragilityParams& p,
                                             rng::Stream& stream);

}  // namespace gridres
