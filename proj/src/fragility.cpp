#include "gridres/fragility.hpp"

#include <cmath>

#include "gridres/common.hpp"

namespace gridres {

double effective_threshold(const PowerLine& line, const FragilityParams& p) {
  return (p.theta0_ms / p.fragility_factor) *
         (1.0 - p.veg_sensitivity * line.vegetation);
}

double failure_probability_overhead(double gust_ms, double theta_eff_ms,
                                    const FragilityParams& p) {
  const double z = (gust_ms - theta_eff_ms) / p.slope_ms;
  const double logistic = 1.0 / (1.0 + std::exp(-z));
  return std::min(p.p_cap, logistic);
}

double failure_probability(double gust_ms, const PowerLine& line,
                           const FragilityParams& p) {
  if (!line.overhead) return 0.0;
  return failure_probability_overhead(gust_ms, effective_threshold(line, p), p);
}

std::set<std::string> sample_hourly_failures(const PowerNetwork& net,
                                             const WeatherFrame& frame,
                                             const std::set<std::string>& already_failed,
                                             const FragilityParams& p,
                                             rng::Stream& stream) {
  std::map<std::string, const PowerNode*> nodes;
  for (const auto& n : net.nodes) nodes[n.id] = &n;

  std::set<std::string> failed;
  for (const auto& line : net.lines) {
    if (!line.overhead || already_failed.count(line.id)) continue;
    auto node = nodes.find(line.to_node);
    if (node == nodes.end()) {
      throw InputError("line '" + line.id + "' references unknown node '" +
                       line.to_node + "'");
    }
    auto gust = frame.gust.find(node->second->patch_id);
    if (gust == frame.gust.end()) {
      throw InputError("frame has no gust for patch '" + node->second->patch_id + "'");
    }
    const double u = stream.next_unit();
    if (u < failure_probability(gust->second, line, p)) failed.insert(line.id);
  }
  return failed;
}

}  // namespace gridres
