#pragma once

#include <string>
#include <vector>

#include "pssc/simulation.hpp"

namespace pssc {

/// One stretch of constant reference.
struct SegmentMetrics {
  Index begin = 0;             ///< first cycle
  Index end = 0;               ///< one past the last cycle
  double target = 0.0;
  double step = 0.0;           ///< target minus the output at `begin`
  double overshoot = 0.0;      ///< largest excursion past the target in the direction of the step, >= 0
  double overshoot_pct = 0.0;  ///< overshoot relative to |step|; 0 when the step is zero
  double steady_state_error = 0.0; ///< mean signed error over the last 20% of the segment
};

struct OutputMetrics {
  std::string name;
  double overshoot = 0.0;          ///< max over segments
  double overshoot_pct = 0.0;      ///< max over segments
  double steady_state_error = 0.0; ///< largest |segment steady-state error|
  double mean_abs_error = 0.0;     ///< over the whole trace
  std::vector<SegmentMetrics> segments;
};

struct TraceMetrics {
  std::string scenario;
  std::string controller;
  Index cycles = 0;
  Index saturation_cycles = 0;
  Index fallback_cycles = 0;
  std::vector<OutputMetrics> outputs;

  const OutputMetrics& output(const std::string& name) const;
};

/// Metrics of the noise-free plant outputs against the requested reference.
TraceMetrics trace_metrics(const SimTrace& trace);

/// Machine-readable form (validates against docs/metrics.schema.json).
std::string metrics_to_json(const TraceMetrics& metrics);
/// Human-readable summary.
std::string metrics_to_text(const TraceMetrics& metrics);

} // namespace pssc
