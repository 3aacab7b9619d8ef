#include "pssc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

#include "pssc/error.hpp"

namespace pssc {

const OutputMetrics& TraceMetrics::output(const std::string& name) const
{
  for (const auto& o : outputs) {
    if (o.name == name) {
      return o;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "no output named " + name);
}

TraceMetrics trace_metrics(const SimTrace& trace)
{
  if (trace.records.empty()) {
    throw Error(ErrorCode::InvalidArgument, "trace is empty");
  }
  const auto& recs = trace.records;
  const Index cycles = static_cast<Index>(recs.size());
  const Index m = recs.front().y_true.size();

  TraceMetrics out;
  out.scenario = trace.scenario;
  out.controller = std::string(to_string(trace.controller));
  out.cycles = cycles;
  for (const auto& r : recs) {
    out.saturation_cycles += r.saturated() ? 1 : 0;
    out.fallback_cycles += r.fallback() ? 1 : 0;
  }

  for (Index i = 0; i < m; ++i) {
    OutputMetrics om;
    om.name = i < static_cast<Index>(trace.output_names.size()) ? trace.output_names[static_cast<std::size_t>(i)]
                                                               : "y" + std::to_string(i + 1);
    double abs_sum = 0.0;
    for (const auto& r : recs) {
      abs_sum += std::abs(r.y_true(i) - r.y_ref(i));
    }
    om.mean_abs_error = abs_sum / static_cast<double>(cycles);

    Index begin = 0;
    while (begin < cycles) {
      const double target = recs[static_cast<std::size_t>(begin)].y_ref(i);
      Index end = begin + 1;
      while (end < cycles && recs[static_cast<std::size_t>(end)].y_ref(i) == target) {
        ++end;
      }
      SegmentMetrics seg;
      seg.begin = begin;
      seg.end = end;
      seg.target = target;
      seg.step = target - recs[static_cast<std::size_t>(begin)].y_true(i);
      const double dir = seg.step > 0.0 ? 1.0 : (seg.step < 0.0 ? -1.0 : 0.0);
      for (Index k = begin; k < end; ++k) {
        const double excursion = dir * (recs[static_cast<std::size_t>(k)].y_true(i) - target);
        seg.overshoot = std::max(seg.overshoot, excursion);
      }
      seg.overshoot_pct = seg.step != 0.0 ? 100.0 * seg.overshoot / std::abs(seg.step) : 0.0;
      const Index tail = std::max<Index>(1, (end - begin) / 5);
      double err = 0.0;
      for (Index k = end - tail; k < end; ++k) {
        err += recs[static_cast<std::size_t>(k)].y_true(i) - target;
      }
      seg.steady_state_error = err / static_cast<double>(tail);

      om.overshoot = std::max(om.overshoot, seg.overshoot);
      om.overshoot_pct = std::max(om.overshoot_pct, seg.overshoot_pct);
      om.steady_state_error = std::max(om.steady_state_error, std::abs(seg.steady_state_error));
      om.segments.push_back(seg);
      begin = end;
    }
    out.outputs.push_back(std::move(om));
  }
  return out;
}

std::string metrics_to_json(const TraceMetrics& metrics)
{
  using nlohmann::json;
  json j;
  j["scenario"] = metrics.scenario;
  j["controller"] = metrics.controller;
  j["cycles"] = metrics.cycles;
  j["saturation_cycles"] = metrics.saturation_cycles;
  j["fallback_cycles"] = metrics.fallback_cycles;
  json outputs = json::array();
  for (const auto& o : metrics.outputs) {
    json segs = json::array();
    for (const auto& s : o.segments) {
      segs.push_back({{"begin", s.begin},
                      {"end", s.end},
                      {"target", s.target},
                      {"step", s.step},
                      {"overshoot", s.overshoot},
                      {"overshoot_pct", s.overshoot_pct},
                      {"steady_state_error", s.steady_state_error}});
    }
    outputs.push_back({{"name", o.name},
                       {"overshoot", o.overshoot},
                       {"overshoot_pct", o.overshoot_pct},
                       {"steady_state_error", o.steady_state_error},
                       {"mean_abs_error", o.mean_abs_error},
                       {"segments", segs}});
  }
  j["outputs"] = outputs;
  return j.dump(2) + "\n";
}

std::string metrics_to_text(const TraceMetrics& metrics)
{
  std::ostringstream os;
  os << "scenario " << metrics.scenario << ", controller " << metrics.controller << ", " << metrics.cycles
     << " cycles\n";
  os << "saturation cycles: " << metrics.saturation_cycles << "\n";
  os << "fallback cycles:   " << metrics.fallback_cycles << "\n";
  for (const auto& o : metrics.outputs) {
    os << o.name << ": overshoot " << o.overshoot << " (" << o.overshoot_pct << " %), steady-state error "
       << o.steady_state_error << ", mean |error| " << o.mean_abs_error << "\n";
  }
  return os.str();
}

} // namespace pssc
