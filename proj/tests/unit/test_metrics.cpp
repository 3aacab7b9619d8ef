#include "doctest.h"
#include "json.hpp"
#include "pssc/error.hpp"
#include "pssc/metrics.hpp"

using namespace pssc;

namespace {

// Single-output trace built from explicit output and reference samples.
SimTrace fixture(const std::vector<double>& y, const std::vector<double>& ref)
{
  SimTrace t;
  t.scenario = "fixture";
  t.output_names = {"y"};
  for (std::size_t k = 0; k < y.size(); ++k) {
    StepRecord r;
    r.k = static_cast<Index>(k);
    r.y_true = Vector::Constant(1, y[k]);
    r.y = r.y_true;
    r.y_ref = Vector::Constant(1, ref[k]);
    t.records.push_back(r);
  }
  return t;
}

} // namespace

TEST_CASE("constant on-target trace has no overshoot or error")
{
  const TraceMetrics m = trace_metrics(fixture(std::vector<double>(30, 2.0), std::vector<double>(30, 2.0)));
  const OutputMetrics& o = m.output("y");
  CHECK(o.overshoot == 0.0);
  CHECK(o.steady_state_error == 0.0);
  CHECK(o.mean_abs_error == 0.0);
  CHECK(o.segments.size() == 1);
  CHECK(m.saturation_cycles == 0);
}

TEST_CASE("injected 5 percent overshoot is recovered")
{
  // step from 0 to 10 at cycle 5, peak 10.5, then settled
  std::vector<double> y(40, 10.0);
  std::vector<double> ref(40, 10.0);
  for (int k = 0; k < 5; ++k) {
    y[k] = 0.0;
    ref[k] = 0.0;
  }
  // the output responds one cycle after the reference moves
  y[5] = 0.0;
  y[6] = 6.0;
  y[7] = 10.5;
  y[8] = 10.2;
  const TraceMetrics m = trace_metrics(fixture(y, ref));
  const OutputMetrics& o = m.output("y");
  REQUIRE(o.segments.size() == 2);
  CHECK(o.segments[1].step == doctest::Approx(10.0));
  CHECK(o.segments[1].overshoot == doctest::Approx(0.5));
  CHECK(o.overshoot_pct == doctest::Approx(5.0));
  CHECK(o.steady_state_error == doctest::Approx(0.0));
}

TEST_CASE("downward steps measure overshoot below the target")
{
  std::vector<double> y = {5, 5, 5, 5.0, -0.4, 0.1, 0.0, 0.0, 0.0, 0.0};
  std::vector<double> ref = {5, 5, 5, 0, 0, 0, 0, 0, 0, 0};
  const OutputMetrics o = trace_metrics(fixture(y, ref)).output("y");
  CHECK(o.overshoot == doctest::Approx(0.4));
  CHECK(o.overshoot_pct == doctest::Approx(8.0));
}

TEST_CASE("steady-state error averages the last fifth of each segment")
{
  std::vector<double> y(20, 0.0);
  const std::vector<double> ref(20, 1.0);
  for (int k = 16; k < 20; ++k) {
    y[k] = k % 2 == 0 ? 0.8 : 0.6;
  }
  const OutputMetrics o = trace_metrics(fixture(y, ref)).output("y");
  CHECK(o.segments[0].steady_state_error == doctest::Approx(-0.3));
  CHECK(o.steady_state_error == doctest::Approx(0.3));
}

TEST_CASE("saturation and fallback cycles are counted from the step status")
{
  SimTrace t = fixture(std::vector<double>(10, 0.0), std::vector<double>(10, 0.0));
  t.records[2].status = StepStatus::Saturated;
  t.records[3].status = StepStatus::FallbackSaturated;
  t.records[7].status = StepStatus::Fallback;
  t.records[8].status = StepStatus::Saturated;
  const TraceMetrics m = trace_metrics(t);
  CHECK(m.saturation_cycles == 3);
  CHECK(m.fallback_cycles == 2);
}

TEST_CASE("json and text renderings carry the same numbers")
{
  std::vector<double> y = {0, 0.5, 1.1, 1.0, 1.0};
  std::vector<double> ref = {1, 1, 1, 1, 1};
  const TraceMetrics m = trace_metrics(fixture(y, ref));
  const auto j = nlohmann::json::parse(metrics_to_json(m));
  CHECK(j["cycles"] == 5);
  CHECK(j["outputs"][0]["name"] == "y");
  CHECK(j["outputs"][0]["overshoot"].get<double>() == doctest::Approx(0.1));
  CHECK(metrics_to_text(m).find("overshoot") != std::string::npos);
}

TEST_CASE("empty trace is rejected")
{
  CHECK_THROWS_AS(trace_metrics(SimTrace{}), Error);
}
