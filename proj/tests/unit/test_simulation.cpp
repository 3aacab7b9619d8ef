#include <sstream>

#include "doctest.h"
#include "pssc/error.hpp"
#include "pssc/scenario.hpp"
#include "pssc/simulation.hpp"
#include "pssc/sliding.hpp"
#include "pssc/trace_io.hpp"
#include "systems.hpp"

using namespace pssc;

namespace {

std::string csv_of(const SimTrace& t)
{
  std::ostringstream os;
  write_trace_csv(os, t);
  return os.str();
}

} // namespace

TEST_CASE("zero-order-hold reference lookup")
{
  Scenario sc;
  sc.reference = {{0, Vector::Constant(1, 1.0)}, {5, Vector::Constant(1, 2.0)}};
  CHECK(sc.reference_at(0)(0) == 1.0);
  CHECK(sc.reference_at(4)(0) == 1.0);
  CHECK(sc.reference_at(5)(0) == 2.0);
  CHECK(sc.reference_at(500)(0) == 2.0);
}

TEST_CASE("record count, cycle numbering and CSV columns")
{
  const Scenario sc = load_scenario(test::scenario_path("step_tracking"));
  const SimTrace t = simulate(sc);
  REQUIRE(static_cast<Index>(t.records.size()) == sc.cycles);
  for (std::size_t k = 0; k < t.records.size(); ++k) {
    CHECK(t.records[k].k == static_cast<Index>(k));
  }
  const std::string csv = csv_of(t);
  const std::string header = csv.substr(0, csv.find('\n'));
  CHECK(header
        == "k,x1_true,x2_true,x3_true,x4_true,x1_est,x2_est,x3_est,x4_est,CA50,IMEP,CA50_ref,IMEP_ref,"
           "CA50_virt,IMEP_virt,SOI,FQ,s1,s2,xi1,xi2,status,solve_ms");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == sc.cycles + 1);
}

TEST_CASE("same seed gives a bitwise identical trace, another seed does not")
{
  Scenario sc = load_scenario(test::scenario_path("output_noise"));
  const std::string a = csv_of(simulate(sc));
  const std::string b = csv_of(simulate(sc));
  CHECK(a == b);
  sc.seed += 1;
  CHECK(csv_of(simulate(sc)) != a);
}

TEST_CASE("closed loop stays within ten times the constraint boxes on shipped scenarios")
{
  for (const char* name : {"step_tracking", "fuel_limit", "constant_ca50", "constant_imep",
                           "output_noise", "scalar_demo", "double_integrator"}) {
    Scenario sc = load_scenario(test::scenario_path(name));
    const auto box = sc.state_set.box_bounds();
    REQUIRE(box.has_value());
    const Vector centre = 0.5 * (box->first + box->second);
    const Vector half = 0.5 * (box->second - box->first);
    for (const ControllerKind kind : {ControllerKind::Pssc, ControllerKind::Dsmc}) {
      sc.controller = kind;
      const SimTrace t = simulate(sc);
      for (const auto& r : t.records) {
        CHECK(((r.x_true - centre).cwiseAbs() - 10.0 * half).maxCoeff() <= 0.0);
      }
    }
  }
}

TEST_CASE("DSMC on the exact linear model is on the surface after one step")
{
  const auto sys = test::double_integrator(-0.5);
  Scenario sc = test::inline_scenario(sys, 30, {{0, Vector::Constant(1, 0.5)}, {10, Vector::Constant(1, 1.0)}});
  sc.controller = ControllerKind::Dsmc;
  sc.initial_state = (Vector(2) << 0.2, -0.1).finished();
  const SimTrace t = simulate(sc);
  for (std::size_t k = 1; k < t.records.size(); ++k) {
    CHECK(t.records[k].xi.norm() < 1e-9);
  }
}

TEST_CASE("PSSC records its virtual reference and honours the input box")
{
  const auto sys = test::scalar_system(-0.2);
  const Scenario sc = test::inline_scenario(sys, 30, {{0, Vector::Constant(1, 3.0)}});
  const SimTrace t = simulate(sc);
  CHECK(t.records.back().y_virtual(0) == doctest::Approx(1.0));
  for (const auto& r : t.records) {
    CHECK(std::abs(r.u(0)) <= 1.0 + 1e-9);
    CHECK_FALSE(r.fallback());
  }
}

TEST_CASE("Kalman estimator on the noise-free linear plant matches full state feedback")
{
  const auto sys = test::double_integrator(-0.5);
  Scenario sc = test::inline_scenario(sys, 40, {{0, Vector::Constant(1, 1.0)}, {20, Vector::Constant(1, -1.5)}});
  sc.initial_state = (Vector(2) << 0.5, 0.0).finished();
  const SimTrace direct = simulate(sc);
  sc.estimator = EstimatorKind::Kalman;
  const SimTrace filtered = simulate(sc);
  for (std::size_t k = 0; k < direct.records.size(); ++k) {
    CHECK((filtered.records[k].x_hat - filtered.records[k].x_true).norm() < 1e-9);
    CHECK((filtered.records[k].u - direct.records[k].u).norm() < 1e-8);
  }
}

TEST_CASE("surrogate plant requires the RCCI model")
{
  Scenario sc = test::inline_scenario(test::scalar_system(), 5, {{0, Vector::Zero(1)}});
  sc.plant = PlantKind::Surrogate;
  CHECK_THROWS_AS(simulate(sc), Error);
}

TEST_CASE("solve time is recorded only on request")
{
  Scenario sc = load_scenario(test::scenario_path("scalar_demo"));
  for (const auto& r : simulate(sc).records) {
    CHECK(r.solve_ms == 0.0);
  }
  sc.record_timing = true;
  double total = 0.0;
  for (const auto& r : simulate(sc).records) {
    total += r.solve_ms;
  }
  CHECK(total > 0.0);
}
