// Command-line front end: simulate, compare and invariant-set.

#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "pssc/metrics.hpp"
#include "pssc/scenario.hpp"
#include "pssc/simulation.hpp"
#include "pssc/trace_io.hpp"

namespace fs = std::filesystem;

namespace {

enum Exit : int { kOk = 0, kSchema = 2, kNumeric = 3, kIo = 4 };

struct Options {
  std::string scenario;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> controller;
  std::optional<double> lambda;
};

void write_file(const fs::path& path, const std::string& text)
{
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    throw pssc::Error(pssc::ErrorCode::Io, "cannot write " + path.string());
  }
  os << text;
  if (!os) {
    throw pssc::Error(pssc::ErrorCode::Io, "error while writing " + path.string());
  }
}

void make_dir(const fs::path& dir)
{
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw pssc::Error(pssc::ErrorCode::Io, "cannot create output directory " + dir.string());
  }
}

pssc::Scenario load(const Options& opt)
{
  pssc::Scenario sc = pssc::load_scenario(opt.scenario);
  if (opt.seed) {
    sc.seed = *opt.seed;
  }
  if (opt.controller) {
    sc.controller = *opt.controller == "dsmc" ? pssc::ControllerKind::Dsmc : pssc::ControllerKind::Pssc;
  }
  if (opt.lambda) {
    if (!(*opt.lambda > 0.0 && *opt.lambda <= 1.0)) {
      throw pssc::SchemaError({"--lambda: must lie in (0, 1]"});
    }
    sc.lambda_tighten = *opt.lambda;
  }
  return sc;
}

void write_run(const fs::path& dir, const pssc::SimTrace& trace, const pssc::TraceMetrics& metrics)
{
  make_dir(dir);
  std::ostringstream csv;
  pssc::write_trace_csv(csv, trace);
  write_file(dir / "trace.csv", csv.str());
  write_file(dir / "metrics.json", pssc::metrics_to_json(metrics));
  write_file(dir / "metrics.txt", pssc::metrics_to_text(metrics));
}

int cmd_simulate(const Options& opt)
{
  const pssc::Scenario sc = load(opt);
  const fs::path out(opt.out);
  make_dir(out);
  const pssc::SimTrace trace = pssc::simulate(sc);
  const pssc::TraceMetrics metrics = pssc::trace_metrics(trace);
  write_run(out, trace, metrics);
  write_file(out / "scenario.resolved.json", pssc::scenario_to_json(sc));
  std::cout << pssc::metrics_to_text(metrics);
  return kOk;
}

std::string comparison_table(const pssc::TraceMetrics& a, const pssc::TraceMetrics& b)
{
  std::ostringstream os;
  auto row = [&](const std::string& label, double x, double y) {
    os << std::left << std::setw(32) << label << std::right << std::setw(14) << x << std::setw(14) << y << '\n';
  };
  os << std::left << std::setw(32) << "metric" << std::right << std::setw(14) << a.controller << std::setw(14)
     << b.controller << '\n';
  row("saturation cycles", static_cast<double>(a.saturation_cycles), static_cast<double>(b.saturation_cycles));
  row("fallback cycles", static_cast<double>(a.fallback_cycles), static_cast<double>(b.fallback_cycles));
  for (std::size_t i = 0; i < a.outputs.size(); ++i) {
    const auto& oa = a.outputs[i];
    const auto& ob = b.outputs[i];
    row(oa.name + " overshoot", oa.overshoot, ob.overshoot);
    row(oa.name + " overshoot %", oa.overshoot_pct, ob.overshoot_pct);
    row(oa.name + " steady-state error", oa.steady_state_error, ob.steady_state_error);
    row(oa.name + " mean |error|", oa.mean_abs_error, ob.mean_abs_error);
  }
  return os.str();
}

int cmd_compare(const Options& opt)
{
  const pssc::Scenario base = load(opt);
  const fs::path out(opt.out);
  make_dir(out);
  const pssc::ControlSetup setup = pssc::prepare(base, true);
  pssc::Scenario sp = base;
  sp.controller = pssc::ControllerKind::Pssc;
  pssc::Scenario sd = base;
  sd.controller = pssc::ControllerKind::Dsmc;

  auto fp = std::async(std::launch::async, [&] { return pssc::simulate(sp, setup); });
  auto fd = std::async(std::launch::async, [&] { return pssc::simulate(sd, setup); });
  const pssc::SimTrace tp = fp.get();
  const pssc::SimTrace td = fd.get();
  const pssc::TraceMetrics mp = pssc::trace_metrics(tp);
  const pssc::TraceMetrics md = pssc::trace_metrics(td);

  write_run(out / "pssc", tp, mp);
  write_run(out / "dsmc", td, md);
  write_file(out / "scenario.resolved.json", pssc::scenario_to_json(base));
  const std::string table = comparison_table(mp, md);
  write_file(out / "comparison.txt", table);
  nlohmann::json j;
  j["pssc"] = nlohmann::json::parse(pssc::metrics_to_json(mp));
  j["dsmc"] = nlohmann::json::parse(pssc::metrics_to_json(md));
  write_file(out / "comparison.json", j.dump(2) + "\n");
  std::cout << table;
  return kOk;
}

int cmd_invariant_set(const Options& opt)
{
  const pssc::Scenario sc = load(opt);
  const fs::path out(opt.out);
  make_dir(out);
  const pssc::ControlSetup setup = pssc::design_setup(sc);
  const pssc::TrackingInvariantSet set = pssc::scenario_invariant_set(sc, setup, true);

  std::ostringstream t;
  pssc::write_polyhedron(t, set.T);
  write_file(out / "T.txt", t.str());
  if (set.Z.dim() > 0) {
    std::ostringstream z;
    pssc::write_polyhedron(z, set.Z);
    write_file(out / "Z.txt", z.str());
  }

  std::ostringstream summary;
  summary << "status: " << pssc::to_string(set.status) << '\n'
          << "iterations: " << set.iterations << '\n'
          << "lambda: " << pssc::format_double(set.lambda) << '\n'
          << "T rows: " << set.T.rows() << " (dimension " << set.T.dim() << ")\n"
          << "Z rows: " << set.Z.rows() << " (dimension " << set.Z.dim() << ")\n"
          << "coordinates: deviations from the operating point\n";
  if (set.status == pssc::InvariantSetStatus::Empty) {
    std::ostringstream rows;
    pssc::write_polyhedron(rows, set.infeasible_rows);
    write_file(out / "infeasible_rows.txt", rows.str());
    summary << "the constraints admit no point; Farkas multipliers over infeasible_rows.txt:";
    const auto& cert = set.T.emptiness_certificate();
    for (pssc::Index i = 0; i < cert.size(); ++i) {
      summary << ' ' << pssc::format_double(cert(i));
    }
    summary << '\n';
  }
  write_file(out / "summary.txt", summary.str());
  std::cout << summary.str();

  if (set.status == pssc::InvariantSetStatus::NotFinitelyDetermined) {
    std::cerr << "error: the set iteration did not converge within " << sc.max_set_iterations
              << " iterations at lambda " << set.lambda
              << "; try lambda_tighten < 1 (for example 0.99) or a larger max_set_iterations\n";
    return kNumeric;
  }
  return kOk;
}

int run_guarded(int (*fn)(const Options&), const Options& opt)
{
  try {
    return fn(opt);
  } catch (const pssc::SchemaError& e) {
    std::cerr << "error: " << opt.scenario << ": " << e.what() << '\n';
    return kSchema;
  } catch (const pssc::Error& e) {
    std::cerr << "error [" << pssc::to_string(e.code()) << "]: " << e.what() << '\n';
    if (e.code() == pssc::ErrorCode::Io) {
      return kIo;
    }
    if (e.code() == pssc::ErrorCode::Schema) {
      return kSchema;
    }
    return kNumeric;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumeric;
  }
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Predictive second-order sliding control: simulation, comparison and invariant sets"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--scenario", opt.scenario, "scenario JSON file")->required();
    sub->add_option("--out", opt.out, "output directory")->required();
    sub->add_option("--seed", opt.seed, "override the scenario seed");
  };

  CLI::App* sim = app.add_subcommand("simulate", "run one closed-loop simulation");
  add_common(sim);
  sim->add_option("--controller", opt.controller, "override the controller")
      ->check(CLI::IsMember({"pssc", "dsmc"}));

  CLI::App* cmp = app.add_subcommand("compare", "run PSSC and DSMC on the same scenario");
  add_common(cmp);

  CLI::App* inv = app.add_subcommand("invariant-set", "compute and export the terminal invariant set");
  add_common(inv);
  inv->add_option("--lambda", opt.lambda, "override the steady-state tightening factor in (0, 1]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kSchema;
  }

  if (sim->parsed()) {
    return run_guarded(cmd_simulate, opt);
  }
  if (cmp->parsed()) {
    return run_guarded(cmd_compare, opt);
  }
  return run_guarded(cmd_invariant_set, opt);
}
