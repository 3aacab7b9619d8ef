#include "pssc/scenario.hpp"

#include <fstream>
#include <initializer_list>
#include <optional>
#include <set>
#include <sstream>

#include "json.hpp"

namespace pssc {

using nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& items)
{
  std::string out = "scenario has " + std::to_string(items.size()) + " error(s):";
  for (const auto& s : items) {
    out += "\n  " + s;
  }
  return out;
}

// Collects violations while walking the document.
class Checker {
public:
  std::vector<std::string> errors;

  void fail(const std::string& path, const std::string& what) { errors.push_back(path + ": " + what); }

  void allow_keys(const json& obj, const std::string& path, std::initializer_list<const char*> keys)
  {
    std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& item : obj.items()) {
      if (!allowed.count(item.key())) {
        fail(path.empty() ? item.key() : path + "." + item.key(), "unknown key");
      }
    }
  }

  const json* field(const json& obj, const char* key) const
  {
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
  }

  std::optional<double> number(const json& j, const std::string& path)
  {
    if (!j.is_number()) {
      fail(path, "expected a number");
      return std::nullopt;
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
      fail(path, "must be finite");
      return std::nullopt;
    }
    return v;
  }

  std::optional<long long> integer(const json& j, const std::string& path)
  {
    if (!j.is_number_integer()) {
      fail(path, "expected an integer");
      return std::nullopt;
    }
    return j.get<long long>();
  }

  std::optional<std::string> string(const json& j, const std::string& path)
  {
    if (!j.is_string()) {
      fail(path, "expected a string");
      return std::nullopt;
    }
    return j.get<std::string>();
  }

  std::optional<bool> boolean(const json& j, const std::string& path)
  {
    if (!j.is_boolean()) {
      fail(path, "expected true or false");
      return std::nullopt;
    }
    return j.get<bool>();
  }

  std::optional<Vector> vector(const json& j, const std::string& path, Index expected = -1)
  {
    if (!j.is_array()) {
      fail(path, "expected an array of numbers");
      return std::nullopt;
    }
    Vector v(static_cast<Index>(j.size()));
    bool ok = true;
    for (std::size_t i = 0; i < j.size(); ++i) {
      const auto x = number(j[i], path + "[" + std::to_string(i) + "]");
      ok = ok && x.has_value();
      v(static_cast<Index>(i)) = x.value_or(0.0);
    }
    if (ok && expected >= 0 && v.size() != expected) {
      fail(path, "expected " + std::to_string(expected) + " entries, got " + std::to_string(v.size()));
      return std::nullopt;
    }
    return ok ? std::optional<Vector>(v) : std::nullopt;
  }

  std::optional<Matrix> matrix(const json& j, const std::string& path, Index rows = -1, Index cols = -1)
  {
    if (!j.is_array() || j.empty()) {
      fail(path, "expected a nonempty array of rows");
      return std::nullopt;
    }
    std::vector<Vector> rv;
    bool ok = true;
    for (std::size_t i = 0; i < j.size(); ++i) {
      auto r = vector(j[i], path + "[" + std::to_string(i) + "]");
      ok = ok && r.has_value();
      rv.push_back(r.value_or(Vector()));
    }
    if (!ok) {
      return std::nullopt;
    }
    const Index c = rv.front().size();
    for (const auto& r : rv) {
      if (r.size() != c) {
        fail(path, "rows have different lengths");
        return std::nullopt;
      }
    }
    Matrix M(static_cast<Index>(rv.size()), c);
    for (Index i = 0; i < M.rows(); ++i) {
      M.row(i) = rv[static_cast<std::size_t>(i)].transpose();
    }
    if ((rows >= 0 && M.rows() != rows) || (cols >= 0 && M.cols() != cols)) {
      fail(path, "expected a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix, got "
                     + std::to_string(M.rows()) + "x" + std::to_string(M.cols()));
      return std::nullopt;
    }
    return M;
  }

  std::optional<std::vector<std::string>> names(const json& j, const std::string& path, Index expected)
  {
    if (!j.is_array() || static_cast<Index>(j.size()) != expected) {
      fail(path, "expected " + std::to_string(expected) + " names");
      return std::nullopt;
    }
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
      const auto s = string(j[i], path + "[" + std::to_string(i) + "]");
      if (!s) {
        return std::nullopt;
      }
      out.push_back(*s);
    }
    return out;
  }

  /// {"lower": [...], "upper": [...]} or {"F": [[...]], "g": [...]}
  std::optional<Polyhedron> polyhedron(const json& j, const std::string& path, Index dim)
  {
    if (!j.is_object()) {
      fail(path, "expected {lower, upper} or {F, g}");
      return std::nullopt;
    }
    if (j.contains("lower") || j.contains("upper")) {
      allow_keys(j, path, {"lower", "upper"});
      const json* lo = field(j, "lower");
      const json* up = field(j, "upper");
      if (!lo || !up) {
        fail(path, "box needs both lower and upper");
        return std::nullopt;
      }
      const auto l = vector(*lo, path + ".lower", dim);
      const auto u = vector(*up, path + ".upper", dim);
      if (!l || !u) {
        return std::nullopt;
      }
      for (Index i = 0; i < dim; ++i) {
        if (!((*l)(i) < (*u)(i))) {
          fail(path, "lower bound " + std::to_string(i) + " is not below the upper bound");
          return std::nullopt;
        }
      }
      return Polyhedron::from_box(*l, *u);
    }
    allow_keys(j, path, {"F", "g"});
    const json* F = field(j, "F");
    const json* g = field(j, "g");
    if (!F || !g) {
      fail(path, "needs either lower/upper or F/g");
      return std::nullopt;
    }
    const auto Fm = matrix(*F, path + ".F", -1, dim);
    if (!Fm) {
      return std::nullopt;
    }
    const auto gv = vector(*g, path + ".g", Fm->rows());
    if (!gv) {
      return std::nullopt;
    }
    return Polyhedron(*Fm, *gv);
  }
};

json to_json(const Vector& v)
{
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) {
    a.push_back(v(i));
  }
  return a;
}

json to_json(const Matrix& M)
{
  json a = json::array();
  for (Index i = 0; i < M.rows(); ++i) {
    a.push_back(to_json(Vector(M.row(i).transpose())));
  }
  return a;
}

Vector rcci_default_lower_state()
{
  Vector v(4);
  v << -2.0, 750.0, 2000.0, 150.0;
  return v;
}

Vector rcci_default_upper_state()
{
  Vector v(4);
  v << 18.0, 1050.0, 4500.0, 1000.0;
  return v;
}

} // namespace

SchemaError::SchemaError(std::vector<std::string> violations)
    : Error(ErrorCode::Schema, join(violations)), violations_(std::move(violations))
{
}

Scenario parse_scenario(std::string_view text)
{
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw SchemaError({std::string("document: not valid JSON (") + e.what() + ")"});
  }
  Checker ck;
  if (!doc.is_object()) {
    throw SchemaError({"document: expected a JSON object"});
  }
  ck.allow_keys(doc, "",
                {"name", "model", "operating_point", "sliding", "constraints", "horizon", "lambda_offset",
                 "lambda_tighten", "max_set_iterations", "cycles", "reference", "seed", "noise", "controller",
                 "plant", "estimator", "kalman", "initial_state", "timing"});

  Scenario sc;
  if (const json* j = ck.field(doc, "name")) {
    sc.name = ck.string(*j, "name").value_or("");
  } else {
    ck.fail("name", "required");
  }

  // model: "rcci" or {A, B, C, names}
  bool model_ok = false;
  const json* model = ck.field(doc, "model");
  if (!model) {
    ck.fail("model", "required");
  } else if (model->is_string()) {
    if (model->get<std::string>() != "rcci") {
      ck.fail("model", "unknown built-in model '" + model->get<std::string>() + "' (expected \"rcci\")");
    } else {
      sc.rcci_model = true;
      if (const json* op = ck.field(doc, "operating_point")) {
        if (!op->is_object()) {
          ck.fail("operating_point", "expected an object");
        } else {
          ck.allow_keys(*op, "operating_point", {"PR", "T_in", "P_in", "N_e"});
          auto read = [&](const char* key, double& dst) {
            if (const json* v = ck.field(*op, key)) {
              const auto x = ck.number(*v, std::string("operating_point.") + key);
              if (x && *x <= 0.0) {
                ck.fail(std::string("operating_point.") + key, "must be positive");
              } else if (x) {
                dst = *x;
              }
            }
          };
          read("PR", sc.operating_point.PR);
          read("T_in", sc.operating_point.T_in);
          read("P_in", sc.operating_point.P_in);
          read("N_e", sc.operating_point.N_e);
        }
      }
      const RcciLinearization lin = rcci_linearization(sc.operating_point);
      sc.A = lin.model.A();
      sc.B = lin.model.B();
      sc.C = lin.model.C();
      sc.x_op = lin.x_op.to_vector();
      sc.u_op = lin.u_op.to_vector();
      sc.state_names = {"CA50", "T_soc", "P_soc", "IMEP"};
      sc.output_names = {"CA50", "IMEP"};
      sc.input_names = {"SOI", "FQ"};
      model_ok = true;
    }
  } else if (model->is_object()) {
    ck.allow_keys(*model, "model", {"A", "B", "C", "state_names", "output_names", "input_names"});
    if (ck.field(doc, "operating_point")) {
      ck.fail("operating_point", "only valid with the rcci model");
    }
    const json* A = ck.field(*model, "A");
    const json* B = ck.field(*model, "B");
    const json* C = ck.field(*model, "C");
    if (!A || !B || !C) {
      ck.fail("model", "needs A, B and C");
    } else {
      const auto Am = ck.matrix(*A, "model.A");
      if (Am && Am->rows() != Am->cols()) {
        ck.fail("model.A", "must be square");
      } else if (Am) {
        const Index n = Am->rows();
        const auto Bm = ck.matrix(*B, "model.B", n, -1);
        if (Bm) {
          const Index m = Bm->cols();
          const auto Cm = ck.matrix(*C, "model.C", m, n);
          if (Cm) {
            if (n < m) {
              ck.fail("model", "needs at least as many states as inputs");
            } else {
              sc.A = *Am;
              sc.B = *Bm;
              sc.C = *Cm;
              sc.x_op = Vector::Zero(n);
              sc.u_op = Vector::Zero(m);
              model_ok = true;
            }
          }
        }
      }
    }
    if (model_ok) {
      const Index n = sc.A.rows();
      const Index m = sc.B.cols();
      for (Index i = 0; i < n; ++i) {
        sc.state_names.push_back("x" + std::to_string(i + 1));
      }
      for (Index i = 0; i < m; ++i) {
        sc.output_names.push_back("y" + std::to_string(i + 1));
        sc.input_names.push_back("u" + std::to_string(i + 1));
      }
      if (const json* j = ck.field(*model, "state_names")) {
        sc.state_names = ck.names(*j, "model.state_names", n).value_or(sc.state_names);
      }
      if (const json* j = ck.field(*model, "output_names")) {
        sc.output_names = ck.names(*j, "model.output_names", m).value_or(sc.output_names);
      }
      if (const json* j = ck.field(*model, "input_names")) {
        sc.input_names = ck.names(*j, "model.input_names", m).value_or(sc.input_names);
      }
    }
  } else {
    ck.fail("model", "expected \"rcci\" or an object with A, B, C");
  }

  const Index n = model_ok ? sc.A.rows() : -1;
  const Index m = model_ok ? sc.B.cols() : -1;

  // sliding
  if (const json* sl = ck.field(doc, "sliding"); !sl) {
    ck.fail("sliding", "required");
  } else if (!sl->is_object()) {
    ck.fail("sliding", "expected an object");
  } else {
    ck.allow_keys(*sl, "sliding", {"alpha", "beta"});
    if (const json* a = ck.field(*sl, "alpha"); !a) {
      ck.fail("sliding.alpha", "required");
    } else if (!a->is_array()) {
      ck.fail("sliding.alpha", "expected one list of coefficients per output");
    } else {
      if (m >= 0 && static_cast<Index>(a->size()) != m) {
        ck.fail("sliding.alpha", "expected " + std::to_string(m) + " lists, got " + std::to_string(a->size()));
      }
      for (std::size_t i = 0; i < a->size(); ++i) {
        const std::string path = "sliding.alpha[" + std::to_string(i) + "]";
        const auto v = ck.vector((*a)[i], path);
        if (v && v->size() == 0) {
          ck.fail(path, "needs at least one coefficient");
        } else if (v) {
          sc.alpha.emplace_back(v->data(), v->data() + v->size());
        }
      }
    }
    if (const json* b = ck.field(*sl, "beta"); b && m >= 0) {
      if (b->is_number()) {
        if (const auto x = ck.number(*b, "sliding.beta")) {
          sc.beta = *x * Matrix::Identity(m, m);
        }
      } else if (const auto B = ck.matrix(*b, "sliding.beta", m, m)) {
        sc.beta = *B;
      }
      if (sc.beta.size() > 0) {
        const double rho = spectral_radius(sc.beta);
        if (rho >= 1.0) {
          ck.fail("sliding.beta", "spectral radius " + std::to_string(rho) + " must be below 1");
        }
      }
    } else if (m >= 0) {
      sc.beta = -0.2 * Matrix::Identity(m, m);
    }
  }

  // constraints
  const json* cons = ck.field(doc, "constraints");
  if (cons && !cons->is_object()) {
    ck.fail("constraints", "expected an object");
  } else if (cons && n >= 0) {
    ck.allow_keys(*cons, "constraints", {"state", "input"});
  }
  if (n >= 0) {
    const json* st = cons ? ck.field(*cons, "state") : nullptr;
    const json* in = cons ? ck.field(*cons, "input") : nullptr;
    if (st) {
      if (auto P = ck.polyhedron(*st, "constraints.state", n)) {
        sc.state_set = *P;
      }
    } else if (sc.rcci_model) {
      sc.state_set = Polyhedron::from_box(rcci_default_lower_state(), rcci_default_upper_state());
    } else {
      ck.fail("constraints.state", "required for an inline model");
    }
    if (in) {
      if (auto P = ck.polyhedron(*in, "constraints.input", m)) {
        sc.input_set = *P;
      }
    } else if (sc.rcci_model) {
      Vector lo(2);
      Vector up(2);
      lo << -80.0, 15.0;
      up << -30.0, 40.0;
      sc.input_set = Polyhedron::from_box(lo, up);
    } else {
      ck.fail("constraints.input", "required for an inline model");
    }
  }

  auto positive_int = [&](const char* key, auto& dst, long long min_value, bool required) {
    if (const json* j = ck.field(doc, key)) {
      if (const auto v = ck.integer(*j, key)) {
        if (*v < min_value) {
          ck.fail(key, "must be at least " + std::to_string(min_value));
        } else {
          dst = static_cast<std::remove_reference_t<decltype(dst)>>(*v);
        }
      }
    } else if (required) {
      ck.fail(key, "required");
    }
  };
  positive_int("horizon", sc.horizon, 1, false);
  positive_int("max_set_iterations", sc.max_set_iterations, 1, false);
  positive_int("cycles", sc.cycles, 1, true);

  if (const json* j = ck.field(doc, "lambda_offset")) {
    if (const auto v = ck.number(*j, "lambda_offset")) {
      if (*v <= 0.0) {
        ck.fail("lambda_offset", "must be positive");
      }
      sc.lambda_offset = *v;
    }
  }
  if (const json* j = ck.field(doc, "lambda_tighten")) {
    if (const auto v = ck.number(*j, "lambda_tighten")) {
      if (!(*v > 0.0 && *v <= 1.0)) {
        ck.fail("lambda_tighten", "must lie in (0, 1]");
      }
      sc.lambda_tighten = *v;
    }
  }

  // reference breakpoints [[cycle, y1, ..., ym], ...]
  if (const json* r = ck.field(doc, "reference"); !r) {
    ck.fail("reference", "required");
  } else if (!r->is_array() || r->empty()) {
    ck.fail("reference", "expected a nonempty array of [cycle, y1, ..., ym]");
  } else {
    long long last = -1;
    for (std::size_t i = 0; i < r->size(); ++i) {
      const std::string path = "reference[" + std::to_string(i) + "]";
      const json& bp = (*r)[i];
      if (!bp.is_array() || bp.empty()) {
        ck.fail(path, "expected [cycle, y1, ..., ym]");
        continue;
      }
      const auto cyc = ck.integer(bp[0], path + "[0]");
      if (!cyc) {
        continue;
      }
      if (i == 0 && *cyc != 0) {
        ck.fail(path, "first breakpoint must be at cycle 0");
      }
      if (*cyc <= last) {
        ck.fail(path, "cycles must be strictly increasing");
      }
      last = *cyc;
      json values = json::array();
      for (std::size_t k = 1; k < bp.size(); ++k) {
        values.push_back(bp[k]);
      }
      if (m >= 0) {
        if (static_cast<Index>(values.size()) != m) {
          ck.fail(path, "expected " + std::to_string(m) + " reference values");
          continue;
        }
        if (const auto y = ck.vector(values, path)) {
          sc.reference.push_back({static_cast<Index>(*cyc), *y});
        }
      }
    }
  }

  if (const json* j = ck.field(doc, "seed")) {
    if (!j->is_number_unsigned()) {
      ck.fail("seed", "expected a nonnegative integer");
    } else {
      sc.seed = j->get<std::uint64_t>();
    }
  }

  if (m >= 0) {
    sc.output_noise_std = sc.rcci_model ? Vector((Vector(2) << 2.0, 25.0).finished()) : Vector::Zero(m);
  }
  if (const json* nz = ck.field(doc, "noise")) {
    if (!nz->is_object()) {
      ck.fail("noise", "expected an object");
    } else {
      ck.allow_keys(*nz, "noise", {"enabled", "output_std"});
      if (const json* e = ck.field(*nz, "enabled")) {
        sc.noise_enabled = ck.boolean(*e, "noise.enabled").value_or(false);
      }
      if (const json* s = ck.field(*nz, "output_std"); s && m >= 0) {
        if (const auto v = ck.vector(*s, "noise.output_std", m)) {
          if (v->minCoeff() < 0.0) {
            ck.fail("noise.output_std", "must be nonnegative");
          }
          sc.output_noise_std = *v;
        }
      }
    }
  }

  auto enum_field = [&](const char* key, std::initializer_list<const char*> options) -> std::optional<std::string> {
    const json* j = ck.field(doc, key);
    if (!j) {
      return std::nullopt;
    }
    const auto s = ck.string(*j, key);
    if (!s) {
      return std::nullopt;
    }
    for (const char* o : options) {
      if (*s == o) {
        return s;
      }
    }
    std::string msg = "unknown value '" + *s + "' (expected one of";
    for (const char* o : options) {
      msg += std::string(" ") + o;
    }
    ck.fail(key, msg + ")");
    return std::nullopt;
  };
  if (const auto c = enum_field("controller", {"pssc", "dsmc"})) {
    sc.controller = *c == "pssc" ? ControllerKind::Pssc : ControllerKind::Dsmc;
  }
  if (const auto p = enum_field("plant", {"linear", "surrogate"})) {
    sc.plant = *p == "linear" ? PlantKind::Linear : PlantKind::Surrogate;
    if (sc.plant == PlantKind::Surrogate && model_ok && !sc.rcci_model) {
      ck.fail("plant", "the surrogate plant requires model \"rcci\"");
    }
  }
  if (const auto e = enum_field("estimator", {"kalman", "none"})) {
    sc.estimator = *e == "kalman" ? EstimatorKind::Kalman : EstimatorKind::None;
  }

  if (n >= 0) {
    // defaults: Q = 1e-4 diag(state scale), R = output noise variance, P0 = Q
    Vector scale = Vector::Ones(n);
    if (const auto box = sc.state_set.rows() > 0 ? sc.state_set.box_bounds() : std::nullopt) {
      scale = 0.5 * (box->second - box->first);
    }
    sc.kalman.process_noise = 1e-4 * scale;
    sc.kalman.measurement_noise = sc.output_noise_std.cwiseProduct(sc.output_noise_std);
    if (sc.kalman.measurement_noise.size() == m) {
      for (Index i = 0; i < m; ++i) {
        if (sc.kalman.measurement_noise(i) <= 0.0) {
          sc.kalman.measurement_noise(i) = 1e-4;
        }
      }
    }
    if (const json* kj = ck.field(doc, "kalman")) {
      if (!kj->is_object()) {
        ck.fail("kalman", "expected an object");
      } else {
        ck.allow_keys(*kj, "kalman", {"process_noise", "measurement_noise", "initial_covariance"});
        auto read = [&](const char* key, Vector& dst, Index dim) {
          if (const json* v = ck.field(*kj, key)) {
            if (const auto x = ck.vector(*v, std::string("kalman.") + key, dim)) {
              if (x->size() > 0 && x->minCoeff() <= 0.0) {
                ck.fail(std::string("kalman.") + key, "entries must be positive");
              }
              dst = *x;
            }
          }
        };
        read("process_noise", sc.kalman.process_noise, n);
        read("measurement_noise", sc.kalman.measurement_noise, m);
        sc.kalman.initial_covariance = sc.kalman.process_noise;
        read("initial_covariance", sc.kalman.initial_covariance, n);
      }
    }
    if (sc.kalman.initial_covariance.size() == 0) {
      sc.kalman.initial_covariance = sc.kalman.process_noise;
    }

    sc.initial_state = sc.x_op;
    if (const json* j = ck.field(doc, "initial_state")) {
      if (const auto v = ck.vector(*j, "initial_state", n)) {
        sc.initial_state = *v;
      }
    }
  }

  if (const json* j = ck.field(doc, "timing")) {
    sc.record_timing = ck.boolean(*j, "timing").value_or(false);
  }

  if (!ck.errors.empty()) {
    throw SchemaError(std::move(ck.errors));
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::Io, "cannot read scenario file " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw Error(ErrorCode::Io, "error while reading " + path.string());
  }
  return parse_scenario(buf.str());
}

std::string scenario_to_json(const Scenario& sc)
{
  json doc;
  doc["name"] = sc.name;
  if (sc.rcci_model) {
    doc["model"] = "rcci";
    doc["operating_point"] = {{"PR", sc.operating_point.PR},
                              {"T_in", sc.operating_point.T_in},
                              {"P_in", sc.operating_point.P_in},
                              {"N_e", sc.operating_point.N_e}};
  } else {
    doc["model"] = {{"A", to_json(sc.A)},
                    {"B", to_json(sc.B)},
                    {"C", to_json(sc.C)},
                    {"state_names", sc.state_names},
                    {"output_names", sc.output_names},
                    {"input_names", sc.input_names}};
  }
  json alpha = json::array();
  for (const auto& a : sc.alpha) {
    alpha.push_back(a);
  }
  doc["sliding"] = {{"alpha", alpha}, {"beta", to_json(sc.beta)}};
  doc["constraints"] = {{"state", {{"F", to_json(sc.state_set.F())}, {"g", to_json(sc.state_set.g())}}},
                        {"input", {{"F", to_json(sc.input_set.F())}, {"g", to_json(sc.input_set.g())}}}};
  doc["horizon"] = sc.horizon;
  doc["lambda_offset"] = sc.lambda_offset;
  doc["lambda_tighten"] = sc.lambda_tighten;
  doc["max_set_iterations"] = sc.max_set_iterations;
  doc["cycles"] = sc.cycles;
  json ref = json::array();
  for (const auto& bp : sc.reference) {
    json row = json::array({bp.cycle});
    for (Index i = 0; i < bp.y.size(); ++i) {
      row.push_back(bp.y(i));
    }
    ref.push_back(row);
  }
  doc["reference"] = ref;
  doc["seed"] = sc.seed;
  doc["noise"] = {{"enabled", sc.noise_enabled}, {"output_std", to_json(sc.output_noise_std)}};
  doc["controller"] = std::string(to_string(sc.controller));
  doc["plant"] = std::string(to_string(sc.plant));
  doc["estimator"] = std::string(to_string(sc.estimator));
  doc["kalman"] = {{"process_noise", to_json(sc.kalman.process_noise)},
                   {"measurement_noise", to_json(sc.kalman.measurement_noise)},
                   {"initial_covariance", to_json(sc.kalman.initial_covariance)}};
  doc["initial_state"] = to_json(sc.initial_state);
  doc["timing"] = sc.record_timing;
  return doc.dump(2) + "\n";
}

} // namespace pssc
