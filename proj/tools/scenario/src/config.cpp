#include "indiff/scenario/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "indiff/scenario/expression.hpp"

namespace indiff::scenario {

ConfigError::ConfigError(std::string field, int line, const std::string& message)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ", " : std::string()) +
                         "field '" + field + "': " + message),
      field_(std::move(field)),
      line_(line) {}

std::string_view to_string(Task task) noexcept {
  switch (task) {
    case Task::price:
      return "price";
    case Task::curve:
      return "curve";
    case Task::limit:
      return "limit";
    case Task::rates:
      return "rates";
    case Task::position:
      return "position";
    case Task::equilibrium:
      return "equilibrium";
    case Task::pde:
      return "pde";
    case Task::sweep:
      return "sweep";
  }
  return "?";
}

std::string_view to_string(Format format) noexcept {
  return format == Format::csv ? "csv" : "jsonl";
}

namespace {

using models::BasisRiskModel;
using models::Coefficient;

const std::vector<Task> kTasks{Task::price, Task::curve,       Task::limit, Task::rates,
                               Task::position, Task::equilibrium, Task::pde, Task::sweep};

const std::map<std::string, std::vector<std::string>> kFamilyKeys{
    {"gaussian", {"family", "d", "gamma2"}},
    {"basis_risk",
     {"family", "method", "mu", "sigma", "b", "a_y", "rho", "T", "y0", "payoff", "payoff_lower",
      "payoff_upper", "paths", "time_steps", "sampling", "antithetic", "quadrature_order"}},
    {"default_bond", {"family", "mu", "sigma", "lambda", "T", "steps", "fixed_point"}},
    {"transaction",
     {"family", "sigma", "K", "T", "s", "t", "lambda", "space_points", "time_steps", "s_max_mult",
      "b_grid_points", "ell_max"}},
};

int line_of(const YAML::Node& node) {
  const int line = node.Mark().line;
  return line >= 0 ? line + 1 : 0;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
  return s;
}

// A map node with a dotted path, checked against its allowed keys.
class Section {
 public:
  Section(YAML::Node node, std::string path, std::vector<std::string> allowed)
      : node_(std::move(node)), path_(std::move(path)) {
    if (!node_.IsMap()) raise_here("expected a mapping");
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        throw ConfigError(field(key), line_of(kv.first),
                          "unknown key (allowed: " + join(allowed) + ")");
      }
    }
  }

  bool has(const std::string& key) const { return static_cast<bool>(node_[key]); }
  YAML::Node operator[](const std::string& key) const { return node_[key]; }
  std::string field(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }
  YAML::Node require(const std::string& key) const {
    if (!has(key)) throw ConfigError(field(key), line_of(node_), "required field is missing");
    return node_[key];
  }
  [[noreturn]] void raise_here(const std::string& msg) const {
    throw ConfigError(path_.empty() ? "<root>" : path_, line_of(node_), msg);
  }
  const YAML::Node& node() const noexcept { return node_; }

 private:
  YAML::Node node_;
  std::string path_;
};

std::string scalar(const YAML::Node& n, const std::string& field) {
  if (!n.IsScalar()) throw ConfigError(field, line_of(n), "expected a scalar");
  return n.Scalar();
}

double number(const YAML::Node& n, const std::string& field) {
  const std::string s = scalar(n, field);
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(field, line_of(n), "expected a finite number, got '" + s + "'");
}

long integer(const YAML::Node& n, const std::string& field) {
  const std::string s = scalar(n, field);
  try {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  // 1e6 style integers
  const double d = number(n, field);
  if (d == std::floor(d) && std::abs(d) < 9e18) return static_cast<long>(d);
  throw ConfigError(field, line_of(n), "expected an integer, got '" + s + "'");
}

bool flag(const YAML::Node& n, const std::string& field) {
  const std::string s = scalar(n, field);
  if (s == "true") return true;
  if (s == "false") return false;
  throw ConfigError(field, line_of(n), "expected true or false, got '" + s + "'");
}

std::string choice(const YAML::Node& n, const std::string& field,
                   const std::vector<std::string>& options) {
  const std::string s = scalar(n, field);
  if (std::find(options.begin(), options.end(), s) == options.end()) {
    throw ConfigError(field, line_of(n), "'" + s + "' is not one of: " + join(options));
  }
  return s;
}

Expression expression(const YAML::Node& n, const std::string& field, const std::string& var) {
  try {
    return Expression(scalar(n, field), var);
  } catch (const ExpressionError& e) {
    throw ConfigError(field, line_of(n), e.what());
  }
}

// An expression in n, or a list aligned with the index list.
std::function<double(long)> n_function(const YAML::Node& n, const std::string& field,
                                       const std::vector<long>& index, std::string& label) {
  if (n.IsSequence()) {
    if (n.size() != index.size()) {
      throw ConfigError(field, line_of(n),
                        "explicit list has " + std::to_string(n.size()) + " entries but the index "
                        "list has " + std::to_string(index.size()));
    }
    std::map<long, double> table;
    for (std::size_t i = 0; i < n.size(); ++i) {
      table[index[i]] = number(n[i], field + "[" + std::to_string(i) + "]");
    }
    label = "list";
    return [table](long k) {
      const auto it = table.find(k);
      return it == table.end() ? std::nan("") : it->second;
    };
  }
  const Expression e = expression(n, field, "n");
  label = e.text();
  return [e](long k) { return e(static_cast<double>(k)); };
}

Sequence n_sequence(const YAML::Node& n, const std::string& field, const std::vector<long>& index) {
  std::string label;
  auto fn = n_function(n, field, index, label);
  return Sequence(std::move(fn), label);
}

template <class Schedule>
Schedule n_schedule(const YAML::Node& n, const std::string& field, const std::vector<long>& index) {
  std::string label;
  auto fn = n_function(n, field, index, label);
  return Schedule(std::move(fn), label);
}

Coefficient y_coefficient(const YAML::Node& n, const std::string& field) {
  const Expression e = expression(n, field, "y");
  if (e.is_constant()) return Coefficient(e(0.0));
  return Coefficient([e](double y) { return e(y); }, e.text());
}

std::vector<double> grid(const YAML::Node& n, const std::string& field) {
  std::vector<double> out;
  if (n.IsSequence()) {
    for (std::size_t i = 0; i < n.size(); ++i) {
      out.push_back(number(n[i], field + "[" + std::to_string(i) + "]"));
    }
  } else {
    const Section s(n, field, {"from", "to", "points"});
    const double lo = number(s.require("from"), s.field("from"));
    const double hi = number(s.require("to"), s.field("to"));
    const long k = integer(s.require("points"), s.field("points"));
    if (k < 2 || !(hi > lo)) {
      throw ConfigError(field, line_of(n), "grid needs points >= 2 and to > from");
    }
    for (long i = 0; i < k; ++i) out.push_back(lo + (hi - lo) * static_cast<double>(i) / (k - 1));
  }
  if (out.empty()) throw ConfigError(field, line_of(n), "grid is empty");
  return out;
}

std::vector<long> index_list(const YAML::Node& n, const std::string& field) {
  std::vector<long> out;
  if (n.IsSequence()) {
    for (std::size_t i = 0; i < n.size(); ++i) {
      out.push_back(integer(n[i], field + "[" + std::to_string(i) + "]"));
    }
  } else {
    const Section s(n, field, {"from", "to", "factor", "step"});
    const long lo = integer(s.require("from"), s.field("from"));
    const long hi = integer(s.require("to"), s.field("to"));
    if (s.has("factor") == s.has("step")) {
      s.raise_here("give exactly one of 'factor' (geometric) or 'step' (arithmetic)");
    }
    if (lo < 1 || hi < lo) s.raise_here("index range needs 1 <= from <= to");
    if (s.has("factor")) {
      const long f = integer(s["factor"], s.field("factor"));
      if (f < 2) throw ConfigError(s.field("factor"), line_of(s["factor"]), "factor must be >= 2");
      for (long k = lo; k <= hi; k *= f) {
        out.push_back(k);
        if (k > hi / f) break;
      }
    } else {
      const long st = integer(s["step"], s.field("step"));
      if (st < 1) throw ConfigError(s.field("step"), line_of(s["step"]), "step must be >= 1");
      for (long k = lo; k <= hi; k += st) out.push_back(k);
    }
  }
  if (out.empty()) throw ConfigError(field, line_of(n), "index list is empty");
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] < 1 || (i > 0 && out[i] <= out[i - 1])) {
      throw ConfigError(field, line_of(n), "indices must be positive and strictly increasing");
    }
  }
  return out;
}

template <class T>
void set_number(const Section& s, const std::string& key, T& target) {
  if (!s.has(key)) return;
  if constexpr (std::is_integral_v<T>) {
    target = static_cast<T>(integer(s[key], s.field(key)));
  } else {
    target = number(s[key], s.field(key));
  }
}

ModelParams parse_model(const Section& m, const std::string& family,
                        const std::vector<long>& index) {
  if (family == "gaussian") {
    models::GaussianResidualParams p;
    p.d = n_sequence(m.require("d"), m.field("d"), index);
    p.gamma2 = n_sequence(m.require("gamma2"), m.field("gamma2"), index);
    return p;
  }
  if (family == "basis_risk") {
    BasisRiskSpec spec;
    auto& p = spec.params;
    if (m.has("method")) {
      spec.method = choice(m["method"], m.field("method"), {"quadrature", "monte_carlo"}) ==
                            "quadrature"
                        ? BasisRiskModel::Method::quadrature
                        : BasisRiskModel::Method::monte_carlo;
    }
    for (const char* key : {"mu", "sigma", "b", "a_y"}) {
      if (!m.has(key)) continue;
      Coefficient c = y_coefficient(m[key], m.field(key));
      const std::string k = key;
      (k == "mu" ? p.mu : k == "sigma" ? p.sigma : k == "b" ? p.b : p.a_y) = std::move(c);
    }
    p.rho = n_sequence(m.require("rho"), m.field("rho"), index);
    const Expression payoff = expression(m.require("payoff"), m.field("payoff"), "y");
    p.payoff = [payoff](double y) { return payoff(y); };
    set_number(m, "T", p.T);
    set_number(m, "y0", p.y0);
    if (m.has("payoff_lower")) p.payoff_lower = number(m["payoff_lower"], m.field("payoff_lower"));
    if (m.has("payoff_upper")) p.payoff_upper = number(m["payoff_upper"], m.field("payoff_upper"));
    set_number(m, "paths", p.mc.paths);
    set_number(m, "time_steps", p.mc.time_steps);
    set_number(m, "quadrature_order", p.quadrature_order);
    if (m.has("antithetic")) p.mc.antithetic = flag(m["antithetic"], m.field("antithetic"));
    if (m.has("sampling")) {
      const auto s = choice(m["sampling"], m.field("sampling"), {"automatic", "exact", "euler"});
      p.mc.sampling = s == "exact"   ? models::PathSampling::exact
                      : s == "euler" ? models::PathSampling::euler
                                     : models::PathSampling::automatic;
    }
    if (!(p.T > 0.0)) throw ConfigError(m.field("T"), line_of(m["T"]), "T must be positive");
    if (p.mc.paths < 2) {
      throw ConfigError(m.field("paths"), line_of(m["paths"]), "paths must be >= 2");
    }
    if (spec.method == BasisRiskModel::Method::quadrature && !p.constant_coefficients()) {
      m.raise_here("method quadrature needs constant mu, sigma, b and a_y");
    }
    return spec;
  }
  if (family == "default_bond") {
    models::DefaultBondParams p;
    set_number(m, "mu", p.mu);
    set_number(m, "sigma", p.sigma);
    set_number(m, "T", p.T);
    set_number(m, "steps", p.steps);
    if (m.has("lambda")) p.lambda = n_sequence(m["lambda"], m.field("lambda"), index);
    if (m.has("fixed_point")) {
      p.fixed_point = choice(m["fixed_point"], m.field("fixed_point"),
                             {"as_printed", "first_order_condition"}) == "as_printed"
                          ? models::FixedPointVariant::as_printed
                          : models::FixedPointVariant::first_order_condition;
    }
    if (!(p.sigma > 0.0)) {
      throw ConfigError(m.field("sigma"), line_of(m["sigma"]), "sigma must be positive");
    }
    if (p.steps < 1) throw ConfigError(m.field("steps"), line_of(m["steps"]), "steps must be >= 1");
    return p;
  }
  models::TransCostParams p;
  set_number(m, "sigma", p.sigma);
  set_number(m, "K", p.K);
  set_number(m, "T", p.T);
  set_number(m, "s", p.s);
  set_number(m, "t", p.t);
  set_number(m, "space_points", p.pde.space_points);
  set_number(m, "time_steps", p.pde.time_steps);
  set_number(m, "s_max_mult", p.pde.s_max_mult);
  set_number(m, "b_grid_points", p.b_grid_points);
  set_number(m, "ell_max", p.ell_max);
  if (m.has("lambda")) p.lambda = n_sequence(m["lambda"], m.field("lambda"), index);
  if (!(p.sigma > 0.0) || !(p.K > 0.0) || !(p.s > 0.0) || !(p.T > p.t)) {
    m.raise_here("transaction model needs sigma, K, s > 0 and T > t");
  }
  if (p.pde.space_points < 5 || p.pde.time_steps < 1 || p.b_grid_points < 3) {
    m.raise_here("space_points >= 5, time_steps >= 1 and b_grid_points >= 3 are required");
  }
  return p;
}

Task parse_task(const YAML::Node& n, const std::string& field) {
  std::vector<std::string> names;
  for (Task t : kTasks) names.emplace_back(to_string(t));
  const std::string s = choice(n, field, names);
  for (Task t : kTasks)
    if (to_string(t) == s) return t;
  return Task::price;
}

bool needs_index(Task t) { return t != Task::pde; }

ScenarioConfig parse_root(const YAML::Node& root, bool nested) {
  static const std::vector<std::string> top{
      "id",    "model",    "task",        "index", "schedules", "price",  "curve",
      "limit", "position", "equilibrium", "pde",   "sweep",     "output", "seed",
      "threads", "tolerances"};
  if (!root.IsDefined() || root.IsNull()) throw ConfigError("<root>", 0, "configuration is empty");
  const Section s(root, "", top);
  ScenarioConfig c;
  c.id = scalar(s.require("id"), "id");
  if (c.id.empty()) throw ConfigError("id", line_of(s["id"]), "id must not be empty");
  c.task = parse_task(s.require("task"), "task");

  if (s.has("seed")) {
    const long seed = integer(s["seed"], "seed");
    if (seed < 0) throw ConfigError("seed", line_of(s["seed"]), "seed must be non-negative");
    c.seed = static_cast<std::uint64_t>(seed);
  }
  if (s.has("threads")) {
    c.threads = static_cast<int>(integer(s["threads"], "threads"));
    if (c.threads < 1) throw ConfigError("threads", line_of(s["threads"]), "threads must be >= 1");
  }
  if (s.has("output")) {
    const Section o(s["output"], "output", {"format", "path"});
    if (o.has("format")) {
      c.format = choice(o["format"], o.field("format"), {"csv", "jsonl"}) == "csv" ? Format::csv
                                                                                  : Format::jsonl;
    }
    if (o.has("path")) c.output_path = scalar(o["path"], o.field("path"));
  }
  if (s.has("tolerances")) {
    const Section t(s["tolerances"], "tolerances",
                    {"position", "cauchy", "equilibrium", "validation"});
    set_number(t, "position", c.tol.position);
    set_number(t, "cauchy", c.tol.cauchy);
    set_number(t, "equilibrium", c.tol.equilibrium);
    set_number(t, "validation", c.tol.validation);
    for (double v : {c.tol.position, c.tol.cauchy, c.tol.equilibrium, c.tol.validation}) {
      if (!(v > 0.0)) t.raise_here("tolerances must be positive");
    }
  }

  if (c.task == Task::sweep) {
    if (nested) throw ConfigError("task", line_of(s["task"]), "a sweep cannot contain a sweep");
    const Section w(s.require("sweep"), "sweep", {"parameter", "values", "task"});
    SweepConfig sweep;
    sweep.parameter = scalar(w.require("parameter"), w.field("parameter"));
    const Task inner = parse_task(w.require("task"), w.field("task"));
    if (inner == Task::sweep) {
      throw ConfigError(w.field("task"), line_of(w["task"]), "a sweep cannot contain a sweep");
    }
    const YAML::Node values = w.require("values");
    if (!values.IsSequence() || values.size() == 0) {
      throw ConfigError(w.field("values"), line_of(values), "expected a non-empty list");
    }
    const YAML::Node model = s.require("model");
    if (!model.IsMap() || !model["family"]) {
      throw ConfigError("model.family", line_of(model), "required field is missing");
    }
    const auto family = kFamilyKeys.find(scalar(model["family"], "model.family"));
    if (family != kFamilyKeys.end() &&
        (sweep.parameter == "family" ||
         std::find(family->second.begin(), family->second.end(), sweep.parameter) ==
             family->second.end())) {
      throw ConfigError(w.field("parameter"), line_of(w["parameter"]),
                        "'" + sweep.parameter + "' is not a parameter of family '" +
                            family->first + "'");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
      YAML::Node child = YAML::Clone(root);
      child.remove("sweep");
      child["task"] = std::string(to_string(inner));
      child["model"][sweep.parameter] = YAML::Clone(values[i]);
      const std::string v = scalar(values[i], w.field("values") + "[" + std::to_string(i) + "]");
      child["id"] = c.id + "[" + sweep.parameter + "=" + v + "]";
      try {
        sweep.runs.push_back(parse_root(child, true));
      } catch (const ConfigError& e) {
        throw ConfigError(e.field(), e.line() > 0 ? e.line() : line_of(values[i]),
                          std::string("in sweep value '") + v + "': " + e.what());
      }
      sweep.values.push_back(v);
    }
    c.sweep = std::move(sweep);
    return c;
  }
  for (Task t : kTasks) {
    const std::string name(to_string(t));
    if (t != c.task && t != Task::sweep && s.has(name)) {
      throw ConfigError(name, line_of(s[name]),
                        "section does not apply to task '" + std::string(to_string(c.task)) + "'");
    }
  }

  if (s.has("index")) c.index = index_list(s["index"], "index");
  if (needs_index(c.task) && c.index.empty()) {
    throw ConfigError("index", line_of(root), "required field is missing");
  }

  const YAML::Node model_node = s.require("model");
  if (!model_node.IsMap()) throw ConfigError("model", line_of(model_node), "expected a mapping");
  if (!model_node["family"]) {
    throw ConfigError("model.family", line_of(model_node), "required field is missing");
  }
  std::vector<std::string> families;
  for (const auto& [k, v] : kFamilyKeys) families.push_back(k);
  c.family = choice(model_node["family"], "model.family", families);
  const Section m(model_node, "model", kFamilyKeys.at(c.family));
  c.model = parse_model(m, c.family, c.index);

  if (s.has("schedules")) {
    const Section sc(s["schedules"], "schedules", {"rate", "risk_aversion", "p_tilde"});
    if (sc.has("rate")) c.rate = n_schedule<RateSchedule>(sc["rate"], sc.field("rate"), c.index);
    if (sc.has("risk_aversion")) {
      c.risk_aversion = n_schedule<RiskAversionSchedule>(sc["risk_aversion"],
                                                         sc.field("risk_aversion"), c.index);
    }
    if (sc.has("p_tilde")) c.p_tilde = n_sequence(sc["p_tilde"], sc.field("p_tilde"), c.index);
  }

  switch (c.task) {
    case Task::price: {
      c.q_grid = {0.0};
      if (s.has("price")) {
        const Section t(s["price"], "price", {"q", "ell"});
        if (t.has("q") && t.has("ell")) t.raise_here("give either 'q' or 'ell', not both");
        if (t.has("q")) c.q_grid = grid(t["q"], t.field("q"));
        if (t.has("ell")) {
          c.q_grid = grid(t["ell"], t.field("ell"));
          c.q_scaled = true;
        }
      }
      break;
    }
    case Task::curve: {
      const Section t(s.require("curve"), "curve", {"q", "validate"});
      c.q_grid = grid(t.require("q"), t.field("q"));
      if (t.has("validate")) c.validate_curves = flag(t["validate"], t.field("validate"));
      if (c.validate_curves && c.q_grid.size() < 3) {
        throw ConfigError(t.field("q"), line_of(t["q"]), "validation needs at least 3 points");
      }
      break;
    }
    case Task::limit: {
      const Section t(s.require("limit"), "limit", {"ell"});
      c.ell_grid = grid(t.require("ell"), t.field("ell"));
      std::sort(c.ell_grid.begin(), c.ell_grid.end());
      break;
    }
    case Task::rates:
    case Task::position: {
      if (s.has(std::string(to_string(c.task)))) {
        Section(s[std::string(to_string(c.task))], std::string(to_string(c.task)), {});
      }
      if (!c.p_tilde) {
        throw ConfigError("schedules.p_tilde", line_of(root),
                          "required field is missing for task '" +
                              std::string(to_string(c.task)) + "'");
      }
      break;
    }
    case Task::equilibrium: {
      const Section t(s.require("equilibrium"), "equilibrium", {"investors"});
      const YAML::Node inv = t.require("investors");
      if (!inv.IsSequence() || inv.size() != 2) {
        throw ConfigError(t.field("investors"), line_of(inv), "expected a list of two investors");
      }
      for (std::size_t i = 0; i < 2; ++i) {
        const Section e(inv[i], t.field("investors") + "[" + std::to_string(i) + "]", {"a", "b"});
        InvestorConfig& target = i == 0 ? c.investor1 : c.investor2;
        if (e.has("a")) target.a = n_schedule<RiskAversionSchedule>(e["a"], e.field("a"), c.index);
        if (e.has("b")) target.b = n_sequence(e["b"], e.field("b"), c.index);
      }
      break;
    }
    case Task::pde: {
      if (c.family != "transaction") {
        throw ConfigError("task", line_of(s["task"]), "task 'pde' needs model family transaction");
      }
      const Section t(s.require("pde"), "pde", {"b", "spots"});
      c.b_values = grid(t.require("b"), t.field("b"));
      for (double b : c.b_values) {
        if (b < 0.0) throw ConfigError(t.field("b"), line_of(t["b"]), "b must be non-negative");
      }
      if (t.has("spots")) c.spots = grid(t["spots"], t.field("spots"));
      for (double sp : c.spots) {
        if (!(sp > 0.0)) {
          throw ConfigError(t.field("spots"), line_of(t["spots"]), "spots must be positive");
        }
      }
      break;
    }
    case Task::sweep:
      break;
  }
  return c;
}

}  // namespace

ScenarioConfig parse_config(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError("<root>", e.mark.line >= 0 ? e.mark.line + 1 : 0, e.msg);
  }
  try {
    return parse_root(root, false);
  } catch (const YAML::Exception& e) {
    throw ConfigError("<root>", e.mark.line >= 0 ? e.mark.line + 1 : 0, e.msg);
  }
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("--config", 0, "cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str());
}

}  // namespace indiff::scenario
