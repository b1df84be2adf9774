#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "maslovkit/error.hpp"
#include "maslovkit/homog.hpp"
#include "maslovkit/maslov.hpp"
#include "maslovkit/poisson.hpp"
#include "maslovkit/projtori.hpp"
#include "maslovkit/topo7.hpp"

namespace mk::cli {

namespace {

enum class Kind { Int, Num, Bool, Str, Arr, Obj, Any };

struct ParamSpec {
  std::string name;
  Kind kind;
  Json fallback;  // null: optional, no default
};

struct Schema {
  Command command;
  std::string name;
  std::string report;  // results["report"], unique per command
  std::vector<ParamSpec> params;
  std::vector<std::pair<std::string, double>> tolerances;
};

const std::vector<Schema>& schemas() {
  static const std::vector<Schema> s = {
      {Command::MaslovIndex, "maslov-index", "maslov.index",
       {{"n", Kind::Int, 1},
        {"samples", Kind::Int, 64},
        {"repeat", Kind::Int, 1},
        {"reversed", Kind::Bool, false},
        {"frames", Kind::Arr, nullptr},
        {"expected", Kind::Int, nullptr},
        {"export", Kind::Bool, false}},
       {{"unitarity", 1e-8}}},
      {Command::Involution, "involution", "poisson.involution",
       {{"system", Kind::Str, "projtori"},
        {"metric", Kind::Any, "nonflat-2"},
        {"taus", Kind::Arr, nullptr},
        {"states", Kind::Int, 20},
        {"analytic", Kind::Bool, false},
        {"k", Kind::Int, 1},
        {"l", Kind::Int, 4}},
       {{"involution", 1e-5}}},
      {Command::Independence, "independence", "poisson.independence",
       {{"system", Kind::Str, "projtori"},
        {"metric", Kind::Any, "nonflat-2"},
        {"k", Kind::Int, 1},
        {"l", Kind::Int, 4}},
       {}},
      {Command::Flow, "flow", "poisson.flow",
       {{"system", Kind::Str, "projtori"},
        {"metric", Kind::Any, "nonflat-2"},
        {"tau", Kind::Num, 0.0},
        {"duration", Kind::Num, 10.0},
        {"steps", Kind::Int, 10000},
        {"state", Kind::Arr, nullptr}},
       {{"drift", 1e-5}, {"constraint", 1e-7}}},
      {Command::ProjTori, "proj-tori", "projtori.consistency",
       {{"metric", Kind::Any, "nonflat-2"},
        {"states", Kind::Int, 100},
        {"partition_cases", Kind::Int, 1000},
        {"partition_max_n", Kind::Int, 5}},
       {{"consistency", 1e-9}, {"field", 1e-6}, {"partition_sum", 1e-10}, {"partition_root", 1e-9},
        {"lagrangian", 1e-8}}},
      {Command::ImageOfJ, "image-of-j", "projtori.image",
       {{"metric", Kind::Any, "example-2"},
        {"q", Kind::Obj, Json{{"leading", 1.0}, {"roots", {2.0}}}},
        {"base", Kind::Arr, nullptr},
        {"samples", Kind::Int, 512},
        {"orbit_duration", Kind::Num, 10.0},
        {"orbit_steps", Kind::Int, 4000}},
       {}},
      {Command::WksVerify, "wks-verify", "homog.wks",
       {{"k", Kind::Int, 1},
        {"l", Kind::Int, 4},
        {"involution_samples", Kind::Int, 10},
        {"identity_samples", Kind::Int, 50},
        {"flow_time", Kind::Num, 1.0},
        {"flow_steps", Kind::Int, 1000}},
       {{"involution", 1e-5}, {"identity", 1e-9}, {"bracket", 1e-5}, {"drift", 1e-5},
        {"constraint", 1e-7}}},
      {Command::EschenburgVerify, "eschenburg-verify", "homog.eschenburg",
       {{"k", Kind::Int, -1},
        {"l", Kind::Int, -1},
        {"p", Kind::Int, -2},
        {"q", Kind::Int, 0},
        {"max_draws", Kind::Int, 10000},
        {"involution_samples", Kind::Int, 5}},
       {{"involution", 1e-5}, {"momentum", 1e-9}}},
      {Command::EschEnumerate, "esch-enumerate", "topo7.enumerate",
       {{"lo", Kind::Any, -2}, {"hi", Kind::Any, 2}, {"expect_count", Kind::Int, nullptr}},
       {}},
      {Command::WksClassify, "wks-classify", "topo7.wks",
       {{"k", Kind::Int, 1}, {"l", Kind::Int, 4}, {"enumerate", Kind::Bool, false}},
       {}},
      {Command::TableVerify, "table-verify", "topo7.table", {{"path", Kind::Str, nullptr}}, {}},
  };
  return s;
}

const Schema& schema(Command c) {
  for (const auto& s : schemas())
    if (s.command == c) return s;
  throw std::logic_error("command without schema");
}

bool kind_matches(Kind k, const Json& v) {
  switch (k) {
    case Kind::Int: return v.is_number_integer();
    case Kind::Num: return v.is_number();
    case Kind::Bool: return v.is_boolean();
    case Kind::Str: return v.is_string();
    case Kind::Arr: return v.is_array();
    case Kind::Obj: return v.is_object();
    case Kind::Any: return true;
  }
  return false;
}

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Int: return "integer";
    case Kind::Num: return "number";
    case Kind::Bool: return "boolean";
    case Kind::Str: return "string";
    case Kind::Arr: return "array";
    case Kind::Obj: return "object";
    case Kind::Any: return "value";
  }
  return "value";
}

std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

// --- parameter access ----------------------------------------------------------

class Params {
 public:
  explicit Params(const Json& j) : j_(j) {}
  bool has(const std::string& k) const { return j_.contains(k) && !j_.at(k).is_null(); }
  const Json& at(const std::string& k) const { return j_.at(k); }
  long long integer(const std::string& k) const { return j_.at(k).get<long long>(); }
  int positive(const std::string& k, int lo = 1) const {
    const long long v = integer(k);
    if (v < lo || v > 100000000) throw SpecError("params." + k + " out of range");
    return static_cast<int>(v);
  }
  double number(const std::string& k) const { return j_.at(k).get<double>(); }
  bool flag(const std::string& k) const { return j_.at(k).get<bool>(); }
  std::string str(const std::string& k) const { return j_.at(k).get<std::string>(); }

 private:
  const Json& j_;
};

std::vector<double> number_list(const Json& j, const std::string& what) {
  if (!j.is_array()) throw SpecError(what + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw SpecError(what + " must be an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

Json to_json(const RealVector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Json to_json(const RealMatrix& m) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(to_json(RealVector(m.row(i).transpose())));
  return a;
}

RealVector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const RealVector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// --- metrics and polynomials ---------------------------------------------------

projtori::TrigPolynomial trig(double c, std::vector<double> cos_c, std::vector<double> sin_c) {
  return projtori::TrigPolynomial{c, std::move(cos_c), std::move(sin_c)};
}

projtori::ModelMetricPair metric_from(const Json& j) {
  using projtori::SeparatedEigenFunctions;
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "example-2")
      return projtori::ModelMetricPair(SeparatedEigenFunctions({trig(2.0, {}, {0.1}), trig(5.0, {}, {})}));
    if (name == "flat-2")
      return projtori::ModelMetricPair(SeparatedEigenFunctions({trig(1.0, {}, {}), trig(3.0, {}, {})}));
    if (name == "nonflat-2")
      return projtori::ModelMetricPair(
          SeparatedEigenFunctions({trig(2.0, {}, {0.1}), trig(5.0, {0.3}, {0.0, 0.1})}));
    if (name == "nonflat-3")
      return projtori::ModelMetricPair(SeparatedEigenFunctions(
          {trig(1.0, {}, {0.2}), trig(3.0, {0.25}, {0.0, 0.1}), trig(6.0, {0.1, 0.1}, {0.3})}));
    throw SpecError("unknown metric preset '" + name + "'");
  }
  if (!j.is_object() || !j.contains("lambda") || !j.at("lambda").is_array())
    throw SpecError("metric must be a preset name or an object with a 'lambda' array");
  for (const auto& [k, v] : j.items())
    if (k != "lambda" && k != "grid") throw SpecError("unknown metric key '" + k + "'");
  std::vector<projtori::TrigPolynomial> lambda;
  for (const auto& l : j.at("lambda")) {
    if (!l.is_object()) throw SpecError("metric.lambda entries must be objects");
    projtori::TrigPolynomial t;
    for (const auto& [k, v] : l.items()) {
      if (k == "constant") {
        if (!v.is_number()) throw SpecError("metric.lambda constant must be a number");
        t.constant = v.get<double>();
      } else if (k == "cos") {
        t.cos_coeffs = number_list(v, "metric.lambda cos");
      } else if (k == "sin") {
        t.sin_coeffs = number_list(v, "metric.lambda sin");
      } else {
        throw SpecError("unknown metric.lambda key '" + k + "'");
      }
    }
    lambda.push_back(std::move(t));
  }
  const int grid = j.contains("grid") ? j.at("grid").get<int>() : 1024;
  try {
    return projtori::ModelMetricPair(SeparatedEigenFunctions(std::move(lambda), grid));
  } catch (const Error& e) {
    throw SpecError(std::string("metric: ") + e.what());
  }
}

projtori::FirstIntegralPolynomial polynomial_from(const Json& j) {
  for (const auto& [k, v] : j.items())
    if (k != "leading" && k != "roots" && k != "coefficients") throw SpecError("unknown q key '" + k + "'");
  if (j.contains("coefficients")) {
    if (j.contains("roots") || j.contains("leading"))
      throw SpecError("q takes either coefficients or leading and roots");
    return projtori::FirstIntegralPolynomial::from_coefficients(number_list(j.at("coefficients"), "q.coefficients"));
  }
  const double leading = j.contains("leading") ? j.at("leading").get<double>() : 1.0;
  const std::vector<double> roots = j.contains("roots") ? number_list(j.at("roots"), "q.roots") : std::vector<double>{};
  return projtori::FirstIntegralPolynomial::from_roots(leading, roots);
}

RealVector random_state(int n, Rng& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::normal_distribution<double> n01;
  RealVector s(2 * n);
  for (int i = 0; i < n; ++i) s(i) = u01(rng);
  for (int i = 0; i < n; ++i) s(n + i) = n01(rng);
  return s;
}

std::vector<double> default_taus(const projtori::ModelMetricPair& m, int count) {
  const double a = m.eig().lo(0) - 1.0;
  const double b = m.eig().hi(m.n() - 1) + 1.0;
  std::vector<double> t;
  for (int k = 0; k < count; ++k) t.push_back(a + (b - a) * (k + 0.5) / count);
  return t;
}

std::vector<double> taus_param(const Params& p, const projtori::ModelMetricPair& m) {
  return p.has("taus") ? number_list(p.at("taus"), "params.taus") : default_taus(m, 5);
}

// --- reports -------------------------------------------------------------------

struct Builder {
  RunReport r;
  const RunSpec& spec;

  double tol(const std::string& name) const { return spec.tolerances.at(name); }
  void below(const std::string& name, double value, double bound) {
    r.assertions.push_back({name, std::isfinite(value) && value < bound, value, bound});
  }
  void equal(const std::string& name, const Json& value, const Json& expected) {
    r.assertions.push_back({name, value == expected, value, expected});
  }
  void check(const std::string& name, bool ok) { r.assertions.push_back({name, ok, ok, true}); }
};

void cmd_maslov_index(Builder& b, const Params& p) {
  std::optional<maslov::LagrangianLoop> loop;
  Json expected = p.has("expected") ? p.at("expected") : Json(nullptr);
  if (p.has("frames")) {
    std::vector<maslov::LagrangianFrame> frames;
    for (const auto& f : p.at("frames")) {
      if (!f.is_array() || f.empty()) throw SpecError("each frame must be a non-empty array of rows");
      const auto n = static_cast<Eigen::Index>(f.size());
      ComplexMatrix u(n, n);
      for (Eigen::Index i = 0; i < n; ++i) {
        const Json& row = f.at(static_cast<std::size_t>(i));
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
          throw SpecError("frame rows must have n entries");
        for (Eigen::Index j = 0; j < n; ++j) {
          const Json& e = row.at(static_cast<std::size_t>(j));
          if (e.is_number()) {
            u(i, j) = e.get<double>();
          } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
            u(i, j) = Complex(e[0].get<double>(), e[1].get<double>());
          } else {
            throw SpecError("frame entries must be numbers or [re, im] pairs");
          }
        }
      }
      try {
        frames.emplace_back(u, b.tol("unitarity"));
      } catch (const Error& e) {
        throw SpecError(std::string("frames: ") + e.what());
      }
    }
    if (frames.empty()) throw SpecError("frames must not be empty");
    for (const auto& f : frames)
      if (f.n() != frames.front().n()) throw SpecError("frames differ in dimension");
    try {
      loop.emplace(std::move(frames));
    } catch (const Error& e) {
      throw SpecError(std::string("frames: ") + e.what());
    }
    b.r.results["source"] = "frames";
  } else {
    const int n = p.positive("n");
    const int samples = p.positive("samples", 4);
    const int repeat = p.positive("repeat", 0);
    auto once = maslov::canonical_loop(n, samples);
    if (p.flag("reversed")) once = once.reversed();
    if (repeat == 0) {
      loop.emplace(std::vector<maslov::LagrangianFrame>(once.size(), once.samples().front()));
    } else {
      loop.emplace(once);
      for (int k = 1; k < repeat; ++k) loop = loop->concatenated(once);
    }
    if (expected.is_null()) expected = (p.flag("reversed") ? -1 : 1) * repeat;
    b.r.results["source"] = "canonical";
  }
  const int index = maslov::maslov_index(*loop);
  const int crossings = maslov::signed_crossings(*loop, maslov::LagrangianFrame::vertical(loop->n()));
  b.r.results["n"] = loop->n();
  b.r.results["samples"] = loop->size();
  b.r.results["index"] = index;
  b.r.results["signed_crossings"] = crossings;
  if (p.flag("export")) {
    Json frames = Json::array();
    for (const auto& f : loop->samples()) {
      Json rows = Json::array();
      for (Eigen::Index i = 0; i < f.n(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < f.n(); ++j) row.push_back({f.unitary()(i, j).real(), f.unitary()(i, j).imag()});
        rows.push_back(row);
      }
      frames.push_back(rows);
    }
    b.r.results["frames"] = frames;
  }
  if (!expected.is_null()) b.equal("index_equals_expected", index, expected);
  b.equal("crossings_equal_index", crossings, index);
}

homog::WKSPair wks_pair(const Params& p) {
  const long long k = p.integer("k"), l = p.integer("l");
  if (std::gcd(k, l) != 1) throw SpecError("params.k and params.l must be coprime");
  return {k, l};
}

void cmd_involution(Builder& b, const Params& p) {
  const std::string system = p.str("system");
  Rng rng(b.spec.seed);
  b.r.results["system"] = system;
  if (system == "projtori") {
    const auto m = metric_from(p.at("metric"));
    const auto taus = taus_param(p, m);
    std::vector<poisson::ScalarField> fns;
    for (double t : taus) fns.push_back(projtori::J_field(m, t, p.flag("analytic")));
    std::vector<RealVector> points;
    const int count = p.positive("states");
    for (int s = 0; s < count; ++s) points.push_back(random_state(m.n(), rng));
    const auto inv = poisson::involution_matrix(fns, points);
    b.r.results["n"] = m.n();
    b.r.results["taus"] = taus;
    b.r.results["matrix"] = to_json(inv.max_abs);
    b.r.results["max"] = inv.overall_max;
    b.below("involution", inv.overall_max, b.tol("involution"));
  } else if (system == "wks") {
    const auto kl = wks_pair(p);
    std::vector<poisson::ScalarField> hs;
    for (int a = 1; a <= 8; ++a) hs.push_back(homog::h_field(a));
    std::vector<RealVector> points;
    const int count = p.positive("states");
    for (int s = 0; s < count; ++s) points.push_back(homog::random_on_shell_point(rng).to_real());
    const auto inv = poisson::involution_matrix(hs, points, homog::sphere_constraints());
    b.r.results["k"] = kl.k;
    b.r.results["l"] = kl.l;
    b.r.results["matrix"] = to_json(inv.max_abs);
    b.r.results["max"] = inv.overall_max;
    b.below("involution", inv.overall_max, b.tol("involution"));
  } else {
    throw SpecError("params.system must be 'projtori' or 'wks'");
  }
}

void cmd_independence(Builder& b, const Params& p) {
  const std::string system = p.str("system");
  b.r.results["system"] = system;
  if (system == "projtori") {
    const auto m = metric_from(p.at("metric"));
    Rng rng(b.spec.seed);
    const RealVector s = random_state(m.n(), rng);
    std::vector<poisson::ScalarField> fns;
    for (double t : projtori::default_probes(m)) fns.push_back(projtori::J_field(m, t));
    const int rank = poisson::independence_rank(fns, s);
    b.r.results["state"] = to_json(s);
    b.r.results["rank"] = rank;
    b.r.results["singular_values"] = to_json(poisson::projected_gradient_singular_values(fns, s));
    b.equal("rank", rank, m.n());
  } else if (system == "wks") {
    const auto kl = wks_pair(p);
    homog::WKSOptions opt;
    opt.seed = b.spec.seed;
    opt.involution_samples = 1;
    opt.identity_samples = 0;
    opt.flow_steps = 1;
    opt.flow_time = 1e-3;
    const auto r = homog::wks_integrable_system(kl, opt);
    b.r.results["rank_all"] = r.rank_all;
    b.r.results["rank_reduced"] = r.rank_reduced;
    b.r.results["singular_values_all"] = to_json(r.singular_values_all);
    b.r.results["singular_values_reduced"] = to_json(r.singular_values_reduced);
    b.equal("rank_all", r.rank_all, 8);
    b.equal("rank_reduced", r.rank_reduced, 7);
  } else {
    throw SpecError("params.system must be 'projtori' or 'wks'");
  }
}

void cmd_flow(Builder& b, const Params& p) {
  const std::string system = p.str("system");
  const double duration = p.number("duration");
  const int steps = p.positive("steps");
  if (!(duration > 0.0)) throw SpecError("params.duration must be positive");
  Rng rng(b.spec.seed);
  b.r.results["system"] = system;
  std::vector<poisson::ScalarField> probes;
  poisson::ScalarField h;
  poisson::ConstraintSet constraints;
  RealVector p0;
  if (system == "projtori") {
    const auto m = metric_from(p.at("metric"));
    h = projtori::J_field(m, p.number("tau"));
    std::vector<double> taus = projtori::default_probes(m);
    taus.push_back(p.number("tau"));
    for (double t : taus) probes.push_back(projtori::J_field(m, t));
    probes.push_back(projtori::geodesic_hamiltonian(m));
    p0 = p.has("state") ? to_vector(number_list(p.at("state"), "params.state")) : random_state(m.n(), rng);
    if (p0.size() != 2 * m.n()) throw SpecError("params.state must have 2n entries");
  } else if (system == "wks") {
    constraints = homog::sphere_constraints();
    h.arity = 20;
    h.label = "-(H5+H8)";
    h.value = [](const RealVector& x) {
      const auto s = homog::SphereCotangentPoint::from_real(x);
      return -(homog::h_function(5, s) + homog::h_function(8, s));
    };
    for (int a = 1; a <= 8; ++a) probes.push_back(homog::h_field(a));
    p0 = p.has("state") ? to_vector(number_list(p.at("state"), "params.state"))
                        : homog::random_on_shell_point(rng).to_real();
    if (p0.size() != 20) throw SpecError("params.state must have 20 entries");
  } else {
    throw SpecError("params.system must be 'projtori' or 'wks'");
  }
  const auto traj = poisson::hamiltonian_flow(h, p0, duration, steps, constraints);
  Json drifts = Json::array();
  double drift = 0.0;
  for (const auto& f : probes) {
    const double f0 = f.value(traj.states.front());
    double d = 0.0;
    for (const auto& s : traj.states) d = std::max(d, std::abs(f.value(s) - f0));
    drifts.push_back({{"label", f.label}, {"drift", d}});
    drift = std::max(drift, d);
  }
  b.r.results["initial_state"] = to_json(p0);
  b.r.results["final_state"] = to_json(traj.states.back());
  b.r.results["energy_error_max"] = traj.max_energy_error();
  b.r.results["constraint_residual_max"] = traj.max_constraint_residual();
  b.r.results["probe_drift"] = drifts;
  b.below("drift", drift, b.tol("drift"));
  if (!constraints.empty()) b.below("constraint", traj.max_constraint_residual(), b.tol("constraint"));
}

// Roots interlacing t, drawn either inside or (with some probability) outside the boxes.
struct PartitionCase {
  std::vector<double> t, roots;
};

PartitionCase random_partition_case(int n, Rng& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  PartitionCase c;
  double x = u01(rng) * 2.0 - 1.0;
  for (int i = 0; i < n; ++i) {
    c.t.push_back(x);
    x += 0.2 + u01(rng) * 2.0;
  }
  for (int i = 0; i + 1 < n; ++i) {
    const bool inside = u01(rng) < 0.7;
    const double a = c.t[static_cast<std::size_t>(i)], b = c.t[static_cast<std::size_t>(i + 1)];
    c.roots.push_back(inside ? a + (b - a) * u01(rng) : c.t.front() - 1.0 + (c.t.back() - c.t.front() + 2.0) * u01(rng));
  }
  std::sort(c.roots.begin(), c.roots.end());
  return c;
}

void cmd_proj_tori(Builder& b, const Params& p) {
  const auto m = metric_from(p.at("metric"));
  const int n = m.n();
  Rng rng(b.spec.seed);
  const int states = p.positive("states");
  double consistency = 0.0, field = 0.0, lagrangian = 0.0, diag = 0.0, min_det = HUGE_VAL;
  const auto probes = projtori::default_probes(m);
  for (int s = 0; s < states; ++s) {
    const RealVector st = random_state(n, rng);
    const RealVector x = st.head(n), y = st.tail(n);
    diag = std::max(diag, (projtori::tensor_G(m, x) - RealMatrix(m.eig().values(x).asDiagonal())).cwiseAbs().maxCoeff());
    for (double tau : probes) {
      const double a = projtori::J_tau_tensor(m, x, y, tau);
      const double c = projtori::J_tau_coordinate(m, x, y, tau);
      consistency = std::max(consistency, std::abs(a - c) / std::max(1.0, std::abs(c)));
      const RealVector exact = projtori::vector_field_XJ(m, st, tau);
      const RealVector fd = poisson::hamiltonian_vector(
          poisson::central_difference_gradient(projtori::J_field(m, tau, false), st));
      field = std::max(field, (exact - fd).cwiseAbs().maxCoeff() / std::max(1.0, exact.cwiseAbs().maxCoeff()));
    }
    lagrangian = std::max(lagrangian, projtori::torus_tangent_frame(m, st, probes).symplectic_residual);
    min_det = std::min(min_det, std::abs(projtori::nondegeneracy_determinant(m, x, probes)));
  }

  const int cases = p.positive("partition_cases", 0);
  const int max_n = p.positive("partition_max_n", 2);
  std::uniform_int_distribution<int> pick(2, max_n);
  double sum_err = 0.0, root_err = 0.0;
  int mismatches = 0, interlaced = 0;
  for (int c = 0; c < cases; ++c) {
    const auto cc = random_partition_case(pick(rng), rng);
    const auto res = projtori::partition_coefficients(cc.t, cc.roots);
    double sum = 0.0;
    bool nonneg = true;
    for (double a : res.a) {
      sum += a;
      if (a < 0.0) nonneg = false;
    }
    sum_err = std::max(sum_err, std::abs(sum - 1.0));
    if (nonneg != res.interlacing) ++mismatches;
    if (res.interlacing) ++interlaced;
    const RealVector t = to_vector(cc.t);
    for (double r : cc.roots) {
      double v = 0.0;
      for (int i = 0; i < static_cast<int>(cc.t.size()); ++i) v += res.a[static_cast<std::size_t>(i)] * projtori::mu(t, i, r);
      root_err = std::max(root_err, std::abs(v));
    }
  }

  b.r.results["n"] = n;
  b.r.results["g_tensor_diagonal_max"] = diag;
  b.r.results["tensor_coordinate_max"] = consistency;
  b.r.results["field_max"] = field;
  b.r.results["lagrangian_residual_max"] = lagrangian;
  b.r.results["nondegeneracy_min_abs"] = min_det;
  b.r.results["partition_cases"] = cases;
  b.r.results["partition_interlaced"] = interlaced;
  b.r.results["partition_sum_error_max"] = sum_err;
  b.r.results["partition_root_error_max"] = root_err;
  b.r.results["partition_sign_mismatches"] = mismatches;
  b.below("consistency", consistency, b.tol("consistency"));
  b.below("g_tensor_diagonal", diag, b.tol("consistency"));
  b.below("field", field, b.tol("field"));
  b.below("lagrangian", lagrangian, b.tol("lagrangian"));
  b.check("nondegenerate", min_det > 0.0);
  if (cases > 0) {
    b.below("partition_sum", sum_err, b.tol("partition_sum"));
    b.below("partition_root", root_err, b.tol("partition_root"));
    b.equal("partition_sign_mismatches", mismatches, 0);
  }
}

// Base point on the torus where every partition coefficient of q is as large as possible.
std::optional<RealVector> search_base(const projtori::ModelMetricPair& m, const projtori::FirstIntegralPolynomial& q) {
  const int n = m.n();
  const int res = n <= 2 ? 64 : n == 3 ? 16 : 6;
  long long total = 1;
  for (int i = 0; i < n; ++i) total *= res;
  std::optional<RealVector> best;
  double best_min = 0.0;
  for (long long k = 0; k < total; ++k) {
    RealVector x(n);
    long long r = k;
    for (int i = 0; i < n; ++i) {
      x(i) = (static_cast<double>(r % res) + 0.5) / res;
      r /= res;
    }
    const RealVector t = m.eig().values(x);
    const auto c = projtori::partition_coefficients({t.data(), t.data() + n}, q.roots);
    const double mn = *std::min_element(c.a.begin(), c.a.end());
    if (mn > best_min) {
      best_min = mn;
      best = x;
    }
  }
  return best;
}

void cmd_image_of_j(Builder& b, const Params& p) {
  const auto m = metric_from(p.at("metric"));
  const int n = m.n();
  const auto q = polynomial_from(p.at("q"));
  if (q.real_roots && q.degree() != n - 1) throw SpecError("q must have degree n - 1");
  const auto cls = projtori::image_membership(m, q);
  b.r.results["n"] = n;
  b.r.results["class"] = projtori::to_string(cls);
  b.r.results["roots"] = q.roots;
  b.r.results["leading"] = q.leading;
  if (cls != projtori::ImageClass::InteriorDiffeo && cls != projtori::ImageClass::NontrivialMaslov) return;

  std::optional<RealVector> base;
  if (p.has("base")) {
    base = to_vector(number_list(p.at("base"), "params.base"));
    if (base->size() != n) throw SpecError("params.base must have n entries");
  } else {
    base = search_base(m, q);
    if (!base) throw Error(ErrorCode::SearchExhausted, "no base point over the interior of the level");
  }
  const int samples = p.positive("samples", 8);
  Json loops = Json::array();
  bool all_zero = true, agree = true;
  for (int i = 0; i < n; ++i) {
    const auto cl = projtori::coordinate_loop(m, q, i, samples, *base);
    const int index = maslov::maslov_index(*cl.loop);
    const int crossings = maslov::signed_crossings(*cl.loop, maslov::LagrangianFrame::vertical(n));
    loops.push_back({{"coordinate", i + 1}, {"full_circle", cl.full_circle}, {"index", index},
                     {"signed_crossings", crossings}});
    if (index != 0) all_zero = false;
    if (index != crossings) agree = false;
  }
  b.r.results["base"] = to_json(*base);
  b.r.results["loops"] = loops;

  RealVector state(2 * n);
  state.head(n) = *base;
  state.tail(n) = projtori::liouville_torus_point(m, q, *base);
  const auto events = projtori::orbit_crossing_events(m, state, p.number("orbit_duration"), p.positive("orbit_steps"));
  Json signs = Json::array();
  bool nonneg = true;
  for (const auto& e : events) {
    signs.push_back(e.sign);
    if (e.sign < 0) nonneg = false;
  }
  b.r.results["orbit_crossing_signs"] = signs;

  if (cls == projtori::ImageClass::InteriorDiffeo) {
    b.check("all_loop_indices_zero", all_zero);
  } else {
    b.check("some_loop_index_nonzero", !all_zero);
  }
  b.check("crossings_equal_index", agree);
  b.check("orbit_crossings_nonnegative", nonneg);
}

void cmd_wks_verify(Builder& b, const Params& p) {
  const auto kl = wks_pair(p);
  homog::WKSOptions opt;
  opt.seed = b.spec.seed;
  opt.involution_samples = p.positive("involution_samples");
  opt.identity_samples = p.positive("identity_samples");
  opt.flow_time = p.number("flow_time");
  opt.flow_steps = p.positive("flow_steps");
  const auto r = homog::wks_integrable_system(kl, opt);
  const double idmax = std::max({r.kinetic_identity_max, r.hprime_identity_max, r.psi_V_identity_max});
  b.r.results["k"] = kl.k;
  b.r.results["l"] = kl.l;
  b.r.results["base_point"] = to_json(r.base.to_real());
  b.r.results["base_point_note"] = "x0 = (2/3, 1/3, 2/3), the unit-norm rescaling of (2/9, 1/9, 2/9)";
  b.r.results["involution"] = to_json(r.involution);
  b.r.results["involution_max"] = r.involution_max;
  b.r.results["rank_all"] = r.rank_all;
  b.r.results["rank_reduced"] = r.rank_reduced;
  b.r.results["singular_values_all"] = to_json(r.singular_values_all);
  b.r.results["singular_values_reduced"] = to_json(r.singular_values_reduced);
  b.r.results["psi_V_at_base"] = r.psi_V_at_base;
  b.r.results["kinetic_identity_max"] = r.kinetic_identity_max;
  b.r.results["hprime_identity_max"] = r.hprime_identity_max;
  b.r.results["psi_V_identity_max"] = r.psi_V_identity_max;
  b.r.results["psi_V_bracket_max"] = r.psi_V_bracket_max;
  b.r.results["flow_drift_max"] = r.flow_drift_max;
  b.r.results["flow_constraint_max"] = r.flow_constraint_max;
  b.below("involution", r.involution_max, b.tol("involution"));
  b.equal("rank_all", r.rank_all, 8);
  b.equal("rank_reduced", r.rank_reduced, 7);
  b.below("identities", idmax, b.tol("identity"));
  b.below("psi_V_at_base", std::abs(r.psi_V_at_base), b.tol("identity"));
  b.below("psi_V_bracket", r.psi_V_bracket_max, b.tol("bracket"));
  b.below("flow_drift", r.flow_drift_max, b.tol("drift"));
  b.below("flow_constraint", r.flow_constraint_max, b.tol("constraint"));
}

void cmd_eschenburg_verify(Builder& b, const Params& p) {
  const homog::EschenburgU u{p.integer("k"), p.integer("l"), p.integer("p"), p.integer("q")};
  if (!topo7::admissible(u.quartet())) throw SpecError("quartet (k, l, p, q) is not admissible");
  homog::EschenburgOptions opt;
  opt.seed = b.spec.seed;
  opt.max_draws = p.positive("max_draws");
  opt.involution_samples = p.positive("involution_samples");
  const auto r = homog::eschenburg_integral_report(u, opt);
  b.r.results["quartet"] = {u.k, u.l, u.p, u.q};
  b.r.results["involution_max"] = r.involution_max;
  b.r.results["ddim_coalgebra"] = r.ddim_coalgebra;
  b.r.results["drank_coalgebra"] = r.drank_coalgebra;
  b.r.results["ddim_pulled_back"] = r.ddim_pulled_back;
  b.r.results["reduced_rank"] = r.reduced_rank;
  b.r.results["reduced_singular_values"] = to_json(r.reduced_singular_values);
  b.r.results["draws"] = r.draws;
  b.r.results["psi_U_at_sample"] = r.psi_U_at_sample;
  b.below("involution", r.involution_max, b.tol("involution"));
  b.equal("ddim_coalgebra", r.ddim_coalgebra, 10);
  b.equal("drank_coalgebra", r.drank_coalgebra, 6);
  b.equal("ddim_pulled_back", r.ddim_pulled_back, 8);
  b.equal("reduced_rank", r.reduced_rank, 7);
  b.below("psi_U_at_sample", std::abs(r.psi_U_at_sample), b.tol("momentum"));
}

std::array<long long, 4> corner(const Json& j, const std::string& what) {
  std::array<long long, 4> c{};
  if (j.is_number_integer()) {
    c.fill(j.get<long long>());
  } else if (j.is_array() && j.size() == 4 && std::all_of(j.begin(), j.end(), [](const Json& v) { return v.is_number_integer(); })) {
    for (std::size_t i = 0; i < 4; ++i) c[i] = j[i].get<long long>();
  } else {
    throw SpecError(what + " must be an integer or an array of four integers");
  }
  return c;
}

void cmd_esch_enumerate(Builder& b, const Params& p) {
  topo7::Box box{corner(p.at("lo"), "params.lo"), corner(p.at("hi"), "params.hi")};
  double volume = 1.0;
  for (int i = 0; i < 4; ++i) volume *= static_cast<double>(std::max(0LL, box.hi[i] - box.lo[i] + 1));
  if (volume > 2e8) throw SpecError("box has more than 2e8 points");
  const auto found = topo7::enumerate_admissible(box);
  b.r.results["box_lo"] = box.lo;
  b.r.results["box_hi"] = box.hi;
  b.r.results["count"] = found.size();
  Table t{{"k", "l", "p", "q"}, {}};
  Json list = Json::array();
  for (const auto& e : found) {
    t.rows.push_back({std::to_string(e.k), std::to_string(e.l), std::to_string(e.p), std::to_string(e.q)});
    if (list.size() < 1000) list.push_back({e.k, e.l, e.p, e.q});
  }
  b.r.results["quartets"] = list;
  b.r.results["quartets_truncated"] = found.size() > list.size();
  b.r.table = std::move(t);
  if (p.has("expect_count")) b.equal("count", found.size(), p.at("expect_count"));
}

void cmd_wks_classify(Builder& b, const Params& p) {
  if (p.flag("enumerate")) {
    const auto members = topo7::enumerate_smooth_structures_14();
    Table t{{"k", "l", "k_mod_896"}, {}};
    Json list = Json::array();
    std::set<long long> residues;
    bool homeo = true, hyp = true;
    for (const auto& m : members) {
      list.push_back({m.k, m.l});
      t.rows.push_back({std::to_string(m.k), std::to_string(m.l), std::to_string(((m.k % 896) + 896) % 896)});
      residues.insert(((m.k % 896) + 896) % 896);
      homeo = homeo && topo7::wks14_homeomorphic(m.k, m.l);
      hyp = hyp && topo7::wks_hypothesis(m);
    }
    std::set<long long> brute;
    for (long long k = 1; k <= 896; ++k)
      if (std::gcd(k, 4LL) == 1 && topo7::wks14_homeomorphic(k, 4)) brute.insert(k % 896);
    b.r.results["members"] = list;
    b.r.results["count"] = members.size();
    b.r.table = std::move(t);
    b.equal("count", members.size(), 28);
    b.equal("distinct_mod_896", residues.size(), members.size());
    b.check("all_homeomorphic", homeo);
    b.check("all_satisfy_hypothesis", hyp);
    b.check("brute_force_matches", brute == residues);
    return;
  }
  const auto kl = wks_pair(p);
  b.r.results["k"] = kl.k;
  b.r.results["l"] = kl.l;
  b.r.results["hypothesis"] = topo7::wks_hypothesis(kl);
  b.r.results["homeomorphic_to_M_1_4"] = topo7::wks14_homeomorphic(kl.k, kl.l);
  b.r.results["diffeomorphic_to_M_1_4"] = topo7::wks14_diffeomorphic(kl.k, kl.l);
}

void cmd_table_verify(Builder& b, const Params& p) {
  std::vector<topo7::TableRow> rows;
  if (p.has("path")) {
    try {
      rows = topo7::load_table_csv(p.str("path"));
    } catch (const Error& e) {
      throw SpecError(std::string("params.path: ") + e.what());
    }
  } else {
    rows = topo7::reference_table();
  }
  const auto r = topo7::verify_reference_table(rows);
  Table t{{"k", "l", "p", "q", "s1", "admissible"}, {}};
  for (const auto& row : rows) {
    const auto& e = row.quartet;
    t.rows.push_back({std::to_string(e.k), std::to_string(e.l), std::to_string(e.p), std::to_string(e.q), row.s1,
                      topo7::admissible(e) ? "true" : "false"});
  }
  b.r.results["rows"] = r.rows;
  b.r.results["admissible_rows"] = r.admissible_rows;
  b.r.results["inadmissible"] = r.inadmissible;
  b.r.results["s1_matches_fractions"] = r.s1_matches_fractions;
  b.r.results["s1_distinct_mod_one"] = r.s1_distinct_mod_one;
  b.r.table = std::move(t);
  b.equal("rows", r.rows, 28);
  b.equal("admissible_rows", r.admissible_rows, r.rows);
  b.check("s1_matches_fractions", r.s1_matches_fractions);
  b.check("s1_distinct_mod_one", r.s1_distinct_mod_one);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string json_field(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace

SpecError::SpecError(const std::string& what, int line, int column)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what
                                  : what),
      line_(line),
      column_(column) {}

const std::vector<Command>& all_commands() {
  static const std::vector<Command> all = [] {
    std::vector<Command> v;
    for (const auto& s : schemas()) v.push_back(s.command);
    return v;
  }();
  return all;
}

std::string to_string(Command c) { return schema(c).name; }

std::optional<Command> parse_command(std::string_view name) {
  for (const auto& s : schemas())
    if (s.name == name) return s.command;
  return std::nullopt;
}

RunSpec parse_spec(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte);
    std::string msg = e.what();
    if (const auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
    throw SpecError(msg, line, col);
  }
  if (!root.is_object()) throw SpecError("spec must be a JSON object", 1, 1);
  for (const auto& [k, v] : root.items())
    if (k != "command" && k != "params" && k != "seed" && k != "tolerances")
      throw SpecError("unknown top-level key '" + k + "'");
  if (!root.contains("command") || !root.at("command").is_string()) throw SpecError("missing string 'command'");
  const auto cmd = parse_command(root.at("command").get<std::string>());
  if (!cmd) throw SpecError("unknown command '" + root.at("command").get<std::string>() + "'");
  const Schema& sc = schema(*cmd);

  RunSpec spec;
  spec.command = *cmd;
  if (root.contains("seed")) {
    const Json& s = root.at("seed");
    if (!s.is_number_integer() || (s.is_number_integer() && !s.is_number_unsigned() && s.get<long long>() < 0))
      throw SpecError("seed must be a non-negative integer");
    spec.seed = s.get<std::uint64_t>();
  }

  const Json given = root.contains("params") ? root.at("params") : Json::object();
  if (!given.is_object()) throw SpecError("params must be an object");
  for (const auto& [k, v] : given.items()) {
    const auto it = std::find_if(sc.params.begin(), sc.params.end(), [&](const ParamSpec& p) { return p.name == k; });
    if (it == sc.params.end()) throw SpecError("unknown parameter '" + k + "' for " + sc.name);
    if (!kind_matches(it->kind, v)) throw SpecError("params." + k + " must be " + kind_name(it->kind));
  }
  for (const auto& ps : sc.params) {
    if (given.contains(ps.name)) {
      spec.params[ps.name] = given.at(ps.name);
    } else if (!ps.fallback.is_null()) {
      spec.params[ps.name] = ps.fallback;
    }
  }

  for (const auto& [name, value] : sc.tolerances) spec.tolerances[name] = value;
  if (root.contains("tolerances")) {
    const Json& t = root.at("tolerances");
    if (!t.is_object()) throw SpecError("tolerances must be an object");
    for (const auto& [k, v] : t.items()) {
      if (!spec.tolerances.contains(k)) throw SpecError("unknown tolerance '" + k + "' for " + sc.name);
      if (!v.is_number() || !(v.get<double>() > 0.0)) throw SpecError("tolerance " + k + " must be a positive number");
      spec.tolerances[k] = v.get<double>();
    }
  }
  return spec;
}

RunSpec load_spec(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SpecError("cannot open spec file '" + path + "'");
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  return parse_spec(text);
}

bool RunReport::pass() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.pass; });
}

Json RunReport::to_json(bool with_time) const {
  Json j;
  j["command"] = cli::to_string(command);
  j["inputs"] = inputs;
  j["results"] = results;
  Json as = Json::array();
  for (const auto& a : assertions) as.push_back({{"name", a.name}, {"pass", a.pass}, {"value", a.value}, {"bound", a.bound}});
  j["assertions"] = as;
  j["pass"] = pass();
  if (with_time) j["wall_time_s"] = wall_time_s;
  return j;
}

std::string RunReport::to_csv() const {
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_field(cells[i]);
    out << '\n';
  };
  if (table) {
    line(table->header);
    for (const auto& r : table->rows) line(r);
  } else {
    line({"assertion", "pass", "value", "bound"});
    for (const auto& a : assertions) line({a.name, a.pass ? "true" : "false", json_field(a.value), json_field(a.bound)});
  }
  return out.str();
}

RunReport execute(const RunSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  Builder b{RunReport{}, spec};
  b.r.command = spec.command;
  Json tol = Json::object();
  for (const auto& [k, v] : spec.tolerances) tol[k] = v;
  b.r.inputs = {{"params", spec.params}, {"seed", spec.seed}, {"tolerances", tol}};
  b.r.results["report"] = schema(spec.command).report;
  const Params p(spec.params);
  using Fn = void (*)(Builder&, const Params&);
  static const std::map<Command, Fn> table = {
      {Command::MaslovIndex, cmd_maslov_index},       {Command::Involution, cmd_involution},
      {Command::Independence, cmd_independence},      {Command::Flow, cmd_flow},
      {Command::ProjTori, cmd_proj_tori},             {Command::ImageOfJ, cmd_image_of_j},
      {Command::WksVerify, cmd_wks_verify},           {Command::EschenburgVerify, cmd_eschenburg_verify},
      {Command::EschEnumerate, cmd_esch_enumerate},   {Command::WksClassify, cmd_wks_classify},
      {Command::TableVerify, cmd_table_verify},
  };
  try {
    table.at(spec.command)(b, p);
  } catch (const Json::exception& e) {
    throw SpecError(std::string("parameter type: ") + e.what());
  }
  b.r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return b.r;
}

Outcome run(const std::string& spec_text, std::optional<std::uint64_t> seed_override, Format format) {
  Outcome o;
  std::string command = "unknown";
  try {
    RunSpec spec = parse_spec(spec_text);
    if (seed_override) spec.seed = *seed_override;
    command = to_string(spec.command);
    const RunReport r = execute(spec);
    o.output = format == Format::Csv ? r.to_csv() : r.to_json().dump(2) + "\n";
    o.exit_code = r.pass() ? 0 : 1;
    if (!r.pass()) {
      for (const auto& a : r.assertions)
        if (!a.pass) o.diagnostic += "assertion failed: " + a.name + " (value " + json_field(a.value) + ", bound " + json_field(a.bound) + ")\n";
    }
  } catch (const SpecError& e) {
    o.exit_code = 2;
    o.diagnostic = std::string("spec error: ") + e.what() + "\n";
  } catch (const Error& e) {
    o.exit_code = e.is_numerical() ? 3 : 2;
    o.diagnostic = std::string(e.is_numerical() ? "numerical error: " : "invalid input: ") + e.what() + "\n";
    if (e.is_numerical()) {
      const Json j = {{"command", command}, {"error", {{"code", mk::to_string(e.code())}, {"message", e.what()}}}, {"pass", false}};
      o.output = j.dump(2) + "\n";
    }
  }
  return o;
}

}  // namespace mk::cli
