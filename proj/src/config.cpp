#include "gyropoisson/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace gyropoisson {

using nlohmann::json;

namespace {

std::string num(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

/// Reads an object key by key and rejects whatever was not consumed.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError("'" + label() + "' must be an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  const json& raw(const std::string& key) {
    used_.insert(key);
    return j_.at(key);
  }

  double number(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    return as_number(raw(key), join(path_, key));
  }

  double required_number(const std::string& key) {
    if (!has(key)) throw ConfigError("missing key '" + join(path_, key) + "'");
    return as_number(raw(key), join(path_, key));
  }

  std::string string(const std::string& key, const std::string& fallback) {
    if (!has(key)) return fallback;
    const json& v = raw(key);
    if (!v.is_string()) throw ConfigError("'" + join(path_, key) + "' must be a string");
    return v.get<std::string>();
  }

  template <size_t N>
  std::array<double, N> array(const std::string& key, const std::array<double, N>& fallback) {
    if (!has(key)) return fallback;
    const json& v = raw(key);
    const std::string where = join(path_, key);
    if (!v.is_array() || v.size() != N) {
      throw ConfigError("'" + where + "' must be an array of " + std::to_string(N) + " numbers");
    }
    std::array<double, N> out{};
    for (size_t i = 0; i < N; ++i) out[i] = as_number(v[i], where + "[" + std::to_string(i) + "]");
    return out;
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!used_.count(it.key())) throw ConfigError("unknown key '" + join(path_, it.key()) + "'");
    }
  }

  std::string child(const std::string& key) const { return join(path_, key); }
  std::string label() const { return path_.empty() ? "<root>" : path_; }

  static double as_number(const json& v, const std::string& where) {
    if (!v.is_number()) throw ConfigError("'" + where + "' must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError("'" + where + "' must be finite");
    return d;
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

json to_array(const double* v, size_t n) {
  json a = json::array();
  for (size_t i = 0; i < n; ++i) a.push_back(v[i]);
  return a;
}

template <size_t N>
json to_array(const std::array<double, N>& v) {
  return to_array(v.data(), N);
}

Vec3 vec(const std::array<double, 3>& a) { return {a[0], a[1], a[2]}; }

// ---------------------------------------------------------------------------
// Function registry

/// {"type": "poly3", "coefficients": {"g1g2": 0.5, ...}}
ScalarField gamma_field(const json& j, const std::string& path, json& normalized) {
  Reader r(j, path);
  const std::string type = r.string("type", "");
  if (type != "poly3") throw ConfigError("'" + r.child("type") + "' must be \"poly3\"");
  std::map<std::string, double> coefficients;
  if (r.has("coefficients")) {
    const json& c = r.raw("coefficients");
    if (!c.is_object()) throw ConfigError("'" + r.child("coefficients") + "' must be an object");
    for (auto it = c.begin(); it != c.end(); ++it) {
      coefficients[it.key()] = Reader::as_number(it.value(), r.child("coefficients") + "." + it.key());
    }
  }
  r.finish();
  Poly3 p;
  try {
    p = Poly3::from_coefficients(coefficients);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("'" + r.child("coefficients") + "': " + e.what());
  }
  normalized = json{{"type", "poly3"}, {"coefficients", json::object()}};
  for (const auto& [k, v] : coefficients) normalized["coefficients"][k] = v;
  return ScalarField::of_gamma([p](const Vec3& g) { return p(g); }, [p](const Vec3& g) { return p.grad(g); },
                               p.describe());
}

/// One-variable families.
Univariate univariate(const json& j, const std::string& path, json& normalized) {
  Reader r(j, path);
  const std::string type = r.string("type", "");
  Univariate f;
  try {
    if (type == "constant") {
      const double c = r.required_number("c");
      normalized = json{{"type", type}, {"c", c}};
      f = Univariate::constant(c);
    } else if (type == "polynomial") {
      const auto c = r.array<4>("coefficients", {0.0, 0.0, 0.0, 0.0});
      normalized = json{{"type", type}, {"coefficients", to_array(c)}};
      f = Univariate::polynomial(c);
    } else if (type == "rational") {
      const double c = r.required_number("c");
      const double scale = r.number("scale", 1.0);
      normalized = json{{"type", type}, {"c", c}, {"scale", scale}};
      f = Univariate::rational(c, scale);
    } else if (type == "power") {
      const double k = r.required_number("k");
      const double p = r.required_number("p");
      normalized = json{{"type", type}, {"k", k}, {"p", p}};
      f = Univariate::power(k, p);
    } else if (type == "exponential") {
      const double k = r.required_number("k");
      const double rate = r.required_number("r");
      normalized = json{{"type", type}, {"k", k}, {"r", rate}};
      f = Univariate::exponential(k, rate);
    } else if (type == "sine" || type == "cosine") {
      const double c0 = r.number("c0", 0.0);
      const double c1 = r.number("c1", 1.0);
      const double w = r.number("w", 1.0);
      normalized = json{{"type", type}, {"c0", c0}, {"c1", c1}, {"w", w}};
      f = type == "sine" ? Univariate::sine(c0, c1, w) : Univariate::cosine(c0, c1, w);
    } else {
      throw ConfigError("'" + r.child("type") +
                        "' must be one of constant, polynomial, rational, power, exponential, sine, cosine");
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError("'" + r.label() + "': " + e.what());
  }
  r.finish();
  return f;
}

/// {"type": "product", "gamma": <poly3>, "s": <univariate>}: b = P(gamma) Q(s).
ScalarField product_field(const json& j, const std::string& path, json& normalized) {
  Reader r(j, path);
  const std::string type = r.string("type", "");
  if (type != "product") throw ConfigError("'" + r.child("type") + "' must be \"product\"");
  if (!r.has("gamma") || !r.has("s")) throw ConfigError("'" + r.label() + "' needs both 'gamma' and 's'");
  json ng, ns;
  const ScalarField P = gamma_field(r.raw("gamma"), r.child("gamma"), ng);
  const Univariate Q = univariate(r.raw("s"), r.child("s"), ns);
  r.finish();
  normalized = json{{"type", "product"}, {"gamma", ng}, {"s", ns}};

  ScalarField::Parts parts;
  parts.value = [P, Q](const Vec3& g, double s) { return P(g) * Q(s); };
  parts.grad_gamma = [P, Q](const Vec3& g, double s) { return P.grad_gamma(g) * Q(s); };
  parts.d4 = [P, Q](const Vec3& g, double s) { return P(g) * Q.derivative(s); };
  if (Q.singular_distance) {
    auto sd = Q.singular_distance;
    parts.singular_distance = [sd](const Vec3&, double s) { return sd(s); };
  }
  parts.label = "(" + P.label() + ") * " + Q.label;
  return ScalarField(std::move(parts));
}

Interval interval(Reader& r, const std::string& key, json& normalized) {
  const auto a = r.array<2>(key, {-10.0, 10.0});
  if (!(a[0] < a[1])) throw ConfigError("'" + r.child(key) + "' must satisfy lo < hi");
  normalized[key] = to_array(a);
  return {a[0], a[1]};
}

ScalarField potential_field(const json& j, json& normalized) {
  Reader r(j, "potential");
  const std::string type = r.string("type", "");
  if (type == "zero") {
    r.finish();
    normalized = json{{"type", "zero"}};
    return zero_potential();
  }
  if (type == "classical") {
    const double m = r.number("m", 1.0);
    const double g = r.number("g", 1.0);
    const auto xi = r.array<3>("xi", {0.0, 0.0, 0.0});
    r.finish();
    normalized = json{{"type", "classical"}, {"m", m}, {"g", g}, {"xi", to_array(xi)}};
    return make_classical_potential(m, g, vec(xi));
  }
  if (type == "poly3") return gamma_field(j, "potential", normalized);
  throw ConfigError("'potential.type' must be one of zero, classical, poly3");
}

bool kovalevskaya_case(const std::string& c) { return c == "yehia_a" || c == "yehia_b" || c == "borisov_mamaev"; }

// ---------------------------------------------------------------------------
// Catalog defaults

json default_params(const std::string& c) {
  if (c == "gyrostatic") return {{"mu0", {0.5, -0.3, 0.8}}};
  if (c == "affine") return {{"A", {1.0, 0.2, -0.1, 0.5, 0.3, -0.4}}, {"mu0", {0.1, 0.2, 0.3}}};
  if (c == "psi_phi") {
    return {{"psi", {{"type", "poly3"}, {"coefficients", {{"1", 0.3}, {"g1", 0.5}, {"g2g3", -0.4}}}}},
            {"phi", {{"type", "poly3"}, {"coefficients", {{"g1", 0.1}, {"g1g2", 0.7}, {"g3g3g3", 0.2}}}}}};
  }
  if (c == "yehia_l") {
    return {{"l",
             {{"L", {0.2, 0.1, 0.0, -0.1, 0.3, 0.2, 0.0, 0.4, -0.2}},
              {"c", {0.1, 0.0, -0.2}},
              {"d", {0.2, -0.1, 0.3}}}}};
  }
  if (c == "yehia_a") {
    const YehiaAParams p;
    return {{"a1", p.a1}, {"a2", p.a2}, {"k", p.k}, {"n", p.n}, {"n1", p.n1}, {"n2", p.n2}};
  }
  if (c == "yehia_b") {
    const YehiaBParams p;
    return {{"a1", p.a1}, {"a2", p.a2}, {"eps", p.eps}, {"N", p.N}, {"n", p.n}, {"n1", p.n1}, {"n2", p.n2}};
  }
  if (c == "separable") {
    return {{"a", {{"type", "polynomial"}, {"coefficients", {1.0, 0.0, 1.0, 0.0}}}},
            {"b",
             {{"type", "product"},
              {"gamma", {{"type", "poly3"}, {"coefficients", {{"g1", 1.0}}}}},
              {"s", {{"type", "polynomial"}, {"coefficients", {0.0, 1.0, 0.0, 0.0}}}}}},
            {"phi", {{"type", "poly3"}, {"coefficients", {{"g3g3", 1.0}}}}}};
  }
  if (c == "axis") {
    return {{"beta", {{"type", "polynomial"}, {"coefficients", {1.0, 0.5, 0.0, 0.0}}}},
            {"delta", {{"type", "rational"}, {"c", 1.0}, {"scale", 1.0}}}};
  }
  if (c == "borisov_mamaev") return {{"alpha", 1.0}};
  throw ConfigError("unknown case '" + c + "'");
}

std::array<double, 6> default_initial_state(const std::string& c) {
  if (c == "gyrostatic" || c == "axis") return {4.5, -3.0, 6.0, 0.9, 1.5, 2.43};
  if (c == "affine") return {6.0, -4.0, 8.0, 0.6, 1.0, 1.62};
  if (c == "psi_phi" || c == "yehia_l") return {6.0, -4.0, 8.0, 0.9, 1.5, 2.43};
  if (c == "separable") return {1.5, -1.0, 2.0, 0.36, 0.6, 0.972};
  if (c == "yehia_a") return {7.2, -4.8, 9.0, 1.8, 1.5, 1.86};
  if (c == "yehia_b") return {4.8, -3.2, 6.0, 0.6, 0.5, 0.62};
  return {0.8, -0.6, 0.5, 0.9, 0.6, 2.79};
}

/// Validates the case parameters and returns the scenario with the normalized
/// parameter object.
Scenario build(const ScenarioConfig& cfg, bool allow_raw, json* normalized_params, json* normalized_potential) {
  const std::string& c = cfg.case_name;
  json params = cfg.params.is_null() ? json::object() : cfg.params;
  Reader r(params, "params");
  json out = json::object();

  const bool kov = kovalevskaya_case(c);
  InertiaTensor inertia = InertiaTensor::identity();
  try {
    if (cfg.kovalevskaya_i3) {
      inertia = InertiaTensor::kovalevskaya(*cfg.kovalevskaya_i3);
    } else {
      if (kov) throw ConfigError("case '" + c + "' requires \"inertia\": \"kovalevskaya:<I3>\"");
      const auto& I = cfg.inertia ? *cfg.inertia : std::array<double, 3>{1.0, 2.0, 3.0};
      inertia = InertiaTensor(I[0], I[1], I[2]);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("'inertia': ") + e.what());
  }
  const double I3 = cfg.kovalevskaya_i3.value_or(1.0);

  if (kov && !cfg.potential.is_null()) throw ConfigError("'potential' is fixed by case '" + c + "'");
  if (c != "yehia_b" && !cfg.variant.empty()) throw ConfigError("'variant' applies to case yehia_b only");

  ScalarField potential;
  json npot;
  if (!kov) {
    const json pj = cfg.potential.is_null()
                        ? json{{"type", "classical"}, {"m", 1.0}, {"g", 9.81}, {"xi", {0.1, -0.2, 0.3}}}
                        : cfg.potential;
    potential = potential_field(pj, npot);
  }

  const json defaults = default_params(c);
  Scenario sc;
  try {
    if (c == "gyrostatic") {
      const auto mu0 = r.array<3>("mu0", defaults["mu0"].get<std::array<double, 3>>());
      out["mu0"] = to_array(mu0);
      sc = make_scenario(c, inertia, make_gyrostatic(vec(mu0)), potential, "C_gyrostatic",
                         "(M + mu0) . gamma for constant mu0");
      sc.parameters["mu0"] = to_string(vec(mu0));
    } else if (c == "affine") {
      const auto mu0 = r.array<3>("mu0", defaults["mu0"].get<std::array<double, 3>>());
      out["mu0"] = to_array(mu0);
      if (r.has("A_raw")) {
        if (r.has("A")) throw ConfigError("'params.A' and 'params.A_raw' are mutually exclusive");
        if (!allow_raw) throw ConfigError("'params.A_raw' requires --negative-control");
        const auto a = r.array<9>("A_raw", {});
        out["A_raw"] = to_array(a);
        const Matrix3 A{{a[0], a[1], a[2], a[3], a[4], a[5], a[6], a[7], a[8]}};
        sc = make_scenario(c, inertia, make_affine_raw(A, vec(mu0)), potential, "C_affine",
                           "gamma . A gamma / 2 + (M + mu0) . gamma, symmetric A only");
        sc.parameters["A_raw"] = "[" + num(a[0]) + ", ..., " + num(a[8]) + "]";
      } else {
        const auto a = r.array<6>("A", defaults["A"].get<std::array<double, 6>>());
        out["A"] = to_array(a);
        const SymMatrix3 A(a[0], a[1], a[2], a[3], a[4], a[5]);
        sc = make_scenario(c, inertia, make_affine(A, vec(mu0)), potential, "C_affine",
                           "gamma . A gamma / 2 + (M + mu0) . gamma, symmetric A");
      }
      sc.parameters["mu0"] = to_string(vec(mu0));
    } else if (c == "psi_phi") {
      json np, nf;
      const ScalarField psi = gamma_field(r.has("psi") ? r.raw("psi") : defaults["psi"], "params.psi", np);
      const ScalarField phi = gamma_field(r.has("phi") ? r.raw("phi") : defaults["phi"], "params.phi", nf);
      out["psi"] = np;
      out["phi"] = nf;
      sc = make_scenario(c, inertia, make_psi_phi(psi, phi), potential, "C_psi_phi",
                         "M . gamma + phi for mu = psi gamma + grad phi");
    } else if (c == "yehia_l") {
      json lj = r.has("l") ? r.raw("l") : defaults["l"];
      Reader lr(lj, "params.l");
      const json dl = defaults["l"];
      const auto L = lr.array<9>("L", dl["L"].get<std::array<double, 9>>());
      const auto cc = lr.array<3>("c", dl["c"].get<std::array<double, 3>>());
      const auto d = lr.array<3>("d", dl["d"].get<std::array<double, 3>>());
      lr.finish();
      out["l"] = json{{"L", to_array(L)}, {"c", to_array(cc)}, {"d", to_array(d)}};
      const Matrix3 Lm{{L[0], L[1], L[2], L[3], L[4], L[5], L[6], L[7], L[8]}};
      sc = make_scenario(c, inertia, make_yehia_l(VectorField::quadratic(Lm, vec(cc), vec(d))), potential,
                         "C_yehia_l", "(M + l) . gamma for mu = -(div l) gamma + grad(l . gamma)");
    } else if (c == "yehia_a") {
      YehiaAParams p;
      p.a1 = r.number("a1", p.a1);
      p.a2 = r.number("a2", p.a2);
      p.k = r.number("k", p.k);
      p.n = r.number("n", p.n);
      p.n1 = r.number("n1", p.n1);
      p.n2 = r.number("n2", p.n2);
      p.I3 = I3;
      out = {{"a1", p.a1}, {"a2", p.a2}, {"k", p.k}, {"n", p.n}, {"n1", p.n1}, {"n2", p.n2}};
      sc = make_yehia_case_a(p);
    } else if (c == "yehia_b") {
      YehiaBParams p;
      p.a1 = r.number("a1", p.a1);
      p.a2 = r.number("a2", p.a2);
      p.eps = r.number("eps", p.eps);
      p.N = r.number("N", p.N);
      p.n = r.number("n", p.n);
      p.n1 = r.number("n1", p.n1);
      p.n2 = r.number("n2", p.n2);
      p.I3 = I3;
      out = {{"a1", p.a1}, {"a2", p.a2}, {"eps", p.eps}, {"N", p.N}, {"n", p.n}, {"n1", p.n1}, {"n2", p.n2}};
      const std::string v = cfg.variant.empty() ? "original" : cfg.variant;
      YehiaBVariant variant;
      try {
        variant = parse_yehia_b_variant(v);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("'variant': ") + e.what());
      }
      sc = make_yehia_case_b(p, variant);
    } else if (c == "separable") {
      json na, nb, nf;
      const Univariate a = univariate(r.has("a") ? r.raw("a") : defaults["a"], "params.a", na);
      const ScalarField b = product_field(r.has("b") ? r.raw("b") : defaults["b"], "params.b", nb);
      const ScalarField phi = gamma_field(r.has("phi") ? r.raw("phi") : defaults["phi"], "params.phi", nf);
      out["a"] = na;
      out["b"] = nb;
      out["phi"] = nf;
      const Interval s_working = interval(r, "s_interval", out);
      sc = make_scenario(c, inertia, make_separable(a, b, phi, s_working), potential, "C_separable",
                         "int ds / a(s) + phi for mu = a(s) grad phi + b gamma");
    } else if (c == "axis") {
      json nbeta, ndelta;
      const Univariate beta = univariate(r.has("beta") ? r.raw("beta") : defaults["beta"], "params.beta", nbeta);
      const Univariate delta =
          univariate(r.has("delta") ? r.raw("delta") : defaults["delta"], "params.delta", ndelta);
      out["beta"] = nbeta;
      out["delta"] = ndelta;
      const Interval s_working = interval(r, "s_interval", out);
      const Interval g3_working = interval(r, "gamma3_interval", out);
      sc = make_scenario(c, inertia, make_axis_torque(beta, delta, s_working, g3_working), potential, "C_axis",
                         "int ds / delta + int beta dgamma3 for mu = (0, 0, beta(gamma3) delta(s))");
    } else if (c == "borisov_mamaev") {
      const double alpha = r.number("alpha", 1.0);
      out = {{"alpha", alpha}};
      sc = make_borisov_mamaev(alpha, I3);
    } else {
      throw ConfigError("unknown case '" + c + "'");
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError("'params': " + std::string(e.what()));
  } catch (const DomainError& e) {
    throw ConfigError("'params': " + std::string(e.what()));
  }
  r.finish();
  if (normalized_params) *normalized_params = out;
  if (normalized_potential) *normalized_potential = npot;
  return sc;
}

}  // namespace

bool ScenarioConfig::operator==(const ScenarioConfig& o) const {
  return to_json(*this) == to_json(o);
}

const std::vector<std::string>& case_names() {
  static const std::vector<std::string> names{"gyrostatic", "affine",   "psi_phi", "yehia_l",       "yehia_a",
                                              "yehia_b",    "separable", "axis",   "borisov_mamaev"};
  return names;
}

ScenarioConfig parse_config(const json& j) {
  Reader r(j, "");
  ScenarioConfig cfg;
  cfg.case_name = r.string("case", "");
  if (cfg.case_name.empty()) throw ConfigError("missing key 'case'");
  const auto& names = case_names();
  if (std::find(names.begin(), names.end(), cfg.case_name) == names.end()) {
    throw ConfigError("unknown case '" + cfg.case_name + "'");
  }
  cfg.variant = r.string("variant", "");
  if (r.has("params")) cfg.params = r.raw("params");
  if (r.has("potential")) cfg.potential = r.raw("potential");

  if (r.has("inertia")) {
    const json& in = r.raw("inertia");
    if (in.is_string()) {
      const std::string s = in.get<std::string>();
      const std::string prefix = "kovalevskaya:";
      if (s.rfind(prefix, 0) != 0) throw ConfigError("'inertia' string must look like \"kovalevskaya:<I3>\"");
      const std::string tail = s.substr(prefix.size());
      double v = 0.0;
      auto res = std::from_chars(tail.data(), tail.data() + tail.size(), v);
      if (res.ec != std::errc() || res.ptr != tail.data() + tail.size()) {
        throw ConfigError("'inertia': cannot read I3 from '" + tail + "'");
      }
      cfg.kovalevskaya_i3 = v;
    } else {
      cfg.inertia = r.array<3>("inertia", {});
    }
  } else if (kovalevskaya_case(cfg.case_name)) {
    cfg.kovalevskaya_i3 = 1.0;
  } else {
    cfg.inertia = std::array<double, 3>{1.0, 2.0, 3.0};
  }

  cfg.initial_state = r.array<6>("initial_state", default_initial_state(cfg.case_name));

  if (r.has("run")) {
    Reader run(r.raw("run"), "run");
    cfg.run.t_end = run.number("t_end", cfg.run.t_end);
    cfg.run.dt = run.number("dt", cfg.run.dt);
    const double every = run.number("record_every", cfg.run.record_every);
    run.finish();
    if (!(cfg.run.t_end > 0.0)) throw ConfigError("'run.t_end' must be positive");
    if (!(cfg.run.dt > 0.0)) throw ConfigError("'run.dt' must be positive");
    if (every < 1 || every != std::floor(every) || every > 1e9) {
      throw ConfigError("'run.record_every' must be a positive integer");
    }
    cfg.run.record_every = static_cast<int>(every);
  }

  if (r.has("verify")) {
    Reader v(r.raw("verify"), "verify");
    const double samples = v.number("samples", cfg.verify.samples);
    if (samples < 1 || samples != std::floor(samples) || samples > 1e7) {
      throw ConfigError("'verify.samples' must be a positive integer");
    }
    cfg.verify.samples = static_cast<int>(samples);
    if (v.has("seed")) {
      const json& s = v.raw("seed");
      if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) {
        throw ConfigError("'verify.seed' must be a non-negative integer");
      }
      cfg.verify.seed = s.get<std::uint64_t>();
    }
    cfg.verify.tolerance = v.number("tolerance", cfg.verify.tolerance);
    if (!(cfg.verify.tolerance > 0.0)) throw ConfigError("'verify.tolerance' must be positive");
    if (v.has("casimirs")) {
      const json& c = v.raw("casimirs");
      if (c.is_string() && c.get<std::string>() == "all") {
        cfg.verify.casimirs = {"all"};
      } else if (c.is_array()) {
        for (const auto& e : c) {
          if (!e.is_string()) throw ConfigError("'verify.casimirs' entries must be strings");
          cfg.verify.casimirs.push_back(e.get<std::string>());
        }
      } else {
        throw ConfigError("'verify.casimirs' must be \"all\" or a list of names");
      }
    }
    v.finish();
  }

  if (r.has("convergence")) {
    Reader cv(r.raw("convergence"), "convergence");
    if (cv.has("dt_list")) {
      const json& l = cv.raw("dt_list");
      if (!l.is_array()) throw ConfigError("'convergence.dt_list' must be an array");
      cfg.dt_list.clear();
      for (size_t i = 0; i < l.size(); ++i) {
        cfg.dt_list.push_back(Reader::as_number(l[i], "convergence.dt_list[" + std::to_string(i) + "]"));
      }
      if (cfg.dt_list.size() < 3) throw ConfigError("'convergence.dt_list' needs at least three step sizes");
      for (size_t i = 0; i < cfg.dt_list.size(); ++i) {
        if (!(cfg.dt_list[i] > 0.0) || (i > 0 && !(cfg.dt_list[i] < cfg.dt_list[i - 1]))) {
          throw ConfigError("'convergence.dt_list' must be positive and strictly decreasing");
        }
      }
    }
    cv.finish();
  }
  r.finish();

  // Validate and normalize the case-specific parts.
  json np, npot;
  build(cfg, true, &np, &npot);
  cfg.params = np;
  cfg.potential = npot;

  // Every named Casimir must exist.
  if (!cfg.verify.casimirs.empty() && cfg.verify.casimirs != std::vector<std::string>{"all"}) {
    const Scenario sc = build(cfg, true, nullptr, nullptr);
    for (const auto& name : cfg.verify.casimirs) {
      bool found = name == "C1";
      for (const auto& cas : sc.casimirs) found = found || cas.name == name;
      if (!found) throw ConfigError("'verify.casimirs': case '" + cfg.case_name + "' has no Casimir '" + name + "'");
    }
  }
  return cfg;
}

ScenarioConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  return parse_config(j);
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

json to_json(const ScenarioConfig& cfg) {
  json j;
  j["case"] = cfg.case_name;
  if (!cfg.variant.empty()) j["variant"] = cfg.variant;
  j["params"] = cfg.params;
  if (!cfg.potential.is_null()) j["potential"] = cfg.potential;
  if (cfg.kovalevskaya_i3) {
    j["inertia"] = "kovalevskaya:" + num(*cfg.kovalevskaya_i3);
  } else if (cfg.inertia) {
    j["inertia"] = to_array(*cfg.inertia);
  }
  j["initial_state"] = to_array(cfg.initial_state);
  j["run"] = {{"t_end", cfg.run.t_end}, {"dt", cfg.run.dt}, {"record_every", cfg.run.record_every}};
  j["verify"] = {{"samples", cfg.verify.samples}, {"seed", cfg.verify.seed}, {"tolerance", cfg.verify.tolerance}};
  if (cfg.verify.casimirs == std::vector<std::string>{"all"}) {
    j["verify"]["casimirs"] = "all";
  } else if (!cfg.verify.casimirs.empty()) {
    j["verify"]["casimirs"] = cfg.verify.casimirs;
  }
  j["convergence"] = {{"dt_list", cfg.dt_list}};
  return j;
}

std::string serialize(const ScenarioConfig& cfg) { return to_json(cfg).dump(2) + "\n"; }

ScenarioConfig default_config(const std::string& case_name) { return parse_config(json{{"case", case_name}}); }

Scenario build_scenario(const ScenarioConfig& cfg, bool allow_negative_control) {
  return build(cfg, allow_negative_control, nullptr, nullptr);
}

State initial_state(const ScenarioConfig& cfg) {
  const auto& a = cfg.initial_state;
  return State{{a[0], a[1], a[2]}, {a[3], a[4], a[5]}};
}

const std::vector<CaseInfo>& catalog() {
  static const std::vector<CaseInfo> entries = [] {
    std::vector<CaseInfo> out;
    auto dump = [](const json& v) { return v.dump(); };
    for (const auto& name : case_names()) {
      CaseInfo info;
      info.name = name;
      const json d = default_params(name);
      for (auto it = d.begin(); it != d.end(); ++it) info.parameters.emplace_back(it.key(), dump(it.value()));
      if (name == "affine") info.parameters.emplace_back("A_raw", "(negative control only) 9 row-major entries");
      if (name == "separable" || name == "axis") info.parameters.emplace_back("s_interval", "[-10,10]");
      if (name == "axis") info.parameters.emplace_back("gamma3_interval", "[-10,10]");
      info.parameters.emplace_back("inertia", kovalevskaya_case(name) ? "\"kovalevskaya:1\"" : "[1,2,3]");

      if (name == "gyrostatic") {
        info.summary = "constant gyrostatic momentum mu0";
        info.singular_set = "none";
      } else if (name == "affine") {
        info.summary = "mu = A gamma + mu0 with symmetric A";
        info.singular_set = "none";
      } else if (name == "psi_phi") {
        info.summary = "mu = psi(gamma) gamma + grad phi(gamma), polynomial psi and phi";
        info.singular_set = "none";
      } else if (name == "yehia_l") {
        info.summary = "mu = -(div l) gamma + grad(l . gamma), quadratic l";
        info.singular_set = "none";
      } else if (name == "yehia_a") {
        info.summary = "Kovalevskaya body with the cubic gyroscopic torque";
        info.singular_set = "none";
      } else if (name == "yehia_b") {
        info.summary = "Kovalevskaya body with N / sqrt(gamma1^2 + gamma2^2) terms";
        info.singular_set = "gamma1 = gamma2 = 0";
        info.variants = {"original", "corrected_casimir", "corrected_torque"};
      } else if (name == "separable") {
        info.summary = "mu = a(s) grad phi(gamma) + b(gamma, s) gamma";
        info.singular_set = "zeros of a, singularities of the chosen functions";
      } else if (name == "axis") {
        info.summary = "mu = (0, 0, beta(gamma3) delta(s))";
        info.singular_set = "zeros of delta, singularities of the chosen functions";
      } else {
        info.summary = "mu = (0, 0, s / gamma3), U = alpha (gamma1^2 - gamma2^2)";
        info.singular_set = "gamma3 = 0";
      }

      std::vector<ScenarioConfig> configs;
      if (name == "yehia_b") {
        for (const auto& v : info.variants) {
          ScenarioConfig c = default_config(name);
          c.variant = v;
          configs.push_back(c);
        }
      } else {
        configs.push_back(default_config(name));
      }
      std::set<std::string> seen;
      for (const auto& c : configs) {
        const Scenario sc = build_scenario(c);
        for (const auto& cas : sc.casimirs) {
          if (!seen.insert(cas.name).second) continue;
          std::string prov = cas.provenance;
          if (!cas.expected_conserved) prov += " [known non-conserved]";
          info.casimirs.emplace_back(cas.name, prov);
        }
      }
      out.push_back(std::move(info));
    }
    return out;
  }();
  return entries;
}

}  // namespace gyropoisson
