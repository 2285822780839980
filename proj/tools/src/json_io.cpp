#include "sfpsd_cli/json_io.hpp"

#include <charconv>
#include <cmath>
#include <string>

namespace sfpsd::cli {

namespace {

bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool uses_second(KernelFamily family) {
  return family == KernelFamily::BETA || family == KernelFamily::AW_QGAMMA;
}

Json complex_list_to_json(const std::vector<Complex>& v) {
  Json out = Json::array();
  for (const Complex& c : v) out.push_back(complex_to_json(c));
  return out;
}

std::vector<Complex> complex_list_from_json(const Json& j) {
  if (!j.is_array()) throw SpecError("expected an array of complex values");
  std::vector<Complex> out;
  for (const Json& e : j) out.push_back(complex_from_json(e));
  return out;
}

template <typename T>
T get_or(const Json& obj, const char* key, T fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number()) throw SpecError(std::string("field '") + key + "' must be a number");
  return it->get<T>();
}

}  // namespace

Complex parse_complex(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != ' ') s.push_back(c);
  }
  const auto fail = [&] { return SpecError("cannot parse complex number '" + std::string(text) + "'"); };
  if (s.empty()) throw fail();
  const char last = s.back();
  if (last != 'i' && last != 'j') {
    double re = 0.0;
    if (!parse_double(s, re)) throw fail();
    return {re, 0.0};
  }
  s.pop_back();
  // Split at the last sign that is not an exponent sign or the leading sign.
  std::size_t split = 0;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  const std::string re_part = s.substr(0, split);
  std::string im_part = s.substr(split);
  if (im_part.empty() || im_part == "+") im_part = "1";
  if (im_part == "-") im_part = "-1";
  double re = 0.0;
  double im = 0.0;
  if (!re_part.empty() && !parse_double(re_part, re)) throw fail();
  if (!parse_double(im_part, im)) throw fail();
  return {re, im};
}

std::vector<Complex> parse_complex_list(std::string_view text) {
  std::vector<Complex> out;
  if (text.empty() || text == "-") return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_complex(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_real(std::string_view text) {
  const Complex c = parse_complex(text);
  if (c.imag() != 0.0) throw SpecError("expected a real number, got '" + std::string(text) + "'");
  return c.real();
}

Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  if (j.is_string()) return parse_complex(j.get<std::string>());
  throw SpecError("expected a complex value (number or [re, im]), got " + j.dump());
}

Json spec_to_json(const MatrixSpec& spec) {
  Json factors = Json::array();
  for (const FactorSpec& f : spec.factors) {
    const SharedParams& sh = f.shared;
    Json shared = Json::object();
    switch (f.family) {
      case KernelFamily::THETA3:
      case KernelFamily::DN:
      case KernelFamily::AW_QGAMMA:
        shared["q"] = sh.q;
        break;
      case KernelFamily::SIN_POWER:
        shared["lambda"] = sh.lambda;
        break;
      case KernelFamily::HURWITZ_TAIL:
      case KernelFamily::HURWITZ_DIFF:
        shared["a"] = sh.a;
        break;
      case KernelFamily::LERCH:
        shared["a"] = sh.a;
        shared["z"] = sh.z;
        break;
      case KernelFamily::POLYGAMMA_ZETA:
        shared["order"] = sh.order;
        break;
      case KernelFamily::HYPERGEOM:
        shared["upper"] = complex_list_to_json(sh.upper);
        shared["lower"] = complex_list_to_json(sh.lower);
        break;
      case KernelFamily::Q_HYPERGEOM:
        shared["q"] = sh.q;
        shared["upper"] = complex_list_to_json(sh.upper);
        shared["lower"] = complex_list_to_json(sh.lower);
        shared["alpha"] = sh.alpha;
        shared["radius"] = sh.radius;
        break;
      case KernelFamily::MODULAR_E:
      case KernelFamily::MODULAR_G: {
        shared["upper"] = complex_list_to_json(sh.upper);
        shared["lower"] = complex_list_to_json(sh.lower);
        shared["sigma"] = sh.sigma;
        shared["tau"] = sh.tau;
        Json coeff = Json::object();
        if (sh.coeff.kind == CoefficientRule::Kind::Gaussian) {
          coeff["rule"] = "gaussian";
        } else {
          coeff["rule"] = "table";
          coeff["first_index"] = sh.coeff.first_index;
          coeff["values"] = sh.coeff.values;
        }
        shared["coefficients"] = coeff;
        break;
      }
      default:
        break;
    }
    Json points = Json::array();
    for (const Point& p : f.points) {
      if (uses_second(f.family)) {
        points.push_back(Json::array({complex_to_json(p.first), complex_to_json(p.second)}));
      } else {
        points.push_back(complex_to_json(p.first));
      }
    }
    factors.push_back({{"family", std::string(family_name(f.family))}, {"shared", shared}, {"points", points}});
  }
  return {{"label", spec.label}, {"factors", factors}};
}

MatrixSpec spec_from_json(const Json& j) {
  if (!j.is_object()) throw SpecError("spec must be a JSON object");
  MatrixSpec spec;
  if (auto it = j.find("label"); it != j.end()) {
    if (!it->is_string()) throw SpecError("field 'label' must be a string");
    spec.label = it->get<std::string>();
  }
  auto fit = j.find("factors");
  if (fit == j.end() || !fit->is_array() || fit->empty()) {
    throw SpecError("spec needs a nonempty 'factors' array");
  }
  for (const Json& jf : *fit) {
    if (!jf.is_object()) throw SpecError("each factor must be a JSON object");
    FactorSpec f;
    auto name = jf.find("family");
    if (name == jf.end() || !name->is_string()) throw SpecError("factor needs a 'family' string");
    const auto family = parse_family(name->get<std::string>());
    if (!family) throw SpecError("unknown kernel family '" + name->get<std::string>() + "'");
    f.family = *family;
    SharedParams& sh = f.shared;
    const Json empty = Json::object();
    const Json& js = jf.contains("shared") ? jf["shared"] : empty;
    if (!js.is_object()) throw SpecError("'shared' must be a JSON object");
    sh.q = get_or(js, "q", sh.q);
    sh.lambda = get_or(js, "lambda", sh.lambda);
    sh.a = get_or(js, "a", sh.a);
    sh.z = get_or(js, "z", sh.z);
    const double order = get_or(js, "order", static_cast<double>(sh.order));
    if (!(order >= 1.0) || order != std::floor(order) || order > 64.0) {
      throw SpecError("field 'order' must be an integer in [1, 64]");
    }
    sh.order = static_cast<unsigned>(order);
    sh.alpha = get_or(js, "alpha", sh.alpha);
    sh.radius = get_or(js, "radius", sh.radius);
    sh.sigma = get_or(js, "sigma", sh.sigma);
    sh.tau = get_or(js, "tau", sh.tau);
    if (js.contains("upper")) sh.upper = complex_list_from_json(js["upper"]);
    if (js.contains("lower")) sh.lower = complex_list_from_json(js["lower"]);
    if (auto c = js.find("coefficients"); c != js.end()) {
      if (!c->is_object()) throw SpecError("'coefficients' must be a JSON object");
      const std::string rule = c->value("rule", std::string("gaussian"));
      if (rule == "gaussian") {
        sh.coeff.kind = CoefficientRule::Kind::Gaussian;
      } else if (rule == "table") {
        sh.coeff.kind = CoefficientRule::Kind::Table;
        const double first = get_or(*c, "first_index", 0.0);
        if (first != std::floor(first)) throw SpecError("'first_index' must be an integer");
        sh.coeff.first_index = static_cast<long>(first);
        auto vals = c->find("values");
        if (vals == c->end() || !vals->is_array()) throw SpecError("table rule needs a 'values' array");
        for (const Json& v : *vals) {
          if (!v.is_number()) throw SpecError("coefficient values must be numbers");
          sh.coeff.values.push_back(v.get<double>());
        }
      } else {
        throw SpecError("unknown coefficient rule '" + rule + "'");
      }
    }
    auto pts = jf.find("points");
    if (pts == jf.end() || !pts->is_array()) throw SpecError("factor needs a 'points' array");
    for (const Json& jp : *pts) {
      Point p;
      if (uses_second(f.family)) {
        if (!jp.is_array() || jp.size() != 2) {
          throw SpecError(std::string(family_name(f.family)) + " points are [first, second] pairs");
        }
        p.first = complex_from_json(jp[0]);
        p.second = complex_from_json(jp[1]);
      } else {
        p.first = complex_from_json(jp);
      }
      f.points.push_back(p);
    }
    if (!spec.factors.empty() && f.points.size() != spec.factors.front().points.size()) {
      throw DimensionMismatch("factors have different numbers of points");
    }
    if (f.points.empty()) throw SpecError("factor has no points");
    spec.factors.push_back(std::move(f));
  }
  return spec;
}

Json matrix_to_json(const HermitianMatrix& m) {
  Json rows = Json::array();
  for (std::size_t j = 0; j < m.n; ++j) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.n; ++k) row.push_back(complex_to_json(m(j, k)));
    rows.push_back(row);
  }
  return rows;
}

HermitianMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw SpecError("matrix must be a nonempty array of rows");
  const std::size_t n = j.size();
  HermitianMatrix m(n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!j[r].is_array() || j[r].size() != n) throw DimensionMismatch("matrix must be square");
    for (std::size_t c = 0; c < n; ++c) m(r, c) = complex_from_json(j[r][c]);
  }
  return m;
}

Json verdict_to_json(const PsdVerdict& v) {
  return {{"is_psd", v.is_psd},
          {"min_eig", v.min_eig},
          {"max_eig", v.max_eig},
          {"cholesky_rank", v.cholesky_rank},
          {"cholesky_success", v.cholesky_success},
          {"tolerance_used", v.tolerance_used},
          {"quadratic_forms_ok", v.quadratic_forms_ok},
          {"min_quadratic_form", v.min_quadratic_form}};
}

Json violations_to_json(const ValidationReport& report) {
  Json out = Json::array();
  for (const Violation& v : report.violations) {
    out.push_back({{"factor", v.factor}, {"point", v.point}, {"condition", v.condition}, {"detail", v.detail}});
  }
  return out;
}

Json compare_to_json(const CompareReport& c, double tolerance) {
  return {{"max_deviation", c.max_deviation},
          {"worst", Json::array({c.worst_j, c.worst_k})},
          {"tolerance", tolerance},
          {"within", c.within}};
}

Json identity_to_json(const IdentityCheck& c, double tolerance) {
  return {{"lhs", c.lhs},
          {"rhs", c.rhs},
          {"ratio", c.lhs / c.rhs},
          {"rel_deviation", c.rel_deviation},
          {"quad_error", c.quad_error},
          {"tolerance", tolerance},
          {"within", c.rel_deviation <= tolerance}};
}

}  // namespace sfpsd::cli
