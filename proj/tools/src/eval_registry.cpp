#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <string>

#include "sfpsd/specialfn.hpp"
#include "sfpsd_cli/commands.hpp"
#include "sfpsd_cli/json_io.hpp"

namespace sfpsd::cli {

namespace {

using Args = std::vector<std::string>;

struct Entry {
  std::string usage;
  std::function<EvalResult(const Args&, const SeriesControl&)> fn;
};

std::size_t parse_count(const std::string& s) {
  const double v = parse_real(s);
  if (!(v >= 0.0) || v != std::floor(v) || v > 1e9) throw SpecError("expected a count, got '" + s + "'");
  return static_cast<std::size_t>(v);
}

long parse_integer(const std::string& s) {
  const double v = parse_real(s);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw SpecError("expected an integer, got '" + s + "'");
  return static_cast<long>(v);
}

EvalResult plain(Complex v) { return {v, 0.0, 0}; }

const std::map<std::string, Entry>& registry() {
  static const std::map<std::string, Entry> table = {
      {"gamma", {"z", [](const Args& a, const SeriesControl&) { return gamma(parse_complex(a[0])); }}},
      {"log_gamma", {"z", [](const Args& a, const SeriesControl&) { return plain(log_gamma(parse_complex(a[0]))); }}},
      {"rising_factorial",
       {"a n", [](const Args& a, const SeriesControl&) {
          return plain(rising_factorial(parse_complex(a[0]), parse_count(a[1])));
        }}},
      {"beta", {"p q", [](const Args& a, const SeriesControl&) {
                  return beta(parse_complex(a[0]), parse_complex(a[1]));
                }}},
      {"zeta", {"s", [](const Args& a, const SeriesControl& c) { return zeta(parse_complex(a[0]), c); }}},
      {"dirichlet_eta",
       {"s", [](const Args& a, const SeriesControl& c) { return dirichlet_eta(parse_complex(a[0]), c); }}},
      {"hurwitz_zeta", {"s a", [](const Args& a, const SeriesControl& c) {
                          return hurwitz_zeta(parse_complex(a[0]), parse_real(a[1]), c);
                        }}},
      {"lerch_phi", {"z s a", [](const Args& a, const SeriesControl& c) {
                       return lerch_phi(parse_real(a[0]), parse_complex(a[1]), parse_real(a[2]), c);
                     }}},
      {"polygamma_shift", {"p x", [](const Args& a, const SeriesControl& c) {
                             const std::size_t p = parse_count(a[0]);
                             return polygamma_shift(static_cast<unsigned>(p), parse_real(a[1]), c);
                           }}},
      {"theta3", {"v q", [](const Args& a, const SeriesControl& c) {
                    return theta3(parse_complex(a[0]), parse_real(a[1]), c);
                  }}},
      {"quarter_period", {"q", [](const Args& a, const SeriesControl& c) {
                            return plain(quarter_period(parse_real(a[0]), c));
                          }}},
      {"jacobi_dn", {"v q", [](const Args& a, const SeriesControl& c) {
                       return jacobi_dn(parse_complex(a[0]), parse_real(a[1]), c);
                     }}},
      {"riemann_xi", {"z", [](const Args& a, const SeriesControl& c) { return riemann_xi(parse_complex(a[0]), c); }}},
      {"hypergeometric_f", {"upper lower z", [](const Args& a, const SeriesControl& c) {
                              const auto up = parse_complex_list(a[0]);
                              const auto lo = parse_complex_list(a[1]);
                              return hypergeometric_f(up, lo, parse_complex(a[2]), c);
                            }}},
      {"q_pochhammer", {"z q n|inf", [](const Args& a, const SeriesControl& c) {
                          const Complex z = parse_complex(a[0]);
                          const double q = parse_real(a[1]);
                          if (a[2] == "inf") return q_pochhammer(z, q, c);
                          return q_pochhammer(z, q, parse_count(a[2]), c);
                        }}},
      {"gamma_q", {"x q", [](const Args& a, const SeriesControl& c) {
                     return gamma_q(parse_real(a[0]), parse_real(a[1]), c);
                   }}},
      {"deformed_q_hypergeometric",
       {"upper lower q alpha z", [](const Args& a, const SeriesControl& c) {
          const auto up = parse_complex_list(a[0]);
          const auto lo = parse_complex_list(a[1]);
          return deformed_q_hypergeometric(up, lo, parse_real(a[2]), parse_real(a[3]), parse_complex(a[4]), c);
        }}},
      {"basic_hypergeometric_phi",
       {"upper lower q z", [](const Args& a, const SeriesControl& c) {
          const auto up = parse_complex_list(a[0]);
          const auto lo = parse_complex_list(a[1]);
          return basic_hypergeometric_phi(up, lo, parse_real(a[2]), parse_complex(a[3]), c);
        }}},
      {"elliptic_theta", {"x p", [](const Args& a, const SeriesControl& c) {
                            return elliptic_theta(parse_complex(a[0]), parse_real(a[1]), c);
                          }}},
      {"elliptic_pochhammer", {"a q p n", [](const Args& a, const SeriesControl& c) {
                                 return elliptic_pochhammer(parse_complex(a[0]), parse_real(a[1]),
                                                            parse_real(a[2]), parse_integer(a[3]), c);
                               }}},
      {"modular_series", {"E|G upper lower q p z", [](const Args& a, const SeriesControl& c) {
                            ModularKind kind;
                            if (a[0] == "E") {
                              kind = ModularKind::E;
                            } else if (a[0] == "G") {
                              kind = ModularKind::G;
                            } else {
                              throw SpecError("modular_series kind must be E or G");
                            }
                            const auto up = parse_complex_list(a[1]);
                            const auto lo = parse_complex_list(a[2]);
                            return modular_series(kind, up, lo, parse_real(a[3]), parse_real(a[4]),
                                                  CoefficientRule{}, parse_complex(a[5]), c);
                          }}},
  };
  return table;
}

std::size_t arity(const std::string& usage) {
  return static_cast<std::size_t>(std::count(usage.begin(), usage.end(), ' ')) + 1;
}

}  // namespace

std::vector<std::string> eval_function_names() {
  std::vector<std::string> out;
  for (const auto& [name, entry] : registry()) out.push_back(name);
  return out;
}

int cmd_eval(const RunConfig& cfg, std::ostream& out) {
  if (cfg.args.empty()) throw UnknownFunction("eval needs a function name");
  const std::string& name = cfg.args.front();
  const auto it = registry().find(name);
  if (it == registry().end()) throw UnknownFunction("unknown function '" + name + "'");
  const Args args(cfg.args.begin() + 1, cfg.args.end());
  if (args.size() != arity(it->second.usage)) {
    throw SpecError("usage: eval " + name + " " + it->second.usage);
  }
  cfg.series.validate();
  const EvalResult r = it->second.fn(args, cfg.series);
  Json doc = {{"schema_version", kReportSchemaVersion},
              {"tool_version", kToolVersion},
              {"command", "eval"},
              {"config", cfg.echo()},
              {"function", name},
              {"value", complex_to_json(r.value)},
              {"err_estimate", r.err_estimate},
              {"terms_used", r.terms_used}};
  out << doc.dump(2) << "\n";
  if (cfg.report_path) write_file_atomic(*cfg.report_path, doc.dump(2) + "\n");
  return kExitOk;
}

}  // namespace sfpsd::cli
