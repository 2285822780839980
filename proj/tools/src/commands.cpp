#include "sfpsd_cli/commands.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "sfpsd/oracle.hpp"
#include "sfpsd/psdlinalg.hpp"

namespace sfpsd::cli {

namespace {

constexpr double kDefaultPsdTol = 1e-8;
constexpr double kDefaultMpTol = 1e-8;
constexpr double kDefaultAwTol = 1e-5;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Json header(const RunConfig& cfg) {
  return {{"schema_version", kReportSchemaVersion},
          {"tool_version", kToolVersion},
          {"command", cfg.command},
          {"config", cfg.echo()}};
}

void emit(const RunConfig& cfg, const Json& doc, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (cfg.report_path) {
    write_file_atomic(*cfg.report_path, text);
  } else {
    out << text;
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw SpecError("'" + path + "' is not valid JSON: " + e.what());
  }
}

KernelFamily require_family(const std::string& name) {
  const auto f = parse_family(name);
  if (!f) throw SpecError("unknown kernel family '" + name + "'");
  return *f;
}

// Spec from --spec, or generated from --family/--n/--seed.
MatrixSpec load_or_generate(const RunConfig& cfg, std::size_t default_n) {
  if (cfg.spec_path) return spec_from_json(read_json_file(*cfg.spec_path));
  if (!cfg.family) throw SpecError("need --spec or --family");
  const KernelFamily family = require_family(*cfg.family);
  return random_spec(family, cfg.n == 0 ? default_n : cfg.n, cfg.seed);
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const NumericError*>(&e)) return "numeric";
  if (dynamic_cast<const SpecError*>(&e)) return "spec";
  return "other";
}

Json psd_instance(const HermitianMatrix& m, double tol) {
  const PsdVerdict v = psd_verdict(m, tol);
  return {{"n", m.n}, {"verdict", verdict_to_json(v)}, {"leading_minors", leading_minors(m)}, {"passed", v.is_psd}};
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct TrialOutcome {
  Json record;
  bool passed = false;
  std::optional<Json> failing_spec;
};

TrialOutcome run_trial(const RunConfig& cfg, KernelFamily family, std::size_t trial, double tol) {
  TrialOutcome outcome;
  const std::uint64_t seed = trial_seed(cfg.seed, family, trial);
  const std::size_t n = (cfg.n != 0) ? cfg.n : 2 + static_cast<std::size_t>(splitmix64(seed) % 7);
  const MatrixSpec spec = random_spec(family, n, seed);
  Json rec = {{"family", std::string(family_name(family))}, {"trial", trial}, {"seed", seed}, {"n", n},
              {"label", spec.label}};
  bool passed = false;
  try {
    const HermitianMatrix m = build_matrix(spec, cfg.series);
    const PsdVerdict v = psd_verdict(m, tol);
    rec["verdict"] = verdict_to_json(v);
    passed = v.is_psd;
    if (cfg.oracle && has_oracle(family)) {
      const auto o = oracle_matrix(spec);
      const double otol = oracle_tolerance(family);
      const CompareReport c = entrywise_compare(m, *o, otol);
      rec["oracle"] = compare_to_json(c, otol);
      passed = passed && c.within;
    }
  } catch (const std::exception& e) {
    rec["error"] = {{"kind", error_kind(e)}, {"message", e.what()}};
    passed = false;
  }
  rec["passed"] = passed;
  outcome.passed = passed;
  if (!passed) outcome.failing_spec = spec_to_json(spec);
  outcome.record = std::move(rec);
  return outcome;
}

}  // namespace

Json RunConfig::echo() const {
  Json j = {{"command", command},
            {"args", args},
            {"n", n},
            {"trials", trials},
            {"seed", seed},
            {"eps", series.rel_eps},
            {"max_terms", series.max_terms},
            {"oracle", oracle}};
  j["spec"] = spec_path ? Json(*spec_path) : Json(nullptr);
  j["family"] = family ? Json(*family) : Json(nullptr);
  j["tol"] = tol ? Json(*tol) : Json(nullptr);
  return j;
}

std::size_t worker_count(const RunConfig& cfg) {
  std::size_t count = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SFPSD_MAX_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) count = std::min(count, static_cast<std::size_t>(cap));
  }
  if (cfg.max_threads != 0) count = std::min(count, cfg.max_threads);
  return count;
}

std::uint64_t trial_seed(std::uint64_t seed, KernelFamily family, std::size_t trial) {
  return splitmix64(splitmix64(seed) ^ (static_cast<std::uint64_t>(family) << 40) ^ trial);
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp" + std::to_string(static_cast<unsigned long>(std::hash<std::thread::id>{}(std::this_thread::get_id())));
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw SpecError("cannot write '" + tmp.string() + "'");
    f << contents;
    f.flush();
    if (!f) throw SpecError("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw SpecError("cannot rename report into '" + path + "': " + ec.message());
  }
}

int cmd_build(const RunConfig& cfg, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  cfg.series.validate();
  const MatrixSpec spec = load_or_generate(cfg, 4);
  const HermitianMatrix m = build_matrix(spec, cfg.series);
  Json doc = header(cfg);
  doc["spec"] = spec_to_json(spec);
  doc["matrix"] = matrix_to_json(m);
  doc["wall_time_s"] = seconds_since(t0);
  emit(cfg, doc, out);
  return kExitOk;
}

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  cfg.series.validate();
  const double tol = cfg.tol.value_or(kDefaultPsdTol);
  Json doc = header(cfg);
  Json instance;
  HermitianMatrix m;
  Json input;
  if (cfg.spec_path) input = read_json_file(*cfg.spec_path);
  if (input.is_object() && input.contains("matrix")) {
    m = matrix_from_json(input["matrix"]);
    const double dev = hermitian_deviation(m);
    if (!(dev <= kHermitianCheckTolerance)) {
      throw NonHermitian("matrix is not Hermitian: deviation " + std::to_string(dev));
    }
    instance["label"] = input.value("label", std::string("matrix"));
  } else {
    const MatrixSpec spec = cfg.spec_path ? spec_from_json(input) : load_or_generate(cfg, 4);
    const ValidationReport report = validate_spec(spec, cfg.series);
    if (!report.ok()) {
      for (const Violation& v : report.violations) {
        err << "violation: factor " << v.factor << " point " << v.point << ": " << v.condition;
        if (!v.detail.empty()) err << " (" << v.detail << ")";
        err << "\n";
      }
      doc["instances"] = Json::array({{{"label", spec.label}, {"violations", violations_to_json(report)},
                                       {"passed", false}}});
      doc["summary"] = {{"total", 1}, {"passed", 0}, {"failed", 1}};
      doc["wall_time_s"] = seconds_since(t0);
      emit(cfg, doc, out);
      return kExitSpecError;
    }
    m = build_matrix(spec, cfg.series);
    instance["label"] = spec.label;
    instance["spec"] = spec_to_json(spec);
  }
  instance.update(psd_instance(m, tol));
  const bool passed = instance["passed"].get<bool>();
  doc["instances"] = Json::array({instance});
  doc["summary"] = {{"total", 1}, {"passed", passed ? 1 : 0}, {"failed", passed ? 0 : 1}};
  doc["wall_time_s"] = seconds_since(t0);
  emit(cfg, doc, out);
  return passed ? kExitOk : kExitVerificationFailure;
}

int cmd_fuzz(const RunConfig& cfg, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  cfg.series.validate();
  if (cfg.trials < 1) throw SpecError("--trials must be at least 1");
  const double tol = cfg.tol.value_or(kDefaultPsdTol);
  std::vector<KernelFamily> families;
  const std::string which = cfg.family.value_or("all");
  if (which == "all") {
    families.assign(kAllFamilies.begin(), kAllFamilies.end());
  } else {
    families.push_back(require_family(which));
  }

  const std::size_t jobs = families.size() * cfg.trials;
  std::vector<TrialOutcome> outcomes(jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs; i = next++) {
      outcomes[i] = run_trial(cfg, families[i / cfg.trials], i % cfg.trials, tol);
    }
  };
  const std::size_t workers = std::min(worker_count(cfg), jobs);
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  Json doc = header(cfg);
  Json instances = Json::array();
  Json failing = Json::array();
  Json per_family = Json::object();
  std::size_t passed = 0;
  for (std::size_t i = 0; i < jobs; ++i) {
    TrialOutcome& o = outcomes[i];
    const std::string fam = o.record["family"].get<std::string>();
    Json& pf = per_family[fam];
    if (pf.is_null()) pf = {{"trials", 0}, {"passed", 0}};
    pf["trials"] = pf["trials"].get<std::size_t>() + 1;
    if (o.passed) {
      ++passed;
      pf["passed"] = pf["passed"].get<std::size_t>() + 1;
    } else {
      failing.push_back({{"family", fam}, {"trial", o.record["trial"]}, {"seed", o.record["seed"]},
                         {"spec", *o.failing_spec}});
    }
    instances.push_back(std::move(o.record));
  }
  doc["instances"] = std::move(instances);
  doc["failing_specs"] = std::move(failing);
  doc["summary"] = {{"total", jobs}, {"passed", passed}, {"failed", jobs - passed}, {"per_family", per_family}};
  doc["wall_time_s"] = seconds_since(t0);
  emit(cfg, doc, out);
  return passed == jobs ? kExitOk : kExitVerificationFailure;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  if (cfg.args.empty()) throw SpecError("oracle needs MP, AW or a family name");
  const std::string& what = cfg.args.front();
  Json doc = header(cfg);
  bool within = false;
  if (what == "MP") {
    if (cfg.args.size() != 3) throw SpecError("usage: oracle MP <lambda> <phi>");
    const double lambda = parse_real(cfg.args[1]);
    const double phi = parse_real(cfg.args[2]);
    const double tol = cfg.tol.value_or(kDefaultMpTol);
    const IdentityCheck c = verify_mp_identity(lambda, phi);
    Json rec = identity_to_json(c, tol);
    rec["identity"] = "MP";
    rec["params"] = {{"lambda", lambda}, {"phi", phi}};
    within = rec["within"].get<bool>();
    doc["identities"] = Json::array({rec});
  } else if (what == "AW") {
    std::vector<Complex> list;
    for (std::size_t i = 2; i < cfg.args.size(); ++i) {
      for (const Complex& c : parse_complex_list(cfg.args[i])) list.push_back(c);
    }
    if (cfg.args.size() < 3 || list.size() != 4) throw SpecError("usage: oracle AW <q> <a1,a2,a3,a4>");
    const double q = parse_real(cfg.args[1]);
    std::array<double, 4> alphas{};
    for (std::size_t i = 0; i < 4; ++i) {
      if (list[i].imag() != 0.0) throw SpecError("AW parameters must be real");
      alphas[i] = list[i].real();
    }
    const double tol = cfg.tol.value_or(kDefaultAwTol);
    const IdentityCheck c = verify_aw_integral(q, alphas);
    Json rec = identity_to_json(c, tol);
    rec["identity"] = "AW";
    rec["params"] = {{"q", q}, {"alphas", alphas}};
    within = rec["within"].get<bool>();
    doc["identities"] = Json::array({rec});
  } else {
    RunConfig spec_cfg = cfg;
    if (!spec_cfg.spec_path) spec_cfg.family = what;
    const MatrixSpec spec = load_or_generate(spec_cfg, 4);
    const KernelFamily family = require_family(what);
    for (const FactorSpec& f : spec.factors) {
      if (f.family != family) throw SpecError("spec contains a factor of another family");
    }
    if (!has_oracle(family)) throw SpecError("family " + what + " has no Gram oracle");
    const HermitianMatrix m = build_matrix(spec, cfg.series);
    const auto o = oracle_matrix(spec);
    const double tol = cfg.tol.value_or(oracle_tolerance(family));
    const CompareReport c = entrywise_compare(m, *o, tol);
    Json rec = {{"label", spec.label}, {"n", m.n}, {"spec", spec_to_json(spec)}, {"oracle", compare_to_json(c, tol)},
                {"passed", c.within}};
    within = c.within;
    doc["instances"] = Json::array({rec});
  }
  doc["summary"] = {{"total", 1}, {"passed", within ? 1 : 0}, {"failed", within ? 0 : 1}};
  doc["wall_time_s"] = seconds_since(t0);
  emit(cfg, doc, out);
  return within ? kExitOk : kExitVerificationFailure;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const NumericError*>(&e)) return kExitNumericError;
  return kExitSpecError;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.command == "eval") return cmd_eval(cfg, out);
    if (cfg.command == "build") return cmd_build(cfg, out);
    if (cfg.command == "check") return cmd_check(cfg, out, err);
    if (cfg.command == "fuzz") return cmd_fuzz(cfg, out);
    if (cfg.command == "oracle") return cmd_oracle(cfg, out);
    throw SpecError("unknown command '" + cfg.command + "'");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace sfpsd::cli
