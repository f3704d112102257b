#include "tubalrpca/harness/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "tubalrpca/harness/image_io.hpp"
#include "tubalrpca/harness/metrics.hpp"
#include "tubalrpca/harness/noise.hpp"
#include "tubalrpca/tensor_io.hpp"

namespace tubalrpca {
namespace {

using nlohmann::json;

std::string fixed(double v, int places) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", places, v);
  return buf;
}

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed, const char* where) {
  if (!j.is_object()) throw ConfigError(std::string(where) + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) throw ConfigError(std::string("unknown key '") + key + "' in " + where);
  }
}

template <typename T>
T get_as(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

AdmmConfig solver_from_json(const json& j, AdmmConfig cfg) {
  reject_unknown_keys(j,
                      {"lambda", "mu0", "rho", "mu_max", "eps", "max_iter", "svd_backend", "intra",
                       "inter", "scale_floor", "recompute_every"},
                      "solver config");
  if (j.contains("lambda")) cfg.lambda = get_as<double>(j, "lambda");
  if (j.contains("mu0")) cfg.mu0 = get_as<double>(j, "mu0");
  if (j.contains("rho")) cfg.rho = get_as<double>(j, "rho");
  if (j.contains("mu_max")) cfg.mu_max = get_as<double>(j, "mu_max");
  if (j.contains("eps")) cfg.eps = get_as<double>(j, "eps");
  if (j.contains("max_iter")) cfg.max_iter = get_as<std::size_t>(j, "max_iter");
  if (j.contains("svd_backend")) {
    const auto name = get_as<std::string>(j, "svd_backend");
    if (name == "jacobi") {
      cfg.svd_backend = SvdBackend::kJacobi;
    } else if (name == "lapack") {
      if (!lapack_available()) throw ConfigError("this build has no LAPACK backend");
      cfg.svd_backend = SvdBackend::kLapack;
    } else if (name == "eigen") {
      cfg.svd_backend = SvdBackend::kEigen;
    } else {
      throw ConfigError("svd_backend must be 'lapack', 'eigen' or 'jacobi'");
    }
  }
  WeightPolicy& wp = cfg.weight_policy;
  if (j.contains("intra")) {
    const json& intra = j.at("intra");
    if (intra.is_string() && intra.get<std::string>() == "uniform") {
      wp.intra_mode = IntraMode::kUniform;
    } else if (intra.is_array() && intra.size() == 3) {
      wp.intra_mode = IntraMode::kGrouped;
      wp.groups = get_as<std::array<double, 3>>(j, "intra");
    } else {
      throw ConfigError("intra must be \"uniform\" or an array of three group weights");
    }
  }
  if (j.contains("inter")) {
    const auto name = get_as<std::string>(j, "inter");
    if (name == "uniform") {
      wp.inter_mode = InterMode::kUniform;
    } else if (name == "adaptive") {
      wp.inter_mode = InterMode::kAdaptiveMce;
    } else {
      throw ConfigError("inter must be 'uniform' or 'adaptive'");
    }
  }
  if (j.contains("scale_floor")) wp.scale_floor = get_as<double>(j, "scale_floor");
  if (j.contains("recompute_every")) wp.recompute_every = get_as<std::size_t>(j, "recompute_every");
  cfg.validate();
  return cfg;
}

// Re-raises the in-flight exception with `context` prefixed, keeping its type.
[[noreturn]] void rethrow_with_context(const std::string& context) {
  try {
    throw;
  } catch (const SymmetryError& e) {
    throw SymmetryError(context + ": " + e.what());
  } catch (const NumericError& e) {
    throw NumericError(context + ": " + e.what());
  } catch (const IoError& e) {
    throw IoError(context + ": " + e.what());
  } catch (const InputError& e) {
    throw InputError(context + ": " + e.what());
  } catch (const DimensionError& e) {
    throw DimensionError(context + ": " + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(context + ": " + e.what());
  } catch (const Error& e) {
    throw Error(context + ": " + e.what());
  }
}

void append_results_row(const std::filesystem::path& dir, const MetricsRow& row) {
  const auto path = dir / "results.csv";
  const bool fresh = !std::filesystem::exists(path);
  std::ofstream out(path, std::ios::app);
  if (!out) throw IoError("cannot open " + path.string());
  if (fresh) out << kResultsHeader << '\n';
  out << format_csv_row(row) << '\n';
}

void write_residuals(const std::filesystem::path& path, const SolveReport& r) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string());
  out << "iteration,residual,mu\n";
  char buf[96];
  for (std::size_t t = 0; t < r.residual_history.size(); ++t) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", t + 1, r.residual_history[t], r.mu_history[t]);
    out << buf;
  }
}

}  // namespace

Method parse_method(std::string_view name) {
  if (name == "gwtrpca") return Method::kGwtrpca;
  if (name == "trpca") return Method::kTrpca;
  if (name == "etrpca") return Method::kEtrpca;
  if (name == "rpca") return Method::kRpca;
  throw ConfigError("unknown method '" + std::string(name) + "'");
}

std::string method_name(Method m) {
  switch (m) {
    case Method::kGwtrpca:
      return "gwtrpca";
    case Method::kTrpca:
      return "trpca";
    case Method::kEtrpca:
      return "etrpca";
    case Method::kRpca:
      return "rpca";
  }
  return "unknown";
}

NoiseModel parse_noise_model(std::string_view name) {
  if (name == "auto") return NoiseModel::kAuto;
  if (name == "tube") return NoiseModel::kTube;
  if (name == "salt_pepper") return NoiseModel::kSaltPepper;
  throw ConfigError("unknown noise model '" + std::string(name) + "'");
}

SolveReport run_method(Method method, const Tensor3& observed, const AdmmConfig& cfg) {
  switch (method) {
    case Method::kGwtrpca:
      return solve(observed, cfg);
    case Method::kTrpca:
      return solve_trpca(observed, cfg);
    case Method::kEtrpca:
      return solve_etrpca_like(observed, cfg, cfg.weight_policy.groups);
    case Method::kRpca:
      return solve_rpca_per_channel(observed, cfg);
  }
  throw ConfigError("unknown method");
}

std::string format_csv_row(const MetricsRow& row) {
  std::string w;
  for (std::size_t k = 0; k < row.w_inter.size(); ++k) {
    if (k > 0) w += ';';
    w += fixed(row.w_inter[k], 4);
  }
  return row.image + ',' + row.method + ',' + fixed(row.psnr_db, 4) + ',' +
         std::to_string(row.iterations) + ',' + fixed(row.seconds, 3) + ',' + w;
}

MetricsRow run_experiment(const Experiment& e) {
  const std::string stem = e.input.stem().string();
  const std::string id = stem + "/" + method_name(e.method);
  try {
    if (!(e.corruption >= 0.0 && e.corruption <= 1.0)) {
      throw ConfigError("corruption fraction must lie in [0, 1]");
    }
    const bool is_image = detect_file_kind(e.input) != FileKind::kT3b;
    const Tensor3 input = load_tensor(e.input);

    std::optional<Tensor3> clean;
    Tensor3 observed = input;
    if (e.corruption > 0.0) {
      clean = input;
      NoiseModel noise = e.noise;
      if (noise == NoiseModel::kAuto) noise = is_image ? NoiseModel::kTube : NoiseModel::kSaltPepper;
      const double peak = is_image ? 255.0 : tensor_peak(input);
      observed = noise == NoiseModel::kTube ? corrupt_tubes(input, e.corruption, e.seed, peak).corrupted
                                            : salt_pepper(input, e.corruption, e.seed, peak).corrupted;
    } else if (e.reference) {
      clean = load_tensor(*e.reference);
      clean->require_same_dims(observed);
    }

    std::filesystem::create_directories(e.output_dir);
    const double scale = is_image ? 255.0 : 1.0;

    const auto start = std::chrono::steady_clock::now();
    SolveReport report = run_method(e.method, (1.0 / scale) * observed, e.config);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    Tensor3 recovered = scale * std::move(report.l_hat);

    const std::string prefix = stem + "_" + method_name(e.method);
    if (is_image) {
      save_image(observed, e.output_dir / (stem + "_observed.png"));
      save_image(recovered, e.output_dir / (prefix + "_recovered.png"));
      for (double& v : recovered.data()) v = std::clamp(v, 0.0, 255.0);
    } else {
      write_t3b(observed, e.output_dir / (stem + "_observed.t3b"));
    }
    write_t3b(recovered, e.output_dir / (prefix + "_recovered.t3b"));
    write_residuals(e.output_dir / (prefix + "_residuals.csv"), report);

    MetricsRow row;
    row.image = stem;
    row.method = method_name(e.method);
    row.psnr_db = clean ? psnr(*clean, recovered, is_image ? 255.0 : tensor_peak(*clean))
                        : std::numeric_limits<double>::quiet_NaN();
    row.iterations = report.iterations;
    row.seconds = seconds;
    row.w_inter = report.final_weights.inter;
    append_results_row(e.output_dir, row);
    return row;
  } catch (const Error&) {
    rethrow_with_context(id);
  } catch (const std::filesystem::filesystem_error& err) {
    throw IoError(id + ": " + err.what());
  }
}

AdmmConfig parse_solver_config(std::string_view json_text, AdmmConfig base) {
  return solver_from_json(parse_json(json_text), std::move(base));
}

AdmmConfig load_solver_config(const std::filesystem::path& path, AdmmConfig base) {
  return parse_solver_config(read_file(path), std::move(base));
}

SuiteConfig parse_suite_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  const json j = parse_json(json_text);
  reject_unknown_keys(j, {"inputs", "methods", "corruption", "seed", "noise", "output_dir", "solver"},
                      "suite config");
  SuiteConfig cfg;
  if (!j.contains("inputs")) throw ConfigError("suite config needs 'inputs'");
  for (const auto& p : get_as<std::vector<std::string>>(j, "inputs")) cfg.inputs.push_back(base_dir / p);
  if (cfg.inputs.empty()) throw ConfigError("suite config lists no inputs");
  if (j.contains("methods")) {
    cfg.methods.clear();
    for (const auto& m : get_as<std::vector<std::string>>(j, "methods")) cfg.methods.push_back(parse_method(m));
    if (cfg.methods.empty()) throw ConfigError("suite config lists no methods");
  }
  if (j.contains("corruption")) cfg.corruption = get_as<double>(j, "corruption");
  if (!(cfg.corruption >= 0.0 && cfg.corruption <= 1.0)) {
    throw ConfigError("corruption fraction must lie in [0, 1]");
  }
  if (j.contains("seed")) cfg.seed = get_as<std::uint64_t>(j, "seed");
  if (j.contains("noise")) cfg.noise = parse_noise_model(get_as<std::string>(j, "noise"));
  if (j.contains("output_dir")) cfg.output_dir = get_as<std::string>(j, "output_dir");
  cfg.output_dir = base_dir / cfg.output_dir;
  if (j.contains("solver")) cfg.solver = solver_from_json(j.at("solver"), cfg.solver);
  return cfg;
}

SuiteConfig load_suite_config(const std::filesystem::path& path) {
  return parse_suite_config(read_file(path), path.parent_path());
}

SuiteResult run_suite(const SuiteConfig& cfg) {
  std::filesystem::create_directories(cfg.output_dir);
  std::filesystem::remove(cfg.output_dir / "results.csv");

  SuiteResult result;
  std::map<std::string, std::pair<double, std::size_t>> totals;
  for (const auto& input : cfg.inputs) {
    for (Method m : cfg.methods) {
      Experiment e;
      e.input = input;
      e.corruption = cfg.corruption;
      e.seed = cfg.seed;
      e.noise = cfg.noise;
      e.method = m;
      e.config = cfg.solver;
      e.output_dir = cfg.output_dir;
      MetricsRow row = run_experiment(e);
      auto& [sum, count] = totals[row.method];
      sum += row.psnr_db;
      ++count;
      result.rows.push_back(std::move(row));
    }
  }

  const auto path = cfg.output_dir / "summary.csv";
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string());
  out << "method,mean_psnr_db,images\n";
  std::set<std::string> written;
  for (Method m : cfg.methods) {
    const std::string name = method_name(m);
    if (!written.insert(name).second) continue;
    const auto& [sum, count] = totals.at(name);
    MethodSummary s{name, sum / static_cast<double>(count), count};
    out << s.method << ',' << fixed(s.mean_psnr_db, 4) << ',' << s.count << '\n';
    result.summary.push_back(std::move(s));
  }
  return result;
}

}  // namespace tubalrpca
