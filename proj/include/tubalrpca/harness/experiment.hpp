#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tubalrpca/solver.hpp"

namespace tubalrpca {

enum class Method { kGwtrpca, kTrpca, kEtrpca, kRpca };

Method parse_method(std::string_view name);
std::string method_name(Method m);

// kAuto: tube corruption for images, salt-and-pepper for T3B tensors.
enum class NoiseModel { kAuto, kTube, kSaltPepper };

NoiseModel parse_noise_model(std::string_view name);

/// Runs one of the four decompositions on an observed tensor. gwtrpca uses
/// the configured weight policy; the other methods fix their own weights.
SolveReport run_method(Method method, const Tensor3& observed, const AdmmConfig& cfg);

struct Experiment {
  std::filesystem::path input;
  std::optional<std::filesystem::path> reference;  // clean data when input is already corrupted
  double corruption = 0.0;
  std::uint64_t seed = 0;
  NoiseModel noise = NoiseModel::kAuto;
  Method method = Method::kGwtrpca;
  AdmmConfig config;
  std::filesystem::path output_dir;
};

struct MetricsRow {
  std::string image;
  std::string method;
  double psnr_db = 0.0;  // +inf on exact recovery, NaN without a reference
  std::size_t iterations = 0;
  double seconds = 0.0;
  std::vector<double> w_inter;
};

inline constexpr std::string_view kResultsHeader = "image,method,psnr_db,iterations,seconds,w_inter";

// One CSV line without the trailing newline. w_inter is semicolon-joined
// with four decimals.
std::string format_csv_row(const MetricsRow& row);

/// Loads the input, corrupts it when requested, recovers it and writes to
/// output_dir: <stem>_observed.{png|t3b}, <stem>_<method>_recovered.{png,t3b},
/// <stem>_<method>_residuals.csv, and one appended line of results.csv.
/// 8-bit images are solved on a [0, 1] scale and reported on [0, 255].
MetricsRow run_experiment(const Experiment& e);

/// JSON solver block. Keys: lambda, mu0, rho, mu_max, eps, max_iter,
/// svd_backend ("lapack" | "eigen" | "jacobi"), intra ("uniform" | [g1, g2, g3]),
/// inter ("uniform" | "adaptive"), scale_floor, recompute_every. Unknown keys
/// are rejected.
AdmmConfig parse_solver_config(std::string_view json_text, AdmmConfig base = {});
AdmmConfig load_solver_config(const std::filesystem::path& path, AdmmConfig base = {});

struct SuiteConfig {
  std::vector<std::filesystem::path> inputs;
  std::vector<Method> methods = {Method::kRpca, Method::kTrpca, Method::kEtrpca, Method::kGwtrpca};
  double corruption = 0.1;
  std::uint64_t seed = 0;
  NoiseModel noise = NoiseModel::kAuto;
  AdmmConfig solver;
  std::filesystem::path output_dir = "results";
};

/// Top-level keys: inputs (required), methods, corruption, seed, noise,
/// output_dir, solver. Relative paths resolve against the config file's
/// directory. Unknown keys are rejected.
SuiteConfig load_suite_config(const std::filesystem::path& path);
SuiteConfig parse_suite_config(std::string_view json_text, const std::filesystem::path& base_dir);

struct MethodSummary {
  std::string method;
  double mean_psnr_db = 0.0;
  std::size_t count = 0;
};

struct SuiteResult {
  std::vector<MetricsRow> rows;
  std::vector<MethodSummary> summary;
};

/// Every (input, method) pair with the same seed, so all methods see the
/// same corrupted data. Rewrites results.csv and summary.csv in output_dir.
SuiteResult run_suite(const SuiteConfig& cfg);

}  // namespace tubalrpca
