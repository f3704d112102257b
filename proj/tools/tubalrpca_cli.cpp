// Command-line front end: recover, synth, suite, info.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 I/O or bad input
// data, 3 numeric failure.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "tubalrpca/harness/experiment.hpp"
#include "tubalrpca/harness/image_io.hpp"
#include "tubalrpca/harness/noise.hpp"
#include "tubalrpca/spectral.hpp"
#include "tubalrpca/tensor_io.hpp"
#include "tubalrpca/weights.hpp"

namespace {

using namespace tubalrpca;

constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitNumeric = 3;

int run_info(const std::filesystem::path& input) {
  const Tensor3 x = load_tensor(input);
  const std::size_t d3 = x.d3();
  std::printf("dims: %zu x %zu x %zu\n", x.d1(), x.d2(), d3);
  const std::vector<double> s = slice_energies(x);
  std::printf("slice energies (nuclear norm per Fourier slice):\n");
  for (std::size_t k = 0; k < d3; ++k) std::printf("  s_%zu = %.10g\n", k + 1, s[k]);

  bool decreasing = true;
  for (std::size_t k = 1; k < half_spectrum(d3); ++k) decreasing = decreasing && s[k] <= s[k - 1];
  double worst = 0.0;
  for (std::size_t k = 1; k < d3; ++k) {
    const double scale = std::max({s[k], s[mirror_slice(k, d3)], 1e-300});
    worst = std::max(worst, std::abs(s[k] - s[mirror_slice(k, d3)]) / scale);
  }
  std::printf("non-increasing over slices 1..%zu: %s\n", half_spectrum(d3), decreasing ? "yes" : "no");
  std::printf("conjugate-pair energy mismatch (max relative): %.3e\n", worst);
  const std::vector<double> w = mce_inter_weights(s, WeightPolicy{}.scale_floor);
  std::printf("adaptive inter weights:");
  for (double v : w) std::printf(" %.4f", v);
  std::printf("\n");
  return 0;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"Low-tubal-rank plus sparse tensor decomposition"};
  app.require_subcommand(1);

  Experiment exp;
  std::string method = "gwtrpca";
  std::optional<double> lambda;
  std::optional<std::string> config_path;
  std::optional<std::string> reference;
  std::string noise = "auto";
  std::string input;
  std::string out_dir;
  auto* recover = app.add_subcommand("recover", "Decompose one image or T3B tensor");
  recover->add_option("--input", input, "PNG, PPM or T3B file")->required()->check(CLI::ExistingFile);
  recover->add_option("--method", method, "gwtrpca | trpca | etrpca | rpca")
      ->check(CLI::IsMember({"gwtrpca", "trpca", "etrpca", "rpca"}));
  recover->add_option("--lambda", lambda, "sparsity weight (default 1/sqrt(d3*max(d1,d2)))");
  recover->add_option("--corrupt", exp.corruption, "fraction of tubes (images) or entries (T3B) to corrupt")
      ->check(CLI::Range(0.0, 1.0));
  recover->add_option("--seed", exp.seed, "corruption seed");
  recover->add_option("--noise", noise, "auto | tube | salt_pepper")
      ->check(CLI::IsMember({"auto", "tube", "salt_pepper"}));
  recover->add_option("--reference", reference, "clean data for PSNR when the input is already corrupted")
      ->check(CLI::ExistingFile);
  recover->add_option("--config", config_path, "JSON solver overrides")->check(CLI::ExistingFile);
  recover->add_option("--out", out_dir, "output directory")->required();

  std::size_t d1 = 50, d2 = 50, d3 = 3, rank = 5;
  double sparsity = 0.05;
  std::uint64_t synth_seed = 0;
  std::string synth_out;
  auto* synth = app.add_subcommand("synth", "Write a synthetic low-rank + sparse ground-truth triple");
  synth->add_option("--d1", d1, "rows")->check(CLI::PositiveNumber)->capture_default_str();
  synth->add_option("--d2", d2, "columns")->check(CLI::PositiveNumber)->capture_default_str();
  synth->add_option("--d3", d3, "tube length")->check(CLI::PositiveNumber)->capture_default_str();
  synth->add_option("--rank", rank, "tubal rank of the low-rank part")->check(CLI::PositiveNumber)->capture_default_str();
  synth->add_option("--sparsity", sparsity, "fraction of entries set to +-1")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  synth->add_option("--seed", synth_seed)->capture_default_str();
  synth->add_option("--out", synth_out, "directory for low_rank.t3b, sparse.t3b, observed.t3b")->required();

  std::string suite_path;
  auto* suite = app.add_subcommand("suite", "Run every input with every method from a JSON config");
  suite->add_option("--config", suite_path)->required()->check(CLI::ExistingFile);

  std::string info_path;
  auto* info = app.add_subcommand("info", "Print dimensions and Fourier slice energies");
  info->add_option("--input", info_path)->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (*recover) {
    exp.input = input;
    exp.output_dir = out_dir;
    exp.method = parse_method(method);
    exp.noise = parse_noise_model(noise);
    if (reference) exp.reference = *reference;
    if (config_path) exp.config = load_solver_config(*config_path);
    if (lambda) exp.config.lambda = *lambda;
    exp.config.validate();
    const MetricsRow row = run_experiment(exp);
    std::cout << kResultsHeader << '\n' << format_csv_row(row) << '\n';
  } else if (*synth) {
    const SyntheticProblem p = synthesize({d1, d2, d3}, rank, sparsity, synth_seed);
    const std::filesystem::path dir = synth_out;
    std::filesystem::create_directories(dir);
    write_t3b(p.low, dir / "low_rank.t3b");
    write_t3b(p.sparse, dir / "sparse.t3b");
    write_t3b(p.observed, dir / "observed.t3b");
    std::cout << "wrote low_rank.t3b, sparse.t3b, observed.t3b to " << dir.string() << '\n';
  } else if (*suite) {
    const SuiteResult r = run_suite(load_suite_config(suite_path));
    std::cout << kResultsHeader << '\n';
    for (const auto& row : r.rows) std::cout << format_csv_row(row) << '\n';
    std::cout << "\nmethod     mean PSNR (dB)  images\n";
    for (const auto& s : r.summary) {
      std::printf("%-10s %14.4f  %zu\n", s.method.c_str(), s.mean_psnr_db, s.count);
    }
  } else if (*info) {
    return run_info(info_path);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const tubalrpca::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const tubalrpca::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const tubalrpca::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const tubalrpca::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
