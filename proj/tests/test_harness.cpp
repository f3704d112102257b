#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "tubalrpca/harness/experiment.hpp"
#include "tubalrpca/harness/image_io.hpp"
#include "tubalrpca/harness/metrics.hpp"
#include "tubalrpca/harness/noise.hpp"
#include "tubalrpca/harness/rng.hpp"
#include "tubalrpca/tensor_io.hpp"

namespace tubalrpca {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  explicit TempDir(const std::string& name) : path_(fs::temp_directory_path() / ("tubalrpca_" + name)) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Tensor3 gradient_image(std::size_t d1, std::size_t d2) {
  Tensor3 t(d1, d2, 3);
  for (std::size_t i = 0; i < d1; ++i) {
    for (std::size_t j = 0; j < d2; ++j) {
      t(i, j, 0) = static_cast<double>((7 * i + 3 * j) % 256);
      t(i, j, 1) = static_cast<double>((2 * i + 11 * j) % 256);
      t(i, j, 2) = static_cast<double>((i * j) % 256);
    }
  }
  return t;
}

TEST(SplitMix64, KnownSequenceAndDeterminism) {
  SplitMix64 a(0);
  EXPECT_EQ(a(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(a(), 0x6e789e6aa1b965f4ULL);
  SplitMix64 b(42);
  SplitMix64 c(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(b(), c());
}

TEST(SplitMix64, DistributionsStayInRange) {
  SplitMix64 r(7);
  double sum = 0.0;
  double sq = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_LT(r.below(13), 13u);
    const double z = r.normal();
    sum += z;
    sq += z * z;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.05);
  EXPECT_NEAR(sq / n, 1.0, 0.05);
}

TEST(ImageIo, PngRoundTrip) {
  TempDir dir("png_roundtrip");
  const Tensor3 img = gradient_image(17, 23);
  save_image(img, dir.path() / "g.png");
  EXPECT_EQ(detect_file_kind(dir.path() / "g.png"), FileKind::kPng);
  EXPECT_EQ(load_image(dir.path() / "g.png"), img);
}

TEST(ImageIo, PpmRoundTripAndSinglePixel) {
  TempDir dir("ppm_roundtrip");
  const Tensor3 img = gradient_image(5, 4);
  save_image(img, dir.path() / "g.ppm");
  EXPECT_EQ(detect_file_kind(dir.path() / "g.ppm"), FileKind::kPpm);
  EXPECT_EQ(load_image(dir.path() / "g.ppm"), img);

  save_image(Tensor3(1, 1, 3, 255.0), dir.path() / "white.png");
  const Tensor3 white = load_image(dir.path() / "white.png");
  EXPECT_EQ(white.dims(), (Dims{1, 1, 3}));
  EXPECT_EQ(white, Tensor3(1, 1, 3, 255.0));
}

TEST(ImageIo, SaveClampsAndRounds) {
  TempDir dir("clamp");
  Tensor3 t(1, 3, 3);
  t(0, 0, 0) = -5.0;
  t(0, 1, 0) = 300.0;
  t(0, 2, 0) = 2.5;  // ties go to even
  save_image(t, dir.path() / "c.png");
  const Tensor3 back = load_image(dir.path() / "c.png");
  EXPECT_EQ(back(0, 0, 0), 0.0);
  EXPECT_EQ(back(0, 1, 0), 255.0);
  EXPECT_EQ(back(0, 2, 0), 2.0);
}

TEST(ImageIo, Errors) {
  TempDir dir("io_errors");
  EXPECT_THROW(load_image(dir.path() / "missing.png"), IoError);
  std::ofstream(dir.path() / "junk.bin") << "not an image";
  EXPECT_THROW(detect_file_kind(dir.path() / "junk.bin"), IoError);
  EXPECT_THROW(save_image(Tensor3(2, 2, 2), dir.path() / "x.png"), DimensionError);
  EXPECT_THROW(save_image(Tensor3(2, 2, 3), dir.path() / "x.bmp"), IoError);
}

TEST(ImageIo, LoadTensorDispatchesOnContent) {
  TempDir dir("dispatch");
  const Tensor3 t = gradient_image(3, 3);
  write_t3b(t, dir.path() / "t.t3b");
  EXPECT_EQ(detect_file_kind(dir.path() / "t.t3b"), FileKind::kT3b);
  EXPECT_EQ(load_tensor(dir.path() / "t.t3b"), t);
}

TEST(CorruptTubes, CountsAndReplay) {
  const Tensor3 clean(100, 100, 3, 128.0);
  const Corruption a = corrupt_tubes(clean, 0.1, 5);
  EXPECT_EQ(a.mask.size(), 1000u);
  EXPECT_TRUE(std::is_sorted(a.mask.begin(), a.mask.end()));
  EXPECT_EQ(std::adjacent_find(a.mask.begin(), a.mask.end()), a.mask.end());
  std::size_t changed_pixels = 0;
  for (std::size_t i = 0; i < 100; ++i) {
    for (std::size_t j = 0; j < 100; ++j) {
      bool changed = false;
      for (std::size_t k = 0; k < 3; ++k) {
        const double v = a.corrupted(i, j, k);
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 255.0);
        changed = changed || v != 128.0;
      }
      if (changed) ++changed_pixels;
    }
  }
  EXPECT_EQ(changed_pixels, 1000u);

  const Corruption b = corrupt_tubes(clean, 0.1, 5);
  EXPECT_EQ(a.corrupted, b.corrupted);
  EXPECT_EQ(a.mask, b.mask);
  EXPECT_NE(corrupt_tubes(clean, 0.1, 6).mask, a.mask);
  EXPECT_TRUE(corrupt_tubes(clean, 0.0, 5).mask.empty());
  EXPECT_THROW(corrupt_tubes(clean, 1.5, 5), ConfigError);
}

TEST(SaltPepper, CountsAndValues) {
  const Tensor3 clean(10, 10, 2, 0.5);
  const Corruption c = salt_pepper(clean, 0.25, 9, 2.0);
  // The mask lists touched pixel positions, so entries sharing a pixel merge.
  EXPECT_LE(c.mask.size(), 50u);
  EXPECT_GE(c.mask.size(), 25u);
  std::size_t extremes = 0;
  for (double v : c.corrupted.data()) {
    if (v == 0.0 || v == 2.0) ++extremes;
  }
  EXPECT_EQ(extremes, 50u);
}

TEST(Synthesize, ShapesAndSparsity) {
  const SyntheticProblem p = synthesize({20, 10, 3}, 2, 0.05, 3);
  EXPECT_EQ(p.low.dims(), (Dims{20, 10, 3}));
  std::size_t spikes = 0;
  for (double v : p.sparse.data()) {
    if (v != 0.0) {
      ++spikes;
      EXPECT_EQ(std::abs(v), 1.0);
    }
  }
  EXPECT_EQ(spikes, 30u);
  EXPECT_EQ(p.observed, p.low + p.sparse);
  EXPECT_EQ(synthesize({20, 10, 3}, 2, 0.05, 3).observed, p.observed);
}

TEST(Psnr, Examples) {
  const Tensor3 a(2, 2, 3, 10.0);
  EXPECT_TRUE(std::isinf(psnr(a, a)));
  EXPECT_NEAR(psnr(Tensor3(2, 2, 3, 0.0), Tensor3(2, 2, 3, 255.0)), 0.0, 1e-12);
  EXPECT_NEAR(psnr(a, Tensor3(2, 2, 3, 11.0)), 48.1308, 1e-4);
  EXPECT_THROW(psnr(a, Tensor3(2, 2, 2)), DimensionError);
}

TEST(Config, ParsesSolverBlock) {
  const AdmmConfig cfg = parse_solver_config(
      R"({"lambda": 0.05, "rho": 1.2, "max_iter": 40, "intra": [0.5, 1.0, 1.5],
          "inter": "uniform", "svd_backend": "jacobi"})");
  EXPECT_EQ(cfg.lambda, 0.05);
  EXPECT_EQ(cfg.rho, 1.2);
  EXPECT_EQ(cfg.max_iter, 40u);
  EXPECT_EQ(cfg.weight_policy.intra_mode, IntraMode::kGrouped);
  EXPECT_EQ(cfg.weight_policy.groups, (std::array<double, 3>{0.5, 1.0, 1.5}));
  EXPECT_EQ(cfg.weight_policy.inter_mode, InterMode::kUniform);
  EXPECT_EQ(cfg.svd_backend, SvdBackend::kJacobi);
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
  EXPECT_THROW(parse_solver_config(R"({"lamda": 0.1})"), ConfigError);
  EXPECT_THROW(parse_solver_config(R"({"rho": "fast"})"), ConfigError);
  EXPECT_THROW(parse_solver_config(R"({"rho": 0.5})"), ConfigError);
  EXPECT_THROW(parse_solver_config(R"({"inter": "sometimes"})"), ConfigError);
  EXPECT_THROW(parse_solver_config("{not json"), ConfigError);
  EXPECT_THROW(parse_suite_config(R"({"inputs": ["a.png"], "extra": 1})", "."), ConfigError);
  EXPECT_THROW(parse_suite_config(R"({"methods": ["trpca"]})", "."), ConfigError);
  EXPECT_THROW(parse_suite_config(R"({"inputs": ["a.png"], "methods": ["snn"]})", "."), ConfigError);
}

TEST(Config, SuitePathsResolveAgainstConfigDirectory) {
  const SuiteConfig cfg = parse_suite_config(
      R"({"inputs": ["img/a.png"], "methods": ["trpca", "gwtrpca"], "seed": 3, "output_dir": "out",
          "solver": {"max_iter": 10}})",
      "/data/exp");
  EXPECT_EQ(cfg.inputs.front(), fs::path("/data/exp/img/a.png"));
  EXPECT_EQ(cfg.output_dir, fs::path("/data/exp/out"));
  EXPECT_EQ(cfg.methods.size(), 2u);
  EXPECT_EQ(cfg.seed, 3u);
  EXPECT_EQ(cfg.solver.max_iter, 10u);
}

TEST(CsvRow, Formatting) {
  MetricsRow row{"img", "gwtrpca", 27.123456, 42, 1.23456, {0.5169, 1.62434, 1.62434}};
  EXPECT_EQ(format_csv_row(row), "img,gwtrpca,27.1235,42,1.235,0.5169;1.6243;1.6243");
  row.psnr_db = std::numeric_limits<double>::infinity();
  EXPECT_EQ(format_csv_row(row).substr(0, 16), "img,gwtrpca,inf,");
}

std::string without_seconds(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
  if (fields.size() > 4) fields.erase(fields.begin() + 4);
  std::string out;
  for (const auto& f : fields) out += f + ',';
  return out;
}

TEST(RunExperiment, WritesArtifactsAndIsReproducible) {
  TempDir dir("experiment");
  save_image(gradient_image(24, 20), dir.path() / "grad.png");
  Experiment e;
  e.input = dir.path() / "grad.png";
  e.corruption = 0.1;
  e.seed = 17;
  e.method = Method::kGwtrpca;
  e.config.max_iter = 60;
  e.output_dir = dir.path() / "run1";
  const MetricsRow a = run_experiment(e);
  e.output_dir = dir.path() / "run2";
  const MetricsRow b = run_experiment(e);

  for (const char* name : {"grad_observed.png", "grad_gwtrpca_recovered.png", "grad_gwtrpca_recovered.t3b",
                           "grad_gwtrpca_residuals.csv", "results.csv"}) {
    EXPECT_TRUE(fs::exists(dir.path() / "run1" / name)) << name;
  }
  EXPECT_EQ(slurp(dir.path() / "run1" / "grad_gwtrpca_recovered.t3b"),
            slurp(dir.path() / "run2" / "grad_gwtrpca_recovered.t3b"));
  EXPECT_EQ(without_seconds(format_csv_row(a)), without_seconds(format_csv_row(b)));
  EXPECT_TRUE(std::isfinite(a.psnr_db));
  EXPECT_EQ(a.w_inter.size(), 3u);

  std::ifstream results(dir.path() / "run1" / "results.csv");
  std::string header;
  std::getline(results, header);
  EXPECT_EQ(header, kResultsHeader);
}

TEST(RunExperiment, T3bInputWithoutReferenceHasNanPsnr) {
  TempDir dir("experiment_t3b");
  const SyntheticProblem p = synthesize({12, 10, 3}, 2, 0.05, 1);
  write_t3b(p.observed, dir.path() / "obs.t3b");
  write_t3b(p.low, dir.path() / "low.t3b");
  Experiment e;
  e.input = dir.path() / "obs.t3b";
  e.method = Method::kTrpca;
  e.output_dir = dir.path() / "out";
  EXPECT_TRUE(std::isnan(run_experiment(e).psnr_db));
  e.reference = dir.path() / "low.t3b";
  EXPECT_GT(run_experiment(e).psnr_db, 40.0);
}

TEST(RunExperiment, ErrorsNameTheRun) {
  TempDir dir("experiment_err");
  Experiment e;
  e.input = dir.path() / "absent.png";
  e.method = Method::kRpca;
  e.output_dir = dir.path();
  try {
    run_experiment(e);
    FAIL() << "expected IoError";
  } catch (const IoError& err) {
    EXPECT_NE(std::string(err.what()).find("absent/rpca"), std::string::npos);
  }
}

TEST(RunSuite, AllMethodsSeeTheSameDataAndSummaryIsWritten) {
  TempDir dir("suite");
  save_image(gradient_image(16, 16), dir.path() / "a.png");
  SuiteConfig cfg;
  cfg.inputs = {dir.path() / "a.png"};
  cfg.methods = {Method::kRpca, Method::kTrpca};
  cfg.seed = 2;
  cfg.solver.max_iter = 40;
  cfg.output_dir = dir.path() / "out";
  const SuiteResult r = run_suite(cfg);
  ASSERT_EQ(r.rows.size(), 2u);
  ASSERT_EQ(r.summary.size(), 2u);
  EXPECT_EQ(slurp(cfg.output_dir / "a_observed.png").size() > 0, true);
  std::ifstream results(cfg.output_dir / "results.csv");
  std::size_t lines = 0;
  for (std::string l; std::getline(results, l);) ++lines;
  EXPECT_EQ(lines, 3u);
  EXPECT_TRUE(fs::exists(cfg.output_dir / "summary.csv"));

  const SuiteResult again = run_suite(cfg);
  EXPECT_EQ(again.rows.size(), 2u);
  std::ifstream rerun(cfg.output_dir / "results.csv");
  lines = 0;
  for (std::string l; std::getline(rerun, l);) ++lines;
  EXPECT_EQ(lines, 3u);
}

}  // namespace
}  // namespace tubalrpca
