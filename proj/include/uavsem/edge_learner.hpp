#pragma once

// Desk-scale multi-label classifier: numeric scenario features plus step
// encodings -> ReLU hidden layers -> 41 logits, trained with mean binary
// cross-entropy on logits by mini-batch SGD with momentum.

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "uavsem/generator.hpp"
#include "uavsem/inference.hpp"
#include "uavsem/scenario.hpp"

namespace uavsem {

// speed, buffer; rsrp/rsrq/cqi of serving, target, neighbor; rsrp deltas
// target-serving, neighbor-serving, neighbor-target; cqi delta target-serving;
// then the mission one-hot (never scaled).
inline constexpr std::size_t kScaledFeatureCount = 15;
inline constexpr std::size_t kFeatureCount = kScaledFeatureCount + 3;

using FeatureVector = std::array<double, kFeatureCount>;

// Indicator columns x >= k on a fixed grid, one ladder per raw feature below.
struct StepLadder {
  std::size_t feature;  // index into the raw feature vector
  double first, last, step;

  std::size_t size() const noexcept;
};

inline constexpr std::array<StepLadder, 12> kStepLadders{{
    {0, 5, 35, 5},      // speed
    {1, 5, 95, 5},      // buffer
    {2, -125, -55, 5},  // serving rsrp
    {4, 2, 15, 1},      // serving cqi
    {5, -125, -55, 5},  // target rsrp
    {7, 2, 15, 1},      // target cqi
    {8, -125, -55, 5},  // neighbor rsrp
    {10, 2, 15, 1},     // neighbor cqi
    {11, -55, 55, 5},   // rsrp deltas
    {12, -55, 55, 5},
    {13, -55, 55, 5},
    {14, -14, 14, 1},  // cqi delta
}};

std::size_t step_feature_count() noexcept;
inline std::size_t input_width() noexcept { return kFeatureCount + step_feature_count(); }

struct FeatureStats {
  std::array<double, kScaledFeatureCount> mean{};
  std::array<double, kScaledFeatureCount> scale{};  // standard deviation, or 1 where it is zero
  std::vector<std::size_t> zero_variance_dims;

  // Errc::empty_input on an empty sample.
  static FeatureStats fit(std::span<const Scenario> scenarios);
  static FeatureStats identity();
};

FeatureVector raw_features(const Scenario& s);
FeatureVector featurize(const Scenario& s, const FeatureStats& stats);

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

// Network input: the standardized features followed by the step indicators.
void encode_input(const Scenario& s, const FeatureStats& stats, Eigen::Ref<Eigen::RowVectorXd> out);

struct Layer {
  Matrix w;  // out x in
  Vector b;
};

using Gradients = std::vector<Layer>;

class MlpModel {
 public:
  MlpModel() = default;
  // Zero-initialized parameters; `depth` hidden layers of width `hidden`.
  MlpModel(std::size_t input, std::size_t hidden, std::size_t depth, FeatureStats stats);

  // He-uniform hidden layers, Glorot-uniform output layer, zero biases.
  static MlpModel random(std::size_t input, std::size_t hidden, std::size_t depth, FeatureStats stats,
                         std::mt19937_64& rng);

  std::size_t input_dim() const noexcept { return static_cast<std::size_t>(layers.front().w.cols()); }
  std::size_t hidden() const noexcept { return static_cast<std::size_t>(layers.front().w.rows()); }
  std::size_t depth() const noexcept { return layers.size() - 1; }
  std::size_t output_dim() const noexcept { return static_cast<std::size_t>(layers.back().w.rows()); }

  // Flat view over each layer's w then b, first layer first.
  std::size_t parameter_count() const noexcept;
  double& parameter(std::size_t i);
  static double gradient_entry(const Gradients& g, std::size_t i);

  // Forward pass over a batch of encoded rows.
  Matrix forward(const Matrix& x) const;

  std::vector<Layer> layers;  // hidden layers (ReLU) then the linear output layer
  FeatureStats stats;

  friend bool operator==(const MlpModel& a, const MlpModel& b);
};

struct Batch {
  Matrix x;  // rows are encoded samples
  Matrix y;  // rows are 0/1 label vectors
};

Batch make_batch(std::span<const LabeledScenario> samples, const FeatureStats& stats);

// Mean BCE-with-logits over every cell of the batch; fills `grads` when given.
double loss_and_gradients(const MlpModel& m, const Batch& batch, Gradients* grads);

// Max relative error between analytic gradients and central differences over
// `probes` randomly chosen parameters. Parameters whose perturbation flips a
// hidden unit across the ReLU kink are skipped and redrawn.
double gradient_check(MlpModel m, const Batch& batch, std::mt19937_64& rng, std::size_t probes = 64,
                      double step = 1e-4);

struct TrainConfig {
  std::size_t epochs = 200;
  std::size_t batch_size = 32;
  double learning_rate = 0.1;
  double momentum = 0.9;
  std::uint64_t seed = 0;
  std::size_t hidden = 64;
  std::size_t depth = 2;  // hidden layers

  // Errc::config unless every value is positive (momentum may be 0).
  void validate() const;
};

struct EpochMetrics {
  std::size_t epoch = 0;
  double train_loss = 0.0;
  bool has_validation = false;
  double val_loss = 0.0;
  double val_main_accuracy = 0.0;
  double val_overall_f1 = 0.0;
  double val_reason_f1 = 0.0;
};

std::string to_json_line(const EpochMetrics& m);

// Deterministic for a given seed. Writes one JSON line per epoch to `log` when
// non-null; validation metrics are included when `validation` is non-empty.
// Errc::empty_input on an empty training set, Errc::divergence naming the
// epoch when the loss stops being finite.
MlpModel train(std::span<const LabeledScenario> data, const TrainConfig& config, std::ostream* log = nullptr,
               std::span<const LabeledScenario> validation = {});

LogitVector predict_logits(const MlpModel& m, const Scenario& s);
std::vector<LogitVector> predict_logits(const MlpModel& m, std::span<const Scenario> scenarios, unsigned threads = 1);

// Binary model file: "SHM1", u32 LE input/hidden/depth/output/scaled dims,
// then f64 LE: feature means, feature scales, then w and b of every layer
// (row-major).
std::vector<std::uint8_t> serialize_model(const MlpModel& m);
MlpModel deserialize_model(std::span<const std::uint8_t> bytes);
void write_model(const MlpModel& m, const std::filesystem::path& path);
MlpModel read_model(const std::filesystem::path& path);

}  // namespace uavsem
