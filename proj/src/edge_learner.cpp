#include "uavsem/edge_learner.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <ostream>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

#include "uavsem/errors.hpp"
#include "uavsem/evalkit.hpp"
#include "uavsem/io.hpp"

namespace uavsem {

// ---------------------------------------------------------------------------
// features

FeatureVector raw_features(const Scenario& s) {
  FeatureVector f{};
  f[0] = s.speed;
  f[1] = s.buffer;
  f[2] = s.serving.rsrp;
  f[3] = s.serving.rsrq;
  f[4] = s.serving.cqi;
  f[5] = s.target.rsrp;
  f[6] = s.target.rsrq;
  f[7] = s.target.cqi;
  f[8] = s.neighbor.rsrp;
  f[9] = s.neighbor.rsrq;
  f[10] = s.neighbor.cqi;
  f[11] = s.target.rsrp - s.serving.rsrp;
  f[12] = s.neighbor.rsrp - s.serving.rsrp;
  f[13] = s.neighbor.rsrp - s.target.rsrp;
  f[14] = s.target.cqi - s.serving.cqi;
  f[kScaledFeatureCount + static_cast<std::size_t>(s.mission)] = 1.0;
  return f;
}

FeatureStats FeatureStats::fit(std::span<const Scenario> scenarios) {
  if (scenarios.empty()) throw Error(Errc::empty_input, "cannot fit feature statistics on zero scenarios");
  FeatureStats st;
  const double n = static_cast<double>(scenarios.size());
  for (const auto& s : scenarios) {
    const auto f = raw_features(s);
    for (std::size_t d = 0; d < kScaledFeatureCount; ++d) st.mean[d] += f[d];
  }
  for (auto& m : st.mean) m /= n;
  std::array<double, kScaledFeatureCount> var{};
  for (const auto& s : scenarios) {
    const auto f = raw_features(s);
    for (std::size_t d = 0; d < kScaledFeatureCount; ++d) var[d] += (f[d] - st.mean[d]) * (f[d] - st.mean[d]);
  }
  for (std::size_t d = 0; d < kScaledFeatureCount; ++d) {
    const double sd = std::sqrt(var[d] / n);
    if (sd > 0.0) {
      st.scale[d] = sd;
    } else {
      st.scale[d] = 1.0;
      st.zero_variance_dims.push_back(d);
    }
  }
  return st;
}

FeatureStats FeatureStats::identity() {
  FeatureStats st;
  st.scale.fill(1.0);
  return st;
}

FeatureVector featurize(const Scenario& s, const FeatureStats& stats) {
  auto f = raw_features(s);
  for (std::size_t d = 0; d < kScaledFeatureCount; ++d) f[d] = (f[d] - stats.mean[d]) / stats.scale[d];
  return f;
}

std::size_t StepLadder::size() const noexcept {
  return static_cast<std::size_t>(std::llround((last - first) / step)) + 1;
}

std::size_t step_feature_count() noexcept {
  std::size_t n = 0;
  for (const auto& l : kStepLadders) n += l.size();
  return n;
}

void encode_input(const Scenario& s, const FeatureStats& stats, Eigen::Ref<Eigen::RowVectorXd> out) {
  const auto raw = raw_features(s);
  const auto f = featurize(s, stats);
  Eigen::Index c = 0;
  for (double v : f) out(c++) = v;
  for (const auto& l : kStepLadders) {
    const double x = raw[l.feature];
    for (std::size_t k = 0; k < l.size(); ++k) out(c++) = x >= l.first + static_cast<double>(k) * l.step ? 1.0 : 0.0;
  }
}

// ---------------------------------------------------------------------------
// model

namespace {

Layer zero_layer(std::size_t out, std::size_t in) {
  return {Matrix::Zero(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in)),
          Vector::Zero(static_cast<Eigen::Index>(out))};
}

Matrix relu_mask(const Matrix& pre) {
  return pre.unaryExpr([](double v) { return v > 0.0 ? 1.0 : 0.0; });
}

Matrix affine(const Matrix& x, const Layer& l) { return (x * l.w.transpose()).rowwise() + l.b.transpose(); }

}  // namespace

MlpModel::MlpModel(std::size_t input, std::size_t hidden, std::size_t depth, FeatureStats st) : stats(std::move(st)) {
  std::size_t in = input;
  for (std::size_t i = 0; i < depth; ++i) {
    layers.push_back(zero_layer(hidden, in));
    in = hidden;
  }
  layers.push_back(zero_layer(kLabelCount, in));
}

MlpModel MlpModel::random(std::size_t input, std::size_t hidden, std::size_t depth, FeatureStats stats,
                          std::mt19937_64& rng) {
  MlpModel m(input, hidden, depth, std::move(stats));
  for (std::size_t i = 0; i < m.layers.size(); ++i) {
    auto& w = m.layers[i].w;
    const double fan_in = static_cast<double>(w.cols());
    const double limit =
        i + 1 < m.layers.size() ? std::sqrt(6.0 / fan_in) : std::sqrt(6.0 / (fan_in + static_cast<double>(w.rows())));
    std::uniform_real_distribution<double> d(-limit, limit);
    for (Eigen::Index k = 0; k < w.size(); ++k) w.data()[k] = d(rng);
  }
  return m;
}

std::size_t MlpModel::parameter_count() const noexcept {
  std::size_t n = 0;
  for (const auto& l : layers) n += static_cast<std::size_t>(l.w.size() + l.b.size());
  return n;
}

namespace {

template <typename Layers>
auto& flat_entry(Layers& layers, std::size_t i) {
  auto idx = static_cast<Eigen::Index>(i);
  for (auto& l : layers) {
    if (idx < l.w.size()) return l.w.data()[idx];
    idx -= l.w.size();
    if (idx < l.b.size()) return l.b.data()[idx];
    idx -= l.b.size();
  }
  throw Error(Errc::not_found, fmt::format("parameter index {} out of range", i));
}

}  // namespace

double& MlpModel::parameter(std::size_t i) { return flat_entry(layers, i); }

double MlpModel::gradient_entry(const Gradients& g, std::size_t i) { return flat_entry(g, i); }

Matrix MlpModel::forward(const Matrix& x) const {
  Matrix a = x;
  for (std::size_t i = 0; i + 1 < layers.size(); ++i) a = affine(a, layers[i]).cwiseMax(0.0);
  return affine(a, layers.back());
}

bool operator==(const MlpModel& a, const MlpModel& b) {
  if (a.layers.size() != b.layers.size()) return false;
  for (std::size_t i = 0; i < a.layers.size(); ++i) {
    const auto &la = a.layers[i], &lb = b.layers[i];
    if (la.w.rows() != lb.w.rows() || la.w.cols() != lb.w.cols() || la.w != lb.w || la.b != lb.b) return false;
  }
  return a.stats.mean == b.stats.mean && a.stats.scale == b.stats.scale;
}

Batch make_batch(std::span<const LabeledScenario> samples, const FeatureStats& stats) {
  Batch b;
  b.x.resize(static_cast<Eigen::Index>(samples.size()), static_cast<Eigen::Index>(input_width()));
  b.y.resize(static_cast<Eigen::Index>(samples.size()), kLabelCount);
  for (std::size_t r = 0; r < samples.size(); ++r) {
    const auto row = static_cast<Eigen::Index>(r);
    encode_input(samples[r].scenario, stats, b.x.row(row));
    for (std::size_t c = 0; c < kLabelCount; ++c) b.y(row, static_cast<Eigen::Index>(c)) = samples[r].labels[c];
  }
  return b;
}

double loss_and_gradients(const MlpModel& m, const Batch& batch, Gradients* grads) {
  // acts[i] feeds layer i; pres[i] is layer i's pre-activation
  std::vector<Matrix> acts{batch.x}, pres;
  for (std::size_t i = 0; i < m.layers.size(); ++i) {
    pres.push_back(affine(acts.back(), m.layers[i]));
    if (i + 1 < m.layers.size()) acts.push_back(pres.back().cwiseMax(0.0));
  }
  const Matrix& z = pres.back();

  // max(z, 0) - z*y + log(1 + exp(-|z|))
  const double cells = static_cast<double>(z.size());
  const double loss =
      (z.cwiseMax(0.0) - z.cwiseProduct(batch.y) + (-z.cwiseAbs()).array().exp().log1p().matrix()).sum() / cells;

  if (grads != nullptr) {
    grads->resize(m.layers.size());
    Matrix delta = (z.unaryExpr([](double v) { return sigmoid(v); }) - batch.y) / cells;
    for (std::size_t i = m.layers.size(); i-- > 0;) {
      (*grads)[i].w = delta.transpose() * acts[i];
      (*grads)[i].b = delta.colwise().sum().transpose();
      if (i > 0) delta = (delta * m.layers[i].w).cwiseProduct(relu_mask(pres[i - 1]));
    }
  }
  return loss;
}

namespace {

std::vector<Matrix> hidden_signs(const MlpModel& m, const Matrix& x) {
  std::vector<Matrix> out;
  Matrix a = x;
  for (std::size_t i = 0; i + 1 < m.layers.size(); ++i) {
    const Matrix pre = affine(a, m.layers[i]);
    out.push_back(relu_mask(pre));
    a = pre.cwiseMax(0.0);
  }
  return out;
}

}  // namespace

double gradient_check(MlpModel m, const Batch& batch, std::mt19937_64& rng, std::size_t probes, double step) {
  Gradients g;
  loss_and_gradients(m, batch, &g);
  const auto base_sign = hidden_signs(m, batch.x);

  std::uniform_int_distribution<std::size_t> pick(0, m.parameter_count() - 1);
  double worst = 0.0;
  std::size_t checked = 0;
  std::size_t attempts = 0;
  while (checked < probes && attempts < probes * 20) {
    ++attempts;
    const std::size_t i = pick(rng);
    double& p = m.parameter(i);
    const double saved = p;

    p = saved + step;
    const double up = loss_and_gradients(m, batch, nullptr);
    const bool kink_up = hidden_signs(m, batch.x) != base_sign;
    p = saved - step;
    const double down = loss_and_gradients(m, batch, nullptr);
    const bool kink_down = hidden_signs(m, batch.x) != base_sign;
    p = saved;
    if (kink_up || kink_down) continue;

    const double numeric = (up - down) / (2.0 * step);
    const double analytic = MlpModel::gradient_entry(g, i);
    const double denom = std::max({std::abs(numeric), std::abs(analytic), 1e-8});
    worst = std::max(worst, std::abs(numeric - analytic) / denom);
    ++checked;
  }
  return worst;
}

// ---------------------------------------------------------------------------
// training

void TrainConfig::validate() const {
  if (epochs == 0 || batch_size == 0 || hidden == 0 || depth == 0) {
    throw Error(Errc::config, "epochs, batch size, hidden width and depth must be positive");
  }
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) throw Error(Errc::config, "learning rate must be > 0");
  if (!(momentum >= 0.0 && momentum < 1.0)) throw Error(Errc::config, "momentum must lie in [0, 1)");
}

std::string to_json_line(const EpochMetrics& m) {
  nlohmann::ordered_json j;
  j["epoch"] = m.epoch;
  j["train_loss"] = m.train_loss;
  if (m.has_validation) {
    j["val_loss"] = m.val_loss;
    j["val_main_accuracy"] = m.val_main_accuracy;
    j["val_overall_f1"] = m.val_overall_f1;
    j["val_reason_f1"] = m.val_reason_f1;
  }
  return j.dump();
}

namespace {

void validation_metrics(const MlpModel& m, const Batch& val, std::span<const LabeledScenario> samples,
                        EpochMetrics& out) {
  out.has_validation = true;
  out.val_loss = loss_and_gradients(m, val, nullptr);
  const Matrix z = m.forward(val.x);
  LabelMatrix truth, pred;
  truth.reserve(samples.size());
  pred.reserve(samples.size());
  for (std::size_t r = 0; r < samples.size(); ++r) {
    LogitVector logits{};
    for (std::size_t c = 0; c < kLabelCount; ++c) logits[c] = z(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    truth.push_back(samples[r].labels);
    pred.push_back(as_label_vector(decide(logits)));
  }
  out.val_main_accuracy = main_accuracy(truth, pred);
  out.val_overall_f1 = micro_prf(truth, pred, kAllRange).f1;
  out.val_reason_f1 = micro_prf(truth, pred, kReasonRange).f1;
}

}  // namespace

MlpModel train(std::span<const LabeledScenario> data, const TrainConfig& config, std::ostream* log,
               std::span<const LabeledScenario> validation) {
  config.validate();
  if (data.empty()) throw Error(Errc::empty_input, "training set is empty");

  std::vector<Scenario> scenarios;
  scenarios.reserve(data.size());
  for (const auto& d : data) scenarios.push_back(d.scenario);

  std::mt19937_64 rng(config.seed);
  MlpModel model = MlpModel::random(input_width(), config.hidden, config.depth, FeatureStats::fit(scenarios), rng);
  const Batch all = make_batch(data, model.stats);
  Batch val;
  if (!validation.empty()) val = make_batch(validation, model.stats);

  Gradients velocity;
  for (const auto& l : model.layers) velocity.push_back(zero_layer(l.w.rows(), l.w.cols()));
  Gradients grads;
  std::vector<Eigen::Index> order(data.size());
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const double lr = config.learning_rate;
  const double mu = config.momentum;

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double loss_sum = 0.0;
    for (std::size_t from = 0; from < order.size(); from += config.batch_size) {
      const std::size_t n = std::min(config.batch_size, order.size() - from);
      Batch b;
      b.x.resize(static_cast<Eigen::Index>(n), all.x.cols());
      b.y.resize(static_cast<Eigen::Index>(n), all.y.cols());
      for (std::size_t r = 0; r < n; ++r) {
        b.x.row(static_cast<Eigen::Index>(r)) = all.x.row(order[from + r]);
        b.y.row(static_cast<Eigen::Index>(r)) = all.y.row(order[from + r]);
      }
      loss_sum += loss_and_gradients(model, b, &grads) * static_cast<double>(n);

      for (std::size_t i = 0; i < model.layers.size(); ++i) {
        velocity[i].w = mu * velocity[i].w - lr * grads[i].w;
        velocity[i].b = mu * velocity[i].b - lr * grads[i].b;
        model.layers[i].w += velocity[i].w;
        model.layers[i].b += velocity[i].b;
      }
    }

    EpochMetrics metrics;
    metrics.epoch = epoch;
    metrics.train_loss = loss_sum / static_cast<double>(data.size());
    if (!std::isfinite(metrics.train_loss)) {
      throw Error(Errc::divergence, fmt::format("training loss became non-finite at epoch {}", epoch));
    }
    if (!validation.empty()) validation_metrics(model, val, validation, metrics);
    if (log != nullptr) *log << to_json_line(metrics) << '\n';
  }
  return model;
}

LogitVector predict_logits(const MlpModel& m, const Scenario& s) {
  Matrix x(1, static_cast<Eigen::Index>(input_width()));
  encode_input(s, m.stats, x.row(0));
  const Matrix z = m.forward(x);
  LogitVector out{};
  for (std::size_t c = 0; c < kLabelCount; ++c) out[c] = z(0, static_cast<Eigen::Index>(c));
  return out;
}

std::vector<LogitVector> predict_logits(const MlpModel& m, std::span<const Scenario> scenarios, unsigned threads) {
  std::vector<LogitVector> out(scenarios.size());
  threads = std::clamp<unsigned>(threads, 1u, static_cast<unsigned>(std::max<std::size_t>(1, scenarios.size())));
  const auto work = [&](std::size_t from, std::size_t to) {
    for (std::size_t i = from; i < to; ++i) out[i] = predict_logits(m, scenarios[i]);
  };
  if (threads == 1) {
    work(0, scenarios.size());
    return out;
  }
  const std::size_t per = (scenarios.size() + threads - 1) / threads;
  std::vector<std::jthread> workers;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t from = std::min(scenarios.size(), t * per);
    const std::size_t to = std::min(scenarios.size(), from + per);
    workers.emplace_back(work, from, to);
  }
  return out;
}

// ---------------------------------------------------------------------------
// persistence

namespace {

constexpr char kMagic[4] = {'S', 'H', 'M', '1'};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
  }

  double f64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes_[pos_ + i]) << (8 * i);
    pos_ += 8;
    const double d = std::bit_cast<double>(v);
    if (!std::isfinite(d)) throw Error(Errc::integrity, "model file holds a non-finite parameter");
    return d;
  }

  std::span<const std::uint8_t> take(std::size_t n) {
    need(n);
    auto s = bytes_.subspan(pos_, n);
    pos_ += n;
    return s;
  }

  bool done() const { return pos_ == bytes_.size(); }

 private:
  void need(std::size_t n) const {
    if (pos_ + n > bytes_.size()) throw Error(Errc::integrity, "model file truncated");
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> serialize_model(const MlpModel& m) {
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  put_u32(out, static_cast<std::uint32_t>(m.input_dim()));
  put_u32(out, static_cast<std::uint32_t>(m.hidden()));
  put_u32(out, static_cast<std::uint32_t>(m.depth()));
  put_u32(out, static_cast<std::uint32_t>(m.output_dim()));
  put_u32(out, static_cast<std::uint32_t>(kScaledFeatureCount));
  for (double v : m.stats.mean) put_f64(out, v);
  for (double v : m.stats.scale) put_f64(out, v);
  for (const auto& l : m.layers) {
    for (Eigen::Index i = 0; i < l.w.size(); ++i) put_f64(out, l.w.data()[i]);
    for (Eigen::Index i = 0; i < l.b.size(); ++i) put_f64(out, l.b.data()[i]);
  }
  return out;
}

MlpModel deserialize_model(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  const auto magic = in.take(4);
  if (!std::equal(magic.begin(), magic.end(), std::begin(kMagic))) {
    throw Error(Errc::integrity, "not a model file (bad magic)");
  }
  const auto input = in.u32();
  const auto hidden = in.u32();
  const auto depth = in.u32();
  const auto output = in.u32();
  const auto scaled = in.u32();
  if (input != input_width() || output != kLabelCount || scaled != kScaledFeatureCount || hidden == 0 ||
      hidden > (1u << 16) || depth == 0 || depth > 16) {
    throw Error(Errc::integrity, fmt::format("unsupported model dimensions {}x{}^{}x{} (scaled {})", input, hidden,
                                             depth, output, scaled));
  }
  MlpModel m(input, hidden, depth, FeatureStats::identity());
  for (auto& v : m.stats.mean) v = in.f64();
  for (auto& v : m.stats.scale) {
    v = in.f64();
    if (!(v > 0.0)) throw Error(Errc::integrity, "model file holds a non-positive feature scale");
  }
  for (auto& l : m.layers) {
    for (Eigen::Index i = 0; i < l.w.size(); ++i) l.w.data()[i] = in.f64();
    for (Eigen::Index i = 0; i < l.b.size(); ++i) l.b.data()[i] = in.f64();
  }
  if (!in.done()) throw Error(Errc::integrity, "trailing bytes after model parameters");
  return m;
}

void write_model(const MlpModel& m, const std::filesystem::path& path) {
  write_binary_file(path, serialize_model(m));
}

MlpModel read_model(const std::filesystem::path& path) { return deserialize_model(read_binary_file(path)); }

}  // namespace uavsem
