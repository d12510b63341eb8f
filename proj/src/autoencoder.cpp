#include "aerial/autoencoder.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "aerial/error.hpp"

namespace aerial {

namespace {

constexpr double kAdamBeta1 = 0.9;
constexpr double kAdamBeta2 = 0.999;
constexpr double kAdamEpsilon = 1e-8;

void block_softmax(const FeatureSchema& schema, std::vector<double>& z) {
  for (std::size_t f = 0; f < schema.feature_count(); ++f) {
    const std::size_t begin = schema.offset(f);
    const std::size_t count = schema.category_count(f);
    double max_z = z[begin];
    for (std::size_t c = 1; c < count; ++c) {
      max_z = std::max(max_z, z[begin + c]);
    }
    double sum = 0.0;
    for (std::size_t c = 0; c < count; ++c) {
      z[begin + c] = std::exp(z[begin + c] - max_z);
      sum += z[begin + c];
    }
    for (std::size_t c = 0; c < count; ++c) {
      z[begin + c] /= sum;
    }
  }
}

std::vector<double> affine(const DenseLayer& layer,
                           const std::vector<double>& input) {
  std::vector<double> out(layer.out);
  for (std::size_t o = 0; o < layer.out; ++o) {
    const double* row = layer.weights.data() + o * layer.in;
    double acc = layer.bias[o];
    for (std::size_t i = 0; i < layer.in; ++i) {
      acc += row[i] * input[i];
    }
    out[o] = acc;
  }
  return out;
}

}  // namespace

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0)) {
    fail(ErrorCode::invalid_argument, "learning rate must be positive");
  }
  if (weight_decay < 0.0) {
    fail(ErrorCode::invalid_argument, "weight decay must be non-negative");
  }
  if (epochs < 1) {
    fail(ErrorCode::invalid_argument, "epochs must be at least 1");
  }
  if (batch_size < 0) {
    fail(ErrorCode::invalid_argument, "batch size must be positive");
  }
  if (hidden_layers < 0 || hidden_layers > 3) {
    fail(ErrorCode::invalid_argument, "hidden layers must be in 1..3");
  }
}

int resolve_hidden_layers(const TrainConfig& config, std::size_t total_dim) {
  if (config.hidden_layers > 0) return config.hidden_layers;
  return total_dim < 100 ? 1 : 2;
}

int resolve_batch_size(const TrainConfig& config, std::size_t n_rows) {
  const std::size_t n = std::max<std::size_t>(n_rows, 1);
  if (config.batch_size > 0) {
    return static_cast<int>(std::min<std::size_t>(config.batch_size, n));
  }
  return static_cast<int>(std::min<std::size_t>(64, n));
}

AutoencoderModel::AutoencoderModel(std::shared_ptr<const FeatureSchema> schema,
                                   int hidden_layers, Rng& init_rng)
    : schema_(std::move(schema)), hidden_layers_(hidden_layers) {
  if (hidden_layers_ < 1 || hidden_layers_ > 3) {
    fail(ErrorCode::invalid_argument, "hidden layers must be in 1..3");
  }
  const std::size_t d = schema_->total_dim();
  std::vector<std::size_t> widths{d};
  for (int l = 0; l < hidden_layers_; ++l) {
    widths.push_back(std::max<std::size_t>(2, (widths.back() + 1) / 2));
  }
  if (widths.back() >= d) {
    fail(ErrorCode::invalid_argument,
         "input dimension " + std::to_string(d) +
             " is too small for an under-complete bottleneck");
  }

  std::vector<std::size_t> dims = widths;                    // d, h1, ..., e
  for (int l = hidden_layers_ - 1; l >= 0; --l) {            // mirror back to d
    dims.push_back(widths[static_cast<std::size_t>(l)]);
  }

  layers_.reserve(dims.size() - 1);
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    DenseLayer layer;
    layer.in = dims[l];
    layer.out = dims[l + 1];
    layer.weights.resize(layer.in * layer.out);
    layer.bias.assign(layer.out, 0.0);
    const double r =
        std::sqrt(6.0 / static_cast<double>(layer.in + layer.out));
    for (double& w : layer.weights) {
      w = init_rng.uniform(-r, r);
    }
    layers_.push_back(std::move(layer));
  }
}

std::vector<std::size_t> AutoencoderModel::layer_dims() const {
  std::vector<std::size_t> dims{layers_.front().in};
  for (const DenseLayer& layer : layers_) {
    dims.push_back(layer.out);
  }
  return dims;
}

std::size_t AutoencoderModel::bottleneck_dim() const {
  return layers_[static_cast<std::size_t>(hidden_layers_) - 1].out;
}

AutoencoderModel::Trace AutoencoderModel::forward_trace(
    std::span<const double> input) const {
  if (input.size() != schema_->total_dim()) {
    fail(ErrorCode::invalid_argument,
         "input length " + std::to_string(input.size()) + " does not match " +
             std::to_string(schema_->total_dim()));
  }
  Trace trace;
  trace.activations.reserve(layers_.size() + 1);
  trace.activations.emplace_back(input.begin(), input.end());
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    std::vector<double> z = affine(layers_[l], trace.activations.back());
    if (l + 1 < layers_.size()) {
      for (double& v : z) v = std::tanh(v);
    } else {
      block_softmax(*schema_, z);
    }
    trace.activations.push_back(std::move(z));
  }
  return trace;
}

std::vector<double> AutoencoderModel::forward(
    std::span<const double> input) const {
  return forward_trace(input).activations.back();
}

std::vector<double> apply_noise(std::span<const double> x,
                                std::span<const double> noise) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = std::clamp(x[i] + noise[i], 0.0, 1.0);
  }
  return out;
}

std::vector<double> add_noise(std::span<const double> x, Rng& rng) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = std::clamp(x[i] + rng.uniform(-0.5, 0.5), 0.0, 1.0);
  }
  return out;
}

double bce_loss(const FeatureSchema& schema, std::span<const double> predicted,
                std::span<const double> target) {
  if (predicted.size() != schema.total_dim() ||
      target.size() != schema.total_dim()) {
    fail(ErrorCode::invalid_argument, "prediction/target length mismatch");
  }
  double loss = 0.0;
  for (std::size_t f = 0; f < schema.feature_count(); ++f) {
    const std::size_t begin = schema.offset(f);
    const std::size_t count = schema.category_count(f);
    double feature_loss = 0.0;
    for (std::size_t c = 0; c < count; ++c) {
      const double p =
          std::clamp(predicted[begin + c], kBceEpsilon, 1.0 - kBceEpsilon);
      const double y = target[begin + c];
      feature_loss -= y * std::log(p) + (1.0 - y) * std::log(1.0 - p);
    }
    loss += feature_loss / static_cast<double>(count);
  }
  return loss;
}

Gradients zero_gradients(const AutoencoderModel& model) {
  Gradients grads;
  grads.layers.reserve(model.layers().size());
  for (const DenseLayer& layer : model.layers()) {
    DenseLayer zero;
    zero.in = layer.in;
    zero.out = layer.out;
    zero.weights.assign(layer.weights.size(), 0.0);
    zero.bias.assign(layer.bias.size(), 0.0);
    grads.layers.push_back(std::move(zero));
  }
  return grads;
}

void Gradients::accumulate(const Gradients& other) {
  for (std::size_t l = 0; l < layers.size(); ++l) {
    for (std::size_t i = 0; i < layers[l].weights.size(); ++i) {
      layers[l].weights[i] += other.layers[l].weights[i];
    }
    for (std::size_t i = 0; i < layers[l].bias.size(); ++i) {
      layers[l].bias[i] += other.layers[l].bias[i];
    }
  }
}

void Gradients::scale(double factor) {
  for (DenseLayer& layer : layers) {
    for (double& w : layer.weights) w *= factor;
    for (double& b : layer.bias) b *= factor;
  }
}

BackpropResult backprop(const AutoencoderModel& model,
                        std::span<const double> input,
                        std::span<const double> target) {
  const FeatureSchema& schema = model.schema();
  const AutoencoderModel::Trace trace = model.forward_trace(input);
  const std::vector<double>& p = trace.output();

  BackpropResult result;
  result.loss = bce_loss(schema, p, target);
  result.grads = zero_gradients(model);

  // dLoss/dz at the softmax layer: per block, delta_m = p_m (g_m - sum_j g_j p_j)
  // with g the per-feature-averaged BCE derivative w.r.t. the clamped output.
  std::vector<double> delta(p.size(), 0.0);
  for (std::size_t f = 0; f < schema.feature_count(); ++f) {
    const std::size_t begin = schema.offset(f);
    const std::size_t count = schema.category_count(f);
    const double inv_count = 1.0 / static_cast<double>(count);
    double dot = 0.0;
    std::vector<double> g(count, 0.0);
    for (std::size_t c = 0; c < count; ++c) {
      const double pc = p[begin + c];
      if (pc > kBceEpsilon && pc < 1.0 - kBceEpsilon) {
        const double y = target[begin + c];
        g[c] = inv_count * (-(y / pc) + (1.0 - y) / (1.0 - pc));
      }
      dot += g[c] * pc;
    }
    for (std::size_t c = 0; c < count; ++c) {
      delta[begin + c] = p[begin + c] * (g[c] - dot);
    }
  }

  const auto& layers = model.layers();
  for (std::size_t l = layers.size(); l-- > 0;) {
    const DenseLayer& layer = layers[l];
    const std::vector<double>& in_act = trace.activations[l];
    DenseLayer& grad = result.grads.layers[l];
    for (std::size_t o = 0; o < layer.out; ++o) {
      grad.bias[o] = delta[o];
      double* grow = grad.weights.data() + o * layer.in;
      for (std::size_t i = 0; i < layer.in; ++i) {
        grow[i] = delta[o] * in_act[i];
      }
    }
    if (l == 0) break;
    std::vector<double> prev(layer.in, 0.0);
    for (std::size_t o = 0; o < layer.out; ++o) {
      const double* row = layer.weights.data() + o * layer.in;
      for (std::size_t i = 0; i < layer.in; ++i) {
        prev[i] += row[i] * delta[o];
      }
    }
    for (std::size_t i = 0; i < layer.in; ++i) {
      prev[i] *= 1.0 - in_act[i] * in_act[i];  // tanh'
    }
    delta = std::move(prev);
  }
  return result;
}

Gradients gradients(const AutoencoderModel& model, std::span<const double> input,
                    std::span<const double> target) {
  return backprop(model, input, target).grads;
}

TrainResult train(const Dataset& dataset, const TrainConfig& config) {
  config.validate();
  if (dataset.n == 0 || !dataset.schema) {
    fail(ErrorCode::invalid_argument, "cannot train on an empty dataset");
  }

  const int hidden = resolve_hidden_layers(config, dataset.schema->total_dim());
  const std::size_t batch_size =
      static_cast<std::size_t>(resolve_batch_size(config, dataset.n));

  Rng rng(config.seed);
  AutoencoderModel model(dataset.schema, hidden, rng);

  std::vector<std::vector<double>> encoded;
  encoded.reserve(dataset.n);
  for (std::size_t r = 0; r < dataset.n; ++r) {
    encoded.push_back(dataset.encode(r));
  }

  Gradients momentum = zero_gradients(model);
  Gradients velocity = zero_gradients(model);
  long step = 0;

  const auto adam_update = [&](double& theta, double grad, double& m,
                               double& v, double bias1, double bias2) {
    m = kAdamBeta1 * m + (1.0 - kAdamBeta1) * grad;
    v = kAdamBeta2 * v + (1.0 - kAdamBeta2) * grad * grad;
    const double m_hat = m / bias1;
    const double v_hat = v / bias2;
    theta *= 1.0 - config.learning_rate * config.weight_decay;
    theta -= config.learning_rate * m_hat / (std::sqrt(v_hat) + kAdamEpsilon);
  };

  TrainResult result{std::move(model), {}};
  std::vector<std::size_t> order(dataset.n);
  std::iota(order.begin(), order.end(), std::size_t{0});

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    rng.shuffle(order);
    double epoch_loss = 0.0;
    std::size_t batch_index = 0;
    for (std::size_t start = 0; start < dataset.n; start += batch_size) {
      const std::size_t end = std::min(dataset.n, start + batch_size);
      Gradients accum = zero_gradients(result.model);
      double batch_loss = 0.0;
      for (std::size_t i = start; i < end; ++i) {
        const std::vector<double>& clean = encoded[order[i]];
        const std::vector<double> noisy = add_noise(clean, rng);
        BackpropResult bp = backprop(result.model, noisy, clean);
        batch_loss += bp.loss;
        accum.accumulate(bp.grads);
      }
      if (!std::isfinite(batch_loss)) {
        fail(ErrorCode::numeric,
             "non-finite loss at epoch " + std::to_string(epoch + 1) +
                 ", batch " + std::to_string(batch_index + 1));
      }
      accum.scale(1.0 / static_cast<double>(end - start));

      ++step;
      const double bias1 = 1.0 - std::pow(kAdamBeta1, static_cast<double>(step));
      const double bias2 = 1.0 - std::pow(kAdamBeta2, static_cast<double>(step));
      auto& layers = result.model.layers();
      for (std::size_t l = 0; l < layers.size(); ++l) {
        DenseLayer& layer = layers[l];
        DenseLayer& grad = accum.layers[l];
        DenseLayer& m = momentum.layers[l];
        DenseLayer& v = velocity.layers[l];
        for (std::size_t i = 0; i < layer.weights.size(); ++i) {
          adam_update(layer.weights[i], grad.weights[i], m.weights[i],
                      v.weights[i], bias1, bias2);
        }
        for (std::size_t i = 0; i < layer.bias.size(); ++i) {
          adam_update(layer.bias[i], grad.bias[i], m.bias[i], v.bias[i], bias1,
                      bias2);
        }
      }
      epoch_loss += batch_loss;
      ++batch_index;
    }
    result.epoch_loss.push_back(epoch_loss / static_cast<double>(dataset.n));
  }
  return result;
}

std::string AutoencoderModel::to_json_string() const {
  nlohmann::json layers = nlohmann::json::array();
  for (const DenseLayer& layer : layers_) {
    layers.push_back({{"in", layer.in},
                      {"out", layer.out},
                      {"weights", layer.weights},
                      {"bias", layer.bias}});
  }
  nlohmann::json doc{
      {"format", "aerial-model"},
      {"version", 1},
      {"schema", nlohmann::json::parse(schema_->to_json_string())},
      {"schema_hash", schema_->hash()},
      {"hidden_layers", hidden_layers_},
      {"layers", layers},
  };
  return doc.dump();
}

AutoencoderModel AutoencoderModel::from_json_string(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded() || doc.value("format", "") != "aerial-model") {
    fail(ErrorCode::parse, "not an aerial model file");
  }
  if (doc.value("version", 0) != 1) {
    fail(ErrorCode::parse, "unsupported model version");
  }

  AutoencoderModel model;
  model.schema_ = std::make_shared<FeatureSchema>(
      FeatureSchema::from_json_string(doc.at("schema").dump()));
  model.hidden_layers_ = doc.at("hidden_layers").get<int>();
  for (const auto& l : doc.at("layers")) {
    DenseLayer layer;
    layer.in = l.at("in").get<std::size_t>();
    layer.out = l.at("out").get<std::size_t>();
    layer.weights = l.at("weights").get<std::vector<double>>();
    layer.bias = l.at("bias").get<std::vector<double>>();
    if (layer.weights.size() != layer.in * layer.out ||
        layer.bias.size() != layer.out) {
      fail(ErrorCode::parse, "inconsistent layer shapes in model file");
    }
    model.layers_.push_back(std::move(layer));
  }
  if (model.layers_.empty() ||
      model.layers_.front().in != model.schema_->total_dim() ||
      model.layers_.back().out != model.schema_->total_dim()) {
    fail(ErrorCode::parse, "model dimensions do not match the schema");
  }
  if (doc.contains("schema_hash") &&
      doc.at("schema_hash").get<std::uint64_t>() != model.schema_->hash()) {
    fail(ErrorCode::schema_mismatch, "schema hash mismatch in model file");
  }
  return model;
}

void AutoencoderModel::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) {
    fail(ErrorCode::io, "cannot write " + path);
  }
  out << to_json_string() << '\n';
}

AutoencoderModel AutoencoderModel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    fail(ErrorCode::io, "cannot open " + path);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_json_string(buffer.str());
}

}  // namespace aerial
