#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "aerial/dataset.hpp"
#include "aerial/rng.hpp"
#include "aerial/schema.hpp"

namespace aerial {

struct TrainConfig {
  double learning_rate = 5e-3;
  double weight_decay = 2e-8;
  int epochs = 2;
  int batch_size = 0;    // 0: automatic (see resolve_batch_size)
  int hidden_layers = 0; // 0: automatic, 1 if total_dim < 100 else 2
  std::uint64_t seed = 0;

  void validate() const;
};

int resolve_hidden_layers(const TrainConfig& config, std::size_t total_dim);
int resolve_batch_size(const TrainConfig& config, std::size_t n_rows);

// Anything that answers probe vectors over a schema. Extraction runs
// against this interface so tests can substitute fixed-output models.
class ForwardModel {
 public:
  virtual ~ForwardModel() = default;
  virtual std::shared_ptr<const FeatureSchema> schema_ptr() const = 0;
  virtual std::vector<double> forward(std::span<const double> input) const = 0;

  const FeatureSchema& schema() const { return *schema_ptr(); }
};

struct DenseLayer {
  std::size_t in = 0;
  std::size_t out = 0;
  std::vector<double> weights;  // out x in, row-major
  std::vector<double> bias;     // out
};

// Under-complete autoencoder: tanh hidden layers of halving width (min 2),
// mirrored decoder, softmax per feature block at the output.
class AutoencoderModel : public ForwardModel {
 public:
  AutoencoderModel(std::shared_ptr<const FeatureSchema> schema,
                   int hidden_layers, Rng& init_rng);

  std::shared_ptr<const FeatureSchema> schema_ptr() const override {
    return schema_;
  }
  std::vector<double> forward(std::span<const double> input) const override;

  // All layer activations (input first, block-softmax output last).
  struct Trace {
    std::vector<std::vector<double>> activations;
    const std::vector<double>& output() const { return activations.back(); }
  };
  Trace forward_trace(std::span<const double> input) const;

  std::vector<std::size_t> layer_dims() const;  // d, h1, ..., e, ..., d
  std::size_t bottleneck_dim() const;
  int hidden_layers() const { return hidden_layers_; }
  const std::vector<DenseLayer>& layers() const { return layers_; }
  std::vector<DenseLayer>& layers() { return layers_; }
  std::uint64_t schema_hash() const { return schema_->hash(); }

  std::string to_json_string() const;
  static AutoencoderModel from_json_string(const std::string& text);
  void save(const std::string& path) const;
  static AutoencoderModel load(const std::string& path);

 private:
  AutoencoderModel() = default;

  std::shared_ptr<const FeatureSchema> schema_;
  int hidden_layers_ = 0;
  std::vector<DenseLayer> layers_;
};

// x + noise clipped to [0,1], entrywise.
std::vector<double> apply_noise(std::span<const double> x,
                                std::span<const double> noise);
// Fresh U[-0.5, 0.5] noise per entry, then clip.
std::vector<double> add_noise(std::span<const double> x, Rng& rng);

// Per-feature-averaged binary cross-entropy; probabilities are clamped to
// [eps, 1-eps] inside the logs.
inline constexpr double kBceEpsilon = 1e-7;
double bce_loss(const FeatureSchema& schema, std::span<const double> predicted,
                std::span<const double> target);

struct Gradients {
  std::vector<DenseLayer> layers;  // same shapes as the model, grad values

  void accumulate(const Gradients& other);
  void scale(double factor);
};

Gradients zero_gradients(const AutoencoderModel& model);

struct BackpropResult {
  double loss = 0.0;
  Gradients grads;
};

// Analytic gradients of bce_loss(forward(input), target) w.r.t. every
// weight and bias.
BackpropResult backprop(const AutoencoderModel& model,
                        std::span<const double> input,
                        std::span<const double> target);
Gradients gradients(const AutoencoderModel& model, std::span<const double> input,
                    std::span<const double> target);

struct TrainResult {
  AutoencoderModel model;
  std::vector<double> epoch_loss;  // mean loss per epoch
};

// Adam with decoupled weight decay over shuffled mini-batches, noise
// resampled per presentation. Deterministic given the seed.
TrainResult train(const Dataset& dataset, const TrainConfig& config);

}  // namespace aerial
