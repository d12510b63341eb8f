#pragma once

#include <cstdint>
#include <cstring>
#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "aerial/autoencoder.hpp"
#include "aerial/rng.hpp"
#include "aerial/schema.hpp"

namespace testsupport {

// Probe target with canned behavior, for driving extraction without training.
class StubModel : public aerial::ForwardModel {
 public:
  using Fn = std::function<std::vector<double>(std::span<const double>)>;

  StubModel(std::shared_ptr<const aerial::FeatureSchema> schema, Fn fn)
      : schema_(std::move(schema)), fn_(std::move(fn)) {}

  // Returns the same output vector for every probe.
  static StubModel fixed(std::shared_ptr<const aerial::FeatureSchema> schema,
                         std::vector<double> output) {
    return StubModel(std::move(schema),
                     [output](std::span<const double>) { return output; });
  }

  std::shared_ptr<const aerial::FeatureSchema> schema_ptr() const override {
    return schema_;
  }
  std::vector<double> forward(std::span<const double> input) const override {
    return fn_(input);
  }

 private:
  std::shared_ptr<const aerial::FeatureSchema> schema_;
  Fn fn_;
};

// Deterministic pseudo-random block-normalized outputs keyed on the input
// bits; behaves like a fixed arbitrary model across repeated probes.
inline StubModel hashed_stub(std::shared_ptr<const aerial::FeatureSchema> schema,
                             std::uint64_t salt) {
  auto schema_copy = schema;
  return StubModel(
      schema, [schema_copy, salt](std::span<const double> input) {
        std::uint64_t h = 0xcbf29ce484222325ull ^ salt;
        for (const double v : input) {
          std::uint64_t bits;
          static_assert(sizeof(bits) == sizeof(v));
          std::memcpy(&bits, &v, sizeof(bits));
          h ^= bits;
          h *= 0x100000001b3ull;
        }
        aerial::Rng rng(h);
        std::vector<double> out(schema_copy->total_dim());
        for (std::size_t f = 0; f < schema_copy->feature_count(); ++f) {
          const std::size_t begin = schema_copy->offset(f);
          const std::size_t count = schema_copy->category_count(f);
          double sum = 0.0;
          for (std::size_t c = 0; c < count; ++c) {
            out[begin + c] = rng.uniform(1e-3, 1.0);
            sum += out[begin + c];
          }
          for (std::size_t c = 0; c < count; ++c) {
            out[begin + c] /= sum;
          }
        }
        return out;
      });
}

inline std::shared_ptr<const aerial::FeatureSchema> fig2_schema() {
  std::vector<aerial::Feature> features{
      {"weather", {"cold", "warm"}},
      {"beverage", {"tea", "coffee", "soda"}},
  };
  return std::make_shared<const aerial::FeatureSchema>(std::move(features));
}

}  // namespace testsupport
