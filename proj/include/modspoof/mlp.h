// include/modspoof/mlp.h

// Copyright 2026  modspoof authors

// See ../../COPYING for clarification regarding multiple authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef MODSPOOF_MLP_H_
#define MODSPOOF_MLP_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "modspoof/feature_matrix.h"
#include "modspoof/rng.h"

namespace modspoof {

enum class ReductionKind : std::uint8_t { kFlattenTopK = 0, kMeanOverTime = 1 };

std::string_view reduction_kind_name(ReductionKind kind);
ReductionKind parse_reduction_kind(std::string_view token);

/// How a feature matrix becomes the classifier input vector.
struct InputReduction {
  ReductionKind kind = ReductionKind::kFlattenTopK;
  std::size_t k_rows = 16;  // flatten_topk only
  std::size_t k_cols = 32;

  std::size_t output_dim(std::size_t feature_rows) const {
    return kind == ReductionKind::kFlattenTopK ? k_rows * k_cols : feature_rows;
  }

  friend bool operator==(const InputReduction&, const InputReduction&) = default;
};

/// flatten_topk: the top-left k_rows x k_cols block (lowest modulation
/// frequencies), row-major. mean_over_time: the per-row mean over columns.
std::vector<double> reduce_input(const FeatureMatrix& feature,
                                 const InputReduction& reduction);

enum class Label : std::uint8_t { kGenuine = 0, kSpoof = 1 };

/// Parameters of the two-layer perceptron, all row-major.
struct MlpParams {
  std::vector<double> w1;  // hidden x input
  std::vector<double> b1;  // hidden
  std::vector<double> w2;  // 2 x hidden
  std::vector<double> b2;  // 2

  /// Visits (name, tensor) for every parameter tensor in storage order.
  template <typename Fn>
  void for_each(Fn&& fn) {
    fn("w1", w1);
    fn("b1", b1);
    fn("w2", w2);
    fn("b2", b2);
  }
  template <typename Fn>
  void for_each(Fn&& fn) const {
    fn("w1", w1);
    fn("b1", b1);
    fn("w2", w2);
    fn("b2", b2);
  }

  friend bool operator==(const MlpParams&, const MlpParams&) = default;
};

/// softmax(W2 relu(W1 x + b1) + b2); output unit 0 is genuine, 1 is spoof.
struct MlpModel {
  InputReduction reduction;
  std::size_t input_dim = 0;
  std::size_t hidden = 0;
  MlpParams params;

  /// Glorot-uniform weights in +-sqrt(6 / (fan_in + fan_out)), zero biases.
  /// Drawn values are rounded to float32 so that an untouched model survives
  /// a save/load cycle unchanged.
  static MlpModel init(std::size_t input_dim, std::size_t hidden,
                       const InputReduction& reduction, Rng& rng);

  /// Rounds every parameter to the nearest float32.
  void quantize();
  bool all_finite() const;
};

struct Prediction {
  double p_genuine;
  double p_spoof;
  double logit_genuine;
  double logit_spoof;
};

Prediction forward(const MlpModel& model, std::span<const double> x);

struct Example {
  std::vector<double> x;
  Label label;
};

struct LossAndGrad {
  double loss = 0.0;
  MlpParams grad;
};

/// Mean cross-entropy over the batch plus weight_decay * (|W1|^2 + |W2|^2)/2,
/// with analytic gradients for every parameter.
LossAndGrad loss_and_grad(const MlpModel& model, std::span<const Example> batch,
                          double weight_decay);

struct TrainConfig {
  double learning_rate = 0.05;
  std::size_t epochs = 60;
  std::size_t batch_size = 16;
  double weight_decay = 1e-3;
  std::size_t hidden = 128;
  double validation_fraction = 0.1;
  std::uint64_t seed = 0;
  InputReduction reduction;

  void validate() const;
};

struct LabeledFeature {
  FeatureMatrix feature;
  Label label;
};

/// Training-time feature transform, e.g. SpecAugment or DCT zero masking.
/// Called once per sample per epoch with the trainer's augmentation stream.
using AugmentHook = std::function<FeatureMatrix(const FeatureMatrix&, Rng&)>;

struct EpochStats {
  std::size_t epoch = 0;
  double train_loss = 0.0;
  double val_loss = 0.0;
  double val_accuracy = 0.0;
};

struct TrainResult {
  MlpModel model;  // best-validation checkpoint, float32-rounded
  std::vector<EpochStats> history;
  std::size_t best_epoch = 0;
};

/// Mini-batch SGD. Deterministic for a given config.seed: the validation
/// split, the per-epoch shuffles, initialization and augmentation draws all
/// come from streams derived from it. Throws kDivergence on a non-finite loss.
TrainResult train(std::span<const LabeledFeature> dataset,
                  const TrainConfig& cfg, const AugmentHook& augment = {});

/// p_genuine for every feature, order preserved. Work is split over `jobs`
/// threads; results do not depend on the thread count.
std::vector<double> predict_batch(const MlpModel& model,
                                  std::span<const FeatureMatrix> features,
                                  std::size_t jobs = 1);

/// Binary "GMM1" model file (version 1): header, float32 parameters and an
/// FNV-1a checksum of everything before it.
void save_model(const MlpModel& model, const std::filesystem::path& path);
MlpModel load_model(const std::filesystem::path& path);
std::vector<std::uint8_t> encode_model(const MlpModel& model);
MlpModel decode_model(std::span<const std::uint8_t> bytes);

}  // namespace modspoof

#endif  // MODSPOOF_MLP_H_
