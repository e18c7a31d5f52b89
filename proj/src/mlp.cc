// src/mlp.cc

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

#include "modspoof/mlp.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "modspoof/audio_io.h"
#include "modspoof/error.h"

namespace modspoof {

std::string_view reduction_kind_name(ReductionKind kind) {
  return kind == ReductionKind::kFlattenTopK ? "flatten_topk" : "mean_over_time";
}

ReductionKind parse_reduction_kind(std::string_view token) {
  if (token == "flatten_topk") return ReductionKind::kFlattenTopK;
  if (token == "mean_over_time") return ReductionKind::kMeanOverTime;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown input reduction '" + std::string(token) + "'");
}

std::vector<double> reduce_input(const FeatureMatrix& feature,
                                 const InputReduction& reduction) {
  if (reduction.kind == ReductionKind::kMeanOverTime) {
    if (feature.cols() == 0) {
      throw Error(ErrorCode::kEmptyInput, "mean_over_time on a matrix without columns");
    }
    std::vector<double> out(feature.rows());
    for (std::size_t r = 0; r < feature.rows(); ++r) {
      double acc = 0.0;
      for (double v : feature.row(r)) acc += v;
      out[r] = acc / static_cast<double>(feature.cols());
    }
    return out;
  }
  if (reduction.k_rows == 0 || reduction.k_cols == 0 ||
      reduction.k_rows > feature.rows() || reduction.k_cols > feature.cols()) {
    throw Error(ErrorCode::kInvalidArgument,
                "flatten_topk " + std::to_string(reduction.k_rows) + "x" +
                    std::to_string(reduction.k_cols) + " exceeds feature " +
                    std::to_string(feature.rows()) + "x" +
                    std::to_string(feature.cols()));
  }
  std::vector<double> out;
  out.reserve(reduction.k_rows * reduction.k_cols);
  for (std::size_t r = 0; r < reduction.k_rows; ++r) {
    const auto row = feature.row(r).first(reduction.k_cols);
    out.insert(out.end(), row.begin(), row.end());
  }
  return out;
}

MlpModel MlpModel::init(std::size_t input_dim, std::size_t hidden,
                        const InputReduction& reduction, Rng& rng) {
  if (input_dim == 0 || hidden == 0) {
    throw Error(ErrorCode::kInvalidArgument, "MLP dimensions must be positive");
  }
  MlpModel m;
  m.reduction = reduction;
  m.input_dim = input_dim;
  m.hidden = hidden;
  auto glorot = [&rng](std::vector<double>& w, std::size_t fan_in,
                       std::size_t fan_out) {
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    for (double& v : w) {
      v = static_cast<float>(rng.uniform(-limit, limit));
    }
  };
  m.params.w1.resize(hidden * input_dim);
  m.params.b1.assign(hidden, 0.0);
  m.params.w2.resize(2 * hidden);
  m.params.b2.assign(2, 0.0);
  glorot(m.params.w1, input_dim, hidden);
  glorot(m.params.w2, hidden, 2);
  return m;
}

void MlpModel::quantize() {
  params.for_each([](const char*, std::vector<double>& t) {
    for (double& v : t) v = static_cast<float>(v);
  });
}

bool MlpModel::all_finite() const {
  bool ok = true;
  params.for_each([&ok](const char*, const std::vector<double>& t) {
    for (double v : t) ok = ok && std::isfinite(v);
  });
  return ok;
}

namespace {

void check_input(const MlpModel& model, std::span<const double> x) {
  if (x.size() != model.input_dim) {
    throw Error(ErrorCode::kShapeMismatch,
                "classifier input has " + std::to_string(x.size()) +
                    " dims, model expects " + std::to_string(model.input_dim));
  }
}

// Hidden pre-activations.
void hidden_layer(const MlpModel& m, std::span<const double> x,
                  std::vector<double>& pre) {
  pre.resize(m.hidden);
  for (std::size_t h = 0; h < m.hidden; ++h) {
    const double* w = m.params.w1.data() + h * m.input_dim;
    double acc = m.params.b1[h];
    for (std::size_t i = 0; i < m.input_dim; ++i) acc += w[i] * x[i];
    pre[h] = acc;
  }
}

void output_layer(const MlpModel& m, const std::vector<double>& pre,
                  double logits[2]) {
  for (std::size_t o = 0; o < 2; ++o) {
    const double* w = m.params.w2.data() + o * m.hidden;
    double acc = m.params.b2[o];
    for (std::size_t h = 0; h < m.hidden; ++h) acc += w[h] * std::max(pre[h], 0.0);
    logits[o] = acc;
  }
}

}  // namespace

Prediction forward(const MlpModel& model, std::span<const double> x) {
  check_input(model, x);
  std::vector<double> pre;
  hidden_layer(model, x, pre);
  double logits[2];
  output_layer(model, pre, logits);
  const double top = std::max(logits[0], logits[1]);
  const double e0 = std::exp(logits[0] - top);
  const double e1 = std::exp(logits[1] - top);
  const double z = e0 + e1;
  return {e0 / z, e1 / z, logits[0], logits[1]};
}

LossAndGrad loss_and_grad(const MlpModel& model, std::span<const Example> batch,
                          double weight_decay) {
  if (batch.empty()) throw Error(ErrorCode::kEmptyInput, "loss over an empty batch");
  const std::size_t in = model.input_dim, hid = model.hidden;
  LossAndGrad out;
  out.grad.w1.assign(hid * in, 0.0);
  out.grad.b1.assign(hid, 0.0);
  out.grad.w2.assign(2 * hid, 0.0);
  out.grad.b2.assign(2, 0.0);

  const double inv_n = 1.0 / static_cast<double>(batch.size());
  std::vector<double> pre, dpre(hid);
  for (const auto& ex : batch) {
    check_input(model, ex.x);
    hidden_layer(model, ex.x, pre);
    double logits[2];
    output_layer(model, pre, logits);
    const double top = std::max(logits[0], logits[1]);
    const double lse =
        top + std::log(std::exp(logits[0] - top) + std::exp(logits[1] - top));
    const std::size_t y = static_cast<std::size_t>(ex.label);
    out.loss += (lse - logits[y]) * inv_n;

    double dlogit[2];
    for (std::size_t o = 0; o < 2; ++o) {
      dlogit[o] = (std::exp(logits[o] - lse) - (o == y ? 1.0 : 0.0)) * inv_n;
      out.grad.b2[o] += dlogit[o];
      double* gw = out.grad.w2.data() + o * hid;
      for (std::size_t h = 0; h < hid; ++h) gw[h] += dlogit[o] * std::max(pre[h], 0.0);
    }
    for (std::size_t h = 0; h < hid; ++h) {
      const double back = dlogit[0] * model.params.w2[h] +
                          dlogit[1] * model.params.w2[hid + h];
      dpre[h] = pre[h] > 0.0 ? back : 0.0;
    }
    for (std::size_t h = 0; h < hid; ++h) {
      if (dpre[h] == 0.0) continue;
      out.grad.b1[h] += dpre[h];
      double* gw = out.grad.w1.data() + h * in;
      for (std::size_t i = 0; i < in; ++i) gw[i] += dpre[h] * ex.x[i];
    }
  }

  if (weight_decay != 0.0) {
    double sq = 0.0;
    for (std::size_t i = 0; i < model.params.w1.size(); ++i) {
      const double w = model.params.w1[i];
      sq += w * w;
      out.grad.w1[i] += weight_decay * w;
    }
    for (std::size_t i = 0; i < model.params.w2.size(); ++i) {
      const double w = model.params.w2[i];
      sq += w * w;
      out.grad.w2[i] += weight_decay * w;
    }
    out.loss += 0.5 * weight_decay * sq;
  }
  return out;
}

void TrainConfig::validate() const {
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw Error(ErrorCode::kInvalidArgument, "learning_rate must be finite and >= 0");
  }
  if (batch_size == 0) throw Error(ErrorCode::kInvalidArgument, "batch_size must be >= 1");
  if (hidden == 0) throw Error(ErrorCode::kInvalidArgument, "hidden must be >= 1");
  if (!(validation_fraction >= 0.0 && validation_fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "validation_fraction must be in [0, 1)");
  }
  if (weight_decay < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "weight_decay must be >= 0");
  }
}

namespace {

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[rng.uniform_int(i - 1)]);
  }
}

double mean_loss(const MlpModel& model, std::span<const Example> examples,
                 double* accuracy) {
  double loss = 0.0;
  std::size_t correct = 0;
  for (const auto& ex : examples) {
    const Prediction p = forward(model, ex.x);
    const double p_label = ex.label == Label::kGenuine ? p.p_genuine : p.p_spoof;
    loss -= std::log(std::max(p_label, std::numeric_limits<double>::min()));
    const Label guess = p.p_genuine >= 0.5 ? Label::kGenuine : Label::kSpoof;
    correct += guess == ex.label ? 1 : 0;
  }
  const double n = static_cast<double>(examples.size());
  if (accuracy != nullptr) *accuracy = static_cast<double>(correct) / n;
  return loss / n;
}

}  // namespace

TrainResult train(std::span<const LabeledFeature> dataset,
                  const TrainConfig& cfg, const AugmentHook& augment) {
  cfg.validate();
  if (dataset.empty()) throw Error(ErrorCode::kEmptyInput, "empty training set");

  Rng root(cfg.seed);
  Rng split_rng(root.next_u64());
  Rng init_rng(root.next_u64());
  Rng order_rng(root.next_u64());
  Rng augment_rng(root.next_u64());

  // Stratified validation split.
  std::vector<std::size_t> by_class[2];
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    by_class[static_cast<std::size_t>(dataset[i].label)].push_back(i);
  }
  if (by_class[0].empty() || by_class[1].empty()) {
    throw Error(ErrorCode::kDegenerateInput,
                "training set must contain both genuine and spoof examples");
  }
  std::vector<std::size_t> train_idx, val_idx;
  for (auto& members : by_class) {
    shuffle(members, split_rng);
    std::size_t n_val = static_cast<std::size_t>(
        std::llround(cfg.validation_fraction * static_cast<double>(members.size())));
    if (cfg.validation_fraction > 0.0 && members.size() >= 2) {
      n_val = std::clamp<std::size_t>(n_val, 1, members.size() - 1);
    } else {
      n_val = 0;
    }
    val_idx.insert(val_idx.end(), members.begin(), members.begin() + n_val);
    train_idx.insert(train_idx.end(), members.begin() + n_val, members.end());
  }
  std::sort(train_idx.begin(), train_idx.end());
  std::sort(val_idx.begin(), val_idx.end());

  const FeatureMatrix& first = dataset[train_idx.front()].feature;
  const std::size_t input_dim = cfg.reduction.output_dim(first.rows());
  MlpModel model = MlpModel::init(input_dim, cfg.hidden, cfg.reduction, init_rng);

  auto to_example = [&](std::size_t i, Rng* aug) {
    const auto& item = dataset[i];
    if (aug != nullptr && augment) {
      return Example{reduce_input(augment(item.feature, *aug), cfg.reduction),
                     item.label};
    }
    return Example{reduce_input(item.feature, cfg.reduction), item.label};
  };

  std::vector<Example> val_set;
  for (std::size_t i : val_idx) val_set.push_back(to_example(i, nullptr));
  std::vector<Example> fixed_train;
  if (!augment) {
    for (std::size_t i : train_idx) fixed_train.push_back(to_example(i, nullptr));
  }

  TrainResult result;
  result.model = model;
  result.model.quantize();
  double best = std::numeric_limits<double>::infinity();

  std::vector<std::size_t> order(train_idx.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  std::vector<Example> batch;
  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    shuffle(order, order_rng);
    double epoch_loss = 0.0;
    std::size_t seen = 0;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t end = std::min(order.size(), start + cfg.batch_size);
      batch.clear();
      for (std::size_t j = start; j < end; ++j) {
        if (augment) {
          batch.push_back(to_example(train_idx[order[j]], &augment_rng));
        } else {
          batch.push_back(fixed_train[order[j]]);
        }
      }
      const LossAndGrad lg = loss_and_grad(model, batch, cfg.weight_decay);
      if (!std::isfinite(lg.loss)) {
        throw Error(ErrorCode::kDivergence,
                    "training diverged at epoch " + std::to_string(epoch) +
                        ", batch starting at " + std::to_string(start) +
                        " (loss " + std::to_string(lg.loss) +
                        "); lower the learning rate");
      }
      epoch_loss += lg.loss * static_cast<double>(end - start);
      seen += end - start;
      auto step = [&](std::vector<double>& w, const std::vector<double>& g) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] -= cfg.learning_rate * g[i];
      };
      step(model.params.w1, lg.grad.w1);
      step(model.params.b1, lg.grad.b1);
      step(model.params.w2, lg.grad.w2);
      step(model.params.b2, lg.grad.b2);
    }

    EpochStats stats;
    stats.epoch = epoch;
    stats.train_loss = epoch_loss / static_cast<double>(seen);
    if (!val_set.empty()) {
      stats.val_loss = mean_loss(model, val_set, &stats.val_accuracy);
    } else {
      stats.val_loss = stats.train_loss;
      stats.val_accuracy = std::numeric_limits<double>::quiet_NaN();
    }
    result.history.push_back(stats);
    if (stats.val_loss < best) {
      best = stats.val_loss;
      result.best_epoch = epoch;
      result.model = model;
      result.model.quantize();
    }
  }
  return result;
}

std::vector<double> predict_batch(const MlpModel& model,
                                  std::span<const FeatureMatrix> features,
                                  std::size_t jobs) {
  std::vector<double> scores(features.size());
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < features.size(); i += stride) {
      scores[i] = forward(model, reduce_input(features[i], model.reduction)).p_genuine;
    }
  };
  jobs = std::max<std::size_t>(1, std::min(jobs, features.size()));
  if (jobs <= 1) {
    work(0, 1);
    return scores;
  }
  std::vector<std::thread> threads;
  std::exception_ptr failure;
  std::mutex failure_mu;
  for (std::size_t t = 0; t < jobs; ++t) {
    threads.emplace_back([&, t] {
      try {
        work(t, jobs);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  if (failure) std::rethrow_exception(failure);
  return scores;
}

// ---------------------------------------------------------------------------
// GMM1 model files
//
//   "GMM1" | version u32 | reduction u8 | k_rows u32 | k_cols u32 |
//   input_dim u32 | hidden u32 | w1 b1 w2 b2 as float32 | fnv1a32 u32

namespace {

constexpr std::uint32_t kModelVersion = 1;

std::uint32_t fnv1a(std::span<const std::uint8_t> bytes) {
  std::uint32_t h = 2166136261u;
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= 16777619u;
  }
  return h;
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
  return v;
}

}  // namespace

std::vector<std::uint8_t> encode_model(const MlpModel& model) {
  if (!model.all_finite()) {
    throw Error(ErrorCode::kNonFinite, "refusing to save a model with non-finite parameters");
  }
  std::vector<std::uint8_t> out{'G', 'M', 'M', '1'};
  put_u32(out, kModelVersion);
  out.push_back(static_cast<std::uint8_t>(model.reduction.kind));
  put_u32(out, static_cast<std::uint32_t>(model.reduction.k_rows));
  put_u32(out, static_cast<std::uint32_t>(model.reduction.k_cols));
  put_u32(out, static_cast<std::uint32_t>(model.input_dim));
  put_u32(out, static_cast<std::uint32_t>(model.hidden));
  model.params.for_each([&out](const char*, const std::vector<double>& t) {
    for (double v : t) put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
  });
  put_u32(out, fnv1a(out));
  return out;
}

MlpModel decode_model(std::span<const std::uint8_t> bytes) {
  constexpr std::size_t kHeader = 4 + 4 + 1 + 4 * 4;
  if (bytes.size() < kHeader + 4 || std::memcmp(bytes.data(), "GMM1", 4) != 0) {
    throw Error(ErrorCode::kFormat, "not a GMM1 model file");
  }
  const std::uint32_t version = get_u32(bytes.data() + 4);
  if (version != kModelVersion) {
    throw Error(ErrorCode::kVersionMismatch,
                "model file version " + std::to_string(version) + ", expected " +
                    std::to_string(kModelVersion));
  }
  const std::size_t body = bytes.size() - 4;
  if (fnv1a(bytes.first(body)) != get_u32(bytes.data() + body)) {
    throw Error(ErrorCode::kFormat, "model file checksum mismatch (corrupted)");
  }
  if (bytes[8] > static_cast<std::uint8_t>(ReductionKind::kMeanOverTime)) {
    throw Error(ErrorCode::kFormat, "unknown input reduction tag");
  }
  MlpModel m;
  m.reduction.kind = static_cast<ReductionKind>(bytes[8]);
  m.reduction.k_rows = get_u32(bytes.data() + 9);
  m.reduction.k_cols = get_u32(bytes.data() + 13);
  m.input_dim = get_u32(bytes.data() + 17);
  m.hidden = get_u32(bytes.data() + 21);
  const std::size_t n_params =
      m.hidden * m.input_dim + m.hidden + 2 * m.hidden + 2;
  if (body != kHeader + 4 * n_params) {
    throw Error(ErrorCode::kFormat, "model file size does not match its dimensions");
  }
  m.params.w1.resize(m.hidden * m.input_dim);
  m.params.b1.resize(m.hidden);
  m.params.w2.resize(2 * m.hidden);
  m.params.b2.resize(2);
  std::size_t pos = kHeader;
  m.params.for_each([&](const char*, std::vector<double>& t) {
    for (double& v : t) {
      v = std::bit_cast<float>(get_u32(bytes.data() + pos));
      pos += 4;
    }
  });
  if (!m.all_finite()) throw Error(ErrorCode::kFormat, "model file has non-finite parameters");
  return m;
}

void save_model(const MlpModel& model, const std::filesystem::path& path) {
  write_file_bytes(path, encode_model(model));
}

MlpModel load_model(const std::filesystem::path& path) {
  const auto bytes = read_file_bytes(path);
  try {
    return decode_model(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

}  // namespace modspoof
