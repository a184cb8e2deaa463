// Copyright 2026 The Cheat SDMCTS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "cheat/knowledge.hpp"
#include "cheat/sdmcts.hpp"

namespace cheat {

// 0.5/0.5 on claims, point mass on the observed action otherwise.
PredictorDistribution predict_uniform(const InformationState& info);
// Calibrated oracle: the true class gets `accuracy`, the other the rest.
PredictorDistribution predict_oracle(const DeterminizedAction& truth, double accuracy);

inline constexpr int kNumFeatures = 21;
using FeatureVector = std::array<double, kNumFeatures>;
extern const std::array<const char*, kNumFeatures> kFeatureNames;

// What the viewer remembers about the opponent across the pairing's matches.
struct OpponentHistory {
  int matches_played = 0;
  int matches_won = 0;
  int match_index = 0;
  std::vector<double> claim_durations;
};

// Features of the opponent's pending claim, from the viewer's side only.
FeatureVector extract_features(const InformationState& info, const OpponentHistory& history,
                               double response_duration_seconds);

struct TrainingSample {
  std::vector<double> features;
  int label = 0;  // 1 = false claim
  int player = 0;
  int opponent = 1;
  int match = 0;
  int round = 0;
};

struct TrainConfig {
  double learning_rate = 0.5;
  int iterations = 400;
  double l2 = 1e-4;
  double imbalance_ratio = 1.2;
  uint64_t seed = 1;
  bool operator==(const TrainConfig&) const = default;
};

std::string config_hash(const TrainConfig& config);

class LinearClaimModel {
 public:
  std::vector<double> weights;
  double bias = 0.0;
  std::vector<double> mean;
  std::vector<double> scale;
  std::vector<std::string> feature_names;
  std::string training_config_hash;
  bool trained = false;

  // P(false claim). Throws Error("untrained_model").
  double probability(std::span<const double> features) const;
  double logit(std::span<const double> features) const;
};

// Oversamples the minority class (with replacement) to parity when the
// class ratio exceeds config.imbalance_ratio. Throws Error("degenerate_labels").
std::vector<TrainingSample> balance(std::span<const TrainingSample> samples, const TrainConfig& config);
LinearClaimModel train(std::span<const TrainingSample> samples, const TrainConfig& config);

PredictorDistribution predict_learned(const LinearClaimModel& model, std::span<const double> features,
                                      const InformationState& info);

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

struct Metrics {
  double auc = 0.5;
  double tpr = 0.0;
  double tnr = 0.0;
  double g_mean = 0.0;
  std::vector<RocPoint> roc;
};

// Positive class = false claim (label 1); threshold 0.5 for TPR/TNR.
Metrics evaluate_scores(std::span<const double> scores, std::span<const int> labels);

enum class Protocol { leave_one_sample_out, train_test_split };

struct EvaluationResult {
  Metrics metrics;
  std::vector<double> scores;  // aligned with the evaluated samples
  std::vector<int> labels;
  std::vector<size_t> indices;  // evaluated sample positions
};

// Indices allowed in the training set when sample `i` is evaluated: samples
// not involving either player, plus the pair's own samples strictly before
// (match, round) of sample i.
std::vector<size_t> loso_training_indices(std::span<const TrainingSample> samples, size_t i);

EvaluationResult evaluate(std::span<const TrainingSample> samples, const TrainConfig& config, Protocol protocol,
                          double test_fraction = 0.3);

void save_model(const LinearClaimModel& model, const std::string& path);
LinearClaimModel load_model(const std::string& path);

}  // namespace cheat
