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

#include "cheat/predictors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "cheat/abstraction.hpp"

namespace cheat {
namespace {

double ratio(double num, double den) { return den > 0 ? num / den : 0.0; }

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

bool opponent_claim_pending(const InformationState& info) {
  return info.claim_pending() && info.last_action->actor != info.viewer;
}

PredictorDistribution non_claim_mass(const InformationState& info) {
  if (!info.last_action || info.last_action->kind == ActionKind::take_card) {
    return PredictorDistribution::point_mass(DeterminizedKind::take_card);
  }
  if (info.last_action->kind == ActionKind::call_cheat) {
    return PredictorDistribution::point_mass(DeterminizedKind::call_cheat);
  }
  // The viewer's own claim: its truth is known.
  const bool truthful = info.last_action->cards.is_subset_of(CardSet::rank_mask(info.last_action->claimed_rank));
  return PredictorDistribution::point_mass(truthful ? DeterminizedKind::true_claim : DeterminizedKind::false_claim);
}

std::pair<size_t, size_t> class_counts(std::span<const TrainingSample> samples) {
  size_t pos = 0;
  for (const TrainingSample& s : samples) pos += s.label == 1;
  return {pos, samples.size() - pos};
}

}  // namespace

const std::array<const char*, kNumFeatures> kFeatureNames = {
    "response_duration_seconds",
    "caught_over_cheat_ratio",
    "takecard_over_rounds",
    "rounds_played",
    "false_claim_ratio",
    "callcheat_frequency",
    "callcheat_success_rate",
    "claim_size_variance",
    "current_claim_count",
    "higher_claim_ratio",
    "repeat_claim_frequency",
    "rounds_since_last_callcheat",
    "hand_size_bucket",
    "table_size_bucket",
    "opponent_hand_size_bucket",
    "match_win_history",
    "average_claim_size",
    "deck_size_bucket",
    "caught_on_rank_recency",
    "duration_zscore",
    "match_index",
};

PredictorDistribution predict_uniform(const InformationState& info) {
  if (!opponent_claim_pending(info)) return non_claim_mass(info);
  return PredictorDistribution::claim(0.5, 0.5);
}

PredictorDistribution predict_oracle(const DeterminizedAction& truth, double accuracy) {
  if (!(accuracy >= 0.5 && accuracy <= 1.0)) throw Error("invalid_accuracy", "oracle accuracy must lie in [0.5, 1]");
  if (!truth.is_claim()) return PredictorDistribution::point_mass(truth.kind);
  if (truth.kind == DeterminizedKind::true_claim) return PredictorDistribution::claim(accuracy, 1.0 - accuracy);
  return PredictorDistribution::claim(1.0 - accuracy, accuracy);
}

FeatureVector extract_features(const InformationState& info, const OpponentHistory& history,
                               double response_duration_seconds) {
  const Player opp = other(info.viewer);
  const PlayerStats& st = info.knowledge.players[opp];
  const int rounds_played = info.round - 1;
  const bool pending = opponent_claim_pending(info);
  const Rank claimed = pending ? info.last_action->claimed_rank : 0;

  FeatureVector f{};
  f[0] = response_duration_seconds;
  f[1] = ratio(st.times_caught, st.false_claims_exposed);
  f[2] = ratio(st.take_cards, rounds_played);
  f[3] = rounds_played;
  f[4] = ratio(st.false_claims_exposed, st.claims_exposed);
  f[5] = ratio(st.call_cheats, st.moves);
  f[6] = ratio(st.call_cheat_successes, st.call_cheats);
  const double mean_size = ratio(st.claim_cards, st.claims);
  f[7] = st.claims > 0 ? std::max(0.0, ratio(st.claim_cards_sq, st.claims) - mean_size * mean_size) : 0.0;
  f[8] = pending ? info.last_action->claimed_count : 0;
  f[9] = ratio(st.higher_claims, st.claims);
  f[10] = ratio(st.repeated_claims, st.claims);
  f[11] = info.knowledge.last_call_round > 0 ? info.round - info.knowledge.last_call_round : rounds_played;
  f[12] = psi(info.own_hand.size());
  f[13] = psi(info.table_card_count);
  f[14] = psi(info.opponent_card_count);
  f[15] = ratio(history.matches_won, history.matches_played);
  f[16] = mean_size;
  f[17] = info.deck_count / 5;
  f[18] = (claimed != 0 && st.caught_on(claimed)) ? 1.0 / (1.0 + info.round - st.caught_round[claimed - 1]) : 0.0;
  const auto& d = history.claim_durations;
  if (d.size() >= 2) {
    const double mu = std::accumulate(d.begin(), d.end(), 0.0) / d.size();
    double var = 0.0;
    for (double x : d) var += (x - mu) * (x - mu);
    const double sd = std::sqrt(var / (d.size() - 1));
    f[19] = sd > 0 ? (response_duration_seconds - mu) / sd : 0.0;
  }
  f[20] = history.match_index;
  return f;
}

std::string config_hash(const TrainConfig& c) {
  std::ostringstream os;
  os.precision(17);
  os << c.learning_rate << '|' << c.iterations << '|' << c.l2 << '|' << c.imbalance_ratio << '|' << c.seed;
  uint64_t h = 1469598103934665603ULL;
  for (char ch : os.str()) h = (h ^ static_cast<unsigned char>(ch)) * 1099511628211ULL;
  std::ostringstream hex;
  hex << std::hex << h;
  return hex.str();
}

double LinearClaimModel::logit(std::span<const double> x) const {
  if (!trained) throw Error("untrained_model", "model has not been trained");
  if (x.size() != weights.size()) throw Error("dimension_mismatch", "feature count differs from the model");
  double z = bias;
  for (size_t i = 0; i < x.size(); ++i) z += weights[i] * (x[i] - mean[i]) / scale[i];
  return z;
}

double LinearClaimModel::probability(std::span<const double> x) const { return sigmoid(logit(x)); }

std::vector<TrainingSample> balance(std::span<const TrainingSample> samples, const TrainConfig& config) {
  const auto [pos, neg] = class_counts(samples);
  if (pos == 0 || neg == 0) throw Error("degenerate_labels", "training needs both labels");
  std::vector<TrainingSample> out(samples.begin(), samples.end());
  const size_t big = std::max(pos, neg);
  const size_t small = std::min(pos, neg);
  if (static_cast<double>(big) / static_cast<double>(small) <= config.imbalance_ratio) return out;
  const int minority = pos < neg ? 1 : 0;
  std::vector<size_t> idx;
  for (size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].label == minority) idx.push_back(i);
  }
  Rng rng(Rng::mix(config.seed));
  for (size_t k = small; k < big; ++k) out.push_back(samples[idx[rng.below(static_cast<uint32_t>(idx.size()))]]);
  return out;
}

LinearClaimModel train(std::span<const TrainingSample> samples, const TrainConfig& config) {
  if (samples.size() < 2) throw Error("degenerate_labels", "training needs at least two samples");
  const std::vector<TrainingSample> data = balance(samples, config);
  const size_t dim = data.front().features.size();
  for (const TrainingSample& s : data) {
    if (s.features.size() != dim) throw Error("dimension_mismatch", "samples differ in feature count");
  }
  const double n = static_cast<double>(data.size());

  LinearClaimModel m;
  m.mean.assign(dim, 0.0);
  m.scale.assign(dim, 1.0);
  for (const TrainingSample& s : data) {
    for (size_t j = 0; j < dim; ++j) m.mean[j] += s.features[j] / n;
  }
  std::vector<double> var(dim, 0.0);
  for (const TrainingSample& s : data) {
    for (size_t j = 0; j < dim; ++j) var[j] += (s.features[j] - m.mean[j]) * (s.features[j] - m.mean[j]) / n;
  }
  for (size_t j = 0; j < dim; ++j) m.scale[j] = var[j] > 1e-12 ? std::sqrt(var[j]) : 1.0;

  std::vector<double> z(data.size() * dim);
  for (size_t i = 0; i < data.size(); ++i) {
    for (size_t j = 0; j < dim; ++j) z[i * dim + j] = (data[i].features[j] - m.mean[j]) / m.scale[j];
  }
  m.weights.assign(dim, 0.0);
  std::vector<double> grad(dim);
  for (int it = 0; it < config.iterations; ++it) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_b = 0.0;
    for (size_t i = 0; i < data.size(); ++i) {
      const double* row = &z[i * dim];
      double t = m.bias;
      for (size_t j = 0; j < dim; ++j) t += m.weights[j] * row[j];
      const double err = sigmoid(t) - data[i].label;
      for (size_t j = 0; j < dim; ++j) grad[j] += err * row[j];
      grad_b += err;
    }
    for (size_t j = 0; j < dim; ++j) m.weights[j] -= config.learning_rate * (grad[j] / n + config.l2 * m.weights[j]);
    m.bias -= config.learning_rate * grad_b / n;
  }
  if (dim == kNumFeatures) m.feature_names.assign(kFeatureNames.begin(), kFeatureNames.end());
  m.training_config_hash = config_hash(config);
  m.trained = true;
  return m;
}

PredictorDistribution predict_learned(const LinearClaimModel& model, std::span<const double> features,
                                      const InformationState& info) {
  if (!model.trained) throw Error("untrained_model", "model has not been trained");
  if (!opponent_claim_pending(info)) return non_claim_mass(info);
  const double p_false = model.probability(features);
  return PredictorDistribution::claim(1.0 - p_false, p_false);
}

Metrics evaluate_scores(std::span<const double> scores, std::span<const int> labels) {
  if (scores.empty() || scores.size() != labels.size()) throw Error("empty_samples", "nothing to evaluate");
  std::vector<size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return scores[a] > scores[b]; });
  double pos = 0;
  double neg = 0;
  for (int l : labels) (l == 1 ? pos : neg) += 1;

  Metrics m;
  m.roc.push_back({0.0, 0.0});
  double tp = 0;
  double fp = 0;
  double area = 0.0;
  for (size_t i = 0; i < order.size();) {
    size_t j = i;
    double dtp = 0;
    double dfp = 0;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      (labels[order[j]] == 1 ? dtp : dfp) += 1;
      ++j;
    }
    const RocPoint prev = m.roc.back();
    tp += dtp;
    fp += dfp;
    const RocPoint cur{neg > 0 ? fp / neg : 0.0, pos > 0 ? tp / pos : 0.0};
    area += (cur.fpr - prev.fpr) * (cur.tpr + prev.tpr) / 2.0;
    m.roc.push_back(cur);
    i = j;
  }
  m.auc = (pos > 0 && neg > 0) ? area : 0.5;
  double tp5 = 0;
  double tn5 = 0;
  for (size_t i = 0; i < scores.size(); ++i) {
    const bool predicted_false = scores[i] >= 0.5;
    if (labels[i] == 1 && predicted_false) tp5 += 1;
    if (labels[i] == 0 && !predicted_false) tn5 += 1;
  }
  m.tpr = pos > 0 ? tp5 / pos : 0.0;
  m.tnr = neg > 0 ? tn5 / neg : 0.0;
  m.g_mean = std::sqrt(m.tpr * m.tnr);
  return m;
}

std::vector<size_t> loso_training_indices(std::span<const TrainingSample> samples, size_t i) {
  const TrainingSample& e = samples[i];
  std::vector<size_t> out;
  for (size_t j = 0; j < samples.size(); ++j) {
    if (j == i) continue;
    const TrainingSample& s = samples[j];
    const bool related = s.player == e.player || s.player == e.opponent || s.opponent == e.player ||
                         s.opponent == e.opponent;
    if (!related) {
      out.push_back(j);
      continue;
    }
    const bool same_pair = std::minmax(s.player, s.opponent) == std::minmax(e.player, e.opponent);
    const bool earlier = s.match < e.match || (s.match == e.match && s.round < e.round);
    if (same_pair && earlier) out.push_back(j);
  }
  return out;
}

EvaluationResult evaluate(std::span<const TrainingSample> samples, const TrainConfig& config, Protocol protocol,
                          double test_fraction) {
  if (samples.empty()) throw Error("empty_samples", "nothing to evaluate");
  EvaluationResult r;
  auto score_with = [&](const std::vector<TrainingSample>& train_set, const TrainingSample& s) {
    const auto [pos, neg] = class_counts(train_set);
    if (pos == 0 || neg == 0) return train_set.empty() ? 0.5 : static_cast<double>(pos) / train_set.size();
    return train(train_set, config).probability(s.features);
  };
  if (protocol == Protocol::leave_one_sample_out) {
    for (size_t i = 0; i < samples.size(); ++i) {
      std::vector<TrainingSample> train_set;
      for (size_t j : loso_training_indices(samples, i)) train_set.push_back(samples[j]);
      r.scores.push_back(score_with(train_set, samples[i]));
      r.labels.push_back(samples[i].label);
      r.indices.push_back(i);
    }
  } else {
    if (!(test_fraction > 0 && test_fraction < 1)) throw Error("invalid_split", "test fraction must lie in (0, 1)");
    std::vector<size_t> order(samples.size());
    std::iota(order.begin(), order.end(), 0);
    Rng rng(Rng::mix(config.seed ^ 0x5eedULL));
    rng.shuffle(order.begin(), order.end());
    const size_t n_test = std::max<size_t>(1, static_cast<size_t>(test_fraction * samples.size()));
    std::vector<TrainingSample> train_set;
    for (size_t k = n_test; k < order.size(); ++k) train_set.push_back(samples[order[k]]);
    const LinearClaimModel m = train(train_set, config);
    for (size_t k = 0; k < n_test; ++k) {
      r.scores.push_back(m.probability(samples[order[k]].features));
      r.labels.push_back(samples[order[k]].label);
      r.indices.push_back(order[k]);
    }
  }
  r.metrics = evaluate_scores(r.scores, r.labels);
  return r;
}

void save_model(const LinearClaimModel& m, const std::string& path) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["weights"] = m.weights;
  j["bias"] = m.bias;
  j["mean"] = m.mean;
  j["scale"] = m.scale;
  j["feature_names"] = m.feature_names;
  j["training_config_hash"] = m.training_config_hash;
  j["trained"] = m.trained;
  std::ofstream out(path);
  if (!out) throw Error("io", "cannot write " + path);
  out << j.dump(2) << '\n';
}

LinearClaimModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("io", "cannot read " + path);
  try {
    const nlohmann::json j = nlohmann::json::parse(in);
    LinearClaimModel m;
    m.weights = j.at("weights").get<std::vector<double>>();
    m.bias = j.at("bias").get<double>();
    m.mean = j.at("mean").get<std::vector<double>>();
    m.scale = j.at("scale").get<std::vector<double>>();
    m.feature_names = j.value("feature_names", std::vector<std::string>{});
    m.training_config_hash = j.value("training_config_hash", std::string{});
    m.trained = j.value("trained", true);
    if (m.mean.size() != m.weights.size() || m.scale.size() != m.weights.size()) {
      throw Error("parse", "inconsistent model dimensions in " + path);
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error("parse", std::string("bad model file: ") + e.what());
  }
}

}  // namespace cheat
