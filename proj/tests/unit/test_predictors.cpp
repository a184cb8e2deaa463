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

#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "cheat/predictors.hpp"
#include "fixtures.hpp"
#include "scenarios.hpp"

using namespace cheat;
using namespace cheat::test;

namespace {

InformationState pending_claim_info() {
  Position p;
  p.hand0 = cards("2c 3c");
  p.hand1 = cards("Jd Qd");
  p.anchor = 8;
  p.table = {group("5d", 8, 1)};
  p.last = played(1, ConcreteAction::claim(cards("5d"), 8, Direction::higher));
  return information_state(p.tracked(), 0);
}

InformationState after(ConcreteAction a, Player actor) {
  Position p;
  p.hand0 = cards("2c 3c");
  p.hand1 = cards("Jd Qd");
  p.last = played(actor, a);
  if (a.is_claim()) p.table = {TableGroup{a.cards, a.claimed_rank, a.cards.size(), actor, a.direction}};
  return information_state(p.tracked(), 0);
}

std::vector<double> scores_of(const LinearClaimModel& m, const std::vector<TrainingSample>& xs) {
  std::vector<double> out;
  for (const TrainingSample& s : xs) out.push_back(m.probability(s.features));
  return out;
}

std::vector<int> labels_of(const std::vector<TrainingSample>& xs) {
  std::vector<int> out;
  for (const TrainingSample& s : xs) out.push_back(s.label);
  return out;
}

}  // namespace

TEST_CASE("uniform predictor") {
  const PredictorDistribution u = predict_uniform(pending_claim_info());
  CHECK(u == PredictorDistribution::claim(0.5, 0.5));
  CHECK(u.sum() == 1.0);
  CHECK(predict_uniform(after(ConcreteAction::take_card(), 1)) ==
        PredictorDistribution::point_mass(DeterminizedKind::take_card));
  CHECK(predict_uniform(after(ConcreteAction::call_cheat(), 1)) ==
        PredictorDistribution::point_mass(DeterminizedKind::call_cheat));
  // The viewer's own claim is not a guess.
  CHECK(predict_uniform(after(ConcreteAction::claim(cards("2c"), 8, Direction::higher), 0)) ==
        PredictorDistribution::point_mass(DeterminizedKind::false_claim));
}

TEST_CASE("oracle predictor") {
  const DeterminizedAction t{DeterminizedKind::true_claim, 8, 1, Direction::higher};
  const DeterminizedAction f{DeterminizedKind::false_claim, 8, 1, Direction::higher};
  CHECK(predict_oracle(f, 1.0) == PredictorDistribution::claim(0.0, 1.0));
  const PredictorDistribution p85 = predict_oracle(t, 0.85);
  CHECK(p85[DeterminizedKind::true_claim] == doctest::Approx(0.85).epsilon(1e-12));
  CHECK(p85[DeterminizedKind::false_claim] == doctest::Approx(0.15).epsilon(1e-12));
  CHECK(predict_oracle(t, 0.5) == predict_uniform(pending_claim_info()));
  CHECK(predict_oracle(f, 0.5) == predict_uniform(pending_claim_info()));
  CHECK(predict_oracle(DeterminizedAction{}, 0.7) == PredictorDistribution::point_mass(DeterminizedKind::take_card));
  CHECK_THROWS_AS(predict_oracle(t, 0.4), Error);
  CHECK_THROWS_AS(predict_oracle(t, 1.01), Error);
}

TEST_CASE("feature extraction examples") {
  // Fresh first move.
  const TrackedState s = start_game(3);
  const FeatureVector fresh = extract_features(information_state(s, 1), OpponentHistory{}, 0.0);
  for (int i = 0; i < kNumFeatures; ++i) {
    if (i == 12 || i == 14 || i == 17) continue;  // bucketed sizes
    CAPTURE(kFeatureNames[i]);
    CHECK(fresh[i] == 0.0);
  }
  CHECK(fresh[3] == 0.0);

  InformationState info = pending_claim_info();
  info.round = 13;
  PlayerStats& opp = info.knowledge.players[1];
  opp.false_claims_exposed = 4;
  opp.times_caught = 2;
  opp.take_cards = 3;
  const FeatureVector f = extract_features(info, OpponentHistory{}, 1.5);
  CHECK(std::string(kFeatureNames[1]) == "caught_over_cheat_ratio");
  CHECK(f[1] == 0.5);
  CHECK(std::string(kFeatureNames[2]) == "takecard_over_rounds");
  CHECK(f[2] == 0.25);
  CHECK(f[3] == 12.0);
  CHECK(f[0] == 1.5);
  CHECK(f[8] == 1.0);
  for (double x : f) CHECK(std::isfinite(x));
}

TEST_CASE("features never depend on hidden cards") {
  Rng rng(4);
  for (uint64_t g = 0; g < 30; ++g) {
    TrackedState s = start_game(g);
    while (!is_terminal(s.game)) {
      const InformationState info = information_state(s, s.game.to_move);
      const FeatureVector f = extract_features(info, OpponentHistory{}, 0.0);
      for (const DeterminizedAction& a : determinizations(info)) {
        const TrackedState t = consistent_sample(info, a, rng);
        CHECK(extract_features(information_state(t, info.viewer), OpponentHistory{}, 0.0) == f);
      }
      advance(s, sample_legal_action(s.game, rng));
    }
  }
}

TEST_CASE("balancing") {
  auto data = synthetic(200, 0.0, 1);
  std::vector<TrainingSample> even;
  int pos = 0, neg = 0;
  for (const auto& s : data) {
    if (s.label == 1 && pos < 50) {
      even.push_back(s);
      ++pos;
    } else if (s.label == 0 && neg < 50) {
      even.push_back(s);
      ++neg;
    }
  }
  CHECK(balance(even, TrainConfig{}).size() == even.size());
  std::vector<TrainingSample> skew(even.begin(), even.end());
  for (int i = 0; i < 60; ++i) {
    TrainingSample s = even[0];
    s.label = 0;
    skew.push_back(s);
  }
  const auto b = balance(skew, TrainConfig{});
  CHECK(std::count_if(b.begin(), b.end(), [](const auto& s) { return s.label == 1; }) ==
        std::count_if(b.begin(), b.end(), [](const auto& s) { return s.label == 0; }));
  std::vector<TrainingSample> one(even.begin(), even.begin() + 1);
  for (auto& s : one) s.label = 1;
  try {
    train(one, TrainConfig{});
    FAIL("expected degenerate_labels");
  } catch (const Error& e) {
    CHECK(e.code() == "degenerate_labels");
  }
  std::vector<TrainingSample> same = even;
  for (auto& s : same) s.label = 0;
  CHECK_THROWS_AS(train(same, TrainConfig{}), Error);
}

TEST_CASE("separable data is learned") {
  const auto data = synthetic(400, 0.0, 2);
  TrainConfig cfg;
  cfg.iterations = 2000;
  const LinearClaimModel m = train(data, cfg);
  int correct = 0;
  for (const auto& s : data) correct += (m.probability(s.features) >= 0.5) == (s.label == 1);
  CHECK(correct >= 0.99 * data.size());
  // Deterministic given the config.
  const LinearClaimModel m2 = train(data, cfg);
  CHECK(m2.weights == m.weights);
  CHECK(m2.bias == m.bias);
}

TEST_CASE("shuffled labels give chance-level held-out AUC") {
  auto data = synthetic(4000, 0.0, 3);
  Rng rng(9);
  std::vector<int> labels = labels_of(data);
  rng.shuffle(labels.begin(), labels.end());
  for (size_t i = 0; i < data.size(); ++i) data[i].label = labels[i];
  const EvaluationResult r = evaluate(data, TrainConfig{}, Protocol::train_test_split);
  CHECK(r.scores.size() == 1200);
  CHECK(std::abs(r.metrics.auc - 0.5) <= 0.05);
}

TEST_CASE("noisy synthetic signal") {
  std::vector<int> clean;
  const auto data = synthetic(3000, 0.10, 5, &clean);
  const auto train_part = std::vector<TrainingSample>(data.begin(), data.begin() + 2000);
  const auto test_part = std::vector<TrainingSample>(data.begin() + 2000, data.end());
  const LinearClaimModel m = train(train_part, TrainConfig{});
  const auto scores = scores_of(m, test_part);
  // Ranking against the noise-free rule.
  const std::vector<int> clean_test(clean.begin() + 2000, clean.end());
  CHECK(evaluate_scores(scores, clean_test).auc >= 0.95);
  // Against the flipped labels the attainable AUC is about 0.9.
  const double noisy = evaluate_scores(scores, labels_of(test_part)).auc;
  CHECK(noisy >= 0.85);
  CHECK(noisy <= 0.95);
}

TEST_CASE("metric examples") {
  const std::vector<int> labels{1, 0, 1, 1, 0, 0, 1, 0};
  std::vector<double> perfect(labels.begin(), labels.end());
  const Metrics p = evaluate_scores(perfect, labels);
  CHECK(p.auc == 1.0);
  CHECK(p.g_mean == 1.0);
  CHECK(p.tpr == 1.0);
  CHECK(p.tnr == 1.0);
  const std::vector<double> constant(labels.size(), 0.3);
  CHECK(evaluate_scores(constant, labels).auc == 0.5);
  const std::vector<double> inverted{0.1, 0.9, 0.2, 0.3, 0.8, 0.7, 0.4, 0.6};
  CHECK(evaluate_scores(inverted, labels).auc == 0.0);
  CHECK(evaluate_scores(inverted, labels).g_mean == 0.0);
  CHECK(p.roc.front().fpr == 0.0);
  CHECK(p.roc.back().fpr == 1.0);
  CHECK(p.roc.back().tpr == 1.0);
  CHECK_THROWS_AS(evaluate_scores(std::vector<double>{}, std::vector<int>{}), Error);
  CHECK_THROWS_AS(evaluate(std::vector<TrainingSample>{}, TrainConfig{}, Protocol::leave_one_sample_out), Error);
}

TEST_CASE("AUC is invariant under strictly monotone score transforms") {
  Rng rng(13);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> s;
    std::vector<int> y;
    for (int i = 0; i < 50; ++i) {
      s.push_back(std::round(rng.uniform() * 20) / 20);
      y.push_back(rng.below(2));
    }
    std::vector<double> e, c;
    for (double x : s) {
      e.push_back(std::exp(3 * x) - 7);
      c.push_back(x * x * x);
    }
    const double auc = evaluate_scores(s, y).auc;
    CHECK(evaluate_scores(e, y).auc == doctest::Approx(auc).epsilon(1e-12));
    CHECK(evaluate_scores(c, y).auc == doctest::Approx(auc).epsilon(1e-12));
  }
}

TEST_CASE("leave-one-sample-out excludes the pair's present and future") {
  const auto data = synthetic(600, 0.1, 7);
  for (size_t i = 0; i < data.size(); i += 7) {
    const TrainingSample& e = data[i];
    for (size_t j : loso_training_indices(data, i)) {
      const TrainingSample& s = data[j];
      CHECK(j != i);
      const bool related = s.player == e.player || s.player == e.opponent || s.opponent == e.player ||
                           s.opponent == e.opponent;
      if (!related) continue;
      CHECK(std::minmax(s.player, s.opponent) == std::minmax(e.player, e.opponent));
      CHECK((s.match < e.match || (s.match == e.match && s.round < e.round)));
    }
  }
}

TEST_CASE("a future-only perfect feature does not leak into LOSO scores") {
  // Pair (0,1) plays match 0 (evaluated) then matches 1..3. Feature 2 equals
  // the label on the evaluated samples and, in the leaky variant, also on the
  // pair's later matches; everywhere else it is noise.
  auto build = [](bool leak) {
    Rng rng(21);
    std::vector<TrainingSample> out;
    auto add = [&](int player, int opponent, int match, int round, bool perfect) {
      TrainingSample s;
      const double a = rng.uniform() * 2 - 1;
      s.label = rng.uniform() < (a > 0 ? 0.7 : 0.3) ? 1 : 0;
      s.features = {a, rng.uniform(), perfect ? static_cast<double>(s.label) : rng.uniform()};
      s.player = player;
      s.opponent = opponent;
      s.match = match;
      s.round = round;
      out.push_back(s);
    };
    for (int r = 0; r < 20; ++r) add(r % 2, 1 - r % 2, 0, r, true);
    for (int m = 1; m <= 3; ++m) {
      for (int r = 0; r < 40; ++r) add(r % 2, 1 - r % 2, m, r, leak);
    }
    for (int p = 2; p < 8; p += 2) {
      for (int r = 0; r < 80; ++r) add(p + r % 2, p + 1 - r % 2, 0, r, false);
    }
    return out;
  };
  auto auc_first_match = [](const std::vector<TrainingSample>& data) {
    std::vector<double> s;
    std::vector<int> y;
    for (size_t i = 0; i < 20; ++i) {
      std::vector<TrainingSample> train_set;
      for (size_t j : loso_training_indices(data, i)) train_set.push_back(data[j]);
      s.push_back(train(train_set, TrainConfig{}).probability(data[i].features));
      y.push_back(data[i].label);
    }
    return evaluate_scores(s, y).auc;
  };
  const auto base = build(false);
  const auto leaky = build(true);
  const double auc_base = auc_first_match(base);
  const double auc_leaky = auc_first_match(leaky);
  CHECK(auc_leaky <= auc_base + 0.05);
  // The injected feature is exploitable when the future is not excluded.
  const LinearClaimModel cheat_model = train(leaky, TrainConfig{});
  std::vector<double> s;
  std::vector<int> y;
  for (size_t i = 0; i < 20; ++i) {
    s.push_back(cheat_model.probability(leaky[i].features));
    y.push_back(leaky[i].label);
  }
  CHECK(evaluate_scores(s, y).auc > auc_base + 0.1);
}

TEST_CASE("learned predictor") {
  LinearClaimModel m;
  CHECK_THROWS_AS(predict_learned(m, std::vector<double>(kNumFeatures, 0.0), pending_claim_info()), Error);
  m.weights.assign(kNumFeatures, 0.0);
  m.mean.assign(kNumFeatures, 0.0);
  m.scale.assign(kNumFeatures, 1.0);
  m.trained = true;
  const std::vector<double> x(kNumFeatures, 1.0);
  CHECK(predict_learned(m, x, pending_claim_info()) == PredictorDistribution::claim(0.5, 0.5));
  m.bias = 60.0;
  CHECK(predict_learned(m, x, pending_claim_info())[DeterminizedKind::false_claim] > 1.0 - 1e-12);
  CHECK(predict_learned(m, x, after(ConcreteAction::take_card(), 1)) ==
        PredictorDistribution::point_mass(DeterminizedKind::take_card));
  CHECK_THROWS_AS(m.probability(std::vector<double>(3, 0.0)), Error);
  Rng rng(8);
  for (int t = 0; t < 10000; ++t) {
    std::vector<double> f(kNumFeatures);
    for (int i = 0; i < kNumFeatures; ++i) {
      m.weights[i] = (rng.uniform() * 2 - 1) * 5;
      f[i] = (rng.uniform() * 2 - 1) * 10;
    }
    m.bias = rng.uniform() * 2 - 1;
    const PredictorDistribution d = predict_learned(m, f, pending_claim_info());
    REQUIRE(d.sum() == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(d[DeterminizedKind::true_claim] >= 0.0);
    REQUIRE(d[DeterminizedKind::false_claim] >= 0.0);
  }
}

TEST_CASE("model persistence") {
  const auto data = synthetic(300, 0.05, 11);
  const LinearClaimModel m = train(data, TrainConfig{});
  const auto path = std::filesystem::temp_directory_path() / "cheat_model_test.json";
  save_model(m, path.string());
  const LinearClaimModel back = load_model(path.string());
  std::filesystem::remove(path);
  CHECK(back.weights == m.weights);
  CHECK(back.bias == m.bias);
  CHECK(back.mean == m.mean);
  CHECK(back.scale == m.scale);
  CHECK(back.training_config_hash == config_hash(TrainConfig{}));
  CHECK(back.trained);
  CHECK(config_hash(TrainConfig{}) != config_hash(TrainConfig{.seed = 2}));
  CHECK_THROWS_AS(load_model("/nonexistent/model.json"), Error);
}
