// Copyright 2026 The HINT Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hint/tuning.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "hint/error.hpp"
#include "hint/importance.hpp"
#include "oracles.hpp"

namespace hint {
namespace {

using testing::ranking_loss_oracle;
using testing::tiny_example;

HyperParams small_hyper() {
  HyperParams hp;
  hp.vocab_size = 6;
  hp.embed_dim = 4;
  hp.hidden_dim = 6;
  hp.feature_dim = 5;
  hp.num_proposals = 4;
  hp.num_answers = 3;
  return hp;
}

Dataset small_dataset(const HyperParams& hp, std::size_t n) {
  Dataset data;
  for (std::size_t i = 0; i < n; ++i) data.push_back(tiny_example(hp, i));
  return data;
}

std::vector<ad::Var> scalars(ad::Graph& g, const std::vector<double>& values) {
  std::vector<ad::Var> out;
  for (double v : values) out.push_back(g.leaf(Tensor::scalar(v), true));
  return out;
}

TEST(MisrankedPairsTest, AgreementGivesEmptySet) {
  const std::vector<double> alpha{0.1, 0.5, 0.9};
  const std::vector<double> s{0.2, 0.4, 0.8};
  EXPECT_TRUE(misranked_pairs(alpha, s, 1e-6).empty());
}

TEST(MisrankedPairsTest, SingleInversion) {
  const std::vector<double> alpha{0.5, 0.2};
  const std::vector<double> s{0.1, 0.9};
  EXPECT_EQ(misranked_pairs(alpha, s, 1e-6), (MisrankedPairs{{0, 1}}));
}

TEST(MisrankedPairsTest, HumanTiesContributeNothingNetworkTiesDo) {
  const std::vector<double> alpha{0.3, 0.3, 0.1};
  EXPECT_TRUE(misranked_pairs(alpha, std::vector<double>{0.5, 0.5 + 1e-7, 0.5}, 1e-6).empty());
  EXPECT_EQ(misranked_pairs(alpha, std::vector<double>{0.2, 0.6, 0.0}, 1e-6),
            (MisrankedPairs{{0, 1}}));
}

TEST(MisrankedPairsTest, LengthMismatchRejected) {
  const std::vector<double> alpha{0.1, 0.2};
  const std::vector<double> s{0.1};
  EXPECT_THROW(misranked_pairs(alpha, s, 0.0), Error);
}

TEST(MisrankedPairsTest, MatchesExhaustiveOracle) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> coarse(0, 3);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> alpha(6), s(6);
    for (int k = 0; k < 6; ++k) {
      // Coarse values force ties on both sides.
      alpha[k] = trial % 2 ? coarse(rng) * 0.25 : u(rng);
      s[k] = trial % 3 ? coarse(rng) / 3.0 : (u(rng) + 1) / 2;
    }
    std::set<std::pair<std::size_t, std::size_t>> expected;
    for (std::size_t i = 0; i < 6; ++i) {
      for (std::size_t j = 0; j < 6; ++j) {
        if (s[j] - s[i] > 1e-6 && alpha[i] >= alpha[j]) expected.insert({i, j});
      }
    }
    std::set<std::pair<std::size_t, std::size_t>> got;
    for (const RankPair& p : misranked_pairs(alpha, s, 1e-6)) {
      EXPECT_NE(p.lower, p.higher);
      got.insert({p.lower, p.higher});
    }
    EXPECT_EQ(got, expected);
  }
}

TEST(RankingLossTest, EmptySetIsZero) {
  ad::Graph g;
  const std::vector<ad::Var> alpha = scalars(g, {0.1, 0.2});
  EXPECT_EQ(ranking_loss(g, alpha, {}).item(), 0.0);
}

TEST(RankingLossTest, SinglePairMargin) {
  ad::Graph g;
  const std::vector<ad::Var> alpha = scalars(g, {0.5, 0.2});
  EXPECT_NEAR(ranking_loss(g, alpha, {{0, 1}}).item(), 0.3, 1e-15);
}

TEST(RankingLossTest, MatchesOracleAndIsZeroIffNoPairs) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(8), s(8);
    for (int k = 0; k < 8; ++k) {
      a[k] = u(rng);
      s[k] = u(rng);
    }
    if (trial % 10 == 0) s = a;  // perfectly aligned
    ad::Graph g;
    const std::vector<ad::Var> alpha = scalars(g, a);
    const MisrankedPairs pairs = misranked_pairs(a, s, 1e-6);
    const double loss = ranking_loss(g, alpha, pairs).item();
    EXPECT_NEAR(loss, ranking_loss_oracle(a, s, 1e-6), 1e-12);
    EXPECT_GE(loss, 0.0);
    EXPECT_EQ(loss == 0.0, pairs.empty());
  }
}

TEST(RankingLossTest, GradientCountsPairAppearances) {
  const std::vector<double> a{0.4, 0.4, 0.1, 0.9};
  const std::vector<double> s{0.1, 0.5, 0.9, 0.2};
  ad::Graph g;
  const std::vector<ad::Var> alpha = scalars(g, a);
  const MisrankedPairs pairs = misranked_pairs(a, s, 1e-6);
  std::vector<double> expected(4, 0.0);
  for (const RankPair& p : pairs) {
    expected[p.lower] += 1.0;
    expected[p.higher] -= 1.0;
  }
  const std::vector<ad::Var> d = g.grad(ranking_loss(g, alpha, pairs), alpha, false);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(d[k].item(), expected[k]) << k;
}

TEST(HintLossTest, UnsupervisedExampleIsScaledTaskLoss) {
  const HyperParams hp = small_hyper();
  const ModelParams p = init_params(hp, 1);
  const Example ex = tiny_example(hp, 3);
  TrainConfig cfg;
  ad::Graph g;
  const BoundParams bound = bind_params(g, p, true);
  const LossTerms terms = hint_loss(g, bound, ex, nullptr, cfg);
  EXPECT_FALSE(terms.supervised);
  EXPECT_EQ(terms.total.item(), cfg.lambda * terms.task.item());
  EXPECT_EQ(base_loss(g, bound, ex, cfg).total.item(), terms.total.item());
}

TEST(HintLossTest, AlignedImportanceWithZeroLambdaIsZero) {
  const HyperParams hp = small_hyper();
  const ModelParams p = init_params(hp, 4);
  Example ex = tiny_example(hp, 0);
  TrainConfig cfg;
  cfg.lambda = 0.0;
  // Human scores ordered exactly like the network importance.
  ad::Graph g0;
  const ModelOutput out = forward(g0, p, ex);
  const NetworkImportance alpha = network_importance(out, ex.answer, false);
  HumanImportance human;
  for (double a : alpha.values) human.proposals.push_back({0.0, 0.0, a});
  ad::Graph g;
  const BoundParams bound = bind_params(g, p, true);
  const LossTerms terms = hint_loss(g, bound, ex, &human, cfg);
  EXPECT_TRUE(terms.supervised);
  EXPECT_EQ(terms.num_pairs, 0u);
  EXPECT_EQ(terms.total.item(), 0.0);
}

TEST(HintLossTest, FullObjectiveGradientMatchesFiniteDifferences) {
  std::size_t with_pairs = 0;
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    for (TrainMode mode : {TrainMode::kHint, TrainMode::kAttnAlign}) {
      for (double lambda : {10.0, 0.0}) {
        const auto check = testing::check_full_objective(mode, seed, lambda);
        EXPECT_LT(check.max_rel_error, 1e-4) << "seed " << seed;
        with_pairs += check.num_pairs > 0;
      }
    }
  }
  EXPECT_GT(with_pairs, 12u);
}

TEST(HintLossTest, ZeroLambdaInvariantToRelabelingNonTargetAnswers) {
  const HyperParams hp = small_hyper();
  const ModelParams p = init_params(hp, 12);
  Example ex = tiny_example(hp, 6);
  ex.answer = 1;
  ModelParams swapped = p;
  // Swap the output columns of answers 0 and 2.
  std::vector<double> wo(p[ParamId::kWo].data().begin(), p[ParamId::kWo].data().end());
  for (std::size_t r = 0; r < hp.hidden_dim; ++r) std::swap(wo[r * 3 + 0], wo[r * 3 + 2]);
  swapped.tensors[static_cast<std::size_t>(ParamId::kWo)] = Tensor(p[ParamId::kWo].shape(), wo);
  TrainConfig cfg;
  cfg.lambda = 0.0;
  const HumanImportance human = human_importance(ex);
  auto loss = [&](const ModelParams& params) {
    ad::Graph g;
    return hint_loss(g, bind_params(g, params, true), ex, &human, cfg).total.item();
  };
  EXPECT_EQ(loss(p), loss(swapped));
}

TEST(AttnAlignTest, UniformAttentionTiesAreMisrankedWithGradient) {
  const HyperParams hp = small_hyper();
  ModelParams p = init_params(hp, 2);
  p.tensors[static_cast<std::size_t>(ParamId::kWa)] = Tensor::zeros({hp.hidden_dim});
  Example ex = tiny_example(hp, 1);
  HumanImportance human;
  for (double s : {0.1, 0.4, 0.7, 0.9}) human.proposals.push_back({0.0, 0.0, s});
  TrainConfig cfg;
  cfg.lambda = 0.0;
  ad::Graph g;
  const BoundParams bound = bind_params(g, p, true);
  const LossTerms terms = attn_align_loss(g, bound, ex, &human, cfg);
  EXPECT_EQ(terms.num_pairs, 6u);
  EXPECT_EQ(terms.total.item(), 0.0);
  const std::vector<ad::Var> wrt{bound[ParamId::kWa]};
  double norm = 0.0;
  for (double v : g.grad(terms.total, wrt, false)[0].value().data()) norm += v * v;
  EXPECT_GT(norm, 0.0);
}

TEST(AttnAlignTest, RankingTermEqualsOracleOnAttentionWeights) {
  const HyperParams hp = small_hyper();
  const ModelParams p = init_params(hp, 14);
  for (std::uint64_t s = 0; s < 8; ++s) {
    Example ex = tiny_example(hp, s);
    const HumanImportance human = human_importance(ex);
    TrainConfig cfg;
    cfg.lambda = 0.0;
    ad::Graph g;
    const BoundParams bound = bind_params(g, p, false);
    const LossTerms terms = attn_align_loss(g, bound, ex, &human, cfg);
    ad::Graph h;
    const ModelOutput out = forward(h, p, ex);
    const std::vector<double> a(out.attention.value().data().begin(),
                                out.attention.value().data().end());
    EXPECT_NEAR(terms.total.item(), ranking_loss_oracle(a, human.scores(), cfg.tie_eps), 1e-12);
  }
}

TEST(SelectSupervisedTest, CountsAndDeterminism) {
  const HyperParams hp = small_hyper();
  Dataset data = small_dataset(hp, 200);
  for (std::size_t i = 0; i < data.size(); i += 4) data[i].attention.reset();
  bool clamped = true;
  const auto picked = select_supervised(data, 0.25, 3, &clamped);
  EXPECT_FALSE(clamped);
  EXPECT_EQ(picked.size(), 50u);
  EXPECT_EQ(picked, select_supervised(data, 0.25, 3));
  EXPECT_NE(picked, select_supervised(data, 0.25, 4));
  EXPECT_TRUE(std::is_sorted(picked.begin(), picked.end()));
  EXPECT_EQ(std::set<std::size_t>(picked.begin(), picked.end()).size(), picked.size());
  for (std::size_t i : picked) EXPECT_TRUE(data[i].attention.has_value());
  EXPECT_TRUE(select_supervised(data, 0.0, 3).empty());
  EXPECT_EQ(select_supervised(data, 0.015, 3).size(), 3u);
}

TEST(SelectSupervisedTest, ClampsToAvailableRasters) {
  const HyperParams hp = small_hyper();
  Dataset data = small_dataset(hp, 10);
  for (std::size_t i = 0; i < 6; ++i) data[i].attention.reset();
  data[6].attention = AttentionRaster(2, 2, {0, 0, 0, 0});
  bool clamped = false;
  const auto picked = select_supervised(data, 1.0, 0, &clamped);
  EXPECT_TRUE(clamped);
  EXPECT_EQ(picked, (std::vector<std::size_t>{7, 8, 9}));
}

TEST(TrainConfigTest, ValidationAndModeNames) {
  TrainConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.lambda = -1;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = TrainConfig{};
  cfg.supervised_fraction = 1.5;
  EXPECT_THROW(cfg.validate(), Error);
  for (TrainMode m : {TrainMode::kBase, TrainMode::kHint, TrainMode::kAttnAlign}) {
    EXPECT_EQ(parse_train_mode(to_string(m)), m);
  }
  EXPECT_THROW(parse_train_mode("hints"), Error);
}

TEST(EpochLogTest, JsonFieldOrder) {
  EXPECT_EQ(epoch_log_json({3, 0.5, 0.25, 7}),
            R"({"epoch":3,"mean_task_loss":0.5,"mean_rank_loss":0.25,"supervised_count":7})");
}

class FinetuneTest : public ::testing::Test {
 protected:
  HyperParams hp = small_hyper();
  Dataset data = small_dataset(hp, 40);
  ModelParams start = init_params(hp, 5);

  TrainConfig config(TrainMode mode, double frac) const {
    TrainConfig cfg;
    cfg.mode = mode;
    cfg.supervised_fraction = frac;
    cfg.epochs = 3;
    cfg.batch_size = 8;
    cfg.seed = 11;
    return cfg;
  }
};

TEST_F(FinetuneTest, ZeroFractionHintEqualsBaseBitForBit) {
  const auto base = finetune(start, data, config(TrainMode::kBase, 0.06));
  const auto hint = finetune(start, data, config(TrainMode::kHint, 0.0));
  const auto attn = finetune(start, data, config(TrainMode::kAttnAlign, 0.0));
  EXPECT_EQ(base.params, hint.params);
  EXPECT_EQ(base.params, attn.params);
  EXPECT_EQ(hint.supervised_examples, 0u);
}

TEST_F(FinetuneTest, BaseModeNeverBuildsRankingTerm) {
  const auto r = finetune(start, data, config(TrainMode::kBase, 1.0));
  ASSERT_EQ(r.log.size(), 3u);
  for (const EpochLog& e : r.log) {
    EXPECT_EQ(e.supervised_count, 0u);
    EXPECT_EQ(e.mean_rank_loss, 0.0);
  }
  EXPECT_EQ(r.supervised_examples, 0u);
}

TEST_F(FinetuneTest, DeterministicGivenSeed) {
  const auto a = finetune(start, data, config(TrainMode::kHint, 0.5));
  const auto b = finetune(start, data, config(TrainMode::kHint, 0.5));
  EXPECT_EQ(a.params, b.params);
  ASSERT_EQ(a.log.size(), b.log.size());
  for (std::size_t i = 0; i < a.log.size(); ++i) {
    EXPECT_EQ(epoch_log_json(a.log[i]), epoch_log_json(b.log[i]));
  }
  TrainConfig other = config(TrainMode::kHint, 0.5);
  other.seed = 12;
  EXPECT_NE(finetune(start, data, other).params, a.params);
}

TEST_F(FinetuneTest, SupervisedCountFollowsFraction) {
  const auto r = finetune(start, data, config(TrainMode::kHint, 0.5));
  EXPECT_EQ(r.supervised_examples, 20u);
  for (const EpochLog& e : r.log) EXPECT_EQ(e.supervised_count, 20u);
}

TEST_F(FinetuneTest, CallbackSeesEveryEpoch) {
  std::vector<std::size_t> epochs;
  finetune(start, data, config(TrainMode::kHint, 0.2),
           [&](const EpochLog& e, const ModelParams&) { epochs.push_back(e.epoch); });
  EXPECT_EQ(epochs, (std::vector<std::size_t>{1, 2, 3}));
}

TEST_F(FinetuneTest, OverfitsSmallDataset) {
  TrainConfig cfg = config(TrainMode::kBase, 0.0);
  cfg.epochs = 60;
  cfg.adam.lr = 1e-2;
  const auto r = finetune(start, Dataset(data.begin(), data.begin() + 8), cfg);
  EXPECT_LT(r.log.back().mean_task_loss, 0.1 * r.log.front().mean_task_loss);
}

TEST_F(FinetuneTest, RankingOnlyObjectiveReducesRankingLoss) {
  TrainConfig cfg = config(TrainMode::kHint, 1.0);
  cfg.lambda = 0.0;
  cfg.epochs = 30;
  cfg.adam.lr = 1e-2;
  const auto r = finetune(start, data, cfg);
  EXPECT_LT(r.log.back().mean_rank_loss, 0.5 * r.log.front().mean_rank_loss);
}

TEST_F(FinetuneTest, RejectsEmptyAndMismatchedData) {
  EXPECT_THROW(finetune(start, {}, config(TrainMode::kBase, 0.0)), Error);
  Dataset bad = data;
  bad[3].proposals.pop_back();
  EXPECT_THROW(finetune(start, bad, config(TrainMode::kBase, 0.0)), Error);
}

}  // namespace
}  // namespace hint
