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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hint/error.hpp"
#include "hint/importance.hpp"

namespace hint::testing {

double fd_partial(const ScalarFn& f, std::vector<double> x, std::size_t i, double h) {
  const double x0 = x[i];
  auto at = [&](double d) {
    x[i] = x0 + d;
    return f(x);
  };
  return (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
}

std::vector<double> fd_gradient(const ScalarFn& f, const std::vector<double>& x, double h) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = fd_partial(f, x, i, h);
  return out;
}

double rel_error(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0});
}

double max_rel_error(std::span<const double> a, std::span<const double> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, rel_error(a[i], b[i]));
  return worst;
}

namespace {

constexpr int kVectorOps = 17;
constexpr int kMatrixOps = 14;

std::vector<double> concat(const Tensor& a, const Tensor& b) {
  std::vector<double> out(a.data().begin(), a.data().end());
  out.insert(out.end(), b.data().begin(), b.data().end());
  return out;
}

ad::Var square_plus_one(ad::Var v) { return ad::add_scalar(v * v, 1.0); }

}  // namespace

RandomGraph::RandomGraph(std::uint64_t seed, std::size_t length) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_int_distribution<int> op(0, kVectorOps + kMatrixOps - 1);
  std::uniform_int_distribution<std::size_t> pick(0, 1 << 20);
  for (std::size_t k = 0; k < length; ++k) steps_.push_back({op(rng), pick(rng), pick(rng)});
  for (std::size_t i = 0; i < kInputs; ++i) start_.push_back(unit(rng));
  for (std::size_t i = 0; i < 4; ++i) out_weights_.push_back(unit(rng));
}

ad::Var RandomGraph::build(ad::Graph& g, ad::Var x, ad::Var m) const {
  using namespace ad;
  std::vector<Var> vs{x};
  std::vector<Var> ms{m};
  const std::vector<std::size_t> gather{2, 0, 0, 3};
  const std::vector<std::size_t> pair{1, 3};
  const std::vector<std::size_t> scatter{3, 0};
  for (const Step& s : steps_) {
    Var va = vs[s.a % vs.size()];
    Var vb = vs[s.b % vs.size()];
    Var ma = ms[s.a % ms.size()];
    Var mb = ms[s.b % ms.size()];
    const std::size_t i = s.b % 4;
    switch (s.op) {
      case 0: vs.push_back(tanh(va)); break;
      case 1: vs.push_back(va * vb); break;
      case 2: vs.push_back(va + vb); break;
      case 3: vs.push_back(va - vb); break;
      case 4: vs.push_back(va / square_plus_one(vb)); break;
      case 5: vs.push_back(exp(tanh(va))); break;
      case 6: vs.push_back(log(square_plus_one(va))); break;
      case 7: vs.push_back(softmax(va)); break;
      case 8: vs.push_back(log_softmax(va)); break;
      case 9: vs.push_back(reshape(matmul(reshape(va, {1, 4}), mb), {4})); break;
      case 10: vs.push_back(sum(ma, 0)); break;
      case 11: vs.push_back(sum(ma, 1)); break;
      case 12: vs.push_back(broadcast(sum(va), {4})); break;
      case 13: vs.push_back(row(ma, i)); break;
      case 14: vs.push_back(embed_elem(pick(va, i), (i + 1) % 4, 4) + vb); break;
      case 15: vs.push_back(scale(add_scalar(neg(va), 0.3), -0.7)); break;
      case 16: vs.push_back(abs(add_scalar(tanh(va), 2.0)) * pick(vb, i)); break;
      case 17: ms.push_back(tanh(ma)); break;
      case 18: ms.push_back(scale(matmul(ma, mb), 0.5)); break;
      case 19: ms.push_back(transpose(ma)); break;
      case 20: ms.push_back(add_row_bias(ma, vb)); break;
      case 21: ms.push_back(expand(va, 0, 4)); break;
      case 22: ms.push_back(expand(va, 1, 4)); break;
      case 23: ms.push_back(gather_rows(ma, gather)); break;
      case 24: ms.push_back(scatter_rows(gather_rows(ma, pair), scatter, 4) + mb); break;
      case 25: {
        const std::vector<Var> rows{va, vb, va, vb};
        ms.push_back(stack(rows));
        break;
      }
      case 26: ms.push_back(embed_row(va, i, 4) + mb); break;
      case 27: ms.push_back(ma * mb); break;
      case 28: ms.push_back(ma / square_plus_one(mb)); break;
      case 29: ms.push_back(reshape(transpose(reshape(ma, {2, 8})), {4, 4})); break;
      case 30: ms.push_back(ma - scale(mb, 0.25)); break;
    }
  }
  Var w = g.constant(Tensor::vector(out_weights_));
  return sum(vs.back() * w) + scale(sum(tanh(ms.back())), 0.5);
}

double RandomGraph::value(std::span<const double> in) const {
  ad::Graph g;
  ad::Var x = g.constant(Tensor::vector({in.begin(), in.begin() + 4}));
  ad::Var m = g.constant(Tensor::matrix(4, 4, {in.begin() + 4, in.end()}));
  return build(g, x, m).item();
}

GradCheck check_random_graph(std::uint64_t seed) {
  const RandomGraph rg(seed);
  const std::vector<double>& x0 = rg.start();
  std::mt19937_64 rng(seed ^ 0x5bd1e995u);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<double> r(RandomGraph::kInputs);
  for (double& v : r) v = unit(rng);

  // Autodiff gradient of f, and of G = <r, grad f> when `second` is set.
  auto autodiff = [&](std::span<const double> in, bool second) {
    ad::Graph g;
    ad::Var x = g.leaf(Tensor::vector({in.begin(), in.begin() + 4}), true);
    ad::Var m = g.leaf(Tensor::matrix(4, 4, {in.begin() + 4, in.end()}), true);
    const std::vector<ad::Var> wrt{x, m};
    ad::Var out = rg.build(g, x, m);
    std::vector<ad::Var> d = g.grad(out, wrt, second);
    if (!second) return concat(d[0].value(), d[1].value());
    ad::Var rx = g.constant(Tensor::vector({r.begin(), r.begin() + 4}));
    ad::Var rm = g.constant(Tensor::matrix(4, 4, {r.begin() + 4, r.end()}));
    ad::Var functional = ad::sum(d[0] * rx) + ad::sum(d[1] * rm);
    std::vector<ad::Var> dd = g.grad(functional, wrt, false);
    return concat(dd[0].value(), dd[1].value());
  };

  GradCheck out;
  const std::vector<double> g1 = autodiff(x0, false);
  const std::vector<double> fd1 = fd_gradient([&](std::span<const double> in) { return rg.value(in); }, x0);
  out.first_order = max_rel_error(g1, fd1);

  const std::vector<double> g2 = autodiff(x0, true);
  auto functional = [&](std::span<const double> in) {
    const std::vector<double> d = autodiff(in, false);
    double acc = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) acc += r[i] * d[i];
    return acc;
  };
  out.second_order = max_rel_error(g2, fd_gradient(functional, x0));
  return out;
}

EnergyOracle energy_oracle(const AttentionRaster& raster, const Box& box) {
  double in = 0.0, out = 0.0;
  double n_in = 0.0, n_out = 0.0;
  for (std::size_t row = 0; row < raster.height(); ++row) {
    for (std::size_t col = 0; col < raster.width(); ++col) {
      const bool inside = static_cast<int>(row) >= box.y1 && static_cast<int>(row) < box.y2 &&
                          static_cast<int>(col) >= box.x1 && static_cast<int>(col) < box.x2;
      if (inside) {
        in += raster.at(row, col);
        n_in += 1.0;
      } else {
        out += raster.at(row, col);
        n_out += 1.0;
      }
    }
  }
  EnergyOracle e{n_in > 0 ? in / n_in : 0.0, n_out > 0 ? out / n_out : 0.0, 0.0};
  e.score = e.e_in + e.e_out > 0 ? e.e_in / (e.e_in + e.e_out) : 0.0;
  return e;
}

double ranking_loss_oracle(std::span<const double> alpha, std::span<const double> s,
                           double eps) {
  double total = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      if (s[j] - s[i] > eps && alpha[i] >= alpha[j]) total += alpha[i] - alpha[j];
    }
  }
  return total;
}

double spearman_oracle(std::span<const double> x, std::span<const double> y) {
  auto ranks = [](std::span<const double> v) {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      double below = 0.0, equal = 0.0;
      for (std::size_t j = 0; j < v.size(); ++j) {
        if (v[j] < v[i]) below += 1.0;
        if (j != i && v[j] == v[i]) equal += 1.0;
      }
      r[i] = 1.0 + below + 0.5 * equal;
    }
    return r;
  };
  const std::vector<double> rx = ranks(x), ry = ranks(y);
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += rx[i] / n;
    my += ry[i] / n;
  }
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

Example tiny_example(const HyperParams& hp, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<int> corner(0, 4);
  std::uniform_int_distribution<int> extent(2, 4);
  Example ex;
  ex.id = "tiny-" + std::to_string(seed);
  ex.question = {0, 1 + seed % (hp.vocab_size - 1)};
  ex.answer = seed % hp.num_answers;
  for (std::size_t k = 0; k < hp.num_proposals; ++k) {
    Proposal p;
    p.box.x1 = corner(rng);
    p.box.y1 = corner(rng);
    p.box.x2 = p.box.x1 + extent(rng);
    p.box.y2 = p.box.y1 + extent(rng);
    for (std::size_t d = 0; d < hp.feature_dim; ++d) p.feature.push_back(normal(rng));
    ex.proposals.push_back(std::move(p));
  }
  const Box& ref = ex.proposals[0].box;
  std::vector<double> raster(8 * 8, 0.0);
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) raster[r * 8 + c] = ref.contains(r, c) ? 1.0 : 0.0;
  }
  ex.attention = AttentionRaster(8, 8, std::move(raster));
  ex.referent = 0;
  return ex;
}

namespace {

HyperParams objective_hyper() {
  HyperParams hp;
  hp.vocab_size = 5;
  hp.embed_dim = 3;
  hp.hidden_dim = 4;
  hp.feature_dim = 6;
  hp.num_proposals = 3;
  hp.num_answers = 3;
  return hp;
}

LossTerms objective(ad::Graph& g, const BoundParams& bound, const Example& ex,
                    const HumanImportance& human, const TrainConfig& cfg) {
  return cfg.mode == TrainMode::kAttnAlign ? attn_align_loss(g, bound, ex, &human, cfg)
                                           : hint_loss(g, bound, ex, &human, cfg);
}

}  // namespace

ModelParams grounded_oracle_params(const HyperParams& hp, std::size_t num_classes) {
  const std::size_t attrs = hp.num_answers;
  const std::size_t bias_unit = hp.hidden_dim - 1;
  if (num_classes + 1 > hp.embed_dim || num_classes + 1 > hp.hidden_dim ||
      attrs > hp.hidden_dim || num_classes + attrs > hp.feature_dim) {
    fail(ErrorCode::kInvalidArgument, "grounded oracle: dimensions too small");
  }
  ModelParams p = ModelParams::zeros(hp);
  auto set = [&](ParamId id, std::size_t r, std::size_t c, double v) {
    Tensor& t = p.tensors[static_cast<std::size_t>(id)];
    std::vector<double> d(t.data().begin(), t.data().end());
    d[t.rank() == 1 ? r : r * t.shape()[1] + c] = v;
    t = Tensor(t.shape(), std::move(d));
  };
  // Token t embeds to unit vector t; the question-type token drives a
  // constant "bias" unit of q, class tokens drive one unit per class.
  for (std::size_t t = 0; t <= num_classes; ++t) set(ParamId::kEmbed, t, t, 1.0);
  set(ParamId::kWq, 0, bias_unit, 12.0);
  for (std::size_t c = 0; c < num_classes; ++c) set(ParamId::kWq, c + 1, c, 12.0);
  // Attention unit c fires only when the proposal has class c and the
  // question asks for class c.
  for (std::size_t c = 0; c < num_classes; ++c) {
    set(ParamId::kWv, c, c, 10.0);
    set(ParamId::kWu, c, c, 10.0);
    set(ParamId::kWu, bias_unit, c, -15.0);
    set(ParamId::kWa, c, 0, 5.0);
  }
  // Readout of the attribute one-hot of the pooled feature.
  for (std::size_t a = 0; a < attrs; ++a) {
    set(ParamId::kWh, num_classes + a, a, 3.0);
    set(ParamId::kWg, bias_unit, a, 10.0);
    set(ParamId::kWo, a, a, 5.0);
  }
  return p;
}

ObjectiveCheck check_full_objective(TrainMode mode, std::uint64_t seed, double lambda) {
  const HyperParams hp = objective_hyper();
  const ModelParams p = init_params(hp, seed);
  Example ex = tiny_example(hp, seed);
  // Spread the human scores so that several pairs are ordered.
  std::vector<double> raster(8 * 8);
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) raster[r * 8 + c] = 0.05 + (r * 8 + c) / 64.0;
  }
  ex.attention = AttentionRaster(8, 8, std::move(raster));
  const HumanImportance human = human_importance(ex);
  TrainConfig cfg;
  cfg.mode = mode;
  cfg.lambda = lambda;

  std::vector<double> flat;
  for (const Tensor& t : p.tensors) flat.insert(flat.end(), t.data().begin(), t.data().end());
  auto unflatten = [&](std::span<const double> x) {
    ModelParams q = p;
    std::size_t at = 0;
    for (Tensor& t : q.tensors) {
      t = Tensor(t.shape(), {x.begin() + at, x.begin() + at + t.size()});
      at += t.size();
    }
    return q;
  };
  auto value = [&](std::span<const double> x) {
    ad::Graph g;
    const BoundParams bound = bind_params(g, unflatten(x), true);
    return objective(g, bound, ex, human, cfg).total.item();
  };

  ad::Graph g;
  const BoundParams bound = bind_params(g, p, true);
  const LossTerms loss = objective(g, bound, ex, human, cfg);
  std::vector<double> analytic;
  for (const ad::Var& d : g.grad(loss.total, bound.vars, false)) {
    analytic.insert(analytic.end(), d.value().data().begin(), d.value().data().end());
  }
  ObjectiveCheck out;
  out.num_pairs = loss.num_pairs;
  out.num_params = flat.size();
  out.max_rel_error = max_rel_error(analytic, fd_gradient(value, flat, 1e-5));
  return out;
}

}  // namespace hint::testing
