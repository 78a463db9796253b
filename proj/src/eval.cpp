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

#include "hint/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hint/error.hpp"
#include "hint/importance.hpp"
#include "json_io.hpp"

namespace hint {

std::vector<double> average_ranks(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && x[idx[j + 1]] == x[idx[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = r;
    i = j + 1;
  }
  return ranks;
}

Correlation spearman(std::span<const double> x, std::span<const double> y) {
  require(x.size() == y.size(), ErrorCode::kShape,
          "spearman: length mismatch " + std::to_string(x.size()) + " vs " +
              std::to_string(y.size()));
  Correlation c;
  if (x.size() < 2) return c;
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const double dx = rx[i] - mx;
    const double dy = ry[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return c;
  c.value = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  c.defined = true;
  return c;
}

std::size_t argmax(std::span<const double> values) {
  require(!values.empty(), ErrorCode::kInvalidArgument, "argmax of empty range");
  return static_cast<std::size_t>(
      std::max_element(values.begin(), values.end()) - values.begin());
}

namespace {

struct Analysis {
  std::vector<double> logits;
  std::vector<double> attention;
  std::vector<double> alpha_gt;
  std::vector<double> alpha_pred;
  std::vector<double> occlusion;
  std::size_t predicted = 0;
};

std::vector<double> to_vector(const Tensor& t) {
  return {t.data().begin(), t.data().end()};
}

std::vector<std::vector<double>> features_of(const Example& ex) {
  std::vector<std::vector<double>> f;
  f.reserve(ex.proposals.size());
  for (const auto& p : ex.proposals) f.push_back(p.feature);
  return f;
}

std::vector<double> occlusion_deltas(ad::Graph& graph, const BoundParams& bound,
                                     const Example& ex, std::size_t predicted,
                                     double full_score) {
  auto features = features_of(ex);
  std::vector<double> deltas(features.size());
  for (std::size_t r = 0; r < features.size(); ++r) {
    std::vector<double> saved(features[r].size(), 0.0);
    std::swap(saved, features[r]);
    ModelOutput masked = forward(graph, bound, ex.question, features);
    deltas[r] = full_score - masked.logits.value()[predicted];
    std::swap(saved, features[r]);
  }
  return deltas;
}

Analysis analyze(const ModelParams& params, const Example& ex, bool with_occlusion) {
  check_example(params.hyper, ex);
  ad::Graph graph;
  BoundParams bound = bind_params(graph, params, false);
  ModelOutput out = forward(graph, bound, ex);

  Analysis a;
  a.logits = to_vector(out.logits.value());
  a.attention = to_vector(out.attention.value());
  a.predicted = argmax(a.logits);
  a.alpha_gt = network_importance(out, ex.answer, false).values;
  a.alpha_pred = a.predicted == ex.answer
                     ? a.alpha_gt
                     : network_importance(out, a.predicted, false).values;
  if (with_occlusion) {
    a.occlusion = occlusion_deltas(graph, bound, ex, a.predicted, a.logits[a.predicted]);
  }
  return a;
}

std::optional<HumanImportance> usable_human(const Example& ex) {
  if (!ex.attention) return std::nullopt;
  HumanImportance hi = human_importance(ex);
  if (!hi.supervisable) return std::nullopt;
  return hi;
}

struct MeanAcc {
  double sum = 0.0;
  std::size_t n = 0;
  std::size_t excluded = 0;

  void add(const Correlation& c) {
    if (c.defined) {
      sum += c.value;
      ++n;
    } else {
      ++excluded;
    }
  }
  void add_value(double v) {
    sum += v;
    ++n;
  }
  std::optional<double> mean() const {
    if (n == 0) return std::nullopt;
    return sum / static_cast<double>(n);
  }
};

}  // namespace

std::vector<double> occlusion_importance(const ModelParams& params,
                                         const Example& example) {
  check_example(params.hyper, example);
  ad::Graph graph;
  BoundParams bound = bind_params(graph, params, false);
  ModelOutput out = forward(graph, bound, example);
  auto logits = out.logits.value().data();
  const std::size_t pred = argmax(logits);
  return occlusion_deltas(graph, bound, example, pred, logits[pred]);
}

Faithfulness faithfulness(const ModelParams& params, const Dataset& data) {
  require(!data.empty(), ErrorCode::kInvalidArgument, "faithfulness: empty dataset");
  MeanAcc grad, attn;
  for (const auto& ex : data) {
    Analysis a = analyze(params, ex, true);
    grad.add(spearman(a.alpha_pred, a.occlusion));
    attn.add(spearman(a.attention, a.occlusion));
  }
  Faithfulness f;
  f.corr_grad_occlusion = grad.mean();
  f.corr_attn_occlusion = attn.mean();
  f.n_examples = data.size();
  f.excluded_grad = grad.excluded;
  f.excluded_attn = attn.excluded;
  return f;
}

std::optional<double> box_mask_iou(const Box& box, const AttentionRaster& raster) {
  require(box.fits(raster.height(), raster.width()), ErrorCode::kInvalidArgument,
          "box outside raster");
  const double mx = raster.max();
  if (mx <= 0.0) return std::nullopt;
  const double threshold = 0.5 * mx;
  long inter = 0;
  long uni = 0;
  for (std::size_t i = 0; i < raster.height(); ++i) {
    for (std::size_t j = 0; j < raster.width(); ++j) {
      const bool in_mask = raster.at(i, j) >= threshold;
      const bool in_box = box.contains(static_cast<int>(i), static_cast<int>(j));
      inter += in_mask && in_box;
      uni += in_mask || in_box;
    }
  }
  return static_cast<double>(inter) / static_cast<double>(uni);
}

double iou_top(const ModelParams& params, const Example& example) {
  require(example.attention.has_value(), ErrorCode::kInvalidArgument,
          "iou_top: example " + example.id + " has no attention raster");
  ad::Graph graph;
  ModelOutput out = forward(graph, params, example);
  const std::size_t top = argmax(out.attention.value().data());
  auto iou = box_mask_iou(example.proposals[top].box, *example.attention);
  require(iou.has_value(), ErrorCode::kInvalidArgument,
          "iou_top: example " + example.id + " has an all-zero raster");
  return *iou;
}

EvalReport evaluate(const ModelParams& params, const Dataset& data) {
  EvalReport rep;
  rep.n_examples = data.size();
  std::size_t correct = 0;
  std::map<std::string, std::pair<std::size_t, std::size_t>> per_type;
  MeanAcc grad_human, attn_human, grad_occ, attn_occ, iou;

  for (const auto& ex : data) {
    Analysis a = analyze(params, ex, true);
    const bool ok = a.predicted == ex.answer;
    correct += ok;
    auto& pt = per_type[std::to_string(ex.question.front())];
    pt.first += ok;
    ++pt.second;

    grad_occ.add(spearman(a.alpha_pred, a.occlusion));
    attn_occ.add(spearman(a.attention, a.occlusion));

    if (auto hi = usable_human(ex)) {
      ++rep.n_supervisable;
      const auto s = hi->scores();
      grad_human.add(spearman(a.alpha_gt, s));
      attn_human.add(spearman(a.attention, s));
      const std::size_t top = argmax(a.attention);
      if (auto v = box_mask_iou(ex.proposals[top].box, *ex.attention)) {
        iou.add_value(*v);
      }
    }
  }

  if (!data.empty()) {
    rep.accuracy = static_cast<double>(correct) / static_cast<double>(data.size());
  }
  for (const auto& [k, v] : per_type) {
    rep.per_question_type_accuracy[k] =
        static_cast<double>(v.first) / static_cast<double>(v.second);
  }
  rep.spearman_grad_human = grad_human.mean();
  rep.spearman_attn_human = attn_human.mean();
  rep.corr_grad_occlusion = grad_occ.mean();
  rep.corr_attn_occlusion = attn_occ.mean();
  rep.iou_top = iou.mean();
  rep.excluded_correlations =
      grad_human.excluded + attn_human.excluded + grad_occ.excluded + attn_occ.excluded;
  return rep;
}

namespace {

detail::OrderedJson optional_json(const std::optional<double>& v) {
  return v ? detail::OrderedJson(*v) : detail::OrderedJson();
}

}  // namespace

std::string report_to_json(const EvalReport& r) {
  detail::OrderedJson j;
  j["accuracy"] = r.accuracy;
  j["spearman_grad_human"] = optional_json(r.spearman_grad_human);
  j["spearman_attn_human"] = optional_json(r.spearman_attn_human);
  j["corr_grad_occlusion"] = optional_json(r.corr_grad_occlusion);
  j["corr_attn_occlusion"] = optional_json(r.corr_attn_occlusion);
  j["iou_top"] = optional_json(r.iou_top);
  j["n_examples"] = r.n_examples;
  j["n_supervisable"] = r.n_supervisable;
  j["excluded_correlations"] = r.excluded_correlations;
  detail::OrderedJson per_type = detail::OrderedJson::object();
  for (const auto& [k, v] : r.per_question_type_accuracy) per_type[k] = v;
  j["per_question_type_accuracy"] = std::move(per_type);
  return detail::dump(j, 2);
}

Explanation explain(const ModelParams& params, const Example& example) {
  Analysis a = analyze(params, example, true);
  std::optional<HumanImportance> hi = usable_human(example);
  Explanation e;
  e.id = example.id;
  e.answer = example.answer;
  e.predicted = a.predicted;
  for (std::size_t r = 0; r < example.proposals.size(); ++r) {
    ProposalExplanation p;
    p.box = example.proposals[r].box;
    if (hi) p.human = hi->proposals[r].score;
    p.alpha = a.alpha_gt[r];
    p.attention = a.attention[r];
    p.occlusion = a.occlusion[r];
    e.proposals.push_back(p);
  }
  return e;
}

std::string explanation_to_json(const Explanation& e) {
  detail::OrderedJson j;
  j["id"] = e.id;
  j["answer"] = e.answer;
  j["predicted"] = e.predicted;
  detail::OrderedJson rows = detail::OrderedJson::array();
  for (const auto& p : e.proposals) {
    detail::OrderedJson row;
    row["box"] = {p.box.x1, p.box.y1, p.box.x2, p.box.y2};
    row["human"] = optional_json(p.human);
    row["alpha"] = p.alpha;
    row["attention"] = p.attention;
    row["occlusion"] = p.occlusion;
    rows.push_back(std::move(row));
  }
  j["proposals"] = std::move(rows);
  return detail::dump(j);
}

}  // namespace hint
