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

#include "hint/autodiff.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "hint/error.hpp"

namespace hint::ad {

namespace {

Graph& graph_of(Var a) {
  require(a.valid(), ErrorCode::kInvalidArgument, "operation on a null node");
  return *a.graph();
}

Graph& graph_of(Var a, Var b) {
  Graph& g = graph_of(a);
  require(b.valid() && b.graph() == &g, ErrorCode::kInvalidArgument,
          "operands belong to different graphs");
  return g;
}

void require_rank(Var a, std::size_t rank, const char* what) {
  require(a.shape().size() == rank, ErrorCode::kShape,
          std::string(what) + ": expected rank " + std::to_string(rank) +
              ", got " + shape_string(a.shape()));
}

template <typename F>
Tensor map_values(const Tensor& a, F f) {
  std::vector<double> out(a.size());
  auto in = a.data();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(in[i]);
  return Tensor(a.shape(), std::move(out));
}

template <typename F>
Tensor zip_values(const Tensor& a, const Tensor& b, F f) {
  std::vector<double> out(a.size());
  auto x = a.data();
  auto y = b.data();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(x[i], y[i]);
  return Tensor(a.shape(), std::move(out));
}

// Brings two operands to a common shape. A single-element operand is
// broadcast against the other one; anything else must match exactly.
std::pair<Var, Var> align(Var a, Var b, const char* what) {
  if (a.shape() == b.shape()) return {a, b};
  if (b.size() == 1) return {a, broadcast(b, a.shape())};
  if (a.size() == 1) return {broadcast(a, b.shape()), b};
  fail(ErrorCode::kShape, std::string(what) + ": shape mismatch " +
                              shape_string(a.shape()) + " vs " +
                              shape_string(b.shape()));
}

Tensor matmul_values(const Tensor& a, const Tensor& b) {
  const std::size_t m = a.shape()[0];
  const std::size_t k = a.shape()[1];
  const std::size_t n = b.shape()[1];
  std::vector<double> out(m * n, 0.0);
  auto x = a.data();
  auto y = b.data();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t p = 0; p < k; ++p) {
      const double s = x[i * k + p];
      const double* brow = y.data() + p * n;
      double* orow = out.data() + i * n;
      for (std::size_t j = 0; j < n; ++j) orow[j] += s * brow[j];
    }
  }
  return Tensor({m, n}, std::move(out));
}

}  // namespace

// Restores the recording flag on scope exit.
class RecordingScope {
 public:
  RecordingScope(Graph& g, bool recording) : g_(g), saved_(g.recording_) {
    g_.recording_ = recording;
  }
  ~RecordingScope() { g_.recording_ = saved_; }
  RecordingScope(const RecordingScope&) = delete;
  RecordingScope& operator=(const RecordingScope&) = delete;

 private:
  Graph& g_;
  bool saved_;
};

const char* op_name(Op op) {
  switch (op) {
    case Op::kLeaf: return "leaf";
    case Op::kAdd: return "add";
    case Op::kSub: return "sub";
    case Op::kMul: return "mul";
    case Op::kDiv: return "div";
    case Op::kAddScalar: return "add_scalar";
    case Op::kScale: return "scale";
    case Op::kNeg: return "neg";
    case Op::kTanh: return "tanh";
    case Op::kExp: return "exp";
    case Op::kLog: return "log";
    case Op::kAbs: return "abs";
    case Op::kMatMul: return "matmul";
    case Op::kTranspose: return "transpose";
    case Op::kReshape: return "reshape";
    case Op::kSoftmax: return "softmax";
    case Op::kLogSoftmax: return "log_softmax";
    case Op::kSum: return "sum";
    case Op::kSumAxis: return "sum_axis";
    case Op::kBroadcast: return "broadcast";
    case Op::kExpand: return "expand";
    case Op::kAddRowBias: return "add_row_bias";
    case Op::kGatherRows: return "gather_rows";
    case Op::kScatterRows: return "scatter_rows";
    case Op::kStack: return "stack";
    case Op::kRow: return "row";
    case Op::kEmbedRow: return "embed_row";
    case Op::kPick: return "pick";
    case Op::kEmbedElem: return "embed_elem";
  }
  return "?";
}

const Node& Var::node() const {
  require(graph_ != nullptr, ErrorCode::kInvalidArgument, "null node handle");
  return graph_->node(id_);
}

Var Graph::leaf(Tensor value, bool requires_grad) {
  require(!value.empty(), ErrorCode::kShape, "leaf requires a non-empty tensor");
  require(all_finite(value.data()), ErrorCode::kNumeric,
          "leaf value contains NaN or Inf");
  Node n;
  n.op = Op::kLeaf;
  n.value = std::move(value);
  n.requires_grad = requires_grad;
  nodes_.push_back(std::move(n));
  return Var(this, static_cast<NodeId>(nodes_.size() - 1));
}

Var Graph::emit(Op op, std::vector<NodeId> parents, Tensor value,
                double scalar, std::size_t index,
                std::vector<std::size_t> indices) {
  if (!all_finite(value.data())) {
    fail(ErrorCode::kNumeric,
         std::string("non-finite result in ") + op_name(op));
  }
  bool rg = false;
  if (recording_) {
    for (NodeId p : parents) rg = rg || nodes_[p].requires_grad;
  }
  Node n;
  n.op = op;
  n.parents = std::move(parents);
  n.value = std::move(value);
  n.requires_grad = rg;
  n.scalar = scalar;
  n.index = index;
  n.indices = std::move(indices);
  nodes_.push_back(std::move(n));
  return Var(this, static_cast<NodeId>(nodes_.size() - 1));
}

std::vector<Var> Graph::grad(Var output, std::span<const Var> wrt,
                             bool create_graph) {
  require(output.valid() && output.graph() == this,
          ErrorCode::kInvalidArgument, "grad: output is not in this graph");
  require(output.size() == 1, ErrorCode::kShape,
          "grad: output must be a single-element tensor, got " +
              shape_string(output.shape()));
  for (const Var& w : wrt) {
    require(w.valid() && w.graph() == this, ErrorCode::kInvalidArgument,
            "grad: wrt node is not in this graph");
  }

  const NodeId hi = output.id();
  NodeId lo = hi;
  for (const Var& w : wrt) lo = std::min(lo, w.id());

  // Marks nodes on a path from some wrt node to the output.
  std::vector<char> need(hi - lo + 1, 0);
  for (const Var& w : wrt) {
    if (w.id() <= hi) need[w.id() - lo] = 1;
  }
  for (NodeId id = lo; id <= hi; ++id) {
    const Node& n = nodes_[id];
    if (need[id - lo] || !n.requires_grad) continue;
    for (NodeId p : n.parents) {
      if (p >= lo && need[p - lo]) {
        need[id - lo] = 1;
        break;
      }
    }
  }

  std::vector<Var> acc(hi - lo + 1);
  {
    RecordingScope scope(*this, create_graph);
    if (need[hi - lo] && nodes_[hi].requires_grad) {
      acc[hi - lo] = constant(Tensor::filled(output.shape(), 1.0));
      for (NodeId id = hi + 1; id-- > lo;) {
        Var g = acc[id - lo];
        if (!g.valid() || nodes_[id].parents.empty()) continue;
        backward_node(id, g, need, lo, acc);
      }
    }
  }

  std::vector<Var> out;
  out.reserve(wrt.size());
  for (const Var& w : wrt) {
    Var g = w.id() <= hi ? acc[w.id() - lo] : Var();
    out.push_back(g.valid() ? g : constant(Tensor::zeros(w.shape())));
  }
  return out;
}

void Graph::backward_node(NodeId id, Var g, std::span<const char> need,
                          NodeId lo, std::vector<Var>& acc) {
  const Node& n = nodes_[id];
  Var self(this, id);
  auto wants = [&](std::size_t k) {
    NodeId p = n.parents[k];
    return p >= lo && need[p - lo] && nodes_[p].requires_grad;
  };
  auto parent = [&](std::size_t k) { return Var(this, n.parents[k]); };
  auto push = [&](std::size_t k, Var contrib) {
    Var& slot = acc[n.parents[k] - lo];
    slot = slot.valid() ? add(slot, contrib) : contrib;
  };

  switch (n.op) {
    case Op::kLeaf:
      break;
    case Op::kAdd:
      if (wants(0)) push(0, g);
      if (wants(1)) push(1, g);
      break;
    case Op::kSub:
      if (wants(0)) push(0, g);
      if (wants(1)) push(1, neg(g));
      break;
    case Op::kMul:
      if (wants(0)) push(0, mul(g, parent(1)));
      if (wants(1)) push(1, mul(g, parent(0)));
      break;
    case Op::kDiv: {
      Var a = parent(0);
      Var b = parent(1);
      if (wants(0)) push(0, div(g, b));
      if (wants(1)) push(1, neg(div(mul(g, a), mul(b, b))));
      break;
    }
    case Op::kAddScalar:
      if (wants(0)) push(0, g);
      break;
    case Op::kScale:
      if (wants(0)) push(0, scale(g, n.scalar));
      break;
    case Op::kNeg:
      if (wants(0)) push(0, neg(g));
      break;
    case Op::kTanh:
      // d tanh = 1 - y^2
      if (wants(0)) push(0, mul(g, add_scalar(neg(mul(self, self)), 1.0)));
      break;
    case Op::kExp:
      if (wants(0)) push(0, mul(g, self));
      break;
    case Op::kLog:
      if (wants(0)) push(0, div(g, parent(0)));
      break;
    case Op::kAbs:
      if (wants(0)) {
        Tensor sign = map_values(parent(0).value(), [](double x) {
          return static_cast<double>((x > 0.0) - (x < 0.0));
        });
        push(0, mul(g, constant(std::move(sign))));
      }
      break;
    case Op::kMatMul:
      if (wants(0)) push(0, matmul(g, transpose(parent(1))));
      if (wants(1)) push(1, matmul(transpose(parent(0)), g));
      break;
    case Op::kTranspose:
      if (wants(0)) push(0, transpose(g));
      break;
    case Op::kReshape:
      if (wants(0)) push(0, reshape(g, parent(0).shape()));
      break;
    case Op::kSoftmax:
      // y * (g - <g, y>)
      if (wants(0)) push(0, mul(self, sub(g, sum(mul(g, self)))));
      break;
    case Op::kLogSoftmax:
      // g - softmax(x) * sum(g)
      if (wants(0)) push(0, sub(g, mul(softmax(parent(0)), sum(g))));
      break;
    case Op::kSum:
      if (wants(0)) push(0, broadcast(g, parent(0).shape()));
      break;
    case Op::kSumAxis:
      if (wants(0)) push(0, expand(g, n.index, parent(0).shape()[n.index]));
      break;
    case Op::kBroadcast:
      if (wants(0)) push(0, reshape(sum(g), parent(0).shape()));
      break;
    case Op::kExpand:
      if (wants(0)) push(0, sum(g, n.index));
      break;
    case Op::kAddRowBias:
      if (wants(0)) push(0, g);
      if (wants(1)) push(1, sum(g, 0));
      break;
    case Op::kGatherRows:
      if (wants(0)) push(0, scatter_rows(g, n.indices, parent(0).shape()[0]));
      break;
    case Op::kScatterRows:
      if (wants(0)) push(0, gather_rows(g, n.indices));
      break;
    case Op::kStack:
      for (std::size_t k = 0; k < n.parents.size(); ++k) {
        if (wants(k)) push(k, row(g, k));
      }
      break;
    case Op::kRow:
      if (wants(0)) push(0, embed_row(g, n.index, parent(0).shape()[0]));
      break;
    case Op::kEmbedRow:
      if (wants(0)) push(0, row(g, n.index));
      break;
    case Op::kPick:
      if (wants(0)) push(0, embed_elem(g, n.index, parent(0).size()));
      break;
    case Op::kEmbedElem:
      if (wants(0)) push(0, pick(g, n.index));
      break;
  }
}

// ---------------------------------------------------------------------------
// Elementwise

Var elementwise(Elementwise op, Var a, Var b) {
  switch (op) {
    case Elementwise::kAdd: return add(a, b);
    case Elementwise::kSub: return sub(a, b);
    case Elementwise::kMul: return mul(a, b);
    case Elementwise::kDiv: return div(a, b);
    case Elementwise::kScale:
      require(b.valid() && b.size() == 1, ErrorCode::kShape,
              "scale requires a single-element factor");
      return mul(a, b);
    case Elementwise::kTanh: return tanh(a);
    case Elementwise::kExp: return exp(a);
    case Elementwise::kLog: return log(a);
  }
  fail(ErrorCode::kInvalidArgument, "unknown elementwise op");
}

Var elementwise(Elementwise op, Var a, double b) {
  switch (op) {
    case Elementwise::kAdd: return add_scalar(a, b);
    case Elementwise::kSub: return add_scalar(a, -b);
    case Elementwise::kMul:
    case Elementwise::kScale: return scale(a, b);
    case Elementwise::kDiv:
      require(b != 0.0, ErrorCode::kNumeric, "division by zero");
      return scale(a, 1.0 / b);
    default: return elementwise(op, a, Var());
  }
}

Var add(Var a, Var b) {
  Graph& g = graph_of(a, b);
  auto [x, y] = align(a, b, "add");
  return g.emit(Op::kAdd, {x.id(), y.id()},
                zip_values(x.value(), y.value(), std::plus<>()));
}

Var sub(Var a, Var b) {
  Graph& g = graph_of(a, b);
  auto [x, y] = align(a, b, "sub");
  return g.emit(Op::kSub, {x.id(), y.id()},
                zip_values(x.value(), y.value(), std::minus<>()));
}

Var mul(Var a, Var b) {
  Graph& g = graph_of(a, b);
  auto [x, y] = align(a, b, "mul");
  return g.emit(Op::kMul, {x.id(), y.id()},
                zip_values(x.value(), y.value(), std::multiplies<>()));
}

Var div(Var a, Var b) {
  Graph& g = graph_of(a, b);
  auto [x, y] = align(a, b, "div");
  for (double v : y.value().data()) {
    require(v != 0.0, ErrorCode::kNumeric, "division by zero");
  }
  return g.emit(Op::kDiv, {x.id(), y.id()},
                zip_values(x.value(), y.value(), std::divides<>()));
}

Var add_scalar(Var a, double s) {
  return graph_of(a).emit(Op::kAddScalar, {a.id()},
                          map_values(a.value(), [s](double x) { return x + s; }),
                          s);
}

Var scale(Var a, double s) {
  return graph_of(a).emit(Op::kScale, {a.id()},
                          map_values(a.value(), [s](double x) { return x * s; }),
                          s);
}

Var neg(Var a) {
  return graph_of(a).emit(Op::kNeg, {a.id()},
                          map_values(a.value(), [](double x) { return -x; }));
}

Var tanh(Var a) {
  return graph_of(a).emit(
      Op::kTanh, {a.id()},
      map_values(a.value(), [](double x) { return std::tanh(x); }));
}

Var exp(Var a) {
  return graph_of(a).emit(
      Op::kExp, {a.id()},
      map_values(a.value(), [](double x) { return std::exp(x); }));
}

Var log(Var a) {
  for (double v : a.value().data()) {
    require(v > 0.0, ErrorCode::kNumeric, "log of non-positive value");
  }
  return graph_of(a).emit(
      Op::kLog, {a.id()},
      map_values(a.value(), [](double x) { return std::log(x); }));
}

Var abs(Var a) {
  return graph_of(a).emit(
      Op::kAbs, {a.id()},
      map_values(a.value(), [](double x) { return std::fabs(x); }));
}

// ---------------------------------------------------------------------------
// Linear algebra and shape

Var matmul(Var a, Var b) {
  Graph& g = graph_of(a, b);
  require_rank(a, 2, "matmul");
  require_rank(b, 2, "matmul");
  require(a.shape()[1] == b.shape()[0], ErrorCode::kShape,
          "matmul: inner dimensions differ, " + shape_string(a.shape()) +
              " x " + shape_string(b.shape()));
  return g.emit(Op::kMatMul, {a.id(), b.id()},
                matmul_values(a.value(), b.value()));
}

Var transpose(Var a) {
  require_rank(a, 2, "transpose");
  const std::size_t m = a.shape()[0];
  const std::size_t n = a.shape()[1];
  std::vector<double> out(m * n);
  auto x = a.value().data();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[j * m + i] = x[i * n + j];
  }
  return graph_of(a).emit(Op::kTranspose, {a.id()},
                          Tensor({n, m}, std::move(out)));
}

Var reshape(Var a, Shape shape) {
  require(shape_size(shape) == a.size(), ErrorCode::kShape,
          "reshape: " + shape_string(a.shape()) + " to " +
              shape_string(shape));
  auto d = a.value().data();
  return graph_of(a).emit(
      Op::kReshape, {a.id()},
      Tensor(std::move(shape), std::vector<double>(d.begin(), d.end())));
}

Var softmax(Var a) {
  require_rank(a, 1, "softmax");
  auto x = a.value().data();
  const double mx = *std::max_element(x.begin(), x.end());
  std::vector<double> out(x.size());
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = std::exp(x[i] - mx);
    total += out[i];
  }
  for (double& v : out) v /= total;
  return graph_of(a).emit(Op::kSoftmax, {a.id()},
                          Tensor(a.shape(), std::move(out)));
}

Var log_softmax(Var a) {
  require_rank(a, 1, "log_softmax");
  auto x = a.value().data();
  const double mx = *std::max_element(x.begin(), x.end());
  double total = 0.0;
  for (double v : x) total += std::exp(v - mx);
  const double log_total = std::log(total);
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] - mx) - log_total;
  return graph_of(a).emit(Op::kLogSoftmax, {a.id()},
                          Tensor(a.shape(), std::move(out)));
}

Var sum(Var a) {
  double total = 0.0;
  for (double v : a.value().data()) total += v;
  return graph_of(a).emit(Op::kSum, {a.id()}, Tensor::scalar(total));
}

Var sum(Var a, std::size_t axis) {
  require_rank(a, 2, "sum");
  require(axis < 2, ErrorCode::kShape,
          "sum: invalid axis " + std::to_string(axis));
  const std::size_t m = a.shape()[0];
  const std::size_t n = a.shape()[1];
  auto x = a.value().data();
  std::vector<double> out(axis == 0 ? n : m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[axis == 0 ? j : i] += x[i * n + j];
  }
  const std::size_t len = out.size();
  return graph_of(a).emit(Op::kSumAxis, {a.id()},
                          Tensor({len}, std::move(out)), 0.0, axis);
}

Var broadcast(Var a, Shape shape) {
  require(a.size() == 1, ErrorCode::kShape,
          "broadcast: source must be a single element");
  return graph_of(a).emit(Op::kBroadcast, {a.id()},
                          Tensor::filled(std::move(shape), a.value()[0]));
}

Var expand(Var a, std::size_t axis, std::size_t n) {
  require_rank(a, 1, "expand");
  require(axis < 2 && n > 0, ErrorCode::kShape, "expand: invalid axis or count");
  const std::size_t len = a.size();
  auto x = a.value().data();
  // axis 0: n rows each equal to a; axis 1: a column repeated n times.
  const std::size_t rows = axis == 0 ? n : len;
  const std::size_t cols = axis == 0 ? len : n;
  std::vector<double> out(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      out[i * cols + j] = axis == 0 ? x[j] : x[i];
    }
  }
  return graph_of(a).emit(Op::kExpand, {a.id()},
                          Tensor({rows, cols}, std::move(out)), 0.0, axis);
}

Var add_row_bias(Var m, Var bias) {
  Graph& g = graph_of(m, bias);
  require_rank(m, 2, "add_row_bias");
  require_rank(bias, 1, "add_row_bias");
  const std::size_t rows = m.shape()[0];
  const std::size_t cols = m.shape()[1];
  require(bias.size() == cols, ErrorCode::kShape,
          "add_row_bias: bias length does not match columns");
  auto x = m.value().data();
  auto b = bias.value().data();
  std::vector<double> out(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      out[i * cols + j] = x[i * cols + j] + b[j];
    }
  }
  return g.emit(Op::kAddRowBias, {m.id(), bias.id()},
                Tensor({rows, cols}, std::move(out)));
}

Var gather_rows(Var table, std::span<const std::size_t> indices) {
  require_rank(table, 2, "gather_rows");
  require(!indices.empty(), ErrorCode::kShape, "gather_rows: no indices");
  const std::size_t rows = table.shape()[0];
  const std::size_t cols = table.shape()[1];
  auto x = table.value().data();
  std::vector<double> out;
  out.reserve(indices.size() * cols);
  for (std::size_t idx : indices) {
    require(idx < rows, ErrorCode::kInvalidArgument,
            "gather_rows: index " + std::to_string(idx) + " out of range");
    out.insert(out.end(), x.begin() + idx * cols, x.begin() + (idx + 1) * cols);
  }
  return graph_of(table).emit(
      Op::kGatherRows, {table.id()},
      Tensor({indices.size(), cols}, std::move(out)), 0.0, 0,
      std::vector<std::size_t>(indices.begin(), indices.end()));
}

Var scatter_rows(Var rows, std::span<const std::size_t> indices,
                 std::size_t table_rows) {
  require_rank(rows, 2, "scatter_rows");
  require(rows.shape()[0] == indices.size(), ErrorCode::kShape,
          "scatter_rows: row count does not match indices");
  const std::size_t cols = rows.shape()[1];
  auto x = rows.value().data();
  std::vector<double> out(table_rows * cols, 0.0);
  for (std::size_t k = 0; k < indices.size(); ++k) {
    require(indices[k] < table_rows, ErrorCode::kInvalidArgument,
            "scatter_rows: index out of range");
    for (std::size_t j = 0; j < cols; ++j) {
      out[indices[k] * cols + j] += x[k * cols + j];
    }
  }
  return graph_of(rows).emit(
      Op::kScatterRows, {rows.id()},
      Tensor({table_rows, cols}, std::move(out)), 0.0, 0,
      std::vector<std::size_t>(indices.begin(), indices.end()));
}

Var stack(std::span<const Var> rows) {
  require(!rows.empty(), ErrorCode::kShape, "stack: no rows");
  Graph& g = graph_of(rows[0]);
  const std::size_t cols = rows[0].size();
  std::vector<NodeId> parents;
  std::vector<double> out;
  out.reserve(rows.size() * cols);
  for (const Var& r : rows) {
    graph_of(rows[0], r);
    require_rank(r, 1, "stack");
    require(r.size() == cols, ErrorCode::kShape, "stack: ragged rows");
    parents.push_back(r.id());
    auto d = r.value().data();
    out.insert(out.end(), d.begin(), d.end());
  }
  return g.emit(Op::kStack, std::move(parents),
                Tensor({rows.size(), cols}, std::move(out)));
}

Var row(Var m, std::size_t i) {
  require_rank(m, 2, "row");
  require(i < m.shape()[0], ErrorCode::kInvalidArgument, "row: out of range");
  const std::size_t cols = m.shape()[1];
  auto x = m.value().data();
  return graph_of(m).emit(
      Op::kRow, {m.id()},
      Tensor({cols}, std::vector<double>(x.begin() + i * cols,
                                         x.begin() + (i + 1) * cols)),
      0.0, i);
}

Var embed_row(Var v, std::size_t i, std::size_t rows) {
  require_rank(v, 1, "embed_row");
  require(i < rows, ErrorCode::kInvalidArgument, "embed_row: out of range");
  const std::size_t cols = v.size();
  std::vector<double> out(rows * cols, 0.0);
  auto x = v.value().data();
  std::copy(x.begin(), x.end(), out.begin() + i * cols);
  return graph_of(v).emit(Op::kEmbedRow, {v.id()},
                          Tensor({rows, cols}, std::move(out)), 0.0, i);
}

Var pick(Var v, std::size_t i) {
  require(i < v.size(), ErrorCode::kInvalidArgument,
          "pick: index " + std::to_string(i) + " out of range");
  return graph_of(v).emit(Op::kPick, {v.id()}, Tensor::scalar(v.value()[i]),
                          0.0, i);
}

Var embed_elem(Var s, std::size_t i, std::size_t n) {
  require(s.size() == 1 && i < n, ErrorCode::kInvalidArgument,
          "embed_elem: invalid arguments");
  std::vector<double> out(n, 0.0);
  out[i] = s.value()[0];
  return graph_of(s).emit(Op::kEmbedElem, {s.id()},
                          Tensor({n}, std::move(out)), 0.0, i);
}

}  // namespace hint::ad
