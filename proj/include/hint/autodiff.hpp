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

// Reverse-mode differentiation over an append-only graph of eagerly evaluated
// tensor operations. Backward rules are themselves expressed as graph
// operations, so a gradient obtained with create_graph set can be
// differentiated again.

#ifndef HINT_AUTODIFF_HPP_
#define HINT_AUTODIFF_HPP_

#include <cstddef>
#include <cstdint>
#include <deque>
#include <span>
#include <vector>

#include "hint/tensor.hpp"

namespace hint::ad {

using NodeId = std::uint32_t;

enum class Op : std::uint8_t {
  kLeaf,
  kAdd,
  kSub,
  kMul,
  kDiv,
  kAddScalar,
  kScale,
  kNeg,
  kTanh,
  kExp,
  kLog,
  kAbs,
  kMatMul,
  kTranspose,
  kReshape,
  kSoftmax,
  kLogSoftmax,
  kSum,
  kSumAxis,
  kBroadcast,
  kExpand,
  kAddRowBias,
  kGatherRows,
  kScatterRows,
  kStack,
  kRow,
  kEmbedRow,
  kPick,
  kEmbedElem,
};

const char* op_name(Op op);

struct Node {
  Op op = Op::kLeaf;
  std::vector<NodeId> parents;
  Tensor value;
  bool requires_grad = false;
  // Operation attributes; which ones are meaningful depends on `op`.
  double scalar = 0.0;
  std::size_t index = 0;
  std::vector<std::size_t> indices;
};

class Graph;

// Lightweight handle to a node. Only valid while its graph is alive.
class Var {
 public:
  Var() = default;
  Var(Graph* graph, NodeId id) : graph_(graph), id_(id) {}

  bool valid() const { return graph_ != nullptr; }
  Graph* graph() const { return graph_; }
  NodeId id() const { return id_; }

  const Node& node() const;
  const Tensor& value() const { return node().value; }
  const Shape& shape() const { return value().shape(); }
  std::size_t size() const { return value().size(); }
  bool requires_grad() const { return node().requires_grad; }
  double item() const { return value().item(); }

 private:
  Graph* graph_ = nullptr;
  NodeId id_ = 0;
};

class Graph {
 public:
  Graph() = default;
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;

  // Rejects non-finite values.
  Var leaf(Tensor value, bool requires_grad = false);
  Var constant(Tensor value) { return leaf(std::move(value), false); }

  const Node& node(NodeId id) const { return nodes_[id]; }
  std::size_t size() const { return nodes_.size(); }

  // Gradients of a single-element `output` with respect to each node in
  // `wrt`. Nodes that do not influence the output get an all-zero constant.
  // With create_graph set, the backward computation is recorded and the
  // returned nodes are differentiable.
  std::vector<Var> grad(Var output, std::span<const Var> wrt,
                        bool create_graph);

  bool recording() const { return recording_; }

  // Appends an operation node. Used by the op constructors.
  Var emit(Op op, std::vector<NodeId> parents, Tensor value,
           double scalar = 0.0, std::size_t index = 0,
           std::vector<std::size_t> indices = {});

 private:
  friend class RecordingScope;

  void backward_node(NodeId id, Var g, std::span<const char> need,
                     NodeId lo, std::vector<Var>& acc);

  // std::deque keeps node references stable across appends.
  std::deque<Node> nodes_;
  bool recording_ = true;
};

// Elementwise operations, also reachable through `elementwise`.
enum class Elementwise { kAdd, kSub, kMul, kDiv, kScale, kTanh, kExp, kLog };

// Binary ops accept identical shapes or a single-element operand, which is
// broadcast. `b` is ignored for unary ops.
Var elementwise(Elementwise op, Var a, Var b = {});
Var elementwise(Elementwise op, Var a, double b);

Var add(Var a, Var b);
Var sub(Var a, Var b);
Var mul(Var a, Var b);
Var div(Var a, Var b);
Var add_scalar(Var a, double s);
Var scale(Var a, double s);
Var neg(Var a);
Var tanh(Var a);
Var exp(Var a);
Var log(Var a);
Var abs(Var a);

Var matmul(Var a, Var b);
Var transpose(Var a);
Var reshape(Var a, Shape shape);

Var softmax(Var a);
Var log_softmax(Var a);

// Full reduction to shape {1}, or reduction of a matrix over one axis.
Var sum(Var a);
Var sum(Var a, std::size_t axis);

// Scalar to `shape`.
Var broadcast(Var a, Shape shape);
// Vector to matrix, repeating along `axis` `n` times (inverse of sum(axis)).
Var expand(Var a, std::size_t axis, std::size_t n);
// Matrix [m x n] plus vector [n] added to every row.
Var add_row_bias(Var m, Var bias);

Var gather_rows(Var table, std::span<const std::size_t> indices);
Var scatter_rows(Var rows, std::span<const std::size_t> indices,
                 std::size_t table_rows);
// Stacks equally sized vectors into a matrix, one per row.
Var stack(std::span<const Var> rows);
Var row(Var m, std::size_t i);
Var embed_row(Var v, std::size_t i, std::size_t rows);
Var pick(Var v, std::size_t i);
Var embed_elem(Var s, std::size_t i, std::size_t n);

inline Var operator+(Var a, Var b) { return add(a, b); }
inline Var operator-(Var a, Var b) { return sub(a, b); }
inline Var operator*(Var a, Var b) { return mul(a, b); }
inline Var operator/(Var a, Var b) { return div(a, b); }
inline Var operator-(Var a) { return neg(a); }

}  // namespace hint::ad

#endif  // HINT_AUTODIFF_HPP_
