#include "perronkit/graph.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>

#include "perronkit/error.hpp"

namespace perronkit {

SquareMatrix::SquareMatrix(int n, std::vector<double> row_major)
    : n_(n), data_(std::move(row_major)) {
  if (data_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw DimensionMismatch(static_cast<std::size_t>(n) * static_cast<std::size_t>(n),
                            data_.size());
  }
}

MajorizationMatrix majorization(const NonnegativeTensor& tensor) {
  MajorizationMatrix result(tensor.dim());
  std::vector<int> tail;
  for (std::size_t k = 0; k < tensor.nnz(); ++k) {
    const auto idx = tensor.index(k);
    tail.assign(idx.begin() + 1, idx.end());
    std::sort(tail.begin(), tail.end());
    tail.erase(std::unique(tail.begin(), tail.end()), tail.end());
    for (int j : tail) result(idx[0], j) += tensor.value(k);
  }
  return result;
}

SquareMatrix to_matrix(const NonnegativeTensor& matrix_tensor) {
  if (matrix_tensor.order() != 2) {
    throw std::invalid_argument("expected an order-2 tensor");
  }
  SquareMatrix result(matrix_tensor.dim());
  for (std::size_t k = 0; k < matrix_tensor.nnz(); ++k) {
    const auto idx = matrix_tensor.index(k);
    result(idx[0], idx[1]) = matrix_tensor.value(k);
  }
  return result;
}

NonnegativeTensor from_matrix(const SquareMatrix& matrix) {
  std::vector<Entry> entries;
  for (int i = 0; i < matrix.size(); ++i) {
    for (int j = 0; j < matrix.size(); ++j) {
      if (matrix(i, j) != 0.0) entries.push_back({{i, j}, matrix(i, j)});
    }
  }
  return NonnegativeTensor({2, matrix.size()}, std::move(entries));
}

SquareMatrix submatrix(const SquareMatrix& matrix, std::span<const int> indices) {
  const int k = static_cast<int>(indices.size());
  SquareMatrix result(k);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) result(a, b) = matrix(indices[a], indices[b]);
  }
  return result;
}

namespace {

std::vector<std::vector<int>> adjacency(const SquareMatrix& matrix) {
  const int n = matrix.size();
  std::vector<std::vector<int>> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (matrix(i, j) > 0.0) out[static_cast<std::size_t>(i)].push_back(j);
    }
  }
  return out;
}

// Iterative Tarjan; returns the component id of every vertex.
std::vector<int> tarjan(const std::vector<std::vector<int>>& adj, int& component_count) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> index(static_cast<std::size_t>(n), -1);
  std::vector<int> lowlink(static_cast<std::size_t>(n), 0);
  std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
  std::vector<int> component(static_cast<std::size_t>(n), -1);
  std::vector<int> stack;
  std::vector<std::pair<int, std::size_t>> call;  // (vertex, next edge)
  int counter = 0;
  component_count = 0;

  for (int root = 0; root < n; ++root) {
    if (index[static_cast<std::size_t>(root)] >= 0) continue;
    call.push_back({root, 0});
    while (!call.empty()) {
      auto& [v, edge] = call.back();
      const auto vi = static_cast<std::size_t>(v);
      if (edge == 0 && index[vi] < 0) {
        index[vi] = lowlink[vi] = counter++;
        stack.push_back(v);
        on_stack[vi] = true;
      }
      if (edge < adj[vi].size()) {
        const int w = adj[vi][edge++];
        const auto wi = static_cast<std::size_t>(w);
        if (index[wi] < 0) {
          call.push_back({w, 0});
        } else if (on_stack[wi]) {
          lowlink[vi] = std::min(lowlink[vi], index[wi]);
        }
        continue;
      }
      if (lowlink[vi] == index[vi]) {
        int w = -1;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[static_cast<std::size_t>(w)] = false;
          component[static_cast<std::size_t>(w)] = component_count;
        } while (w != v);
        ++component_count;
      }
      const int finished = v;
      call.pop_back();
      if (!call.empty()) {
        const auto parent = static_cast<std::size_t>(call.back().first);
        lowlink[parent] = std::min(lowlink[parent], lowlink[static_cast<std::size_t>(finished)]);
      }
    }
  }
  return component;
}

}  // namespace

CondensationOrder scc_condensation(const SquareMatrix& matrix) {
  const int n = matrix.size();
  const auto adj = adjacency(matrix);
  int count = 0;
  const std::vector<int> component = tarjan(adj, count);

  std::vector<std::vector<int>> members(static_cast<std::size_t>(count));
  for (int v = 0; v < n; ++v) members[static_cast<std::size_t>(component[static_cast<std::size_t>(v)])].push_back(v);

  // Kahn's algorithm on the component DAG, smallest member index first.
  std::vector<std::vector<int>> successors(static_cast<std::size_t>(count));
  std::vector<int> indegree(static_cast<std::size_t>(count), 0);
  for (int v = 0; v < n; ++v) {
    const int cv = component[static_cast<std::size_t>(v)];
    for (int w : adj[static_cast<std::size_t>(v)]) {
      const int cw = component[static_cast<std::size_t>(w)];
      if (cv != cw) successors[static_cast<std::size_t>(cv)].push_back(cw);
    }
  }
  for (auto& succ : successors) {
    std::sort(succ.begin(), succ.end());
    succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
    for (int c : succ) ++indegree[static_cast<std::size_t>(c)];
  }

  using Key = std::pair<int, int>;  // (smallest member, component)
  std::priority_queue<Key, std::vector<Key>, std::greater<>> ready;
  for (int c = 0; c < count; ++c) {
    if (indegree[static_cast<std::size_t>(c)] == 0) ready.push({members[static_cast<std::size_t>(c)].front(), c});
  }

  CondensationOrder order;
  while (!ready.empty()) {
    const int c = ready.top().second;
    ready.pop();
    order.blocks.push_back(members[static_cast<std::size_t>(c)]);
    for (int d : successors[static_cast<std::size_t>(c)]) {
      if (--indegree[static_cast<std::size_t>(d)] == 0) ready.push({members[static_cast<std::size_t>(d)].front(), d});
    }
  }
  return order;
}

bool is_irreducible(const SquareMatrix& matrix) {
  const int n = matrix.size();
  if (n <= 1) return true;

  auto reaches_all = [&](bool transpose) {
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<int> frontier{0};
    seen[0] = true;
    int visited = 1;
    while (!frontier.empty()) {
      const int v = frontier.back();
      frontier.pop_back();
      for (int w = 0; w < n; ++w) {
        const double weight = transpose ? matrix(w, v) : matrix(v, w);
        if (weight > 0.0 && !seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = true;
          ++visited;
          frontier.push_back(w);
        }
      }
    }
    return visited == n;
  };
  return reaches_all(false) && reaches_all(true);
}

bool is_weakly_irreducible(const NonnegativeTensor& tensor) {
  return is_irreducible(majorization(tensor));
}

}  // namespace perronkit
