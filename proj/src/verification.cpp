#include "perronkit/verification.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "perronkit/partition.hpp"
#include "perronkit/perron.hpp"
#include "perronkit/spectral.hpp"
#include "perronkit/tensor_io.hpp"

namespace perronkit::verification {

namespace {

std::size_t checked_power(int n, int exponent) {
  std::size_t total = 1;
  for (int k = 0; k < exponent; ++k) {
    total *= static_cast<std::size_t>(n);
    if (total > kMaxDenseEntries) {
      throw std::length_error("dense oracle limited to " + std::to_string(kMaxDenseEntries) +
                              " entries");
    }
  }
  return total;
}

// Advances a base-n odometer; false once it wraps around.
bool next_tuple(std::vector<int>& tuple, int n) {
  for (std::size_t k = tuple.size(); k-- > 0;) {
    if (++tuple[k] < n) return true;
    tuple[k] = 0;
  }
  return false;
}

bool close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

DenseTensorView::DenseTensorView(const NonnegativeTensor& tensor) : shape_(tensor.shape()) {
  data_.assign(checked_power(shape_.dim, shape_.order), 0.0);
  for (std::size_t k = 0; k < tensor.nnz(); ++k) {
    std::size_t flat = 0;
    for (int i : tensor.index(k)) flat = flat * static_cast<std::size_t>(shape_.dim) + static_cast<std::size_t>(i);
    data_[flat] = tensor.value(k);
  }
}

double DenseTensorView::operator()(std::span<const int> index) const {
  if (index.size() != static_cast<std::size_t>(shape_.order)) {
    throw DimensionMismatch(static_cast<std::size_t>(shape_.order), index.size());
  }
  std::size_t flat = 0;
  for (int i : index) {
    if (i < 0 || i >= shape_.dim) throw std::out_of_range("index out of range");
    flat = flat * static_cast<std::size_t>(shape_.dim) + static_cast<std::size_t>(i);
  }
  return data_[flat];
}

Vector brute_force_apply(const DenseTensorView& tensor, std::span<const double> x) {
  const int n = tensor.shape().dim;
  const int m = tensor.shape().order;
  if (x.size() != static_cast<std::size_t>(n)) {
    throw DimensionMismatch(static_cast<std::size_t>(n), x.size());
  }
  Vector y(static_cast<std::size_t>(n), 0.0);
  std::vector<int> full(static_cast<std::size_t>(m), 0);
  for (int i = 0; i < n; ++i) {
    std::vector<int> tail(static_cast<std::size_t>(m - 1), 0);
    double sum = 0.0;
    do {
      full[0] = i;
      double product = 1.0;
      for (std::size_t k = 0; k < tail.size(); ++k) {
        full[k + 1] = tail[k];
        product *= x[static_cast<std::size_t>(tail[k])];
      }
      sum += tensor(full) * product;
    } while (next_tuple(tail, n));
    y[static_cast<std::size_t>(i)] = sum;
  }
  return y;
}

std::vector<std::vector<int>> enumerate_index_class(int j, const TensorShape& shape) {
  validate(shape);
  if (j < 0 || j >= shape.dim) throw std::out_of_range("index out of range");
  checked_power(shape.dim, shape.order - 1);
  std::vector<std::vector<int>> result;
  std::vector<int> tail(static_cast<std::size_t>(shape.order - 1), 0);
  do {
    if (std::find(tail.begin(), tail.end(), j) != tail.end()) result.push_back(tail);
  } while (next_tuple(tail, shape.dim));
  return result;
}

SquareMatrix majorization_by_enumeration(const DenseTensorView& tensor) {
  const int n = tensor.shape().dim;
  const int m = tensor.shape().order;
  SquareMatrix result(n);
  std::vector<int> full(static_cast<std::size_t>(m));
  for (int j = 0; j < n; ++j) {
    const auto tuples = enumerate_index_class(j, tensor.shape());
    for (int i = 0; i < n; ++i) {
      double sum = 0.0;
      for (const auto& tail : tuples) {
        full[0] = i;
        std::copy(tail.begin(), tail.end(), full.begin() + 1);
        sum += tensor(full);
      }
      result(i, j) = sum;
    }
  }
  return result;
}

MatrixReference matrix_reference(const SquareMatrix& matrix, double rho_equality_tol) {
  const int n = matrix.size();
  if (n < 1 || n > 50) throw std::invalid_argument("matrix_reference supports 1 <= n <= 50");
  const auto un = static_cast<std::size_t>(n);

  // Warshall closure of the reflexive adjacency relation.
  std::vector<std::vector<bool>> reach(un, std::vector<bool>(un, false));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) reach[i][j] = i == j || matrix(i, j) > 0.0;
  }
  for (std::size_t k = 0; k < un; ++k) {
    for (std::size_t i = 0; i < un; ++i) {
      if (!reach[i][k]) continue;
      for (std::size_t j = 0; j < un; ++j) {
        if (reach[k][j]) reach[i][j] = true;
      }
    }
  }

  std::vector<int> class_of(un, -1);
  std::vector<std::vector<int>> classes;
  for (std::size_t i = 0; i < un; ++i) {
    if (class_of[i] >= 0) continue;
    std::vector<int> members;
    for (std::size_t j = 0; j < un; ++j) {
      if (reach[i][j] && reach[j][i]) {
        members.push_back(static_cast<int>(j));
        class_of[j] = static_cast<int>(classes.size());
      }
    }
    classes.push_back(std::move(members));
  }

  // A class reaching more vertices cannot be reached from one reaching
  // fewer, so descending reach size is a topological order.
  auto reach_size = [&](const std::vector<int>& c) {
    return std::count(reach[static_cast<std::size_t>(c.front())].begin(),
                      reach[static_cast<std::size_t>(c.front())].end(), true);
  };
  std::stable_sort(classes.begin(), classes.end(), [&](const auto& a, const auto& b) {
    const auto ra = reach_size(a);
    const auto rb = reach_size(b);
    return ra != rb ? ra > rb : a.front() < b.front();
  });

  MatrixReference ref;
  ref.classes = classes;
  for (const auto& c : classes) {
    const std::size_t k = c.size();
    bool final_class = true;
    for (int i : c) {
      for (int j = 0; j < n; ++j) {
        if (matrix(i, j) > 0.0 && std::find(c.begin(), c.end(), j) == c.end()) final_class = false;
      }
    }
    ref.final_class.push_back(final_class);

    if (k == 1) {
      ref.class_radii.push_back(matrix(c[0], c[0]));
      continue;
    }
    // Power iteration on M_c + I with the 1-norm; the norm of (M+I)x for a
    // unit x converges to rho + 1.
    std::vector<double> x(k, 1.0 / static_cast<double>(k));
    std::vector<double> y(k);
    double estimate = 0.0;
    for (int step = 0; step < 100000; ++step) {
      double total = 0.0;
      for (std::size_t a = 0; a < k; ++a) {
        double s = x[a];
        for (std::size_t b = 0; b < k; ++b) s += matrix(c[a], c[b]) * x[b];
        y[a] = s;
        total += s;
      }
      double change = 0.0;
      for (std::size_t a = 0; a < k; ++a) {
        const double next = y[a] / total;
        change = std::max(change, std::abs(next - x[a]));
        x[a] = next;
      }
      const bool stagnant = std::abs(total - estimate) <= 1e-13 * total && change <= 1e-14;
      estimate = total;
      if (stagnant) break;
    }
    ref.class_radii.push_back(estimate - 1.0);
  }

  ref.rho = *std::max_element(ref.class_radii.begin(), ref.class_radii.end());
  bool strong = true;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const double r = ref.class_radii[c];
    if (ref.final_class[c]) {
      if (std::abs(r - ref.rho) > rho_equality_tol * ref.rho) strong = false;
    } else if (!(r < ref.rho * (1.0 - rho_equality_tol))) {
      strong = false;
    }
  }
  ref.strongly_nonnegative = strong;
  return ref;
}

NonnegativeTensor random_tensor(Rng& rng, const TensorShape& shape, double density, bool dyadic) {
  validate(shape);
  checked_power(shape.dim, shape.order);
  std::vector<Entry> entries;
  std::vector<int> tuple(static_cast<std::size_t>(shape.order), 0);
  do {
    if (rng.bernoulli(density)) {
      const double value =
          dyadic ? static_cast<double>(1 + rng.below(64)) / 64.0 : rng.uniform();
      entries.push_back({tuple, value});
    }
  } while (next_tuple(tuple, shape.dim));
  return NonnegativeTensor(shape, std::move(entries));
}

SquareMatrix random_matrix(Rng& rng, int n, double density, bool small_integers) {
  SquareMatrix result(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!rng.bernoulli(density)) continue;
      result(i, j) = small_integers ? static_cast<double>(1 + rng.below(2)) : rng.uniform();
    }
  }
  return result;
}

bool SelfCheckReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.failures == 0; });
}

namespace {

void record(CheckResult& check, bool ok, const std::string& detail) {
  ++check.instances;
  if (ok) return;
  if (check.failures == 0) check.first_failure = detail;
  ++check.failures;
}

TensorShape random_shape(Rng& rng, int max_order, int max_dim) {
  const int order = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_order - 1)));
  const int dim = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_dim)));
  return {order, dim};
}

std::vector<std::vector<int>> sorted_blocks(std::vector<std::vector<int>> blocks) {
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

}  // namespace

SelfCheckReport run_self_check(std::uint64_t seed, int instances) {
  if (instances < 1) throw std::invalid_argument("instances must be positive");
  Rng rng(seed);
  SelfCheckReport report;

  CheckResult apply_check{"apply-vs-dense", 0, 0, {}};
  for (int t = 0; t < instances; ++t) {
    const TensorShape shape = random_shape(rng, 4, 6);
    const NonnegativeTensor a = random_tensor(rng, shape, 0.3);
    Vector x(static_cast<std::size_t>(shape.dim));
    for (double& v : x) v = rng.uniform();
    const Vector fast = perronkit::apply(a, x);
    const Vector slow = brute_force_apply(DenseTensorView(a), x);
    bool ok = true;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (std::abs(fast[i] - slow[i]) > 1e-12 * std::abs(slow[i])) ok = false;
    }
    record(apply_check, ok, "instance " + std::to_string(t));
  }
  report.checks.push_back(apply_check);

  CheckResult major_check{"majorization-vs-enumeration", 0, 0, {}};
  for (int t = 0; t < instances; ++t) {
    const TensorShape shape = random_shape(rng, 4, 6);
    const NonnegativeTensor a = random_tensor(rng, shape, 0.2, true);
    record(major_check, majorization(a) == majorization_by_enumeration(DenseTensorView(a)),
           "instance " + std::to_string(t));
  }
  report.checks.push_back(major_check);

  CheckResult io_check{"text-round-trip", 0, 0, {}};
  for (int t = 0; t < instances; ++t) {
    const NonnegativeTensor a = random_tensor(rng, random_shape(rng, 4, 5), 0.3);
    std::stringstream buffer;
    write_tensor(buffer, a);
    record(io_check, read_tensor(buffer) == a, "instance " + std::to_string(t));
  }
  report.checks.push_back(io_check);

  CheckResult matrix_check{"matrix-frobenius-form", 0, 0, {}};
  FixedPointConfig config;
  config.power.tolerance = 1e-12;
  for (int t = 0; t < instances; ++t) {
    const int n = 1 + static_cast<int>(rng.below(8));
    const double density = 0.05 + 0.3 * rng.uniform();
    const SquareMatrix m = random_matrix(rng, n, density, t % 2 == 1);
    const MatrixReference ref = matrix_reference(m);
    const NonnegativeTensor a = from_matrix(m);
    const Classification cls = classify(a, config);
    const CanonicalPartition& p = cls.partition;

    std::string detail;
    if (sorted_blocks(p.blocks) != sorted_blocks(ref.classes)) detail = "classes differ";
    for (std::size_t b = 0; detail.empty() && b < p.blocks.size(); ++b) {
      const auto it = std::find(ref.classes.begin(), ref.classes.end(), p.blocks[b]);
      const auto c = static_cast<std::size_t>(it - ref.classes.begin());
      if (ref.final_class[c] != p.genuine[b]) detail = "final/genuine flags differ";
      if (!close(ref.class_radii[c], cls.block_spectra[b].rho, 1e-8)) detail = "class radii differ";
    }
    if (detail.empty() && cls.strongly_nonnegative() != ref.strongly_nonnegative) {
      detail = "classification differs";
    }
    record(matrix_check, detail.empty(), "instance " + std::to_string(t) + ": " + detail);
  }
  report.checks.push_back(matrix_check);

  return report;
}

}  // namespace perronkit::verification
