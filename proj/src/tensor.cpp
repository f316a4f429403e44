#include "perronkit/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "perronkit/error.hpp"

namespace perronkit {

namespace {

std::string format_tuple(std::span<const int> index) {
  std::string out = "(";
  for (std::size_t k = 0; k < index.size(); ++k) {
    if (k > 0) out += ",";
    out += std::to_string(index[k] + 1);
  }
  return out + ")";
}

}  // namespace

void validate(const TensorShape& shape) {
  if (shape.order < 2) {
    throw std::invalid_argument("tensor order must be at least 2, got " +
                                std::to_string(shape.order));
  }
  if (shape.dim < 1) {
    throw std::invalid_argument("tensor dimension must be at least 1, got " +
                                std::to_string(shape.dim));
  }
}

IndexPermutation::IndexPermutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int image : images_) {
    if (image < 0 || image >= size() || seen[static_cast<std::size_t>(image)]) {
      throw std::invalid_argument("not a permutation of 1.." + std::to_string(size()));
    }
    seen[static_cast<std::size_t>(image)] = true;
  }
}

IndexPermutation IndexPermutation::identity(int n) {
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 0);
  return IndexPermutation(std::move(images));
}

IndexPermutation IndexPermutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) {
    inv[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
  }
  return IndexPermutation(std::move(inv));
}

IndexPermutation compose(const IndexPermutation& sigma, const IndexPermutation& tau) {
  if (sigma.size() != tau.size()) {
    throw DimensionMismatch(static_cast<std::size_t>(sigma.size()),
                            static_cast<std::size_t>(tau.size()));
  }
  std::vector<int> images(static_cast<std::size_t>(sigma.size()));
  for (int i = 0; i < sigma.size(); ++i) images[static_cast<std::size_t>(i)] = sigma(tau(i));
  return IndexPermutation(std::move(images));
}

NonnegativeTensor::NonnegativeTensor(TensorShape shape) : shape_(shape) { validate(shape_); }

NonnegativeTensor::NonnegativeTensor(TensorShape shape, std::vector<Entry> entries)
    : shape_(shape) {
  validate(shape_);
  const auto m = static_cast<std::size_t>(shape_.order);

  std::erase_if(entries, [](const Entry& e) { return e.value == 0.0; });
  for (const Entry& e : entries) {
    if (e.index.size() != m) {
      throw std::invalid_argument("entry has " + std::to_string(e.index.size()) +
                                  " indices, tensor order is " + std::to_string(m));
    }
    for (int i : e.index) {
      if (i < 0 || i >= shape_.dim) {
        throw std::invalid_argument("index " + std::to_string(i + 1) + " in " +
                                    format_tuple(e.index) + " outside 1.." +
                                    std::to_string(shape_.dim));
      }
    }
    if (!(e.value > 0.0) || !std::isfinite(e.value)) {
      throw std::invalid_argument("entry " + format_tuple(e.index) +
                                  " must be a finite nonnegative value");
    }
  }

  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.index < b.index; });
  for (std::size_t k = 1; k < entries.size(); ++k) {
    if (entries[k].index == entries[k - 1].index) {
      throw std::invalid_argument("duplicate entry " + format_tuple(entries[k].index));
    }
  }

  indices_.reserve(entries.size() * m);
  values_.reserve(entries.size());
  for (const Entry& e : entries) {
    indices_.insert(indices_.end(), e.index.begin(), e.index.end());
    values_.push_back(e.value);
  }
}

double NonnegativeTensor::at(std::span<const int> index) const {
  if (index.size() != static_cast<std::size_t>(shape_.order)) {
    throw DimensionMismatch(static_cast<std::size_t>(shape_.order), index.size());
  }
  std::size_t lo = 0;
  std::size_t hi = nnz();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const auto probe = this->index(mid);
    if (std::lexicographical_compare(probe.begin(), probe.end(), index.begin(), index.end())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < nnz() && std::ranges::equal(this->index(lo), index)) return values_[lo];
  return 0.0;
}

std::vector<Entry> NonnegativeTensor::entries() const {
  std::vector<Entry> out;
  out.reserve(nnz());
  for (std::size_t k = 0; k < nnz(); ++k) {
    const auto idx = index(k);
    out.push_back({std::vector<int>(idx.begin(), idx.end()), values_[k]});
  }
  return out;
}

Vector apply(const NonnegativeTensor& tensor, std::span<const double> x) {
  const auto n = static_cast<std::size_t>(tensor.dim());
  if (x.size() != n) throw DimensionMismatch(n, x.size());

  Vector out(n, 0.0);
  const int m = tensor.order();
  for (std::size_t k = 0; k < tensor.nnz(); ++k) {
    const auto idx = tensor.index(k);
    double term = tensor.value(k);
    for (int p = 1; p < m; ++p) term *= x[static_cast<std::size_t>(idx[p])];
    out[static_cast<std::size_t>(idx[0])] += term;
  }
  return out;
}

NonnegativeTensor principal_subtensor(const NonnegativeTensor& tensor,
                                      std::span<const int> indices) {
  if (indices.empty()) throw std::invalid_argument("principal sub-tensor needs a nonempty index set");
  std::vector<int> position(static_cast<std::size_t>(tensor.dim()), -1);
  for (std::size_t k = 0; k < indices.size(); ++k) {
    const int i = indices[k];
    if (i < 0 || i >= tensor.dim()) {
      throw std::invalid_argument("index " + std::to_string(i + 1) + " outside 1.." +
                                  std::to_string(tensor.dim()));
    }
    if (k > 0 && i <= indices[k - 1]) {
      throw std::invalid_argument("principal sub-tensor indices must be strictly increasing");
    }
    position[static_cast<std::size_t>(i)] = static_cast<int>(k);
  }

  std::vector<Entry> kept;
  for (std::size_t k = 0; k < tensor.nnz(); ++k) {
    const auto idx = tensor.index(k);
    Entry e{std::vector<int>(idx.size()), tensor.value(k)};
    bool inside = true;
    for (std::size_t p = 0; p < idx.size() && inside; ++p) {
      e.index[p] = position[static_cast<std::size_t>(idx[p])];
      inside = e.index[p] >= 0;
    }
    if (inside) kept.push_back(std::move(e));
  }
  return NonnegativeTensor({tensor.order(), static_cast<int>(indices.size())}, std::move(kept));
}

NonnegativeTensor identity_tensor(TensorShape shape) {
  validate(shape);
  std::vector<Entry> diag;
  diag.reserve(static_cast<std::size_t>(shape.dim));
  for (int i = 0; i < shape.dim; ++i) {
    diag.push_back({std::vector<int>(static_cast<std::size_t>(shape.order), i), 1.0});
  }
  return NonnegativeTensor(shape, std::move(diag));
}

NonnegativeTensor permute(const NonnegativeTensor& tensor, const IndexPermutation& sigma) {
  if (sigma.size() != tensor.dim()) {
    throw DimensionMismatch(static_cast<std::size_t>(tensor.dim()),
                            static_cast<std::size_t>(sigma.size()));
  }
  // a_{j1..jm} lands at (sigma^{-1}(j1), ..., sigma^{-1}(jm)).
  const IndexPermutation inv = sigma.inverse();
  std::vector<Entry> moved = tensor.entries();
  for (Entry& e : moved) {
    for (int& i : e.index) i = inv(i);
  }
  return NonnegativeTensor(tensor.shape(), std::move(moved));
}

NonnegativeTensor scale(const NonnegativeTensor& tensor, double factor) {
  if (!(factor >= 0.0) || !std::isfinite(factor)) {
    throw std::invalid_argument("scale factor must be finite and nonnegative");
  }
  std::vector<Entry> scaled = tensor.entries();
  for (Entry& e : scaled) e.value *= factor;
  return NonnegativeTensor(tensor.shape(), std::move(scaled));
}

Vector elementwise_power(std::span<const double> x, int power) {
  Vector out(x.size());
  std::transform(x.begin(), x.end(), out.begin(), [power](double v) { return ipow(v, power); });
  return out;
}

double norm2(std::span<const double> x) {
  double sum = 0.0;
  for (double v : x) sum += v * v;
  return std::sqrt(sum);
}

}  // namespace perronkit
