#include "semisym/tensor.hpp"

#include <algorithm>
#include <stdexcept>

namespace semisym {

std::size_t flat_index(std::span<const int> idx) {
  std::size_t f = 0;
  for (int i : idx) f = f * kDim + static_cast<std::size_t>(i);
  return f;
}

std::array<int, kMaxRank> unflatten(std::size_t flat, int rank) {
  std::array<int, kMaxRank> idx{};
  for (int s = rank - 1; s >= 0; --s) {
    idx[static_cast<std::size_t>(s)] = static_cast<int>(flat % kDim);
    flat /= kDim;
  }
  return idx;
}

TensorValue::TensorValue(std::vector<Variance> variance)
    : variance_(std::move(variance)), data_(tensor_size(rank())) {
  if (rank() > kMaxRank) throw std::length_error("tensor rank exceeds maximum");
}

TensorValue TensorValue::all_down(int rank) {
  return TensorValue(std::vector<Variance>(static_cast<std::size_t>(rank), Variance::Down));
}

Complex& TensorValue::at(std::initializer_list<int> idx) {
  if (static_cast<int>(idx.size()) != rank()) throw std::out_of_range("index arity mismatch");
  return data_[flat_index(std::span<const int>(idx.begin(), idx.size()))];
}

const Complex& TensorValue::at(std::initializer_list<int> idx) const {
  if (static_cast<int>(idx.size()) != rank()) throw std::out_of_range("index arity mismatch");
  return data_[flat_index(std::span<const int>(idx.begin(), idx.size()))];
}

double TensorValue::max_abs() const {
  double m = 0.0;
  for (const auto& c : data_) m = std::max(m, std::abs(c));
  return m;
}

TensorValue& TensorValue::operator+=(const TensorValue& o) {
  if (o.variance_ != variance_) throw std::invalid_argument("tensor shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

TensorValue& TensorValue::operator-=(const TensorValue& o) {
  if (o.variance_ != variance_) throw std::invalid_argument("tensor shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

TensorValue& TensorValue::operator*=(Complex s) {
  for (auto& c : data_) c *= s;
  return *this;
}

namespace {

TensorValue move_index(const TensorValue& t, int slot, const TensorValue& g, Variance from,
                       Variance to) {
  if (slot < 0 || slot >= t.rank()) throw std::out_of_range("slot out of range");
  if (t.variance()[static_cast<std::size_t>(slot)] != from)
    throw std::invalid_argument("slot has the wrong variance");
  auto var = t.variance();
  var[static_cast<std::size_t>(slot)] = to;
  TensorValue out(var);
  const int r = t.rank();
  for (std::size_t f = 0; f < out.size(); ++f) {
    auto idx = unflatten(f, r);
    const int a = idx[static_cast<std::size_t>(slot)];
    Complex s = 0.0;
    for (int b = 0; b < kDim; ++b) {
      idx[static_cast<std::size_t>(slot)] = b;
      s += g.at({a, b}) * t[flat_index(std::span<const int>(idx.data(), static_cast<std::size_t>(r)))];
    }
    out[f] = s;
  }
  return out;
}

}  // namespace

TensorValue raise_index(const TensorValue& t, int slot, const TensorValue& inverse_metric) {
  return move_index(t, slot, inverse_metric, Variance::Down, Variance::Up);
}

TensorValue lower_index(const TensorValue& t, int slot, const TensorValue& metric) {
  return move_index(t, slot, metric, Variance::Up, Variance::Down);
}

TensorValue swap_slots(const TensorValue& t, int a, int b) {
  auto var = t.variance();
  std::swap(var[static_cast<std::size_t>(a)], var[static_cast<std::size_t>(b)]);
  TensorValue out(var);
  const int r = t.rank();
  for (std::size_t f = 0; f < t.size(); ++f) {
    auto idx = unflatten(f, r);
    std::swap(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
    out[flat_index(std::span<const int>(idx.data(), static_cast<std::size_t>(r)))] = t[f];
  }
  return out;
}

double max_abs_difference(const TensorValue& a, const TensorValue& b) {
  if (a.size() != b.size()) throw std::invalid_argument("tensor shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

TensorField::TensorField(std::vector<Variance> variance, int order)
    : variance_(std::move(variance)), order_(order), data_(tensor_size(rank()), Jet(order)) {
  if (rank() > kMaxRank) throw std::length_error("tensor rank exceeds maximum");
}

TensorField TensorField::all_down(int rank, int order) {
  return TensorField(std::vector<Variance>(static_cast<std::size_t>(rank), Variance::Down), order);
}

TensorValue TensorField::value() const {
  TensorValue out(variance_);
  for (std::size_t i = 0; i < data_.size(); ++i) out[i] = data_[i].value();
  return out;
}

}  // namespace semisym
