#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "semisym/jet.hpp"

namespace semisym {

using Complex = std::complex<double>;

enum class Variance { Down, Up };

inline constexpr int kMaxRank = 7;

/// 4^rank.
constexpr std::size_t tensor_size(int rank) {
  std::size_t n = 1;
  for (int i = 0; i < rank; ++i) n *= kDim;
  return n;
}

/// Row-major flat offset of an index tuple (first index slowest).
std::size_t flat_index(std::span<const int> idx);
/// Inverse of flat_index for a given rank.
std::array<int, kMaxRank> unflatten(std::size_t flat, int rank);

/// Dense numeric tensor at a point, complex-capable, with per-slot variance.
class TensorValue {
 public:
  TensorValue() = default;
  explicit TensorValue(std::vector<Variance> variance);
  static TensorValue all_down(int rank);

  int rank() const { return static_cast<int>(variance_.size()); }
  const std::vector<Variance>& variance() const { return variance_; }
  std::size_t size() const { return data_.size(); }

  Complex& operator[](std::size_t flat) { return data_[flat]; }
  const Complex& operator[](std::size_t flat) const { return data_[flat]; }
  Complex& at(std::initializer_list<int> idx);
  const Complex& at(std::initializer_list<int> idx) const;

  std::span<const Complex> data() const { return data_; }
  std::span<Complex> data() { return data_; }

  /// Largest |component|.
  double max_abs() const;

  TensorValue& operator+=(const TensorValue& o);
  TensorValue& operator-=(const TensorValue& o);
  TensorValue& operator*=(Complex s);
  friend TensorValue operator+(TensorValue a, const TensorValue& b) { return a += b; }
  friend TensorValue operator-(TensorValue a, const TensorValue& b) { return a -= b; }

 private:
  std::vector<Variance> variance_;
  std::vector<Complex> data_;
};

/// Raises (or lowers) one slot using the supplied inverse metric (or metric).
TensorValue raise_index(const TensorValue& t, int slot, const TensorValue& inverse_metric);
TensorValue lower_index(const TensorValue& t, int slot, const TensorValue& metric);

/// Swaps two slots (transposition), keeping each slot's variance with its data.
TensorValue swap_slots(const TensorValue& t, int a, int b);

/// max |a - b| over all components.
double max_abs_difference(const TensorValue& a, const TensorValue& b);

/// Tensor field represented by the Taylor jet of each component about the
/// evaluation point. Covariant derivatives lower the jet order by one.
class TensorField {
 public:
  TensorField() = default;
  TensorField(std::vector<Variance> variance, int order);
  static TensorField all_down(int rank, int order);

  int rank() const { return static_cast<int>(variance_.size()); }
  int order() const { return order_; }
  const std::vector<Variance>& variance() const { return variance_; }
  std::size_t size() const { return data_.size(); }

  Jet& operator[](std::size_t flat) { return data_[flat]; }
  const Jet& operator[](std::size_t flat) const { return data_[flat]; }

  /// Numeric value at the expansion point.
  TensorValue value() const;

 private:
  std::vector<Variance> variance_;
  int order_ = 0;
  std::vector<Jet> data_;
};

}  // namespace semisym
