#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "pcm/errors.hpp"

namespace pcm {

// Small dense vector. Every constructor validates finiteness, so downstream
// code can assume entries are well-formed doubles.
class Vec {
public:
  Vec() = default;

  explicit Vec(std::vector<double> data) : data_(std::move(data)) { validate(); }

  Vec(std::initializer_list<double> init) : data_(init) { validate(); }

  Vec(std::size_t dim, double fill) : data_(dim, fill) { validate(); }

  static Vec scalar(double x) { return Vec(std::vector<double>{x}); }

  static Vec zeros(std::size_t dim) { return Vec(std::vector<double>(dim, 0.0)); }

  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double operator[](std::size_t i) const { return data_[i]; }
  double& operator[](std::size_t i) { return data_[i]; }

  const std::vector<double>& data() const { return data_; }

  auto begin() const { return data_.begin(); }
  auto end() const { return data_.end(); }

private:
  void validate() const {
    for (double v : data_) {
      if (!std::isfinite(v)) {
        throw InvalidInput("vector entry is not finite");
      }
    }
  }

  std::vector<double> data_;
};

inline void check_same_dim(const Vec& a, const Vec& b, const char* where) {
  if (a.size() != b.size()) {
    throw InvalidInput(std::string(where) + ": dimension mismatch (" +
                       std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  }
}

inline double dot(const Vec& a, const Vec& b) {
  check_same_dim(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

inline Vec operator+(const Vec& a, const Vec& b) {
  check_same_dim(a, b, "operator+");
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return Vec(std::move(out));
}

inline Vec operator-(const Vec& a, const Vec& b) {
  check_same_dim(a, b, "operator-");
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return Vec(std::move(out));
}

inline Vec operator*(double c, const Vec& a) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = c * a[i];
  return Vec(std::move(out));
}

}  // namespace pcm
