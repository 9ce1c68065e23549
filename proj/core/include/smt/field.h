// Copyright 2026 The Fullgen SMT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SMT_FIELD_H_
#define SMT_FIELD_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace smt {

// Largest modulus accepted; keeps every product below 2^62.
inline constexpr uint64_t kMaxModulus = (uint64_t{1} << 31) - 1;
inline constexpr uint64_t kDefaultSimulationModulus = kMaxModulus;

bool IsPrime(uint64_t n);

// A prime field GF(p). Validated once at construction; elements carry the
// modulus so that mixing fields is caught at the point of use.
class Field {
 public:
  static absl::StatusOr<Field> Create(uint64_t modulus);

  uint64_t modulus() const { return modulus_; }

  // Raw arithmetic on already-reduced residues. Used by the enumeration
  // engines where wrapping every value would dominate the run time.
  uint64_t Reduce(uint64_t v) const { return v % modulus_; }
  uint64_t Add(uint64_t a, uint64_t b) const {
    uint64_t s = a + b;
    return s >= modulus_ ? s - modulus_ : s;
  }
  uint64_t Sub(uint64_t a, uint64_t b) const {
    return a >= b ? a - b : a + modulus_ - b;
  }
  uint64_t Neg(uint64_t a) const { return a == 0 ? 0 : modulus_ - a; }
  uint64_t Mul(uint64_t a, uint64_t b) const { return (a * b) % modulus_; }
  // Precondition: a != 0.
  uint64_t Inv(uint64_t a) const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  explicit Field(uint64_t modulus) : modulus_(modulus) {}
  uint64_t modulus_;
};

class FieldElement {
 public:
  FieldElement(uint64_t value, const Field& field)
      : value_(value % field.modulus()), modulus_(field.modulus()) {}

  uint64_t value() const { return value_; }
  uint64_t modulus() const { return modulus_; }

  // Arithmetic throws std::invalid_argument on a modulus mismatch.
  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  // Fails with InvalidArgument for zero.
  absl::StatusOr<FieldElement> Inverse() const;

  friend bool operator==(const FieldElement&, const FieldElement&) = default;
  friend std::ostream& operator<<(std::ostream& os, const FieldElement& e) {
    return os << e.value_;
  }

 private:
  FieldElement(uint64_t value, uint64_t modulus)
      : value_(value), modulus_(modulus) {}
  void CheckSameField(const FieldElement& o) const;

  uint64_t value_;
  uint64_t modulus_;
};

// Dense polynomial over GF(p), constant term first. Trailing zero
// coefficients are stripped, so the zero polynomial has no coefficients and
// degree -1.
class Polynomial {
 public:
  explicit Polynomial(const Field& field) : field_(field) {}
  Polynomial(const Field& field, std::vector<uint64_t> coefficients);

  const Field& field() const { return field_; }
  int degree() const { return static_cast<int>(coefficients_.size()) - 1; }
  const std::vector<uint64_t>& coefficients() const { return coefficients_; }
  FieldElement coefficient(size_t i) const;

  // Horner evaluation. Throws std::invalid_argument on a modulus mismatch.
  FieldElement Evaluate(const FieldElement& x) const;
  uint64_t Evaluate(uint64_t x) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.field_ == b.field_ && a.coefficients_ == b.coefficients_;
  }
  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p);

 private:
  void Normalize();

  Field field_;
  std::vector<uint64_t> coefficients_;
};

struct Point {
  uint64_t x;
  uint64_t y;
};

// Lagrange interpolation: the unique polynomial of degree < points.size()
// through every point. Fails with InvalidArgument on a repeated x.
absl::StatusOr<Polynomial> Interpolate(const Field& field,
                                       std::span<const Point> points);

// True iff some polynomial of degree <= max_degree passes through all points.
bool ConsistentWithDegree(const Field& field, std::span<const Point> points,
                          int max_degree);

struct Decoded {
  Polynomial polynomial;
  // x coordinates of the points the polynomial disagrees with, ascending.
  std::vector<uint64_t> corrupted;
};

// Finds the polynomial of degree <= target_degree that agrees with at least
// points.size() - max_errors of the points. Returns nullopt when there is no
// such polynomial or when two distinct ones qualify. A repeated x is an
// error, not a decode failure.
//
// Brute force over (target_degree + 1)-subsets; intended for the handful of
// points the protocols here decode.
absl::StatusOr<std::optional<Decoded>> DecodeWithErrors(
    const Field& field, std::span<const Point> points, int target_degree,
    int max_errors);

}  // namespace smt

#endif  // SMT_FIELD_H_
