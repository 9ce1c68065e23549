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

#include "smt/field.h"

#include <algorithm>
#include <stdexcept>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace smt {

bool IsPrime(uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

absl::StatusOr<Field> Field::Create(uint64_t modulus) {
  if (modulus > kMaxModulus) {
    return absl::InvalidArgumentError(
        absl::StrCat("modulus ", modulus, " exceeds 2^31 - 1"));
  }
  if (!IsPrime(modulus)) {
    return absl::InvalidArgumentError(
        absl::StrCat("modulus ", modulus, " is not prime"));
  }
  return Field(modulus);
}

uint64_t Field::Inv(uint64_t a) const {
  // Fermat: a^(p-2).
  uint64_t result = 1;
  uint64_t base = a % modulus_;
  for (uint64_t e = modulus_ - 2; e > 0; e >>= 1) {
    if (e & 1) result = Mul(result, base);
    base = Mul(base, base);
  }
  return result;
}

void FieldElement::CheckSameField(const FieldElement& o) const {
  if (modulus_ != o.modulus_) {
    throw std::invalid_argument(absl::StrCat(
        "field modulus mismatch: ", modulus_, " vs ", o.modulus_));
  }
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  CheckSameField(o);
  uint64_t s = value_ + o.value_;
  return FieldElement(s >= modulus_ ? s - modulus_ : s, modulus_);
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  CheckSameField(o);
  return FieldElement(
      value_ >= o.value_ ? value_ - o.value_ : value_ + modulus_ - o.value_,
      modulus_);
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  CheckSameField(o);
  return FieldElement((value_ * o.value_) % modulus_, modulus_);
}

FieldElement FieldElement::operator-() const {
  return FieldElement(value_ == 0 ? 0 : modulus_ - value_, modulus_);
}

absl::StatusOr<FieldElement> FieldElement::Inverse() const {
  if (value_ == 0) {
    return absl::InvalidArgumentError("inverse of zero");
  }
  uint64_t result = 1;
  uint64_t base = value_;
  for (uint64_t e = modulus_ - 2; e > 0; e >>= 1) {
    if (e & 1) result = (result * base) % modulus_;
    base = (base * base) % modulus_;
  }
  return FieldElement(result, modulus_);
}

Polynomial::Polynomial(const Field& field, std::vector<uint64_t> coefficients)
    : field_(field), coefficients_(std::move(coefficients)) {
  for (uint64_t& c : coefficients_) c = field_.Reduce(c);
  Normalize();
}

void Polynomial::Normalize() {
  while (!coefficients_.empty() && coefficients_.back() == 0) {
    coefficients_.pop_back();
  }
}

FieldElement Polynomial::coefficient(size_t i) const {
  return FieldElement(i < coefficients_.size() ? coefficients_[i] : 0, field_);
}

uint64_t Polynomial::Evaluate(uint64_t x) const {
  x = field_.Reduce(x);
  uint64_t acc = 0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
    acc = field_.Add(field_.Mul(acc, x), *it);
  }
  return acc;
}

FieldElement Polynomial::Evaluate(const FieldElement& x) const {
  if (x.modulus() != field_.modulus()) {
    throw std::invalid_argument(absl::StrCat(
        "field modulus mismatch: ", x.modulus(), " vs ", field_.modulus()));
  }
  return FieldElement(Evaluate(x.value()), field_);
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
  if (p.coefficients_.empty()) return os << "0";
  bool first = true;
  for (size_t i = 0; i < p.coefficients_.size(); ++i) {
    if (p.coefficients_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << p.coefficients_[i];
    if (i == 1) os << "x";
    if (i > 1) os << "x^" << i;
  }
  return os;
}

namespace {

absl::Status CheckDistinct(std::span<const Point> points) {
  std::vector<uint64_t> xs;
  xs.reserve(points.size());
  for (const Point& p : points) xs.push_back(p.x);
  std::sort(xs.begin(), xs.end());
  auto dup = std::adjacent_find(xs.begin(), xs.end());
  if (dup != xs.end()) {
    return absl::InvalidArgumentError(
        absl::StrCat("duplicate x coordinate ", *dup));
  }
  return absl::OkStatus();
}

// Calls fn on every k-subset of {0..n-1}, in lexicographic order.
template <typename Fn>
void ForEachSubset(size_t n, size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<size_t> idx(k);
  for (size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

absl::StatusOr<Polynomial> Interpolate(const Field& field,
                                       std::span<const Point> points) {
  if (absl::Status s = CheckDistinct(points); !s.ok()) return s;
  std::vector<uint64_t> reduced_x;
  for (const Point& p : points) reduced_x.push_back(field.Reduce(p.x));
  {
    std::vector<uint64_t> sorted = reduced_x;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      return absl::InvalidArgumentError("x coordinates collide modulo p");
    }
  }
  const size_t n = points.size();
  std::vector<uint64_t> result(n, 0);
  for (size_t i = 0; i < n; ++i) {
    // basis = prod_{j != i} (x - x_j), scaled by y_i / prod (x_i - x_j).
    std::vector<uint64_t> basis{1};
    uint64_t denom = 1;
    for (size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      std::vector<uint64_t> next(basis.size() + 1, 0);
      for (size_t d = 0; d < basis.size(); ++d) {
        next[d + 1] = field.Add(next[d + 1], basis[d]);
        next[d] = field.Sub(next[d], field.Mul(basis[d], reduced_x[j]));
      }
      basis = std::move(next);
      denom = field.Mul(denom, field.Sub(reduced_x[i], reduced_x[j]));
    }
    uint64_t scale = field.Mul(field.Reduce(points[i].y), field.Inv(denom));
    for (size_t d = 0; d < basis.size(); ++d) {
      result[d] = field.Add(result[d], field.Mul(basis[d], scale));
    }
  }
  return Polynomial(field, std::move(result));
}

bool ConsistentWithDegree(const Field& field, std::span<const Point> points,
                          int max_degree) {
  const size_t base = static_cast<size_t>(max_degree) + 1;
  if (points.size() <= base) return true;
  auto poly = Interpolate(field, points.first(base));
  if (!poly.ok()) return false;
  for (size_t i = base; i < points.size(); ++i) {
    if (poly->Evaluate(points[i].x) != field.Reduce(points[i].y)) return false;
  }
  return true;
}

absl::StatusOr<std::optional<Decoded>> DecodeWithErrors(
    const Field& field, std::span<const Point> points, int target_degree,
    int max_errors) {
  if (absl::Status s = CheckDistinct(points); !s.ok()) return s;
  if (target_degree < 0 || max_errors < 0) {
    return absl::InvalidArgumentError("negative degree or error bound");
  }
  const int n = static_cast<int>(points.size());
  const int need = n - max_errors;
  // Fewer than degree + 1 required agreements never pins down a polynomial.
  if (need < target_degree + 1) return std::optional<Decoded>();

  std::vector<Polynomial> candidates;
  std::vector<Point> subset(target_degree + 1);
  bool failed = false;
  ForEachSubset(points.size(), subset.size(), [&](const std::vector<size_t>& idx) {
    if (failed) return;
    for (size_t i = 0; i < idx.size(); ++i) subset[i] = points[idx[i]];
    auto poly = Interpolate(field, subset);
    if (!poly.ok()) {
      failed = true;
      return;
    }
    int agree = 0;
    for (const Point& p : points) {
      if (poly->Evaluate(p.x) == field.Reduce(p.y)) ++agree;
    }
    if (agree >= need &&
        std::find(candidates.begin(), candidates.end(), *poly) ==
            candidates.end()) {
      candidates.push_back(*std::move(poly));
    }
  });
  if (failed) return absl::InvalidArgumentError("x coordinates collide modulo p");
  if (candidates.size() != 1) return std::optional<Decoded>();

  Decoded out{candidates.front(), {}};
  for (const Point& p : points) {
    if (out.polynomial.Evaluate(p.x) != field.Reduce(p.y)) {
      out.corrupted.push_back(p.x);
    }
  }
  std::sort(out.corrupted.begin(), out.corrupted.end());
  return out;
}

}  // namespace smt
