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
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace smt {
namespace {

using ::testing::ElementsAre;
using ::testing::IsEmpty;

Field F(uint64_t p) { return *Field::Create(p); }

TEST(FieldTest, RejectsCompositeAndOversizedModuli) {
  EXPECT_FALSE(Field::Create(0).ok());
  EXPECT_FALSE(Field::Create(1).ok());
  EXPECT_FALSE(Field::Create(9).ok());
  EXPECT_FALSE(Field::Create((1ull << 31) + 11).ok());
  EXPECT_TRUE(Field::Create((1ull << 31) - 1).ok());
  EXPECT_TRUE(Field::Create(2).ok());
}

TEST(FieldTest, ElementArithmetic) {
  Field f11 = F(11);
  EXPECT_EQ((FieldElement(7, f11) + FieldElement(9, f11)).value(), 5u);
  EXPECT_EQ(FieldElement(3, f11).Inverse()->value(), 4u);
  Field f5 = F(5);
  EXPECT_EQ((FieldElement(0, f5) - FieldElement(2, f5)).value(), 3u);
  EXPECT_EQ((-FieldElement(2, f5)).value(), 3u);
  EXPECT_EQ((FieldElement(4, f5) * FieldElement(4, f5)).value(), 1u);
}

TEST(FieldTest, ValuesAreReducedOnConstruction) {
  EXPECT_EQ(FieldElement(23, F(11)).value(), 1u);
}

TEST(FieldTest, ModulusMismatchThrows) {
  FieldElement a(1, F(5));
  FieldElement b(1, F(11));
  EXPECT_THROW(a + b, std::invalid_argument);
  EXPECT_THROW(a * b, std::invalid_argument);
  EXPECT_THROW(a - b, std::invalid_argument);
}

TEST(FieldTest, InverseOfZeroFails) {
  EXPECT_FALSE(FieldElement(0, F(11)).Inverse().ok());
}

TEST(FieldTest, EveryNonzeroElementInvertsExhaustively) {
  for (uint64_t p : {2, 3, 5, 7, 11, 13}) {
    Field f = F(p);
    for (uint64_t a = 1; a < p; ++a) {
      EXPECT_EQ(f.Mul(a, f.Inv(a)), 1u) << "p=" << p << " a=" << a;
    }
  }
}

TEST(FieldTest, LargeModulusMultiplicationDoesNotOverflow) {
  Field f = F((1ull << 31) - 1);
  uint64_t a = (1ull << 31) - 2;  // -1
  EXPECT_EQ(f.Mul(a, a), 1u);
  EXPECT_EQ(f.Mul(a, f.Inv(a)), 1u);
}

TEST(PolynomialTest, EvaluatesByHorner) {
  Field f11 = F(11);
  Polynomial p(f11, {3, 2});
  EXPECT_EQ(p.Evaluate(FieldElement(4, f11)).value(), 0u);
  EXPECT_EQ(p.Evaluate(FieldElement(0, f11)).value(), 3u);
  Field f5 = F(5);
  EXPECT_EQ(Polynomial(f5, {1, 1, 1}).Evaluate(FieldElement(2, f5)).value(),
            2u);
}

TEST(PolynomialTest, EvaluateRejectsForeignPoint) {
  Polynomial p(F(11), {3, 2});
  EXPECT_THROW(p.Evaluate(FieldElement(1, F(5))), std::invalid_argument);
}

TEST(PolynomialTest, TrailingZerosAreNormalized) {
  Field f = F(5);
  Polynomial p(f, {1, 2, 0, 5});
  EXPECT_EQ(p.degree(), 1);
  EXPECT_THAT(p.coefficients(), ElementsAre(1, 2));
  EXPECT_EQ(Polynomial(f, {0, 0}).degree(), -1);
  EXPECT_EQ(Polynomial(f, {0, 0}), Polynomial(f));
}

TEST(InterpolateTest, TwoPointsByHandSolvedSystem) {
  // y = a + b x through (1,5), (2,7): b = 7 - 5 = 2, a = 5 - 2 = 3.
  Field f = F(11);
  std::vector<Point> pts = {{1, 5}, {2, 7}};
  EXPECT_EQ(*Interpolate(f, pts), Polynomial(f, {3, 2}));
}

TEST(InterpolateTest, SinglePointIsConstant) {
  Field f = F(11);
  std::vector<Point> pts = {{0, 9}};
  EXPECT_EQ(*Interpolate(f, pts), Polynomial(f, {9}));
}

TEST(InterpolateTest, IdentityLineNormalizesDegree) {
  Field f = F(5);
  std::vector<Point> pts = {{1, 1}, {2, 2}, {3, 3}};
  Polynomial p = *Interpolate(f, pts);
  EXPECT_EQ(p, Polynomial(f, {0, 1}));
  EXPECT_EQ(p.degree(), 1);
}

TEST(InterpolateTest, DuplicateXIsAnError) {
  Field f = F(11);
  std::vector<Point> pts = {{1, 5}, {1, 6}};
  EXPECT_EQ(Interpolate(f, pts).status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(InterpolateTest, RoundTripsRandomPolynomials) {
  std::mt19937_64 rng(7);
  for (uint64_t p : {5, 11}) {
    Field f = F(p);
    for (int trial = 0; trial < 300; ++trial) {
      int degree = static_cast<int>(rng() % 5);
      if (static_cast<uint64_t>(degree) + 1 > p) continue;
      std::vector<uint64_t> c(degree + 1);
      for (auto& v : c) v = rng() % p;
      Polynomial poly(f, c);
      std::vector<uint64_t> xs(p);
      for (uint64_t x = 0; x < p; ++x) xs[x] = x;
      std::shuffle(xs.begin(), xs.end(), rng);
      std::vector<Point> pts;
      for (int i = 0; i <= degree; ++i) {
        pts.push_back({xs[i], poly.Evaluate(xs[i])});
      }
      EXPECT_EQ(*Interpolate(f, pts), poly);
    }
  }
}

TEST(DecodeTest, CorrectsSingleError) {
  Field f = F(11);
  std::vector<Point> pts = {{1, 5}, {2, 1}, {3, 9}, {4, 0}};
  auto d = DecodeWithErrors(f, pts, 1, 1);
  ASSERT_TRUE(d.ok());
  ASSERT_TRUE(d->has_value());
  EXPECT_EQ((*d)->polynomial, Polynomial(f, {3, 2}));
  EXPECT_THAT((*d)->corrupted, ElementsAre(2));
}

TEST(DecodeTest, CleanPointsHaveNoCorruption) {
  Field f = F(11);
  std::vector<Point> pts = {{1, 5}, {2, 7}, {3, 9}, {4, 0}};
  auto d = DecodeWithErrors(f, pts, 1, 1);
  ASSERT_TRUE(d.ok() && d->has_value());
  EXPECT_EQ((*d)->polynomial, Polynomial(f, {3, 2}));
  EXPECT_THAT((*d)->corrupted, IsEmpty());
}

TEST(DecodeTest, NoLineThroughThreeOfFour) {
  Field f = F(5);
  std::vector<Point> pts = {{1, 0}, {2, 1}, {3, 0}, {4, 1}};
  auto d = DecodeWithErrors(f, pts, 1, 1);
  ASSERT_TRUE(d.ok());
  EXPECT_FALSE(d->has_value());
}

TEST(DecodeTest, DuplicateXIsAFault) {
  Field f = F(5);
  std::vector<Point> pts = {{1, 0}, {1, 1}, {3, 0}};
  EXPECT_FALSE(DecodeWithErrors(f, pts, 1, 1).ok());
}

TEST(DecodeTest, AmbiguityIsNoDecode) {
  // Two points, degree 1, one error allowed: every line through either
  // point qualifies.
  Field f = F(5);
  std::vector<Point> pts = {{1, 0}, {2, 3}};
  auto d = DecodeWithErrors(f, pts, 1, 1);
  ASSERT_TRUE(d.ok());
  EXPECT_FALSE(d->has_value());
}

// Independent oracle: try every polynomial of degree <= d by its
// coefficients and keep those agreeing with enough points.
std::vector<std::vector<uint64_t>> OracleCandidates(
    const Field& f, const std::vector<Point>& pts, int d, int max_errors) {
  const uint64_t p = f.modulus();
  std::vector<std::vector<uint64_t>> found;
  std::vector<uint64_t> c(d + 1, 0);
  while (true) {
    int agree = 0;
    for (const Point& pt : pts) {
      uint64_t y = 0;
      for (int i = d; i >= 0; --i) y = (y * pt.x + c[i]) % p;
      if (y == pt.y) ++agree;
    }
    if (agree >= static_cast<int>(pts.size()) - max_errors) found.push_back(c);
    int i = 0;
    while (i <= d && ++c[i] == p) c[i++] = 0;
    if (i > d) break;
  }
  return found;
}

TEST(DecodeTest, AgreesWithCoefficientOracle) {
  std::mt19937_64 rng(11);
  for (uint64_t p : {5, 7, 11}) {
    Field f = F(p);
    for (int trial = 0; trial < 400; ++trial) {
      size_t n = 1 + rng() % std::min<uint64_t>(6, p);
      int d = static_cast<int>(rng() % 3);
      int e = static_cast<int>(rng() % 3);
      std::vector<uint64_t> xs(p);
      for (uint64_t x = 0; x < p; ++x) xs[x] = x;
      std::shuffle(xs.begin(), xs.end(), rng);
      std::vector<Point> pts;
      for (size_t i = 0; i < n; ++i) pts.push_back({xs[i], rng() % p});
      auto got = DecodeWithErrors(f, pts, d, e);
      ASSERT_TRUE(got.ok());
      auto want = OracleCandidates(f, pts, d, e);
      if (want.size() != 1) {
        EXPECT_FALSE(got->has_value()) << "p=" << p << " n=" << n;
        continue;
      }
      ASSERT_TRUE(got->has_value());
      EXPECT_EQ((*got)->polynomial, Polynomial(f, want[0]));
      std::vector<uint64_t> bad;
      for (const Point& pt : pts) {
        if ((*got)->polynomial.Evaluate(pt.x) != pt.y) bad.push_back(pt.x);
      }
      std::sort(bad.begin(), bad.end());
      EXPECT_EQ((*got)->corrupted, bad);
    }
  }
}

TEST(DecodeTest, UniqueDecodingRadiusAlwaysRecovers) {
  std::mt19937_64 rng(3);
  Field f = F(11);
  for (int trial = 0; trial < 500; ++trial) {
    int d = static_cast<int>(rng() % 3);
    int e = static_cast<int>(rng() % 2) + (d == 0 ? 1 : 0);
    size_t n = d + 1 + 2 * e;
    std::vector<uint64_t> c(d + 1);
    for (auto& v : c) v = rng() % 11;
    Polynomial poly(f, c);
    std::vector<Point> pts;
    for (size_t i = 0; i < n; ++i) pts.push_back({i + 1, poly.Evaluate(i + 1)});
    std::set<uint64_t> corrupt;
    int errors = static_cast<int>(rng() % (e + 1));
    while (static_cast<int>(corrupt.size()) < errors) {
      corrupt.insert(1 + rng() % n);
    }
    for (uint64_t x : corrupt) {
      pts[x - 1].y = (pts[x - 1].y + 1 + rng() % 10) % 11;
    }
    auto got = DecodeWithErrors(f, pts, d, e);
    ASSERT_TRUE(got.ok() && got->has_value());
    EXPECT_EQ((*got)->polynomial, poly);
    EXPECT_EQ(std::set<uint64_t>((*got)->corrupted.begin(),
                                 (*got)->corrupted.end()),
              corrupt);
  }
}

}  // namespace
}  // namespace smt
