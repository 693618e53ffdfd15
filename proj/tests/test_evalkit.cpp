#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "uavsem/errors.hpp"
#include "uavsem/evalkit.hpp"

using namespace uavsem;

namespace {

// Cell-by-cell pooling, kept deliberately naive.
struct Brute {
  double p, r, f;
};

Brute brute_prf(const LabelMatrix& t, const LabelMatrix& y, std::size_t lo, std::size_t hi) {
  long tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = lo; j < hi; ++j) {
      if (t[i][j] == 1 && y[i][j] == 1) ++tp;
      if (t[i][j] == 0 && y[i][j] == 1) ++fp;
      if (t[i][j] == 1 && y[i][j] == 0) ++fn;
    }
  }
  Brute b{0, 0, 0};
  if (tp + fp > 0) b.p = static_cast<double>(tp) / static_cast<double>(tp + fp);
  if (tp + fn > 0) b.r = static_cast<double>(tp) / static_cast<double>(tp + fn);
  if (b.p + b.r > 0) b.f = 2 * b.p * b.r / (b.p + b.r);
  return b;
}

LabelMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, double density) {
  std::bernoulli_distribution bit(density);
  LabelMatrix m(rows);
  for (auto& row : m) {
    for (auto& f : row) f = bit(rng);
  }
  return m;
}

LabelVector row_with(std::initializer_list<std::size_t> on) {
  LabelVector v{};
  for (auto i : on) v[i] = 1;
  return v;
}

}  // namespace

TEST(MainAccuracy, Basics) {
  const LabelMatrix t{row_with({0}), row_with({2})};
  EXPECT_DOUBLE_EQ(main_accuracy(t, t), 1.0);
  const LabelMatrix y{row_with({0}), row_with({3})};
  EXPECT_DOUBLE_EQ(main_accuracy(t, y), 0.5);
}

TEST(MainAccuracy, ShapeAndEmpty) {
  const LabelMatrix t{row_with({0})};
  const LabelMatrix y{row_with({0}), row_with({1})};
  try {
    main_accuracy(t, y);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::shape);
  }
  EXPECT_THROW(main_accuracy(LabelMatrix{}, LabelMatrix{}), Error);
}

TEST(MicroPrf, ToyExample) {
  // truth {[1,1,0],[0,1,1]}, pred {[1,0,0],[0,1,0]} in columns 4..6
  const LabelMatrix t{row_with({4, 5}), row_with({5, 6})};
  const LabelMatrix y{row_with({4}), row_with({5})};
  const auto m = micro_prf(t, y, IndexRange{4, 3});
  EXPECT_EQ(m.counts.tp, 2u);
  EXPECT_EQ(m.counts.fp, 0u);
  EXPECT_EQ(m.counts.fn, 2u);
  EXPECT_DOUBLE_EQ(m.precision, 1.0);
  EXPECT_DOUBLE_EQ(m.recall, 0.5);
  EXPECT_NEAR(m.f1, 2.0 / 3.0, 1e-15);
}

TEST(MicroPrf, PerfectAndEmpty) {
  std::mt19937_64 rng(4);
  const auto t = random_matrix(rng, 50, 0.3);
  const auto m = micro_prf(t, t, kAllRange);
  EXPECT_EQ(m.precision, 1.0);
  EXPECT_EQ(m.recall, 1.0);
  EXPECT_EQ(m.f1, 1.0);

  const LabelMatrix zeros(3);
  const auto z = micro_prf(zeros, zeros, kAllRange);
  EXPECT_EQ(z.precision, 0.0);
  EXPECT_EQ(z.recall, 0.0);
  EXPECT_EQ(z.f1, 0.0);
}

TEST(MicroPrf, ShapeMismatch) {
  const LabelMatrix a(2), b(3);
  try {
    micro_prf(a, b, kAllRange);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::shape);
  }
}

TEST(MicroPrf, MatchesBruteForce) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<std::size_t> rows(1, 60);
  std::uniform_real_distribution<double> dens(0.0, 1.0);
  for (int k = 0; k < 1000; ++k) {
    const auto n = rows(rng);
    const auto t = random_matrix(rng, n, dens(rng));
    const auto y = random_matrix(rng, n, dens(rng));
    for (auto r : {kAllRange, kReasonRange, kMainRange}) {
      const auto got = micro_prf(t, y, r);
      const auto want = brute_prf(t, y, r.first, r.end());
      ASSERT_NEAR(got.precision, want.p, 1e-12);
      ASSERT_NEAR(got.recall, want.r, 1e-12);
      ASSERT_NEAR(got.f1, want.f, 1e-12);
      if (got.precision + got.recall > 0) {
        ASSERT_NEAR(got.f1, 2 * got.precision * got.recall / (got.precision + got.recall), 1e-15);
      }
    }
  }
}

TEST(MicroPrf, RowPermutationInvariant) {
  std::mt19937_64 rng(13);
  auto t = random_matrix(rng, 40, 0.4);
  auto y = random_matrix(rng, 40, 0.4);
  const auto before = micro_prf(t, y, kAllRange);
  std::vector<std::size_t> idx(40);
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  LabelMatrix t2, y2;
  for (auto i : idx) {
    t2.push_back(t[i]);
    y2.push_back(y[i]);
  }
  const auto after = micro_prf(t2, y2, kAllRange);
  EXPECT_EQ(before.f1, after.f1);
  EXPECT_EQ(main_accuracy(t, y), main_accuracy(t2, y2));
}

TEST(AvgTagCount, Basics) {
  const LabelMatrix one{row_with({0, 4, 9, 14, 17, 20, 23, 26, 29, 32})};
  EXPECT_DOUBLE_EQ(avg_tag_count(one, kReasonRange), 9.0);
  EXPECT_THROW(avg_tag_count(LabelMatrix{}, kReasonRange), Error);
}
