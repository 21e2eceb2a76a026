#include "hawkins/moment_ladder.hpp"
#include "hawkins/verify.hpp"
#include "support/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace hawkins;

namespace {

const MomentTable& exact_table() {
  static const MomentTable t = build_moment_table(40, 8, LadderMode::exact);
  return t;
}

oracle::Q oracle_T_moment(unsigned N, const Pattern& p, unsigned power) {
  std::vector<unsigned> offs(p.offsets().begin(), p.offsets().end());
  return oracle::expect(N + p.span(), [&](const oracle::History& h) {
    return oracle::power(oracle::pattern_count(h, N, offs), power);
  });
}

}  // namespace

TEST(MomentTable, ExactMatchesOracle) {
  for (unsigned n = 2; n <= 11; ++n)
    for (unsigned k = 0; k <= 3; ++k) EXPECT_EQ(exact_table().exact_value(n, k), oracle::moment(n, k));
}

TEST(MomentTable, SmallValues) {
  EXPECT_EQ(exact_table().exact_value(2, 1), Rational(1));
  EXPECT_EQ(exact_table().exact_value(3, 1), Rational(1, 2));
  EXPECT_EQ(exact_table().exact_value(4, 1), Rational(5, 12));
  EXPECT_EQ(exact_table().exact_value(4, 2), Rational(13, 72));
}

TEST(MomentTable, FloatTracksExact) {
  const MomentTable f = build_moment_table(40, 6, LadderMode::floating);
  for (std::uint64_t n = 2; n <= 40; ++n)
    for (unsigned k = 0; k <= 6; ++k) EXPECT_NEAR(f.value(n, k), exact_table().value(n, k), 1e-12) << n << "," << k;
}

TEST(MomentTable, NodeCountStable) {
  LadderOptions a, b;
  a.nodes = 40;
  b.nodes = 64;
  const MomentTable ta = build_moment_table(3000, 3, LadderMode::floating, a);
  const MomentTable tb = build_moment_table(3000, 3, LadderMode::floating, b);
  for (unsigned k = 1; k <= 3; ++k)
    EXPECT_NEAR(ta.value(3000, k) / tb.value(3000, k), 1.0, 1e-9) << k;
}

// Property: moments decrease in n and in k, and satisfy Jensen.
TEST(MomentTable, MonotoneAndJensen) {
  const MomentTable t = build_moment_table(2000, 4, LadderMode::floating);
  for (std::uint64_t n = 3; n <= 2000; ++n) {
    ASSERT_LE(t.value(n, 1), t.value(n - 1, 1));
    ASSERT_LE(t.value(n, 2), t.value(n, 1));
    ASSERT_GE(t.value(n, 2), t.value(n, 1) * t.value(n, 1) * (1 - 1e-12));
  }
}

TEST(MomentTable, ExactCapAndRange) {
  EXPECT_THROW(build_moment_table(65, 2, LadderMode::exact), ResourceLimitError);
  EXPECT_THROW(exact_table().value(41, 1), std::invalid_argument);
  EXPECT_THROW(build_moment_table(1, 2, LadderMode::floating), std::invalid_argument);
  EXPECT_THROW(parse_ladder_mode("fast"), std::invalid_argument);
}

TEST(Expectations, WeightedSumSmallN) {
  EXPECT_EQ(expected_That<Rational>(2, exact_table()), Rational(1, 2));
  EXPECT_EQ(expected_That<Rational>(3, exact_table()), Rational(5, 6));
  EXPECT_EQ(expected_That<Rational>(4, exact_table()), Rational(55, 48));
  for (unsigned N = 2; N <= 8; ++N) {
    const auto o = oracle::expect(N + 2, [&](const oracle::History& h) { return oracle::weighted_twin(h, N); });
    EXPECT_EQ(expected_That<Rational>(N, exact_table()), o) << N;
  }
}

TEST(Expectations, PatternCountsMatchOracle) {
  for (const char* text : {"0,1", "0,2", "0,1,2", "0,1,3"}) {
    const Pattern p = Pattern::parse(text);
    for (unsigned N = 2; N <= 9; ++N)
      EXPECT_EQ(expected_T<Rational>(N, p, exact_table()), oracle_T_moment(N, p, 1)) << text << " N=" << N;
  }
}

TEST(Expectations, LooseTupleMatchesOracle) {
  const Constraint c = Constraint::of(LooseTuple::parse("2,4"));
  for (unsigned N = 2; N <= 8; ++N) {
    const auto o = oracle::expect(N + 4, [&](const oracle::History& h) {
      unsigned n = 0;
      for (unsigned m = 2; m <= N; ++m) n += h.in[m] && h.in[m + 2] && h.in[m + 4];
      return oracle::Q(n);
    });
    EXPECT_EQ(expected_count<Rational>(N, c, exact_table()), o) << N;
  }
}

TEST(Expectations, TableTooSmall) {
  const MomentTable small = build_moment_table(10, 2, LadderMode::exact);
  EXPECT_THROW(expected_T<Rational>(11, Pattern::parse("0,1"), small), std::invalid_argument);
  EXPECT_THROW(expected_T<Rational>(8, Pattern::parse("0,1,3"), small), std::invalid_argument);
}

TEST(Ladders, SecondMomentsMatchOracle) {
  for (const char* text : {"0,1", "0,2", "0,1,3"}) {
    const Pattern p = Pattern::parse(text);
    const auto series = pattern_ladder_series<Rational>(8, p);
    ASSERT_EQ(series.size(), 7u);
    for (const auto& pt : series) {
      EXPECT_EQ(pt.first, oracle_T_moment(pt.n, p, 1)) << text << " n=" << pt.n;
      EXPECT_EQ(pt.second, oracle_T_moment(pt.n, p, 2)) << text << " n=" << pt.n;
    }
  }
  EXPECT_NEAR(expected_T_second<Rational>(6, Pattern::parse("0,1")).get_d(), 1.85289, 1e-5);
}

TEST(Ladders, MixedMomentMatchesOracle) {
  const Pattern p = Pattern::parse("0,2");
  for (unsigned i : {1u, 2u}) {
    for (const auto& pt : pattern_ladder_series<Rational>(7, p, i)) {
      std::vector<unsigned> offs{0, 2};
      const auto o = oracle::expect(pt.n + 2, [&](const oracle::History& h) {
        return oracle::Q(oracle::power(oracle::y_final(h, pt.n + 1), i) * oracle::pattern_count(h, pt.n, offs));
      });
      EXPECT_EQ(pt.mixed, o) << "i=" << i << " n=" << pt.n;
    }
  }
}

TEST(Ladders, WeightedSecondMomentMatchesOracle) {
  for (const auto& pt : hat_ladder_series<Rational>(7)) {
    const auto o1 = oracle::expect(pt.n + 2, [&](const oracle::History& h) { return oracle::weighted_twin(h, pt.n); });
    const auto o2 = oracle::expect(pt.n + 2, [&](const oracle::History& h) {
      return oracle::power(oracle::weighted_twin(h, pt.n), 2);
    });
    EXPECT_EQ(pt.first, o1) << pt.n;
    EXPECT_EQ(pt.second, o2) << pt.n;
  }
}

TEST(Ladders, FloatTracksExact) {
  const Pattern p = Pattern::parse("0,2");
  const auto e = pattern_ladder_series<Rational>(16, p, 1);
  const auto f = pattern_ladder_series<double>(16, p, 1);
  ASSERT_EQ(e.size(), f.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    EXPECT_NEAR(f[i].first, e[i].first.get_d(), 1e-10 * (1 + e[i].first.get_d()));
    EXPECT_NEAR(f[i].second, e[i].second.get_d(), 1e-10 * (1 + e[i].second.get_d()));
    EXPECT_NEAR(f[i].mixed, e[i].mixed.get_d(), 1e-10);
  }
  const auto he = hat_ladder_series<Rational>(14);
  const auto hf = hat_ladder_series<double>(14);
  for (std::size_t i = 0; i < he.size(); ++i) {
    EXPECT_NEAR(hf[i].first, he[i].first.get_d(), 1e-10 * (1 + he[i].first.get_d()));
    EXPECT_NEAR(hf[i].second, he[i].second.get_d(), 1e-10 * (1 + he[i].second.get_d()));
  }
}

// Second moment of a count is at least the square of its mean.
TEST(Ladders, VarianceNonNegative) {
  for (const auto& pt : pattern_ladder_series<double>(3000, Pattern::parse("0,2")))
    ASSERT_GE(pt.second, pt.first * pt.first * (1 - 1e-12)) << pt.n;
  for (const auto& pt : hat_ladder_series<double>(3000)) ASSERT_GE(pt.second, pt.first * pt.first * (1 - 1e-12));
}

TEST(Ladders, ExactCap) {
  EXPECT_THROW(expected_T_second<Rational>(65, Pattern::parse("0,1")), ResourceLimitError);
  EXPECT_THROW(expected_That_second<Rational>(65), ResourceLimitError);
}

TEST(VerifySuites, LadderPasses) { EXPECT_TRUE(verify_ladder().pass()); }
