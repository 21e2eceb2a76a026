#include "hawkins/exact_measure.hpp"
#include "hawkins/verify.hpp"
#include "support/oracle.hpp"

#include <gtest/gtest.h>

using namespace hawkins;

TEST(ElementarySet, Parse) {
  const ElementarySet e = ElementarySet::parse("2,3;5");
  EXPECT_EQ(e.elements, (std::vector<std::uint64_t>{2, 3}));
  EXPECT_EQ(e.cutoff, 5u);
  EXPECT_EQ(ElementarySet::parse(".;2").str(), "{.;2}");
  EXPECT_EQ(ElementarySet::parse(";2").str(), "{.;2}");
  EXPECT_EQ(ElementarySet::parse("{2,4;6}").str(), "{2,4;6}");
}

TEST(ElementarySet, RejectsMalformed) {
  for (const char* bad : {"2,3", "3,2;5", "2;2", "1;4", "2,x;5", "2;;5", "2;-3"})
    EXPECT_THROW(ElementarySet::parse(bad), std::invalid_argument) << bad;
}

TEST(Mu, DefinitionValues) {
  EXPECT_EQ(mu(ElementarySet::parse(".;2")), Rational(1));
  EXPECT_EQ(mu(ElementarySet::parse("2;3")), Rational(1));
  EXPECT_EQ(mu(ElementarySet::parse(".;3")), Rational(0));
  EXPECT_EQ(mu(ElementarySet::parse("2,3;4")), Rational(1, 2));
  EXPECT_EQ(mu(ElementarySet::parse("2;4")), Rational(1, 2));
  // 3 in: 1/2, 4 out: 1 - 1/3, 5 in: 1/3
  EXPECT_EQ(mu(ElementarySet::parse("2,3,5;6")), Rational(1, 9));
}

TEST(Mu, AgreesWithOracle) {
  const unsigned L = 9;
  const MeasureTable t = enumerate_level(L + 1);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto elems = t.elements(i);
    const Rational o = oracle::expect(L, [&](const oracle::History& h) {
      for (unsigned j = 2; j <= L; ++j)
        if (h.in[j] != std::binary_search(elems.begin(), elems.end(), j)) return oracle::Q(0);
      return oracle::Q(1);
    });
    ASSERT_EQ(t.measure(i), o) << ElementarySet(elems, L + 1).str();
  }
}

TEST(Enumerate, NormalizedAndConsistent) {
  for (std::uint64_t n = 2; n <= 14; ++n) EXPECT_EQ(enumerate_level(n).total(), Rational(1)) << n;
  const MeasureTable a = enumerate_level(8), b = enumerate_level(9);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(b.measure(i) + b.measure(i + a.size()), a.measure(i));
}

TEST(Enumerate, LevelFourRows) {
  const MeasureTable t = enumerate_level(4);
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(t.measure(0), Rational(0));      // {}
  EXPECT_EQ(t.measure(1), Rational(1, 2));   // {2}
  EXPECT_EQ(t.measure(2), Rational(0));      // {3}
  EXPECT_EQ(t.measure(3), Rational(1, 2));   // {2,3}
}

TEST(Enumerate, CapEnforced) {
  EXPECT_THROW(enumerate_level(19), ResourceLimitError);
  EXPECT_THROW(enumerate_level(1), std::invalid_argument);
}

TEST(Enumerate, MomentsAgreeWithOracle) {
  for (unsigned n = 2; n <= 11; ++n)
    for (unsigned k = 0; k <= 3; ++k) EXPECT_EQ(exact_moment(n, k), oracle::moment(n, k)) << n << "," << k;
  EXPECT_EQ(exact_moment(4, 1), Rational(5, 12));
}

TEST(Enumerate, MembershipProbability) {
  const Rational p = membership_prob(9, {5, 7}, {6});
  const Rational o = oracle::expect(8, [](const oracle::History& h) {
    return oracle::Q(h.in[5] && h.in[7] && !h.in[6] ? 1 : 0);
  });
  EXPECT_EQ(p, o);
}

TEST(Formulas, PatternProductMatchesBruteForce) {
  const Rational ys[] = {Rational(1), Rational(1, 2), Rational(5, 12), Rational(2, 7)};
  for (const Pattern& p : all_patterns(5))
    for (std::uint64_t m = 1; m <= 8; ++m)
      for (const Rational& y : ys)
        ASSERT_EQ(pattern_conditional_prob<Rational>(y, m, p), pattern_prob_bruteforce<Rational>(y, m, p))
            << p.str() << " m=" << m << " y=" << to_string(y);
}

// Integrating the conditional probability over y_{m+1} gives the unconditional
// pattern probability from the oracle.
TEST(Formulas, PatternPolynomialIntegrates) {
  for (const char* text : {"0,1", "0,2", "0,1,3"}) {
    const Pattern p = Pattern::parse(text);
    for (unsigned m = 2; m <= 6; ++m) {
      const unsigned L = m + 1 + p.span();
      const Rational o = oracle::expect(L, [&](const oracle::History& h) {
        for (unsigned o = 0, idx = 0; o <= p.span(); ++o) {
          const bool want = idx < p.offsets().size() && p.offsets()[idx] == o;
          if (want) ++idx;
          if (h.in[m + 1 + o] != want) return oracle::Q(0);
        }
        return oracle::Q(1);
      });
      const MeasureTable t = enumerate_level(m + 1);
      const Rational v = t.expectation(
          [&](std::size_t, const Rational& y) { return pattern_conditional_prob<Rational>(y, m, p); });
      EXPECT_EQ(v, o) << text << " m=" << m;
    }
  }
}

TEST(Formulas, TwinFormulaIntegrates) {
  for (std::uint64_t m = 2; m <= 8; ++m) {
    const MeasureTable t = enumerate_level(m);
    const Rational v =
        t.expectation([&](std::size_t, const Rational& y) { return twin_conditional_prob<Rational>(y, m); });
    EXPECT_EQ(v, membership_prob(m + 3, {m, m + 2}, {})) << m;
  }
}

TEST(Formulas, TwinConditionalValueAtMTwo) {
  // 2 is in; 4 joins with prob 1/3 if 3 is in, 1/2 otherwise
  EXPECT_EQ(twin_conditional_prob<Rational>(Rational(1), 2), Rational(5, 12));
}

TEST(Formulas, EventPolynomialMatchesBruteForce) {
  const Constraint c = Constraint::of(LooseTuple::parse("2,6"));
  const auto poly = event_polynomial<Rational>(5, c);
  for (const Rational& y : {Rational(1, 2), Rational(3, 10)})
    EXPECT_EQ(poly(y), event_prob_bruteforce<Rational>(y, 5, c));
}

TEST(VerifySuites, MeasureAndFormulasPass) {
  EXPECT_TRUE(verify_measure(12).pass());
  EXPECT_TRUE(verify_formulas(false).pass());
}

TEST(VerifySuites, CorruptFormulaFails) { EXPECT_FALSE(verify_formulas(true).pass()); }
