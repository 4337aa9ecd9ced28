#include <gtest/gtest.h>

#include <algorithm>
#include <limits>

#include "keypoly/value.hpp"
#include "support/naive.hpp"

using namespace keypoly;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::Precondition;
}

}  // namespace

TEST(ValueGroup, Arithmetic) {
  EXPECT_EQ(vg_arith(Value(1, 2), Value(1, 3), VgOp::add), Value(5, 6));
  EXPECT_EQ(vg_arith(Value::infinity(), Value(-7, 2), VgOp::add), Value::infinity());
  EXPECT_EQ(vg_arith(Value(-1, 8), Value(-1, 16), VgOp::sub), Value(-1, 16));
  EXPECT_EQ(vg_arith(Value(3, 4), Value(), VgOp::negate), Value(-3, 4));
  EXPECT_EQ(Value::infinity() - Value(5), Value::infinity());
}

TEST(ValueGroup, UndefinedOperations) {
  EXPECT_EQ(kind_of([] { return Value::infinity() - Value::infinity(); }), ErrorKind::UndefinedDifference);
  EXPECT_EQ(kind_of([] { return vg_scale(Value::infinity(), 0); }), ErrorKind::UndefinedProduct);
}

TEST(ValueGroup, Scale) {
  EXPECT_EQ(vg_scale(Value(-1, 16), 2), Value(-1, 8));
  EXPECT_EQ(vg_scale(Value(3, 4), 0), Value(0));
  EXPECT_EQ(vg_scale(Value::infinity(), 5), Value::infinity());
  EXPECT_EQ(vg_divide(Value(3, 4), 3), Value(1, 4));
}

TEST(ValueGroup, OverflowIsDetected) {
  const std::int64_t big = std::numeric_limits<std::int64_t>::max();
  EXPECT_EQ(kind_of([&] { return Rational(big) + Rational(1); }), ErrorKind::Overflow);
  EXPECT_EQ(kind_of([&] { return Rational(big / 2 + 1) * Rational(2); }), ErrorKind::Overflow);
  EXPECT_EQ(kind_of([&] { return Rational(1, big) + Rational(1, big - 1); }), ErrorKind::Overflow);
  EXPECT_EQ(kind_of([&] { return vg_scale(Value(big), 3); }), ErrorKind::Overflow);
}

TEST(ValueGroup, ParseAndRender) {
  EXPECT_EQ(Value(-3, 6).str(), "-1/2");
  EXPECT_EQ(Value::infinity().str(), "inf");
  EXPECT_EQ(Value::parse("-1/2"), Value(-1, 2));
  EXPECT_EQ(Value::parse("oo"), Value::infinity());
  EXPECT_EQ(Rational::parse(" -3/6 "), Rational(-1, 2));
  EXPECT_THROW(Rational::parse("1/0"), Error);
}

TEST(ValueGroup, OrderAxiomsOnRandomTriples) {
  naive::Gen g(11);
  for (int n = 0; n < 500; ++n) {
    auto pick = [&] {
      if (g.range(0, 9) == 0) return Value::infinity();
      return Value(g.range(-20, 20), g.range(1, 12));
    };
    Value a = pick(), b = pick();
    Value c(g.range(-20, 20), g.range(1, 12));
    int rel = (a < b) + (a == b) + (a > b);
    EXPECT_EQ(rel, 1);
    if (a < b) EXPECT_LT(a + c, b + c);
    if (a.is_infinite()) EXPECT_GT(a, c);
  }
}

TEST(Minimizer, BoundedClosedForm) {
  MinimizerInput in{{{Rational(0), 2}, {Rational(1, 2), 1}},
                    GammaSequence::closed_form([](std::int64_t s) { return Rational(1) - Rational(1, s); }, Rational(1))};
  auto r = kaplansky_minimizer(in);
  EXPECT_EQ(r.position, 1u);
  EXPECT_EQ(r.threshold, 2);
  EXPECT_FALSE(r.horizon_certified_only);
}

TEST(Minimizer, UnboundedClosedForm) {
  MinimizerInput in{{{Rational(0), 2}, {Rational(5), 1}},
                    GammaSequence::closed_form([](std::int64_t s) { return Rational(s); }, std::nullopt)};
  auto r = kaplansky_minimizer(in);
  EXPECT_EQ(r.position, 1u);
  EXPECT_EQ(r.threshold, 5);
}

TEST(Minimizer, SingleCandidate) {
  MinimizerInput in{{{Rational(0), 3}}, GammaSequence::from_list({Rational(-1), Rational(0)}, 4)};
  auto r = kaplansky_minimizer(in);
  EXPECT_EQ(r.position, 0u);
  EXPECT_EQ(r.threshold, 4);
}

TEST(Minimizer, RejectsRepeatedSlopesAndShortLists) {
  MinimizerInput tie{{{Rational(0), 1}, {Rational(0), 1}}, GammaSequence::from_list({Rational(0), Rational(1)})};
  EXPECT_EQ(kind_of([&] { return kaplansky_minimizer(tie); }), ErrorKind::Precondition);
  MinimizerInput one{{{Rational(0), 1}, {Rational(1), 2}}, GammaSequence::from_list({Rational(0)})};
  EXPECT_EQ(kind_of([&] { return kaplansky_minimizer(one); }), ErrorKind::NoEventualMinimizer);
}

TEST(Minimizer, AgreesWithBruteForceOnExplicitLists) {
  naive::Gen g(20181019);
  int certified = 0;
  for (int n = 0; n < 300; ++n) {
    std::vector<std::pair<Rational, std::int64_t>> terms;
    std::vector<AffineTerm> input;
    std::vector<std::int64_t> slopes{1, 2, 3, 4, 5};
    std::shuffle(slopes.begin(), slopes.end(), g.engine());
    for (int i = 0, k = static_cast<int>(g.range(1, 4)); i < k; ++i) {
      Rational beta(g.range(-8, 8), g.range(1, 4));
      terms.emplace_back(beta, slopes[i]);
      input.push_back({beta, slopes[i]});
    }
    std::vector<Rational> gamma;
    Rational cur(g.range(-6, 0));
    for (int i = 0, k = static_cast<int>(g.range(2, 10)); i < k; ++i) {
      gamma.push_back(cur);
      cur += Rational(g.range(1, 4), g.range(1, 8));
    }
    auto brute = naive::brute_minimizer(terms, gamma, 1);
    MinimizerInput in{input, GammaSequence::from_list(gamma)};
    if (terms.size() > 1 && !(brute.winner && brute.certified)) {
      EXPECT_EQ(kind_of([&] { return kaplansky_minimizer(in); }), ErrorKind::NoEventualMinimizer);
      continue;
    }
    auto r = kaplansky_minimizer(in);
    ++certified;
    EXPECT_EQ(r.position, *brute.winner);
    EXPECT_EQ(r.threshold, brute.threshold);
    EXPECT_TRUE(r.horizon_certified_only);
  }
  EXPECT_GT(certified, 100);
}
