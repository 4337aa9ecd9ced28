#include <gtest/gtest.h>

#include "keypoly/parse.hpp"
#include "keypoly/poly.hpp"
#include "support/naive.hpp"

using namespace keypoly;

namespace {

const FieldDescriptor F2 = FieldDescriptor::make(FieldKind::prime_field, 2);
const FieldDescriptor Q2 = FieldDescriptor::make(FieldKind::rationals_padic, 2);
const FieldDescriptor F2t = FieldDescriptor::make(FieldKind::ratfunc_tadic, 2);

Poly P(const std::string& s, const FieldDescriptor& f) { return parse_poly(s, f); }

XPoly random_xpoly(naive::Gen& g, const FieldDescriptor& f, int n) {
  std::vector<Poly> c;
  for (int i = 0, r = static_cast<int>(g.range(0, 4)); i <= r; ++i) c.push_back(g.poly(f, n - 1));
  return XPoly(f, c, n);
}

}  // namespace

TEST(PolyArith, Examples) {
  EXPECT_EQ(poly_arith(P("x+1", F2), P("x+1", F2), PolyOp::mul), P("x^2+1", F2));
  EXPECT_EQ(poly_arith(P("x-1", Q2), P("x+1", Q2), PolyOp::add), P("2x", Q2));
  EXPECT_EQ(poly_arith(P("x+t^-1", F2t), P("x", F2t), PolyOp::mul), P("x^2 + t^-1*x", F2t));
  EXPECT_THROW(P("x", F2) + P("x", Q2), Error);
}

TEST(PolyArith, RenderAndParseRoundTrip) {
  EXPECT_EQ(P("x^2+2x+4", Q2).str(), "x^2 + 2*x + 4");
  EXPECT_EQ(P("x - 1/2", Q2).str(), "x - 1/2");
  EXPECT_EQ(P("x^2 + x + t^-1", F2t).str(), "x^2 + x + t^-1");
  naive::Gen g(1);
  for (auto f : naive::test_fields()) {
    for (int n = 0; n < 50; ++n) {
      Poly a = g.poly(f, 5);
      EXPECT_EQ(P(a.str(), f), a) << a.str();
    }
  }
}

TEST(EuclidDiv, Examples) {
  auto [q, r] = euclid_div(P("x^2+2x+4", Q2), P("x-1", Q2));
  EXPECT_EQ(q, P("x+3", Q2));
  EXPECT_EQ(r, P("7", Q2));
  auto [q2, r2] = euclid_div(P("x+5", Q2), P("x^3", Q2));
  EXPECT_TRUE(q2.is_zero());
  EXPECT_EQ(r2, P("x+5", Q2));
  try {
    (void)euclid_div(P("x", Q2), Poly(Q2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DivisionByZero);
  }
  // Fractional exponents have no place in F2(t).
  EXPECT_THROW(P("x + t^(-1/2)", F2t), Error);
}

TEST(EuclidDiv, RoundTripAndUniqueness) {
  naive::Gen g(2);
  int cases = 0;
  for (auto f : naive::test_fields()) {
    for (int n = 0; n < 80; ++n) {
      Poly a = g.poly(f, 7), b = g.poly(f, 4);
      if (b.is_zero()) continue;
      auto [q, r] = euclid_div(a, b);
      EXPECT_EQ(q * b + r, a);
      EXPECT_LT(r.degree(), b.degree());
      // Shifting the quotient by any c breaks the degree bound on the remainder.
      Poly c = g.poly(f, 2);
      if (!c.is_zero()) EXPECT_GE((a - (q + c) * b).degree(), b.degree());
      ++cases;
    }
  }
  EXPECT_GE(cases, 200);
}

TEST(Hasse, Examples) {
  EXPECT_EQ(hasse_derivative(P("x^4", Q2), 2), P("6x^2", Q2));
  EXPECT_EQ(hasse_derivative(P("x^2+x+t^-1", F2t), 1), P("1", F2t));
  Poly f = P("3x^3 + x", Q2);
  EXPECT_EQ(hasse_derivative(f, 0), f);
  EXPECT_TRUE(hasse_derivative(f, 4).is_zero());
}

TEST(Hasse, MatchesPascalDefinition) {
  naive::Gen g(3);
  for (auto f : naive::test_fields()) {
    for (int n = 0; n < 50; ++n) {
      Poly a = g.poly(f, 9);
      for (int b = 0; b <= 10; ++b) EXPECT_EQ(hasse_derivative(a, b), naive::hasse(a, b));
    }
  }
}

TEST(Hasse, CompositionRule) {
  naive::Gen g(4);
  auto tri = naive::pascal(20);
  int cases = 0;
  for (auto f : naive::test_fields()) {
    for (int n = 0; n < 60; ++n) {
      Poly a = g.poly(f, 8);
      int i = static_cast<int>(g.range(0, 4)), k = static_cast<int>(g.range(0, 4));
      Poly lhs = hasse_derivative(hasse_derivative(a, i), k);
      Poly rhs = hasse_derivative(a, i + k).scaled(FieldElem::from_int(f, tri[i + k][i]));
      EXPECT_EQ(lhs, rhs);
      // Degree bound, with equality exactly when the binomial survives.
      Poly d = hasse_derivative(a, i);
      if (a.degree() >= i) {
        std::int64_t c = tri[a.degree()][i];
        bool survives = !FieldElem::from_int(f, c).is_zero();
        if (survives) EXPECT_EQ(d.degree(), a.degree() - i);
        else EXPECT_LT(d.degree(), a.degree() - i);
      }
      ++cases;
    }
  }
  EXPECT_GE(cases, 200);
}

TEST(XPolyOps, BoundIsEnforced) {
  EXPECT_THROW(XPoly(Q2, {P("x^2", Q2)}, 2), Error);
  XPoly l(Q2, {P("x", Q2), P("1", Q2)}, 2);
  try {
    (void)taylor_expand(l, P("x^2", Q2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegreeBound);
  }
}

TEST(XPolyOps, TaylorExamples) {
  XPoly sq(F2, {Poly(F2), Poly(F2), P("1", F2)}, 1);
  auto e = taylor_expand(sq, P("1", F2));
  ASSERT_EQ(e.size(), 3u);
  EXPECT_EQ(e[0], P("1", F2));
  EXPECT_TRUE(e[1].is_zero());
  EXPECT_EQ(e[2], P("1", F2));

  const FieldDescriptor pu = FieldDescriptor::parse("puiseux:2");
  XPoly L(pu, {P("t^(-1/8)", pu), P("1", pu), P("1", pu)}, 1);
  Poly a = P("t^(-1/16) + t", pu);
  auto te = taylor_expand(L, a);
  EXPECT_EQ(te[0], a * a + a + P("t^(-1/8)", pu));
  EXPECT_EQ(te[1], P("1", pu));
  EXPECT_EQ(te[2], P("1", pu));
}

TEST(XPolyOps, TaylorReconstruction) {
  naive::Gen g(5);
  int cases = 0;
  for (auto f : naive::test_fields()) {
    for (int n = 0; n < 60; ++n) {
      int bound = static_cast<int>(g.range(1, 3));
      XPoly l = random_xpoly(g, f, bound);
      Poly a = g.poly(f, bound - 1), b = g.poly(f, bound - 1);
      auto te = taylor_expand(l, a);
      Poly sum(f);
      for (std::size_t i = 0; i < te.size(); ++i) sum += te[i] * (b - a).pow(static_cast<unsigned>(i));
      EXPECT_EQ(sum, compose_x(l, b));
      for (std::size_t i = 0; i < te.size(); ++i) EXPECT_EQ(te[i], compose_x(hasse_derivative(l, static_cast<int>(i)), a));
      ++cases;
    }
  }
  EXPECT_GE(cases, 200);
}

TEST(XPolyOps, ComposeExamples) {
  XPoly l(F2t, {P("t^-1", F2t), P("1", F2t), P("1", F2t)}, 1);
  EXPECT_EQ(compose_x(l, Poly::x(F2t)), P("x^2+x+t^-1", F2t));
  XPoly m(Q2, {P("7", Q2), P("4", Q2), P("1", Q2)}, 1);
  EXPECT_EQ(compose_x(m, P("x-1", Q2)), P("x^2+2x+4", Q2));
  EXPECT_TRUE(compose_x(XPoly(Q2), P("x", Q2)).is_zero());
  EXPECT_EQ(m.str(), "X^2 + 4*X + 7");
}
