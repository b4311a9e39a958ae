#include <gtest/gtest.h>

#include <numeric>

#include "minidil/roots.hpp"
#include "minidil/specmat.hpp"
#include "support.hpp"

using namespace minidil;

namespace {

IntPoly P(const char* s) { return parse_poly(s); }

CompanionDigraph row(std::vector<long> r) {
  std::vector<BigInt> b(r.begin(), r.end());
  return CompanionDigraph(std::move(b));
}

}  // namespace

TEST(Specmat, CompanionOf) {
  const CompanionDigraph g = companion_of(P("x^3 - x^2 - x - 1"));
  EXPECT_EQ(g.dim(), 3u);
  EXPECT_EQ(g.bottom_row(), (std::vector<BigInt>{1, 1, 1}));
  const NonnegMatrix m = g.materialize();
  EXPECT_EQ(m, NonnegMatrix::from_rows({{0, 1, 0}, {0, 0, 1}, {1, 1, 1}}));
  EXPECT_EQ(companion_of(P("x^5 - 1")).bottom_row(), (std::vector<BigInt>{1, 0, 0, 0, 0}));
  EXPECT_THROW(companion_of(P("x^2 - 3x + 1")), SignViolation);
  EXPECT_THROW(companion_of(P("x^3 + x^2 - 1")), SignViolation);
}

TEST(Specmat, PrimitivityExamples) {
  auto r = is_primitive(companion_of(P("x^3 - x^2 - x - 1")));
  EXPECT_TRUE(r.strongly_connected);
  EXPECT_EQ(r.cycle_gcd, 1);
  EXPECT_TRUE(r.primitive);
  r = is_primitive(companion_of(P("x^3 - 1")));
  EXPECT_FALSE(r.primitive);
  EXPECT_EQ(r.cycle_gcd, 3);
  r = is_primitive(companion_of(P("x^4 - x^2 - 1")));
  EXPECT_FALSE(r.primitive);
  EXPECT_EQ(r.cycle_gcd, 2);
  r = is_primitive(NonnegMatrix::from_rows({{1, 1}, {0, 1}}));
  EXPECT_FALSE(r.strongly_connected);
  EXPECT_FALSE(r.cycle_gcd);
  EXPECT_FALSE(is_primitive(NonnegMatrix::zeros(1)).primitive);
  EXPECT_EQ(to_json(is_primitive(companion_of(P("x^3 - 1")))).dump(),
            R"({"cycle_gcd":3,"primitive":false,"strongly_connected":true})");
}

TEST(Specmat, WielandtOracleExamples) {
  EXPECT_TRUE(wielandt_oracle(companion_of(P("x^3 - x^2 - x - 1")).materialize()));
  EXPECT_FALSE(wielandt_oracle(NonnegMatrix::from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}})));
  EXPECT_TRUE(wielandt_oracle(NonnegMatrix::from_rows({{2}})));
  EXPECT_THROW(wielandt_oracle(NonnegMatrix::zeros(kWielandtMaxDim + 1)), DimensionTooLarge);
}

TEST(Specmat, DominatesExamples) {
  EXPECT_TRUE(dominates(row({1, 1, 1}), row({1, 1, 0})));
  const NonnegMatrix m = row({1, 1, 1}).materialize();
  EXPECT_FALSE(dominates(m, m));
  EXPECT_FALSE(dominates(row({1, 0, 2}), row({1, 1, 1})));
  EXPECT_FALSE(dominates(row({1, 1, 1}), row({1, 0, 2})));
  EXPECT_THROW(dominates(row({1, 1}), row({1, 1, 1})), DimensionMismatch);
  EXPECT_THROW(dominates(NonnegMatrix::zeros(2), NonnegMatrix::zeros(3)), DimensionMismatch);
}

TEST(Specmat, CollatzWielandtExamples) {
  SpectralBracket b = collatz_wielandt_bounds(companion_of(P("x^2 - x - 1")).materialize(), 40);
  EXPECT_LT(b.lower, BigRational("1618034/1000000"));
  EXPECT_GT(b.upper, BigRational("1618033/1000000"));
  EXPECT_EQ(to_decimal_string(b.lower, 5), "1.61803");
  b = collatz_wielandt_bounds(NonnegMatrix::from_rows({{3}}), 5);
  EXPECT_EQ(b.lower, 3);
  EXPECT_EQ(b.upper, 3);
  b = collatz_wielandt_bounds(companion_of(P("x^3 - x^2 - x - 1")).materialize(), 60);
  EXPECT_LT(b.lower, BigRational("1839287/1000000"));
  EXPECT_GT(b.upper, BigRational("1839286/1000000"));
  EXPECT_EQ(to_decimal_string(b.upper, 5), "1.83929");
  EXPECT_THROW(collatz_wielandt_bounds(companion_of(P("x^3 - 1")).materialize(), 3), NotPrimitive);
}

TEST(Specmat, NegativeEntriesRejected) {
  EXPECT_THROW(NonnegMatrix::from_rows({{1, -1}, {0, 1}}), PreconditionError);
}

TEST(Specmat, MatrixJsonRoundTrip) {
  const NonnegMatrix m = NonnegMatrix::from_rows({{0, 2}, {1, 3}});
  EXPECT_EQ(to_json(m).dump(), R"({"dim":2,"rows":[[0,2],[1,3]]})");
  EXPECT_EQ(matrix_from_json(to_json(m)), m);
}

TEST(SpecmatProperty, PrimitivityAgreesWithOracles) {
  testgen::Gen g(31);
  for (int t = 0; t < 3000; ++t) {
    const NonnegMatrix m = g.matrix(static_cast<std::size_t>(g.range(1, 8)), static_cast<int>(g.range(10, 60)), 2);
    const bool fast = is_primitive(m).primitive;
    EXPECT_EQ(fast, wielandt_oracle(m)) << to_json(m).dump();
    EXPECT_EQ(fast, testgen::brute_primitive(m)) << to_json(m).dump();
  }
}

TEST(SpecmatProperty, CompanionCycleGcdClosedForm) {
  testgen::Gen g(32);
  for (int t = 0; t < 2000; ++t) {
    const IntPoly p = g.class_shape(1, 12, 2);
    const CompanionDigraph c = companion_of(p);
    const PrimitivityReport r = is_primitive(c);
    ASSERT_TRUE(r.strongly_connected) << to_string(p);
    long expected = static_cast<long>(c.dim());
    for (std::size_t j = 1; j < c.dim(); ++j)
      if (c.bottom_row()[j] != 0) expected = std::gcd(expected, static_cast<long>(c.dim() - j));
    EXPECT_EQ(*r.cycle_gcd, expected) << to_string(p);
    EXPECT_EQ(companion_cycle_gcd(c), expected);
    EXPECT_EQ(r.primitive, testgen::brute_primitive(c.materialize()));
  }
}

TEST(SpecmatProperty, BracketsShrinkAndContainRoot) {
  testgen::Gen g(33);
  for (int t = 0; t < 150; ++t) {
    const IntPoly p = g.class_shape(2, 9, 2);
    const CompanionDigraph c = companion_of(p);
    if (!is_primitive(c).primitive) continue;
    const RootEnclosure e = largest_root_enclosure(p, BigRational(1, 1000000));
    CollatzWielandt cw(c.materialize());
    SpectralBracket prev = cw.bracket();
    for (int s = 0; s < 40; ++s) {
      cw.step();
      const SpectralBracket& b = cw.bracket();
      EXPECT_GE(b.lower, prev.lower);
      EXPECT_LE(b.upper, prev.upper);
      EXPECT_LE(b.lower, e.hi()) << to_string(p);
      EXPECT_GE(b.upper, e.lo()) << to_string(p);
      prev = b;
    }
  }
}

TEST(SpecmatProperty, DominanceSeparatesBrackets) {
  testgen::Gen g(34);
  int checked = 0;
  for (int t = 0; t < 400; ++t) {
    const NonnegMatrix l = g.matrix(static_cast<std::size_t>(g.range(1, 6)), 40, 2);
    if (!is_primitive(l).primitive) continue;
    NonnegMatrix tm = l;
    const std::size_t i = static_cast<std::size_t>(g.range(0, static_cast<std::int64_t>(l.dim()) - 1));
    const std::size_t j = static_cast<std::size_t>(g.range(0, static_cast<std::int64_t>(l.dim()) - 1));
    tm.set(i, j, tm(i, j) + 1);
    ASSERT_TRUE(dominates(tm, l));
    CollatzWielandt ct(tm), cl(l);
    int steps = 0;
    while (!(ct.bracket().lower > cl.bracket().upper) && steps < 5000) {
      ct.step();
      cl.step();
      ++steps;
    }
    EXPECT_LT(steps, 5000) << to_json(l).dump();
    ++checked;
  }
  EXPECT_GT(checked, 50);
}
