#include <gtest/gtest.h>

#include <cmath>

#include "minidil/roots.hpp"
#include "support.hpp"

using namespace minidil;

namespace {

IntPoly P(const char* s) { return parse_poly(s); }

BigRational dec(const char* s) { return parse_rational(s); }

IntPoly minispec(int n, int i) {
  return IntPoly::monomial(2 * n) - IntPoly::monomial(2 * n - i) - IntPoly::monomial(i) - IntPoly::one();
}

// Independent float check: bisection in long double on [1, 1 + max|c|].
long double float_largest_root(const IntPoly& p) {
  std::vector<long double> c;
  long double bound = 0;
  for (const auto& v : p.coefficients()) {
    c.push_back(v.get_d());
    bound = std::max(bound, std::fabs(static_cast<long double>(v.get_d())));
  }
  auto f = [&](long double x) {
    long double r = 0;
    for (std::size_t i = c.size(); i-- > 0;) r = r * x + c[i];
    return r;
  };
  long double lo = 1, hi = 1 + bound;
  for (int s = 0; s < 200; ++s) {
    long double mid = (lo + hi) / 2;
    (f(mid) < 0 ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

TEST(Roots, CauchyBound) {
  EXPECT_EQ(cauchy_bound(P("x^3 - x^2 - x - 1")), 2);
  EXPECT_EQ(cauchy_bound(P("x^2 - 3x + 1")), 4);
  EXPECT_EQ(cauchy_bound(P("x^19 - x^10 - x^9 - 1")), 2);
}

TEST(Roots, EnclosureExamples) {
  RootEnclosure e = largest_root_enclosure(P("x^2 - x - 1"), dec("1e-6"));
  EXPECT_LE(e.width(), dec("1e-6"));
  EXPECT_LT(e.lo(), dec("1.6180340"));
  EXPECT_GT(e.hi(), dec("1.6180339"));
  EXPECT_EQ(to_decimal_string(e.midpoint(), 5), "1.61803");

  // p(1) = -1 for the printed Table 2 g=16 polynomial; its root is the 1.12876 value.
  const IntPoly t16 = P("x^16 - x^9 - x^8 - x^7 + 1");
  EXPECT_EQ(eval(t16, BigRational(1)), -1);
  EXPECT_EQ(to_decimal_string(largest_root_enclosure(t16).midpoint(), 5), "1.12876");

  EXPECT_THROW(largest_root_enclosure(P("x - 1")), NoSignChange);
  EXPECT_THROW(largest_root_enclosure(P("x^2 + 1")), NoSignChange);
  EXPECT_THROW(largest_root_enclosure(P("2x^2 - 3")), PreconditionError);
}

TEST(Roots, DeflationAndSturmFallback) {
  // p(1) = 0: the (x - 1) factor is deflated.
  RootEnclosure e = largest_root_enclosure(P("x^3 - x^2 - x - 1") * P("x - 1"));
  EXPECT_EQ(to_decimal_string(e.midpoint(), 5), "1.83929");
  // p(1) > 0 with two roots above 1.
  e = largest_root_enclosure(P("x^2 - 3x + 1"));
  EXPECT_EQ(to_decimal_string(e.midpoint(), 5), "2.61803");
  // Repeated dominant root.
  e = largest_root_enclosure(P("x^2 - x - 1") * P("x^2 - x - 1") * P("x^2 + 1"));
  EXPECT_EQ(to_decimal_string(e.midpoint(), 5), "1.61803");
  e.check_invariants();
}

TEST(Roots, CompareExamples) {
  RootEnclosure a = largest_root_enclosure(P("x^3 - x^2 - x - 1"), BigRational(1, 4));
  RootEnclosure b = largest_root_enclosure(P("x^4 - x^3 - x^2 + x - 1"), BigRational(1, 4));
  EXPECT_EQ(compare(a, b), RootOrder::Greater);
  EXPECT_EQ(compare(b, a), RootOrder::Less);
  RootEnclosure c = a;
  EXPECT_EQ(compare(a, c), RootOrder::SharedRoot);
  RootEnclosure prod = largest_root_enclosure(P("x^8 - x^5 - x^3 - 1"), BigRational(1, 8));
  RootEnclosure quot = largest_root_enclosure(divide_or_throw(P("x^8 - x^5 - x^3 - 1"), P("x^2 + 1")), BigRational(1, 8));
  EXPECT_EQ(compare(prod, quot), RootOrder::SharedRoot);
  EXPECT_TRUE(shares_enclosed_root(prod, quot));
}

TEST(Roots, JsonRoundTrip) {
  const RootEnclosure e = largest_root_enclosure(P("x^3 - x^2 - x - 1"), BigRational(1, 64));
  const auto j = to_json(e);
  EXPECT_EQ(j["poly"].dump(), "[1,-1,-1,-1]");
  const RootEnclosure back = enclosure_from_json(j);
  EXPECT_EQ(back.lo(), e.lo());
  EXPECT_EQ(back.hi(), e.hi());
  auto bad = j;
  bad["lo"] = "1/1";
  bad["hi"] = "3/2";
  EXPECT_THROW(enclosure_from_json(bad), InvariantViolation);
}

TEST(Roots, ModulusProfileExamples) {
  auto prof = root_modulus_profile(P("x^2 - 3x + 1"));
  ASSERT_TRUE(prof.converged);
  EXPECT_FALSE(prof.certified);
  std::vector<long double> m = prof.moduli;
  std::sort(m.begin(), m.end());
  EXPECT_NEAR(static_cast<double>(m[1]), 2.618033988749895, 1e-12);
  EXPECT_NEAR(static_cast<double>(m[0]), 0.381966011250105, 1e-12);
  EXPECT_NEAR(static_cast<double>(m[0] * m[1]), 1.0, 1e-12);

  prof = root_modulus_profile(P("x^7 - 1"));
  for (auto v : prof.moduli) EXPECT_NEAR(static_cast<double>(v), 1.0, 1e-12);

  prof = root_modulus_profile(P("x^3 - x^2 - x - 1"));
  m = prof.moduli;
  std::sort(m.begin(), m.end());
  EXPECT_NEAR(static_cast<double>(m[2]), 1.839286755214161, 1e-12);
  EXPECT_GT(m[0], 1 / m[2]);
  EXPECT_LT(m[1], m[2]);
}

TEST(RootsProperty, SignCertificatesHoldAfterEveryRefine) {
  testgen::Gen g(41);
  for (int t = 0; t < 200; ++t) {
    const IntPoly p = g.class_shape(2, 14, 3);
    RootEnclosure e = largest_root_enclosure(p, BigRational(1, 2));
    for (int s = 0; s < 30; ++s) {
      e.bisect();
      EXPECT_LT(sign_at(e.working(), e.lo()), 0);
      EXPECT_GT(sign_at(e.working(), e.hi()), 0);
      EXPECT_GE(e.lo(), 1);
    }
    e.check_invariants();
    EXPECT_NEAR(static_cast<double>(to_long_double(e.midpoint())), static_cast<double>(float_largest_root(p)), 1e-7)
        << to_string(p);
  }
}

TEST(RootsProperty, MinispecMonotoneInI) {
  for (int n = 2; n <= 12; ++n)
    for (int i = 1; i + 1 <= n - 1; ++i) {
      RootEnclosure a = largest_root_enclosure(minispec(n, i + 1), BigRational(1, 16));
      RootEnclosure b = largest_root_enclosure(minispec(n, i), BigRational(1, 16));
      EXPECT_EQ(compare(a, b), RootOrder::Less) << n << "," << i;
    }
}

TEST(RootsProperty, MinispecBoundaryValues) {
  for (int n = 2; n <= 32; ++n)
    for (int i = 1; i <= n - 1; ++i) {
      const IntPoly g = minispec(n, i);
      EXPECT_EQ(eval(g, BigRational(1)), -2);
      const BigInt expected = (pow_int(BigInt(2), 2 * n - i) - 1) * (pow_int(BigInt(2), i) - 1) - 2;
      EXPECT_EQ(eval(g, BigRational(2)), BigRational(expected));
      EXPECT_GT(expected, 0);
    }
}

TEST(RootsProperty, ProfileProductIsOne) {
  testgen::Gen g(42);
  for (int t = 0; t < 150; ++t) {
    const IntPoly p = g.class_shape(2, 16, 2);
    const auto prof = root_modulus_profile(p);
    ASSERT_EQ(prof.moduli.size(), static_cast<std::size_t>(p.degree()));
    if (!prof.converged) continue;
    long double prod = 1, slack = 0;
    for (std::size_t i = 0; i < prof.moduli.size(); ++i) {
      prod *= prof.moduli[i];
      slack += prof.radii[i] / std::max<long double>(prof.moduli[i], 1e-30L);
    }
    EXPECT_NEAR(static_cast<double>(prod), 1.0, static_cast<double>(1e-9L + 2 * slack)) << to_string(p);
  }
}

TEST(RootsProperty, CompareIsConsistentWithFloats) {
  testgen::Gen g(43);
  for (int t = 0; t < 200; ++t) {
    const IntPoly p = g.class_shape(2, 10, 2), q = g.class_shape(2, 10, 2);
    RootEnclosure a = largest_root_enclosure(p, BigRational(1, 4));
    RootEnclosure b = largest_root_enclosure(q, BigRational(1, 4));
    const RootOrder o = compare(a, b);
    const long double x = float_largest_root(p), y = float_largest_root(q);
    if (o == RootOrder::SharedRoot) {
      EXPECT_NEAR(static_cast<double>(x), static_cast<double>(y), 1e-9);
    } else if (std::fabs(static_cast<double>(x - y)) > 1e-9) {
      EXPECT_EQ(o == RootOrder::Less, x < y) << to_string(p) << " vs " << to_string(q);
    }
  }
}
