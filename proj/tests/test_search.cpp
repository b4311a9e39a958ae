#include <gtest/gtest.h>

#include <cmath>

#include "minidil/search.hpp"
#include "minidil/verify.hpp"
#include "support.hpp"

using namespace minidil;

namespace {

IntPoly P(const char* s) { return parse_poly(s); }

std::string rounded(const RootEnclosure& e) { return to_decimal_string(e.midpoint(), 5); }

long double float_root(const IntPoly& p) {
  std::vector<long double> c;
  for (const auto& v : p.coefficients()) c.push_back(v.get_d());
  auto f = [&](long double x) {
    long double r = 0;
    for (std::size_t i = c.size(); i-- > 0;) r = r * x + c[i];
    return r;
  };
  long double lo = 1, hi = 4;
  for (int s = 0; s < 200; ++s) {
    long double mid = (lo + hi) / 2;
    (f(mid) < 0 ? lo : hi) = mid;
  }
  return lo;
}

const std::vector<std::pair<Family, int>>& small_specs() {
  static const std::vector<std::pair<Family, int>> v = {{Family::N, 2}, {Family::N, 3}, {Family::N, 4}, {Family::N, 5},
                                                        {Family::N, 6}, {Family::N, 7}, {Family::S, 2}, {Family::S, 3}};
  return v;
}

}  // namespace

TEST(Search, Examples) {
  SearchReport r = search_min(ClassSpec{Family::N, 2});
  EXPECT_EQ(r.minimizer, P("x^3 - x^2 - x - 1"));
  EXPECT_EQ(rounded(*r.enclosure), "1.83929");
  EXPECT_FALSE(r.tie);
  EXPECT_LT(r.enclosure->hi(), r.runner_up_enclosure->lo());
  r = search_min(ClassSpec{Family::N, 3});
  EXPECT_EQ(r.minimizer, P("x^5 - x^3 - x^2 - 1"));
  EXPECT_EQ(rounded(*r.enclosure), "1.42911");
  r = search_min(ClassSpec{Family::S, 2});
  EXPECT_EQ(r.minimizer, P("x^8 - x^5 - x^3 - 1"));
  EXPECT_EQ(rounded(*r.enclosure), "1.25207");
  EXPECT_LE(r.enclosure->width(), default_tolerance());
}

TEST(Search, ClassMinimizersAtDeskScale) {
  for (auto [f, k] : small_specs()) {
    SearchOptions opt;
    opt.prune = false;
    const SearchReport r = search_min(ClassSpec{f, k}, opt);
    EXPECT_EQ(r.minimizer, theorem_poly(f, k)) << to_string(f) << k;
    EXPECT_FALSE(r.tie);
  }
}

TEST(Search, SFamilyMinimizerHasLs2Quotient) {
  for (int k : {2, 3}) {
    const SearchReport r = search_min(ClassSpec{Family::S, k});
    bool ok = false;
    for (const auto& q : r.minimizer_quotients) ok = ok || q.ls2.all_pass();
    EXPECT_TRUE(ok) << k;
  }
}

TEST(SearchProperty, PruningDoesNotChangeResults) {
  for (auto [f, k] : small_specs())
    for (bool filter : {true, false}) {
      ClassSpec spec{f, k, 3, filter};
      SearchOptions on, off;
      off.prune = false;
      const SearchReport a = search_min(spec, on), b = search_min(spec, off);
      EXPECT_EQ(a.minimizer, b.minimizer) << to_string(f) << k << filter;
      EXPECT_EQ(a.tie, b.tie);
      EXPECT_EQ(a.enumerated, b.enumerated);
      EXPECT_EQ(a.enclosure->lo(), b.enclosure->lo());
      EXPECT_EQ(b.pruned_by_dominance, 0u);
      EXPECT_EQ(a.pruned_by_dominance + a.excluded_by_filters + a.members, a.enumerated);
    }
}

TEST(SearchProperty, PruningWitnessesAreSound) {
  for (auto [f, k] : small_specs()) {
    const SearchReport r = search_min(ClassSpec{f, k});
    for (const auto& rec : r.pruning_log) {
      EXPECT_TRUE(dominates(rec.pruned.companion(), rec.witness.companion()));
      EXPECT_GT(float_root(rec.pruned.poly()), float_root(rec.witness.poly()));
    }
  }
}

TEST(SearchProperty, MatchesFloatingPointMinimumOverRawBox) {
  // Without LS filters every raw-box vector dominates some minimal representative,
  // so the exhaustive minimum over the box must equal the search result.
  for (auto [f, k] : std::vector<std::pair<Family, int>>{{Family::N, 2}, {Family::N, 3}, {Family::N, 4}, {Family::S, 2}}) {
    ClassSpec spec{f, k, 3, false};
    long double best = 1e9;
    for (const auto& v : enumerate_candidates(spec, Enumeration::Raw)) best = std::min(best, float_root(v.poly()));
    const SearchReport r = search_min(spec);
    EXPECT_NEAR(static_cast<double>(to_long_double(r.enclosure->midpoint())), static_cast<double>(best), 1e-9)
        << to_string(f) << k;
  }
}

TEST(SearchProperty, FilteredMinimumMatchesFloatingPoint) {
  for (auto [f, k] : small_specs()) {
    const ClassSpec spec{f, k};
    long double best = 1e9;
    for (const auto& v : enumerate_candidates(spec))
      if (class_membership(v, spec).member) best = std::min(best, float_root(v.poly()));
    const SearchReport r = search_min(spec);
    EXPECT_NEAR(static_cast<double>(to_long_double(r.enclosure->midpoint())), static_cast<double>(best), 1e-9);
  }
}

TEST(SearchProperty, ThreadCountDeterminism) {
  for (auto [f, k] : small_specs()) {
    SearchOptions one, many;
    many.threads = 6;
    const std::string a = to_json(search_min(ClassSpec{f, k}, one)).dump();
    const std::string b = to_json(search_min(ClassSpec{f, k}, many)).dump();
    const std::string c = to_json(search_min(ClassSpec{f, k}, many)).dump();
    EXPECT_EQ(a, b) << to_string(f) << k;
    EXPECT_EQ(b, c);
  }
}

TEST(Search, ReportJson) {
  const auto j = to_json(search_min(ClassSpec{Family::N, 2}));
  EXPECT_EQ(j["minimizer"].dump(), "[1,-1,-1,-1]");
  EXPECT_EQ(j["counts"]["enumerated"], 3);
  EXPECT_TRUE(j["enclosure"]["lo"].is_string());
  EXPECT_NE(j["enclosure"]["lo"].get<std::string>().find('/'), std::string::npos);
  EXPECT_TRUE(j.contains("pruning_log"));
  EXPECT_EQ(j["exclusions"].size(), 1u);
}

TEST(Search, Preconditions) {
  EXPECT_THROW(search_min(ClassSpec{Family::N, 12}), PreconditionError);
  EXPECT_THROW(search_min(ClassSpec{Family::N, 1}), InvalidSpec);
}

TEST(Certify, AcceptsGenuineReports) {
  for (auto [f, k] : small_specs()) {
    const CertifyResult c = certify(search_min(ClassSpec{f, k}));
    EXPECT_TRUE(c.ok) << to_string(f) << k << ": " << (c.discrepancies.empty() ? "" : c.discrepancies.front());
  }
}

TEST(Certify, RejectsTamperedMinimizer) {
  SearchReport r = search_min(ClassSpec{Family::N, 3});
  r.minimizer = *r.runner_up;
  const CertifyResult c = certify(r);
  EXPECT_FALSE(c.ok);
  EXPECT_FALSE(c.discrepancies.empty());
}

TEST(Certify, RejectsPruningThatSkippedTheMinimizer) {
  SearchReport r = search_min(ClassSpec{Family::N, 4});
  const IntPoly truth = r.minimizer;
  // Pretend the true minimizer was pruned by some other member and the runner-up won.
  r.pruning_log.push_back({candidate_from_poly(truth), candidate_from_poly(*r.runner_up)});
  ++r.pruned_by_dominance;
  r.minimizer = *r.runner_up;
  r.enclosure = r.runner_up_enclosure;
  const CertifyResult c = certify(r);
  EXPECT_FALSE(c.ok);
  bool flagged_witness = false;
  for (const auto& d : c.discrepancies) flagged_witness = flagged_witness || d.find("witness") != std::string::npos;
  EXPECT_TRUE(flagged_witness);
}

TEST(Certify, RejectsBrokenEnclosure) {
  SearchReport r = search_min(ClassSpec{Family::N, 2});
  r.enclosure = r.runner_up_enclosure;
  EXPECT_FALSE(certify(r).ok);
}
