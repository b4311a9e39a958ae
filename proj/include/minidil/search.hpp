#pragma once

// Exhaustive minimality search over a constraint class, with Perron
// dominance pruning and a re-executable certificate.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "minidil/classes.hpp"
#include "minidil/errors.hpp"
#include "minidil/parallel.hpp"
#include "minidil/roots.hpp"
#include "minidil/specmat.hpp"

namespace minidil {

inline constexpr int kMaxExhaustiveDegree = 21;

struct SearchOptions {
  bool prune = true;
  unsigned threads = 1;
  BigRational tol = default_tolerance();
};

struct PruneRecord {
  CandidateVector pruned;
  CandidateVector witness;  // class member dominated by `pruned`
};

struct ExclusionRecord {
  CandidateVector candidate;
  std::string reason;
};

struct SearchReport {
  ClassSpec spec;
  bool pruning = true;

  IntPoly minimizer;
  std::optional<RootEnclosure> enclosure;
  std::vector<IntPoly> co_minimal;  // other members with exactly the same largest root
  bool tie = false;
  std::optional<IntPoly> runner_up;
  std::optional<RootEnclosure> runner_up_enclosure;

  std::size_t enumerated = 0;
  std::size_t pruned_by_dominance = 0;
  std::size_t excluded_by_filters = 0;
  std::size_t members = 0;
  std::size_t undetermined_members = 0;

  std::vector<PruneRecord> pruning_log;
  std::vector<ExclusionRecord> exclusions;
  std::vector<CandidateVector> seed_divergent;

  std::optional<PropertyReport> minimizer_ls1;
  std::vector<QuotientCheck> minimizer_quotients;
};

namespace detail {

inline int coefficient_sum(const CandidateVector& v) { return std::accumulate(v.a.begin(), v.a.end(), 0); }

inline std::string exclusion_reason(const Membership& m) { return m.reason.empty() ? "filtered" : m.reason; }

}  // namespace detail

/// Certified-smallest largest root over the class's enumerated members.
///
/// With pruning, candidates are visited in waves of equal coefficient sum; a
/// candidate whose companion matrix dominates an already accepted member is
/// skipped (its spectral radius is strictly larger). The comparison pass is
/// sequential in lexicographic order, so reports do not depend on threads.
inline SearchReport search_min(const ClassSpec& spec, const SearchOptions& opt = {}) {
  spec.validate();
  if (spec.degree() > kMaxExhaustiveDegree)
    throw PreconditionError("degree " + std::to_string(spec.degree()) + " exceeds the exhaustive-search cap of " +
                            std::to_string(kMaxExhaustiveDegree));
  const std::vector<CandidateVector> cands = enumerate_candidates(spec);
  if (cands.empty()) throw EmptyClass("no candidate in the class");
  const std::size_t n = cands.size();

  enum class State { Pending, Pruned, Excluded, Member };
  std::vector<State> state(n, State::Pending);
  std::vector<std::optional<Membership>> membership(n);
  std::vector<std::optional<std::size_t>> witness(n);

  SearchReport rep;
  rep.spec = spec;
  rep.pruning = opt.prune;
  rep.enumerated = n;
  rep.seed_divergent = seed_divergent(cands);

  auto settle = [&](std::size_t i) {
    state[i] = membership[i]->member ? State::Member : State::Excluded;
  };

  if (opt.prune) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return detail::coefficient_sum(cands[a]) < detail::coefficient_sum(cands[b]);
    });
    std::vector<CompanionDigraph> companions;
    companions.reserve(n);
    for (const auto& c : cands) companions.push_back(c.companion());
    std::vector<std::size_t> accepted;
    for (std::size_t start = 0; start < n;) {
      std::size_t stop = start;
      const int sum = detail::coefficient_sum(cands[order[start]]);
      while (stop < n && detail::coefficient_sum(cands[order[stop]]) == sum) ++stop;
      // Equal sums never dominate each other, so a wave only consults earlier waves.
      parallel_for(stop - start, opt.threads, [&](std::size_t k) {
        const std::size_t i = order[start + k];
        for (std::size_t w : accepted)
          if (dominates(companions[i], companions[w])) {
            witness[i] = w;
            return;
          }
        membership[i] = class_membership(cands[i], spec);
      });
      for (std::size_t k = start; k < stop; ++k) {
        const std::size_t i = order[k];
        if (witness[i]) {
          state[i] = State::Pruned;
        } else {
          settle(i);
          if (state[i] == State::Member) accepted.push_back(i);
        }
      }
      start = stop;
    }
  } else {
    parallel_for(n, opt.threads, [&](std::size_t i) { membership[i] = class_membership(cands[i], spec); });
    for (std::size_t i = 0; i < n; ++i) settle(i);
  }

  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < n; ++i) {
    switch (state[i]) {
      case State::Pruned:
        rep.pruning_log.push_back({cands[i], cands[*witness[i]]});
        break;
      case State::Excluded:
        rep.exclusions.push_back({cands[i], detail::exclusion_reason(*membership[i])});
        break;
      case State::Member:
        members.push_back(i);
        if (membership[i]->verdict == Verdict::Undetermined) ++rep.undetermined_members;
        break;
      case State::Pending:
        throw InvariantViolation("candidate left unclassified");
    }
  }
  rep.pruned_by_dominance = rep.pruning_log.size();
  rep.excluded_by_filters = rep.exclusions.size();
  rep.members = members.size();
  if (members.empty()) throw EmptyClass("no candidate survives the class filters");

  std::vector<std::optional<RootEnclosure>> enc(members.size());
  const BigRational coarse(1, 256);
  parallel_for(members.size(), opt.threads,
               [&](std::size_t k) { enc[k] = largest_root_enclosure(cands[members[k]].poly(), coarse); });

  std::size_t best = 0;
  std::optional<std::size_t> runner;
  std::vector<std::size_t> co;
  for (std::size_t k = 1; k < members.size(); ++k) {
    switch (compare(*enc[k], *enc[best])) {
      case RootOrder::Less:
        runner = best;
        best = k;
        co.clear();
        break;
      case RootOrder::SharedRoot:
        co.push_back(k);
        break;
      case RootOrder::Greater:
        if (!runner || compare(*enc[k], *enc[*runner]) == RootOrder::Less) runner = k;
        break;
    }
  }

  enc[best]->refine(opt.tol);
  rep.minimizer = cands[members[best]].poly();
  rep.enclosure = *enc[best];
  for (std::size_t k : co) rep.co_minimal.push_back(cands[members[k]].poly());
  rep.tie = !co.empty();
  if (runner) {
    if (compare(*enc[best], *enc[*runner]) != RootOrder::Less)
      throw InvariantViolation("runner-up does not separate from the minimizer");
    rep.runner_up = cands[members[*runner]].poly();
    rep.runner_up_enclosure = *enc[*runner];
    rep.enclosure = *enc[best];
  }
  rep.enclosure->check_invariants();

  const Membership& mm = *membership[members[best]];
  if (spec.family == Family::N) {
    rep.minimizer_ls1 = mm.ls1 ? mm.ls1 : std::optional<PropertyReport>(check_ls1(rep.minimizer, spec.genus()));
  } else {
    rep.minimizer_quotients = spec.ls_filter ? mm.quotients : quotient_checks(rep.minimizer, spec.genus());
  }
  return rep;
}

inline nlohmann::json to_json(const CandidateVector& v) { return to_json(v.poly()); }

inline nlohmann::json to_json(const QuotientCheck& q) {
  return {{"multiplier", q.multiplier}, {"quotient", to_json(q.quotient)}, {"ls2", to_json(q.ls2)}};
}

inline nlohmann::json to_json(const SearchReport& r) {
  nlohmann::json j;
  j["spec"] = to_json(r.spec);
  j["pruning"] = r.pruning;
  j["minimizer"] = to_json(r.minimizer);
  j["minimizer_text"] = to_string(r.minimizer);
  j["enclosure"] = r.enclosure ? to_json(*r.enclosure) : nlohmann::json(nullptr);
  j["tie"] = r.tie;
  j["co_minimal"] = nlohmann::json::array();
  for (const auto& p : r.co_minimal) j["co_minimal"].push_back(to_json(p));
  j["runner_up"] = r.runner_up ? to_json(*r.runner_up) : nlohmann::json(nullptr);
  j["runner_up_enclosure"] = r.runner_up_enclosure ? to_json(*r.runner_up_enclosure) : nlohmann::json(nullptr);
  j["counts"] = {{"enumerated", r.enumerated},
                 {"pruned_by_dominance", r.pruned_by_dominance},
                 {"excluded_by_filters", r.excluded_by_filters},
                 {"members", r.members},
                 {"undetermined_members", r.undetermined_members},
                 {"seed_divergent", r.seed_divergent.size()}};
  nlohmann::json log = nlohmann::json::array();
  for (const auto& p : r.pruning_log) log.push_back({{"pruned", to_json(p.pruned)}, {"witness", to_json(p.witness)}});
  j["pruning_log"] = std::move(log);
  nlohmann::json ex = nlohmann::json::array();
  for (const auto& e : r.exclusions) ex.push_back({{"poly", to_json(e.candidate)}, {"reason", e.reason}});
  j["exclusions"] = std::move(ex);
  nlohmann::json sd = nlohmann::json::array();
  for (const auto& v : r.seed_divergent) sd.push_back(to_json(v));
  j["seed_divergent"] = std::move(sd);
  if (r.minimizer_ls1) j["minimizer_ls1"] = to_json(*r.minimizer_ls1);
  if (r.spec.family == Family::S) {
    nlohmann::json qs = nlohmann::json::array();
    for (const auto& q : r.minimizer_quotients) qs.push_back(to_json(q));
    j["minimizer_quotients"] = std::move(qs);
  }
  return j;
}

struct CertifyResult {
  bool ok = true;
  std::vector<std::string> discrepancies;

  void fail(std::string why) {
    ok = false;
    discrepancies.push_back(std::move(why));
  }
};

/// Re-validates a report from scratch: re-runs the search without pruning,
/// re-checks the enclosure certificates and every dominance witness.
inline CertifyResult certify(const SearchReport& report, unsigned threads = 1) {
  CertifyResult res;
  SearchReport fresh;
  try {
    SearchOptions opt;
    opt.prune = false;
    opt.threads = threads;
    fresh = search_min(report.spec, opt);
  } catch (const Error& e) {
    res.fail(std::string("re-execution failed: ") + e.what());
    return res;
  }

  if (!(fresh.minimizer == report.minimizer))
    res.fail("minimizer " + to_string(report.minimizer) + " differs from exhaustive " + to_string(fresh.minimizer));
  auto sorted = [](std::vector<IntPoly> v) {
    std::sort(v.begin(), v.end(), [](const IntPoly& a, const IntPoly& b) { return to_string(a) < to_string(b); });
    return v;
  };
  if (sorted(fresh.co_minimal) != sorted(report.co_minimal)) res.fail("co-minimal set differs");
  if (fresh.tie != report.tie) res.fail("tie flag differs");
  if (fresh.enumerated != report.enumerated) res.fail("enumeration count differs");
  if (fresh.runner_up.has_value() != report.runner_up.has_value() ||
      (fresh.runner_up && !(*fresh.runner_up == *report.runner_up)))
    res.fail("runner-up differs");

  if (!report.enclosure) {
    res.fail("missing enclosure");
  } else {
    if (!(report.enclosure->poly() == report.minimizer)) res.fail("enclosure is not for the minimizer");
    try {
      report.enclosure->check_invariants();
    } catch (const InvariantViolation& e) {
      res.fail(std::string("minimizer enclosure: ") + e.what());
    }
    if (report.runner_up_enclosure) {
      try {
        report.runner_up_enclosure->check_invariants();
      } catch (const InvariantViolation& e) {
        res.fail(std::string("runner-up enclosure: ") + e.what());
      }
      if (!(report.enclosure->hi() < report.runner_up_enclosure->lo())) res.fail("runner-up is not separated");
    }
  }

  if (report.pruning_log.size() != report.pruned_by_dominance) res.fail("pruning count disagrees with the log");
  const auto cands = enumerate_candidates(report.spec);
  auto enumerated = [&](const CandidateVector& v) { return std::binary_search(cands.begin(), cands.end(), v); };
  for (const auto& rec : report.pruning_log) {
    const std::string tag = to_string(rec.pruned.poly());
    if (!enumerated(rec.pruned) || !enumerated(rec.witness)) {
      res.fail("pruning record outside the enumeration: " + tag);
      continue;
    }
    if (rec.pruned.poly() == report.minimizer) res.fail("pruned candidate is the reported minimizer: " + tag);
    if (!dominates(rec.pruned.companion(), rec.witness.companion())) res.fail("witness not dominated: " + tag);
    if (!companion_primitive(rec.pruned) || !companion_primitive(rec.witness)) res.fail("non-primitive witness pair: " + tag);
    if (!class_membership(rec.witness, report.spec).member) res.fail("witness is not a class member: " + tag);
  }
  return res;
}

}  // namespace minidil
