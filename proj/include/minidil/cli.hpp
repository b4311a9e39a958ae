#pragma once

// Command-line front end. Exit codes: 0 success, 1 verification failure,
// 2 usage or precondition error, 3 internal invariant violation.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "minidil/classes.hpp"
#include "minidil/errors.hpp"
#include "minidil/intpoly.hpp"
#include "minidil/rational.hpp"
#include "minidil/roots.hpp"
#include "minidil/search.hpp"
#include "minidil/specmat.hpp"
#include "minidil/verify.hpp"

namespace minidil::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2, kInternal = 3 };

struct Config {
  std::string format;
  std::string tol;
  unsigned threads = 1;
  std::uint64_t seed = 1;
};

namespace detail {

inline BigRational parse_tol(const std::string& text) {
  BigRational t = parse_rational(text);
  if (sgn(t) <= 0) throw PreconditionError("--tol must be positive");
  return t;
}

inline void emit_json(std::ostream& out, const nlohmann::json& j) { out << j.dump(2) << '\n'; }

inline void require_format(const std::string& fmt, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (fmt == a) return;
  throw PreconditionError("unsupported --format '" + fmt + "' for this command");
}

inline int emit_report(std::ostream& out, const VerificationReport& r, const std::string& fmt) {
  if (fmt == "json") {
    emit_json(out, to_json(r));
  } else if (fmt == "csv") {
    out << "input,relation,holds\n";
    for (const auto& e : r.evidence) out << '"' << e.input << "\",\"" << e.relation << "\"," << (e.holds ? "true" : "false") << '\n';
  } else {
    for (const auto& e : r.evidence) out << (e.holds ? "PASS  " : "FAIL  ") << e.input << "  [" << e.relation << "]\n";
    out << r.claim << ": " << (r.pass ? "PASS" : "FAIL") << '\n';
  }
  return r.pass ? kOk : kVerificationFailed;
}

}  // namespace detail

/// Parses argv, runs one command, writes its report to `out`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified minimal-dilatation searches and checks"};
  app.require_subcommand(1);
  Config cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
  };

  std::string poly_text;
  auto* root = app.add_subcommand("root", "largest positive root enclosure");
  root->add_option("poly", poly_text, "polynomial, e.g. \"x^3 - x^2 - x - 1\" or [1,-1,-1,-1]")->required();
  root->add_option("--tol", cfg.tol, "enclosure width, e.g. 1e-12 or 1/1000000");

  auto* prim = app.add_subcommand("primitive", "companion-matrix primitivity");
  prim->add_option("poly", poly_text, "polynomial")->required();

  std::string family = "N";
  int k = 2, bound = 3;
  bool no_prune = false, no_ls_filter = false;
  auto* search = app.add_subcommand("search", "exhaustive minimality search over a class");
  search->add_option("--family", family, "N or S")->required()->check(CLI::IsMember({"N", "S"}));
  search->add_option("--k", k, "class parameter k >= 2")->required();
  search->add_option("--bound", bound, "coefficient bound (0 <= a_i <= bound)");
  search->add_flag("--no-prune", no_prune, "disable dominance pruning");
  search->add_flag("--no-ls-filter", no_ls_filter, "keep candidates that fail the LS property checks");
  search->add_option("--tol", cfg.tol, "final enclosure width");

  auto* verify = app.add_subcommand("verify", "check a claim");
  verify->require_subcommand(1);
  int n_max = 20, k_max = 6;
  std::size_t samples = 10000, dim_max = 8;
  auto* v_mini = verify->add_subcommand("minispec", "single-pair family minimality");
  v_mini->add_option("--n-max", n_max, "largest n")->capture_default_str();
  auto* v_obs = verify->add_subcommand("observation-s", "S-family comparison chain");
  v_obs->add_option("--k-max", k_max, "largest k")->capture_default_str();
  auto* v_perron = verify->add_subcommand("perron", "dominance implies larger spectral radius");
  v_perron->add_option("--samples", samples, "number of pairs")->capture_default_str();
  v_perron->add_option("--dim-max", dim_max, "largest dimension (<= 12)")->capture_default_str();
  v_perron->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  auto* v_prim = verify->add_subcommand("primitivity", "graph test against Wielandt powering");
  v_prim->add_option("--samples", samples, "number of random matrices")->capture_default_str();
  v_prim->add_option("--dim-max", dim_max, "largest dimension")->capture_default_str();
  v_prim->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  auto* v_thm = verify->add_subcommand("theorem", "exhaustive minimizers for k = 2..k_max");
  v_thm->add_option("--family", family, "N or S")->required()->check(CLI::IsMember({"N", "S"}));
  v_thm->add_option("--k-max", k_max, "largest k")->required();

  int which = 0;
  bool as_printed = false;
  auto* tables = app.add_subcommand("tables", "reproduce the printed dilatation tables");
  tables->add_option("--which", which, "1, 2 or 3")->required()->check(CLI::IsMember({1, 2, 3}));
  tables->add_option("--tol", cfg.tol, "initial enclosure width (<= 1e-5)");
  tables->add_flag("--as-printed", as_printed, "use every polynomial exactly as printed, without errata");

  for (auto* sub : {root, prim, search, v_mini, v_obs, v_perron, v_prim, v_thm, tables}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  if (cfg.format.empty()) cfg.format = *tables ? "csv" : *verify ? "text" : "json";

  try {
    if (*root) {
      detail::require_format(cfg.format, {"json", "text"});
      const IntPoly p = parse_poly(poly_text);
      const BigRational tol = cfg.tol.empty() ? default_tolerance() : detail::parse_tol(cfg.tol);
      const RootEnclosure e = largest_root_enclosure(p, tol);
      if (cfg.format == "json")
        detail::emit_json(out, to_json(e));
      else
        out << to_decimal_string(e.lo(), 15) << " <= root <= " << to_decimal_string(e.hi(), 15) << '\n';
      return kOk;
    }
    if (*prim) {
      detail::require_format(cfg.format, {"json", "text"});
      const PrimitivityReport r = is_primitive(companion_of(parse_poly(poly_text)));
      if (cfg.format == "json")
        detail::emit_json(out, to_json(r));
      else
        out << (r.primitive ? "primitive" : "not primitive") << '\n';
      return kOk;
    }
    if (*search) {
      detail::require_format(cfg.format, {"json", "text"});
      ClassSpec spec{parse_family(family), k, bound, !no_ls_filter};
      SearchOptions opt;
      opt.prune = !no_prune;
      opt.threads = cfg.threads;
      if (!cfg.tol.empty()) opt.tol = detail::parse_tol(cfg.tol);
      const SearchReport r = search_min(spec, opt);
      if (cfg.format == "json") {
        detail::emit_json(out, to_json(r));
      } else {
        out << "minimizer: " << to_string(r.minimizer) << '\n'
            << "root: " << to_decimal_string(r.enclosure->midpoint(), 12) << '\n'
            << "enumerated: " << r.enumerated << ", pruned: " << r.pruned_by_dominance
            << ", excluded: " << r.excluded_by_filters << ", members: " << r.members << '\n';
        if (r.runner_up) out << "runner-up: " << to_string(*r.runner_up) << '\n';
        if (r.tie) out << "tie with " << r.co_minimal.size() << " other member(s)\n";
      }
      return kOk;
    }
    if (*verify) {
      VerificationReport r;
      if (*v_mini) {
        r = verify_minispec(n_max);
      } else if (*v_obs) {
        r = verify_observation_s(k_max);
      } else if (*v_perron) {
        r = verify_perron_property(samples, dim_max, cfg.seed, cfg.threads);
      } else if (*v_prim) {
        r = verify_primitivity_oracle(samples, dim_max, cfg.seed);
      } else {
        r = verify_theorem(parse_family(family), k_max, cfg.threads);
      }
      return detail::emit_report(out, r, cfg.format);
    }
    if (*tables) {
      const BigRational tol = cfg.tol.empty() ? BigRational(1, 10000000) : detail::parse_tol(cfg.tol);
      if (cfg.format == "csv") {
        const auto rows = table_results(which, tol, as_printed);
        bool all = true;
        out << "g,polynomial,computed,expected,match\n";
        for (const auto& t : rows) {
          out << t.g << ',' << to_string(t.poly) << ',' << t.computed << ',' << t.expected << ','
              << (t.match ? "true" : "false") << '\n';
          all = all && t.match;
          if (t.erratum) err << "note: table " << which << " g=" << t.g << ": " << t.note << '\n';
        }
        return all ? kOk : kVerificationFailed;
      }
      return detail::emit_report(out, reproduce_tables(which, tol, as_printed), cfg.format);
    }
  } catch (const InvariantViolation& e) {
    err << "internal invariant violated: " << e.what() << '\n';
    return kInternal;
  } catch (const DivisionFailure& e) {
    err << "verification failed: " << e.what() << '\n';
    return kVerificationFailed;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}

}  // namespace minidil::cli
