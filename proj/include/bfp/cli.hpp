#pragma once

// Command-line surface. Every computation is a subcommand with
// machine-readable output; rationals are emitted as "p/q" strings plus a
// float convenience field. Exit status: 0 success, 1 computation error
// (structured JSON on stdout), 2 usage error.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bfp/config.hpp"
#include "bfp/errors.hpp"
#include "bfp/io.hpp"
#include "bfp/mirsky.hpp"
#include "bfp/numtheory.hpp"
#include "bfp/oracle.hpp"
#include "bfp/pressure.hpp"
#include "bfp/transfer.hpp"
#include "bfp/verify.hpp"
#include "bfp/words.hpp"

namespace bfp::cli {

enum class output_mode { json, csv, pretty };

namespace detail {

using io::json;

inline output_mode parse_output(const std::string& s) {
  if (s == "json") return output_mode::json;
  if (s == "csv") return output_mode::csv;
  if (s == "pretty") return output_mode::pretty;
  throw invalid_argument_error("output must be json, csv or pretty");
}

// CSV is defined for tabular reports; everything else falls back to JSON.
inline void emit(const json& j, output_mode mode, std::ostream& out,
                 const std::string& csv = {}) {
  switch (mode) {
    case output_mode::csv:
      if (!csv.empty()) {
        out << csv;
        return;
      }
      [[fallthrough]];
    case output_mode::json:
      out << j.dump() << "\n";
      return;
    case output_mode::pretty:
      out << j.dump(2) << "\n";
      return;
  }
}

struct common_options {
  std::string output = "json";
  std::int64_t lcm_cap = run_config{}.lcm_cap;
  std::int64_t enum_cap = run_config{}.enum_cap;
  int subset_cap = run_config{}.subset_cap;
  bool serial = false;
  bool parallel = false;
  std::uint64_t seed = 20240604;
  std::string precision = "double";

  run_config config() const {
    run_config cfg;
    cfg.lcm_cap = lcm_cap;
    cfg.enum_cap = enum_cap;
    cfg.subset_cap = subset_cap;
    cfg.serial = !parallel || serial;
    cfg.precision = precision == "extended"
                        ? run_config::precision_mode::extended
                        : run_config::precision_mode::double_prec;
    return cfg;
  }

  output_mode mode() const { return parse_output(output); }

  void attach(CLI::App* app) {
    app->add_option("--output", output, "json, csv or pretty")
        ->envname("PF_OUTPUT");
    app->add_option("--lcm-cap", lcm_cap, "largest materialized period")
        ->envname("PF_LCM_CAP");
    app->add_option("--enum-cap", enum_cap, "largest candidate block count")
        ->envname("PF_ENUM_CAP");
    app->add_option("--subset-cap", subset_cap,
                    "inclusion-exclusion subset cap");
    app->add_flag("--serial", serial, "force deterministic serial reduction");
    app->add_flag("--parallel", parallel,
                  "allow data-parallel shifts (serial wins if both)");
    app->add_option("--seed", seed, "seed for randomized suites");
    app->add_option("--precision", precision, "double or extended");
  }
};

inline json density_payload(const modulus_set& set,
                            const std::optional<std::string>& cutoffs,
                            const run_config& cfg, std::string& csv) {
  json j;
  j["set"] = set.to_string();
  j["primitive"] = primitive_reduce(set).to_string();
  rational dm = multiples_density(set, cfg);
  rational df = rational(1) - dm;
  rational s = reciprocal_sum(set);
  j["d_free"] = df.to_string();
  j["d_free_float"] = df.to_double();
  j["d_multiples"] = dm.to_string();
  j["d_multiples_float"] = dm.to_double();
  j["S"] = s.to_string();
  j["S_float"] = s.to_double();
  j["pairwise_coprime"] = is_pairwise_coprime(set);
  if (cutoffs) {
    auto sweep = density_sweep(set, io::parse_cutoffs(*cutoffs), cfg);
    j["sweep"] = io::sweep_json(sweep);
    csv = io::sweep_csv(sweep);
  }
  return j;
}

inline json tempo_payload(const std::vector<std::string>& sets,
                          const potential2& phi, double epsilon,
                          const run_config& cfg, std::string& csv) {
  json rows = json::array();
  csv = "set,S,d,T,ratio\n";
  double max_ratio = 0.0;
  for (const auto& raw : sets) {
    modulus_set set = modulus_set::parse(raw);
    tempo_record rec = tempo_correction(set, phi, epsilon, cfg);
    max_ratio = std::max(max_ratio, rec.ratio);
    rows.push_back({{"set", set.to_string()},
                    {"S", rec.reciprocal.to_string()},
                    {"S_float", rec.reciprocal.to_double()},
                    {"d", rec.density.to_string()},
                    {"d_float", rec.density.to_double()},
                    {"T", rec.correction},
                    {"ratio", rec.ratio}});
    csv += set.to_string() + "," + rec.reciprocal.to_string() + "," +
           rec.density.to_string() + "," + std::to_string(rec.correction) +
           "," + std::to_string(rec.ratio) + "\n";
  }
  return json{{"rows", rows}, {"epsilon", epsilon}, {"max_ratio", max_ratio}};
}

inline json verify_payload(const std::string& suite, const common_options& common,
                           const std::optional<std::string>& w,
                           const std::optional<std::string>& x, int random_phis,
                           int pairs, bool& all_pass) {
  const run_config cfg = common.config();
  std::vector<verify::suite_result> results;
  auto want = [&](const char* name) { return suite == name || suite == "all"; };
  if (want("density")) results.push_back(verify::density_exactness(cfg));
  if (want("mirsky")) results.push_back(verify::mirsky_consistency(cfg));
  if (want("transfer"))
    results.push_back(verify::transfer_identity(common.seed, cfg));
  if (want("entropy")) results.push_back(verify::entropy_reproduction(cfg));
  if (want("okresowe")) {
    if (w && x) {
      // Explicit pair: three-way agreement under random potentials.
      verify::suite_result r{"periodic_sandwich_agreement"};
      sandwich_pair pair{periodic_word::parse(*w), periodic_word::parse(*x)};
      std::mt19937_64 rng(common.seed);
      std::uniform_real_distribution<double> dist(-2.0, 2.0);
      for (int i = 0; i < random_phis; ++i) {
        potential2 phi;
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) phi.phi[a][b] = dist(rng);
        double formula = pressure_periodic_sandwich(pair, phi).value;
        if (!pair.is_full_shift()) {
          double direct = single_period_pressure(pair, phi, cfg);
          r.check(std::abs(formula - direct) <= 1e-9,
                  "single-period mismatch at phi " + std::to_string(i));
        }
        double dp = dp_shift_pressure(pair, phi, 50, cfg);
        r.check(std::abs(dp - formula) <= dp_bound(phi, 50),
                "dp outside bound at phi " + std::to_string(i));
      }
      r.note(std::to_string(random_phis) + " random potentials on [" + *w +
             "," + *x + "]");
      results.push_back(std::move(r));
    } else {
      results.push_back(verify::periodic_sandwich_agreement(
          common.seed, pairs, random_phis, cfg));
    }
  }
  if (want("linchen"))
    results.push_back(verify::lin_chen_cross_check(common.seed, cfg));
  if (want("detzero"))
    results.push_back(verify::det_zero_reduction(common.seed, cfg));
  if (want("equilibrium"))
    results.push_back(verify::equilibrium_identity(common.seed, cfg));
  if (want("fourlocal"))
    results.push_back(verify::fourlocal_reduction(common.seed, cfg));
  if (want("tempo")) results.push_back(verify::tempo_family(cfg));
  if (want("heredity")) results.push_back(verify::heredity_property(cfg));
  if (want("gapstats"))
    results.push_back(verify::gap_stats_normalization(common.seed, cfg));
  if (results.empty())
    throw invalid_argument_error("unknown verify suite '" + suite + "'");
  json out = json::array();
  all_pass = true;
  for (const auto& r : results) {
    all_pass = all_pass && r.pass;
    out.push_back({{"name", r.name},
                   {"pass", r.pass},
                   {"seconds", r.seconds},
                   {"details", r.details}});
  }
  return json{{"suites", out}, {"pass", all_pass}};
}

}  // namespace detail

// Parses argv (without the program name) and runs one subcommand. Reports go
// to `out`; usage errors to `err`.
inline int dispatch(std::vector<std::string> args, std::ostream& out,
                    std::ostream& err) {
  using detail::json;
  CLI::App app{"pressure and density toolkit for B-free and sandwich subshifts"};
  app.require_subcommand(1);
  detail::common_options common;

  // density
  auto* density = app.add_subcommand("density", "densities and reciprocal sum");
  std::string density_set;
  std::optional<std::string> density_ks;
  density->add_option("--set", density_set, "comma-separated moduli")
      ->required();
  density->add_option("--Ks", density_ks, "truncation sweep cutoffs");
  common.attach(density);

  // eta
  auto* eta = app.add_subcommand("eta", "characteristic word of the free set");
  std::string eta_set;
  std::optional<std::int64_t> eta_lo, eta_hi;
  eta->add_option("--set", eta_set)->required();
  eta->add_option("--lo", eta_lo, "segment start (inclusive)");
  eta->add_option("--hi", eta_hi, "segment end (exclusive)");
  common.attach(eta);

  // mirsky
  auto* mirsky = app.add_subcommand("mirsky", "Mirsky cylinder probabilities");
  std::string mirsky_set, mirsky_pattern, mirsky_method = "auto";
  std::optional<std::string> mirsky_ks;
  mirsky->add_option("--set", mirsky_set)->required();
  mirsky->add_option("--pattern", mirsky_pattern, "offset:symbol list")
      ->required();
  mirsky->add_option("--method", mirsky_method, "auto, exact or coprime");
  mirsky->add_option("--Ks", mirsky_ks, "truncation sweep cutoffs");
  common.attach(mirsky);

  // transfer
  auto* transfer = app.add_subcommand("transfer", "weight matrix eigen report");
  std::string transfer_phi, transfer_method = "both";
  int transfer_n = 0;
  transfer->add_option("--phi", transfer_phi, "2-local potential")->required();
  transfer->add_option("--n", transfer_n, "emit Z table up to this length");
  transfer->add_option("--method", transfer_method,
                       "Z table columns: power, eigen, enumerate or both");
  common.attach(transfer);

  // pressure family
  auto* pressure = app.add_subcommand("pressure", "closed-form pressures");
  pressure->require_subcommand(1);

  auto* pr_one = pressure->add_subcommand("one", "single-coordinate potential");
  std::optional<std::string> one_nu1, one_set, one_r00, one_r11, one_r01;
  std::string one_phi;
  pr_one->add_option("--nu1", one_nu1, "base 1-cylinder mass p/q");
  pr_one->add_option("--set", one_set, "modulus set providing nu1");
  pr_one->add_option("--rho00", one_r00, "pair mass rho(0,0)");
  pr_one->add_option("--rho11", one_r11, "pair mass rho(1,1)");
  pr_one->add_option("--rho01", one_r01, "pair mass rho(0,1)");
  pr_one->add_option("--phi", one_phi, "1-local potential")->required();
  common.attach(pr_one);

  auto* pr_periodic = pressure->add_subcommand("periodic", "periodic sandwich");
  std::string per_w, per_x, per_phi;
  pr_periodic->add_option("--w", per_w, "lower periodic word")->required();
  pr_periodic->add_option("--x", per_x, "upper periodic word")->required();
  pr_periodic->add_option("--phi", per_phi, "2-local potential")->required();
  common.attach(pr_periodic);

  auto* pr_bfree = pressure->add_subcommand("bfree", "hereditary B-free");
  std::string bf_set, bf_phi;
  pr_bfree->add_option("--set", bf_set)->required();
  pr_bfree->add_option("--phi", bf_phi, "2-local potential")->required();
  common.attach(pr_bfree);

  auto* pr_linchen = pressure->add_subcommand("linchen", "2-in-B closed form");
  std::string lc_set;
  double lc_a00 = 0.0, lc_a01 = 0.0, lc_a1 = 0.0;
  pr_linchen->add_option("--set", lc_set)->required();
  pr_linchen->add_option("--a00", lc_a00, "coefficient of 1_{00}");
  pr_linchen->add_option("--a01", lc_a01, "coefficient of 1_{01}");
  pr_linchen->add_option("--a1", lc_a1, "coefficient of 1_{x0=1}");
  common.attach(pr_linchen);

  auto* pr_fourlocal = pressure->add_subcommand("fourlocal", "4-local, 2 in B");
  std::string fl_set, fl_phi;
  pr_fourlocal->add_option("--set", fl_set)->required();
  pr_fourlocal->add_option("--phi4", fl_phi, "4-local potential")->required();
  common.attach(pr_fourlocal);

  auto* pr_full = pressure->add_subcommand("full", "full shift");
  std::string full_phi;
  pr_full->add_option("--phi", full_phi, "2-local potential")->required();
  common.attach(pr_full);

  auto* pr_gaps = pressure->add_subcommand(
      "gapstats", "user-supplied gap statistics, e.g. approximants");
  std::string gs_stats, gs_phi;
  pr_gaps
      ->add_option("--stats", gs_stats,
                   "a,b,len:p/q entries joined by ';' (empty = full shift)")
      ->required();
  pr_gaps->add_option("--phi", gs_phi, "2-local potential")->required();
  common.attach(pr_gaps);

  // entropy
  auto* entropy = app.add_subcommand("entropy", "topological entropy");
  std::optional<std::string> en_set, en_w, en_x;
  entropy->add_option("--set", en_set);
  entropy->add_option("--w", en_w);
  entropy->add_option("--x", en_x);
  common.attach(entropy);

  // equilibrium
  auto* equilibrium =
      app.add_subcommand("equilibrium", "equilibrium state cylinders");
  std::string eq_set, eq_phi;
  std::optional<std::string> eq_pattern;
  equilibrium->add_option("--set", eq_set)->required();
  equilibrium->add_option("--phi", eq_phi, "1-local potential")->required();
  equilibrium->add_option("--pattern", eq_pattern, "offset:symbol list");
  common.attach(equilibrium);

  // tempo
  auto* tempo = app.add_subcommand("tempo", "correction-term sweep");
  std::vector<std::string> tempo_sets;
  std::string tempo_phi;
  double tempo_eps = 1.0;
  tempo->add_option("--set", tempo_sets, "modulus set (repeatable)")
      ->required();
  tempo->add_option("--phi", tempo_phi, "2-local potential")->required();
  tempo->add_option("--epsilon", tempo_eps, "exponent in (0,2)");
  common.attach(tempo);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "oracle comparison suites");
  std::string suite;
  std::optional<std::string> ver_w, ver_x;
  int random_phis = 20, pair_count = 50;
  verify_cmd
      ->add_option("suite", suite,
                   "density|mirsky|transfer|entropy|okresowe|linchen|detzero|"
                   "equilibrium|fourlocal|tempo|heredity|gapstats|all")
      ->required();
  verify_cmd->add_option("--w", ver_w, "explicit lower word (okresowe)");
  verify_cmd->add_option("--x", ver_x, "explicit upper word (okresowe)");
  verify_cmd->add_option("--random-phis", random_phis,
                         "potentials per pair (okresowe)");
  verify_cmd->add_option("--pairs", pair_count, "random pairs (okresowe)");
  common.attach(verify_cmd);

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);  // CLI11 consumes reversed argv-style vectors
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help and friends.
      out << app.help() << "\n";
      return 0;
    }
    err << e.what() << "\n";
    return 2;
  }

  const run_config cfg = common.config();
  const output_mode mode = common.mode();
  try {
    if (*density) {
      std::string csv;
      json j = detail::density_payload(modulus_set::parse(density_set),
                                       density_ks, cfg, csv);
      detail::emit(j, mode, out, csv);
    } else if (*eta) {
      modulus_set set = modulus_set::parse(eta_set);
      json j;
      j["set"] = set.to_string();
      if (eta_lo || eta_hi) {
        if (!(eta_lo && eta_hi))
          throw invalid_argument_error("--lo and --hi go together");
        auto seg = eta_stream(set, *eta_lo, *eta_hi);
        std::string bits;
        for (auto b : seg) bits += static_cast<char>('0' + b);
        j["lo"] = *eta_lo;
        j["hi"] = *eta_hi;
        j["segment"] = bits;
      } else {
        periodic_word w = eta_word(set, cfg);
        j["period"] = w.period();
        j["bits"] = w.to_string();
        j["minimal_period"] = minimal_period(w);
      }
      detail::emit(j, mode, out);
    } else if (*mirsky) {
      modulus_set set = modulus_set::parse(mirsky_set);
      cylinder_pattern pattern =
          cylinder_pattern::parse(mirsky_pattern, cfg.pattern_width_cap);
      json j;
      j["set"] = set.to_string();
      j["pattern"] = pattern.to_string();
      std::string csv;
      if (mirsky_ks) {
        auto sweep = mirsky_sweep(set, pattern, io::parse_cutoffs(*mirsky_ks), cfg);
        j["sweep"] = io::sweep_json(sweep.points);
        j["range"] = sweep.range.to_string();
        csv = io::sweep_csv(sweep.points);
      } else {
        rational v;
        std::string used = mirsky_method;
        if (mirsky_method == "exact") {
          v = mirsky_cylinder_exact(set, pattern, cfg);
        } else if (mirsky_method == "coprime") {
          v = mirsky_pattern_coprime(set, pattern, cfg);
        } else if (mirsky_method == "auto") {
          if (is_pairwise_coprime(set)) {
            v = mirsky_pattern_coprime(set, pattern, cfg);
            used = "coprime";
          } else {
            v = mirsky_cylinder_exact(set, pattern, cfg);
            used = "exact";
          }
        } else {
          throw invalid_argument_error("method must be auto, exact or coprime");
        }
        j["method"] = used;
        j["value"] = v.to_string();
        j["value_float"] = v.to_double();
      }
      detail::emit(j, mode, out, csv);
    } else if (*transfer) {
      potential2 phi = io::parse_potential2(transfer_phi);
      json j;
      std::string csv;
      if (cfg.precision == run_config::precision_mode::extended) {
        j = io::transfer_json(build_transfer<long double>(phi));
        j["precision"] = "extended";
      } else {
        j = io::transfer_json(build_transfer(phi));
        j["precision"] = "double";
      }
      if (transfer_n > 0) {
        bool want_power = transfer_method == "both" || transfer_method == "power";
        bool want_eigen = transfer_method == "both" || transfer_method == "eigen";
        bool want_enum = transfer_method == "enumerate";
        if (!(want_power || want_eigen || want_enum))
          throw invalid_argument_error(
              "method must be power, eigen, enumerate or both");
        json table = json::array();
        csv = "n";
        if (want_power) csv += ",power";
        if (want_eigen) csv += ",eigen";
        if (want_enum) csv += ",enumerate";
        csv += "\n";
        for (int n = 1; n <= transfer_n; ++n) {
          json row{{"n", n}};
          csv += std::to_string(n);
          if (want_power) {
            double z = partition_z(phi, 0, 0, n, z_method::power, cfg);
            row["power"] = z;
            csv += "," + std::to_string(z);
          }
          if (want_eigen) {
            double z = partition_z(phi, 0, 0, n, z_method::eigen, cfg);
            row["eigen"] = z;
            csv += "," + std::to_string(z);
          }
          if (want_enum) {
            double z = partition_z(phi, 0, 0, n, z_method::enumerate, cfg);
            row["enumerate"] = z;
            csv += "," + std::to_string(z);
          }
          table.push_back(row);
          csv += "\n";
        }
        j["Z00"] = table;
      }
      detail::emit(j, mode, out, csv);
    } else if (*pr_one) {
      potential1 phi = io::parse_potential1(one_phi);
      pressure_report rep;
      if (one_r00 || one_r11 || one_r01) {
        if (!(one_r00 && one_r11 && one_r01))
          throw invalid_argument_error(
              "sandwich masses need --rho00, --rho11 and --rho01 together");
        rep = pressure_one_sandwich(rational::parse(*one_r00),
                                    rational::parse(*one_r11),
                                    rational::parse(*one_r01), phi);
      } else if (one_nu1) {
        rep = pressure_one_hereditary(rational::parse(*one_nu1), phi);
      } else if (one_set) {
        rep = pressure_one_hereditary(
            bfree_density(modulus_set::parse(*one_set), cfg), phi);
      } else {
        throw invalid_argument_error("need --nu1, --set or the rho masses");
      }
      detail::emit(io::report_json(rep), mode, out);
    } else if (*pr_periodic) {
      sandwich_pair pair{periodic_word::parse(per_w),
                         periodic_word::parse(per_x)};
      detail::emit(io::report_json(pressure_periodic_sandwich(
                       pair, io::parse_potential2(per_phi))),
                   mode, out);
    } else if (*pr_bfree) {
      detail::emit(io::report_json(pressure_bfree_hereditary(
                       modulus_set::parse(bf_set),
                       io::parse_potential2(bf_phi), cfg)),
                   mode, out);
    } else if (*pr_linchen) {
      detail::emit(io::report_json(lin_chen_2inB(modulus_set::parse(lc_set),
                                                 lc_a00, lc_a01, lc_a1, cfg)),
                   mode, out);
    } else if (*pr_fourlocal) {
      detail::emit(io::report_json(pressure_4local_2inB(
                       modulus_set::parse(fl_set),
                       io::parse_potential4(fl_phi), cfg)),
                   mode, out);
    } else if (*pr_full) {
      detail::emit(io::report_json(
                       pressure_full_shift(io::parse_potential2(full_phi))),
                   mode, out);
    } else if (*pr_gaps) {
      gap_stats stats = gs_stats == "full"
                            ? gap_stats::full_shift()
                            : io::parse_gap_stats(gs_stats);
      detail::emit(io::report_json(pressure_from_gap_stats(
                       stats, io::parse_potential2(gs_phi))),
                   mode, out);
    } else if (*entropy) {
      json j;
      rational v;
      if (en_set) {
        v = entropy_hereditary(modulus_set::parse(*en_set), cfg);
        j["kind"] = "hereditary";
      } else if (en_w && en_x) {
        v = entropy_sandwich({periodic_word::parse(*en_w),
                              periodic_word::parse(*en_x)});
        j["kind"] = "sandwich";
      } else {
        throw invalid_argument_error("need --set or both --w and --x");
      }
      j["value"] = v.to_string();
      j["value_float"] = v.to_double();
      detail::emit(j, mode, out);
    } else if (*equilibrium) {
      modulus_set set = modulus_set::parse(eq_set);
      potential1 phi = io::parse_potential1(eq_phi);
      pressure_report rep =
          pressure_one_hereditary(bfree_density(set, cfg), phi);
      json j;
      j["set"] = set.to_string();
      j["p"] = rep.equilibrium->p;
      j["kind"] = to_string(rep.equilibrium->kind);
      j["pressure"] = rep.value;
      j["identity_residual"] = equilibrium_identity_residual(set, phi, cfg);
      if (eq_pattern) {
        cylinder_pattern pattern =
            cylinder_pattern::parse(*eq_pattern, cfg.pattern_width_cap);
        j["pattern"] = pattern.to_string();
        j["pattern_value"] = equilibrium_cylinder(
            eta_word(set, cfg), rep.equilibrium->p, pattern, cfg);
      }
      detail::emit(j, mode, out);
    } else if (*tempo) {
      std::string csv;
      json j = detail::tempo_payload(tempo_sets,
                                     io::parse_potential2(tempo_phi),
                                     tempo_eps, cfg, csv);
      detail::emit(j, mode, out, csv);
    } else if (*verify_cmd) {
      bool all_pass = false;
      json j = detail::verify_payload(suite, common, ver_w, ver_x, random_phis,
                                      pair_count, all_pass);
      if (mode == output_mode::pretty) {
        for (const auto& s : j["suites"]) {
          out << (s["pass"].get<bool>() ? "[ PASS ] " : "[ FAIL ] ")
              << s["name"].get<std::string>() << " ("
              << s["seconds"].get<double>() << "s)\n";
          for (const auto& d : s["details"])
            out << "    " << d.get<std::string>() << "\n";
        }
        out << (all_pass ? "all suites passed\n" : "some suites FAILED\n");
      } else {
        detail::emit(j, mode, out);
      }
      return all_pass ? 0 : 1;
    }
  } catch (const error& e) {
    out << io::error_json(e).dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    out << io::error_json(error("Internal", e.what())).dump() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace bfp::cli
