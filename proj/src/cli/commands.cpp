#include "icor/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "icor/core_math.hpp"
#include "icor/errors.hpp"
#include "icor/gap.hpp"
#include "icor/gauss_mi.hpp"
#include "icor/gdof.hpp"
#include "icor/io.hpp"
#include "icor/lda.hpp"
#include "icor/parallel.hpp"
#include "icor/regions.hpp"
#include "json.hpp"

namespace icor::cli {

namespace {

using nlohmann::ordered_json;

ordered_json config_object(const RunConfig& cfg) {
  return {{"quad_nodes", cfg.quad_nodes}, {"quad_tol", cfg.quad_tol},
          {"restarts", cfg.restarts},     {"max_iters", cfg.max_iters},
          {"seed", cfg.seed},             {"gap_tol", cfg.gap_tol}};
}

std::string header_comment(std::string_view command, const ordered_json& params,
                           const RunConfig& cfg) {
  const ordered_json j = {{"command", command}, {"params", params}, {"config", config_object(cfg)}};
  return csv_comment(j.dump());
}

QuadratureConfig quad(const RunConfig& cfg) { return {cfg.quad_nodes, cfg.quad_tol}; }

double parse_number(std::string_view s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw UsageError(fmt::format("not a finite number: '{}'", s));
  }
  return v;
}

std::uint64_t fig3_n(double snr) {
  auto n = static_cast<std::uint64_t>(std::floor(std::pow(snr, 1.0 / 6.0)));
  while (n > 0 && std::pow(static_cast<double>(n), 6.0) > snr) --n;
  while (std::pow(static_cast<double>(n + 1), 6.0) <= snr) ++n;
  return std::max<std::uint64_t>(n, 1);
}

void write_or_print(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open output file " + path);
  f << text;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string pmf_csv(const BitvecPmf& p1, const BitvecPmf& p2) {
  std::string out = "x,p1,p2\n";
  for (std::size_t x = 0; x < p1.p.size(); ++x) {
    out += fmt::format("{},{},{}\n", x, format_double(p1.p[x]), format_double(p2.p[x]));
  }
  return out;
}

}  // namespace

std::string RunConfig::canonical_json() const { return config_object(*this).dump(); }

void apply_config_json(RunConfig& cfg, std::string_view text, const std::vector<std::string>& skip) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(skip.begin(), skip.end(), key) != skip.end()) continue;
    try {
      if (key == "quad_nodes") {
        cfg.quad_nodes = value.get<int>();
      } else if (key == "quad_tol") {
        cfg.quad_tol = value.get<double>();
      } else if (key == "restarts") {
        cfg.restarts = value.get<int>();
      } else if (key == "max_iters") {
        cfg.max_iters = value.get<int>();
      } else if (key == "seed") {
        cfg.seed = value.get<std::uint64_t>();
      } else if (key == "gap_tol") {
        cfg.gap_tol = value.get<double>();
      } else if (key == "threads") {
        cfg.threads = value.get<unsigned>();
      } else if (key == "output") {
        cfg.output = value.get<std::string>();
      } else {
        throw UsageError("unknown config key: " + key);
      }
    } catch (const nlohmann::json::exception&) {
      throw UsageError("wrong type for config key: " + key);
    }
  }
}

std::vector<double> parse_grid(std::string_view spec) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = spec.find(':', start);
    parts.push_back(spec.substr(start, colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() == 1) return {parse_number(parts[0])};
  if (parts.size() != 3) throw UsageError(fmt::format("grid must be start:stop:step, got '{}'", spec));
  const double a = parse_number(parts[0]);
  const double b = parse_number(parts[1]);
  const double step = parse_number(parts[2]);
  if (!(step > 0.0)) throw UsageError("grid step must be positive");
  if (b < a) throw UsageError("grid stop is below start");
  const double count = std::floor((b - a) / step * (1.0 + 1e-12) + 1e-9);
  if (count >= 1e6) throw UsageError("grid has too many points");
  std::vector<double> out;
  for (long k = 0; k <= static_cast<long>(count); ++k) out.push_back(a + static_cast<double>(k) * step);
  return out;
}

Artifact cmd_wcurve(const std::vector<double>& alphas, const RunConfig& cfg) {
  Artifact a;
  a.text = header_comment("wcurve", {{"alpha", alphas}}, cfg) + "alpha,d_w,d_gg,d_td\n";
  for (double al : alphas) {
    a.text += fmt::format("{},{},{},{}\n", format_double(al), format_double(wcurve(al)),
                          format_double(gdof_gg(al)), format_double(gdof_td(al)));
  }
  return a;
}

LdaArtifacts cmd_lda(int ns, int ni, bool optimize, const RunConfig& cfg) {
  const LdaChannel ch = LdaChannel::symmetric(ns, ni);
  ch.validate();
  if (ch.q() > kLdaMaxQ) {
    throw CapabilityError(fmt::format("q = {} exceeds the supported maximum {}", ch.q(), kLdaMaxQ));
  }
  if (ns == 0) throw DomainError("ns must be positive");
  const double alpha = static_cast<double>(ni) / ns;
  ordered_json j = {{"ns", ns}, {"ni", ni}, {"alpha", alpha},
                    {"uniform_norm", lda_uniform_normalized_sumrate(ch)},
                    {"wcurve", wcurve(alpha)}};
  BitvecPmf p1 = uniform_pmf(ch.q());
  BitvecPmf p2 = p1;
  if (optimize) {
    LdaOptimizerConfig oc;
    oc.restarts = cfg.restarts;
    oc.max_iters = cfg.max_iters;
    oc.seed = cfg.seed;
    oc.threads = cfg.threads;
    const LdaOptimum opt = lda_max_sumrate(ch, oc);
    j["optimized_sum_bits"] = opt.value;
    j["optimized_norm"] = opt.value / (2.0 * ns);
    p1 = opt.p1;
    p2 = opt.p2;
  }
  j["p1"] = p1.p;
  j["p2"] = p2.p;
  const ordered_json params = {{"ns", ns}, {"ni", ni}, {"optimize", optimize}};
  return {j.dump(2) + "\n", header_comment("lda", params, cfg) + pmf_csv(p1, p2)};
}

Artifact cmd_fig3(const std::vector<double>& snr_db, double alpha, bool check, const RunConfig& cfg) {
  struct Row {
    std::uint64_t n;
    double td, gg, dg;
  };
  std::vector<Row> rows(snr_db.size());
  parallel_for(
      snr_db.size(),
      [&](std::size_t k) {
        const double snr = db_to_linear(snr_db[k]);
        const SymmetricChannel ch(snr, alpha);
        const double scale = std::log2(1.0 + snr);
        const std::uint64_t n = fig3_n(snr);
        double dg = 0.0;
        try {
          dg = scheme1_numeric_region(power_gains(ch), n, quad(cfg)).max_sum_rate();
        } catch (const NumericError& e) {
          throw NumericError(fmt::format("fig3 at snr_db={}: {}", snr_db[k], e.what()),
                             e.achieved_error());
        }
        rows[k] = {n, td_sumrate(snr) / scale, gg_sumrate(ch) / scale, dg / scale};
      },
      cfg.threads);
  Artifact a;
  a.text = header_comment("fig3", {{"snr_db", snr_db}, {"alpha", alpha}}, cfg) +
           "snr_db,n,td_norm,gg_norm,dg_norm\n";
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const Row& r = rows[k];
    a.text += fmt::format("{},{},{},{},{}\n", format_double(snr_db[k]), r.n, format_double(r.td),
                          format_double(r.gg), format_double(r.dg));
    if (check && a.ok && snr_db[k] >= 40.0 && !(r.dg > r.td)) {
      a.ok = false;
      a.failure = fmt::format("dg_norm {} <= td_norm {} at snr_db={}", r.dg, r.td, snr_db[k]);
    }
  }
  return a;
}

Artifact cmd_gdof(const std::vector<double>& alphas, const RunConfig& cfg) {
  const auto rows = gdof_table(alphas);
  Artifact a;
  a.text = header_comment("gdof", {{"alpha", alphas}}, cfg) + gdof_csv(rows);
  for (const auto& r : rows) {
    if (std::abs(r.b_inner - r.b_outer) > 1e-9) {
      a.ok = false;
      a.failure = fmt::format("inner {} != outer {} at alpha={} direction ({},{})", r.b_inner,
                              r.b_outer, r.alpha, r.a1, r.a2);
      break;
    }
  }
  return a;
}

GapArtifacts cmd_gap_scan(const std::vector<double>& snr_db, const std::vector<double>& alphas,
                          const RunConfig& cfg) {
  std::vector<std::pair<double, double>> grid;
  for (double d : snr_db) {
    for (double al : alphas) grid.emplace_back(db_to_linear(d), al);
  }
  const GapReport rep = gap_scan(grid, {cfg.gap_tol, cfg.threads});
  const ordered_json params = {{"snr_db", snr_db}, {"alpha", alphas}};
  return {header_comment("gap-scan", params, cfg) + gap_csv(rep), gap_summary_json(rep), rep.pass};
}

std::string cmd_region(double snr_db, double inr_db, std::string_view scheme, std::uint64_t n,
                       double d1, double d2, const RunConfig& cfg) {
  const double snr = db_to_linear(snr_db);
  const double inr = db_to_linear(inr_db);
  const SymmetricChannel ch = SymmetricChannel::from_snr_inr(snr, inr);
  const PowerGains g{snr, inr, inr, snr};
  if (n == 0) n = nd(snr);
  ordered_json j = {{"scheme", scheme}, {"snr_db", snr_db}, {"inr_db", inr_db}};
  auto with_region = [&](const RateRegion& r) {
    const ordered_json rj = ordered_json::parse(region_to_json(r));
    for (const auto& [k, v] : rj.items()) j[k] = v;
  };
  if (scheme == "gg") {
    j["sum_rate"] = gg_sumrate(snr, inr);
  } else if (scheme == "td") {
    j["sum_rate"] = td_sumrate(snr);
  } else if (scheme == "scheme1") {
    j["n"] = n;
    with_region(scheme1_region(g, n));
  } else if (scheme == "scheme2") {
    j["n"] = n;
    j["d1"] = d1;
    j["d2"] = d2;
    with_region(scheme2_region(g, n, d1, d2));
  } else if (scheme == "scheme2_etw") {
    j["n"] = n;
    with_region(scheme2_etw_region(ch, n));
  } else if (scheme == "scheme1_numeric") {
    j["n"] = n;
    with_region(scheme1_numeric_region(g, n, quad(cfg)));
  } else if (scheme == "etw_outer") {
    with_region(etw_outer(snr, inr));
  } else if (scheme == "thm1_outer") {
    with_region(thm1_gaussian_outer_gg(ch));
  } else if (scheme == "noisy_copy_inner") {
    with_region(gaussian_inner_noisy_copy(ch));
  } else if (scheme == "inner_assembly") {
    j["regime"] = regime_name(classify_regime(snr, inr));
    with_region(inner_assembly(ch));
  } else {
    throw UsageError(fmt::format("unknown scheme '{}'", scheme));
  }
  return j.dump(2) + "\n";
}

Artifact cmd_selftest(const RunConfig& cfg) {
  Artifact a;
  auto line = [&](std::string_view name, bool ok) {
    a.text += fmt::format("{} {}\n", ok ? "PASS" : "FAIL", name);
    if (!ok && a.ok) {
      a.ok = false;
      a.failure = std::string(name);
    }
  };

  bool sandwich = true;
  for (std::uint64_t n : {1u, 2u, 4u, 8u}) {
    for (double snr : {0.1, 10.0, 1e4}) {
      const double v = mi_pam_awgn(n, snr, quad(cfg));
      const double hi = ig(std::min(static_cast<double>(n * n - 1), snr));
      sandwich = sandwich && id(n, snr) <= v + 1e-9 && v <= hi + 1e-6;
    }
  }
  line("pam mutual information within its closed-form bounds", sandwich);

  bool table = true;
  for (const auto& e : table1_entries()) {
    const auto v = lda_sumrate_exact(LdaChannel::symmetric(e.ns, e.ni), e.p1, e.p2);
    table = table && v && *v / Rational(2 * e.ns) == wcurve(e.alpha);
  }
  line("table pmfs attain the W-curve exactly", table);

  bool gd = true;
  for (double al : {0.0, 0.3, 0.5, 0.75, 1.0, 1.5, 2.0, 2.5}) {
    gd = gd && gdof_icor_region(al).same_as(gdof_gic_region(al), 1e-9);
  }
  line("gdof inner region equals the classical region", gd);

  bool s2 = true;
  for (double snr : {1.0, 100.0, 1e5}) {
    for (double al : {0.5, 1.0, 2.0}) {
      const PowerGains g = power_gains(SymmetricChannel(snr, al));
      s2 = s2 && scheme2_region(g, nd(snr), 0.0, 0.0) == scheme1_region(g, nd(snr));
    }
  }
  line("scheme2 at zero split equals scheme1", s2);

  line("noisy-copy gap at most half a bit", corollary2_gap(1e12) <= 0.5);
  return a;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rate regions, gDoF and constant-gap checks for the interference channel with "
               "an oblivious receiver"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string config_path;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file; flags override it");
    sub->add_option("--quad-nodes", cfg.quad_nodes, "Gauss-Hermite nodes per component")
        ->check(CLI::Range(4, 512));
    sub->add_option("--quad-tol", cfg.quad_tol, "quadrature tolerance, bits")->check(CLI::PositiveNumber);
    sub->add_option("--restarts", cfg.restarts, "optimizer restarts")->check(CLI::Range(1, 100000));
    sub->add_option("--max-iters", cfg.max_iters, "optimizer iterations per restart")
        ->check(CLI::Range(1, 1000000));
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--gap-tol", cfg.gap_tol, "slack added to regime gap bounds")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--threads", cfg.threads, "worker threads (0: ICOR_THREADS or all cores)");
    sub->add_option("-o,--output", cfg.output, "write the primary artifact to this file");
  };

  std::string alpha_spec = "0:3:0.25";
  std::string snr_spec = "0:80:10";
  int ns = 0;
  int ni = 0;
  bool optimize = false;
  bool check = false;
  double alpha = 4.0 / 3.0;
  std::string csv_path;
  std::string summary_path;
  double snr_db = 20.0;
  double inr_db = 10.0;
  std::string scheme;
  std::uint64_t n = 0;
  double d1 = 0.0;
  double d2 = 0.0;

  auto* wc = app.add_subcommand("wcurve", "W-curve and baseline gDoF over an alpha grid");
  wc->add_option("--alpha", alpha_spec, "alpha grid start:stop:step");
  add_common(wc);

  auto* lda = app.add_subcommand("lda", "LDA sum-rates for a symmetric channel");
  lda->add_option("--ns", ns, "direct-link levels")->required();
  lda->add_option("--ni", ni, "cross-link levels")->required();
  lda->add_flag("--optimize", optimize, "run the input-pmf optimizer");
  lda->add_option("--csv", csv_path, "also write the pmf table here");
  add_common(lda);

  auto* f3 = app.add_subcommand("fig3", "normalized sum-rates versus SNR");
  f3->add_option("--snr-db", snr_spec, "SNR grid in dB start:stop:step");
  f3->add_option("--alpha", alpha, "INR exponent");
  f3->add_flag("--check", check, "fail unless the discrete input beats time division from 40 dB");
  add_common(f3);

  auto* gd = app.add_subcommand("gdof", "gDoF support values, inner versus classical outer");
  gd->add_option("--alpha", alpha_spec, "alpha grid start:stop:step");
  add_common(gd);

  std::string gap_alpha = "0:3:0.1";
  std::string gap_snr = "0:80:2";
  auto* gs = app.add_subcommand("gap-scan", "gap to the classical outer bound over a grid");
  gs->add_option("--snr-db", gap_snr, "SNR grid in dB start:stop:step");
  gs->add_option("--alpha", gap_alpha, "alpha grid start:stop:step");
  gs->add_option("--summary", summary_path, "write the JSON summary here");
  add_common(gs);

  auto* rg = app.add_subcommand("region", "one rate region as JSON");
  rg->add_option("--snr-db", snr_db, "SNR in dB");
  rg->add_option("--inr-db", inr_db, "INR in dB");
  rg->add_option("--scheme", scheme, "region name")->required();
  rg->add_option("-n", n, "PAM size (0: floor(sqrt(1+snr)))");
  rg->add_option("--d1", d1, "power split at transmitter 1");
  rg->add_option("--d2", d2, "power split at transmitter 2");
  add_common(rg);

  auto* st = app.add_subcommand("selftest", "quick internal consistency checks");
  add_common(st);

  std::vector<const char*> argv{"icor"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  CLI::App* sub = app.get_subcommands().front();

  try {
    if (!config_path.empty()) {
      std::vector<std::string> given;
      for (const auto& [key, flag] :
           std::vector<std::pair<std::string, std::string>>{{"quad_nodes", "--quad-nodes"},
                                                            {"quad_tol", "--quad-tol"},
                                                            {"restarts", "--restarts"},
                                                            {"max_iters", "--max-iters"},
                                                            {"seed", "--seed"},
                                                            {"gap_tol", "--gap-tol"},
                                                            {"threads", "--threads"},
                                                            {"output", "--output"}}) {
        if (sub->count(flag) > 0) given.push_back(key);
      }
      apply_config_json(cfg, read_file(config_path), given);
    }

    if (sub == wc) {
      write_or_print(cmd_wcurve(parse_grid(alpha_spec), cfg).text, cfg.output, out);
    } else if (sub == lda) {
      const LdaArtifacts r = cmd_lda(ns, ni, optimize, cfg);
      write_or_print(r.json, cfg.output, out);
      if (!csv_path.empty()) write_or_print(r.csv, csv_path, out);
    } else if (sub == f3) {
      const Artifact r = cmd_fig3(parse_grid(snr_spec), alpha, check, cfg);
      write_or_print(r.text, cfg.output, out);
      if (!r.ok) {
        err << "check failed: " << r.failure << "\n";
        return kExitFailure;
      }
    } else if (sub == gd) {
      const Artifact r = cmd_gdof(parse_grid(alpha_spec), cfg);
      write_or_print(r.text, cfg.output, out);
      if (!r.ok) {
        err << "check failed: " << r.failure << "\n";
        return kExitFailure;
      }
    } else if (sub == gs) {
      const GapArtifacts r = cmd_gap_scan(parse_grid(gap_snr), parse_grid(gap_alpha), cfg);
      write_or_print(r.csv, cfg.output, out);
      if (!summary_path.empty()) write_or_print(r.summary_json, summary_path, out);
      if (!r.ok) {
        err << "check failed: gap above its regime bound\n" << r.summary_json;
        return kExitFailure;
      }
    } else if (sub == rg) {
      write_or_print(cmd_region(snr_db, inr_db, scheme, n, d1, d2, cfg), cfg.output, out);
    } else if (sub == st) {
      const Artifact r = cmd_selftest(cfg);
      write_or_print(r.text, cfg.output, out);
      if (!r.ok) return kExitFailure;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CapabilityError& e) {
    err << "capability error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace icor::cli
