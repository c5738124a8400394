#pragma once

// Command implementations behind the `icor` executable. Every command returns
// its artifacts as strings so the same code serves the binary and the tests.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace icor::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitFailure = 3;

/// Malformed command line, grid spec or config file.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int quad_nodes = 96;
  double quad_tol = 1e-8;
  int restarts = 64;
  int max_iters = 400;
  std::uint64_t seed = 1;
  double gap_tol = 1e-3;
  /// 0: ICOR_THREADS or hardware concurrency. Never changes results.
  unsigned threads = 0;
  /// Empty: primary artifact goes to stdout.
  std::string output;

  /// Result-affecting fields as compact JSON (hashed into CSV comments).
  std::string canonical_json() const;
};

/// Applies a JSON config object. Keys listed in `skip` are left untouched
/// (their flags were given explicitly). Throws UsageError on unknown keys or
/// wrong types.
void apply_config_json(RunConfig& cfg, std::string_view json,
                       const std::vector<std::string>& skip = {});

/// "start:stop:step" (inclusive of stop up to rounding) or a single number.
/// Throws UsageError on malformed specs, step <= 0, stop < start, or more
/// than 1e6 points.
std::vector<double> parse_grid(std::string_view spec);

/// A textual artifact plus the outcome of any built-in assertion.
struct Artifact {
  std::string text;
  bool ok = true;
  std::string failure;  // first failed assertion, empty when ok
};

/// alpha,d_w,d_gg,d_td
Artifact cmd_wcurve(const std::vector<double>& alphas, const RunConfig& cfg);

struct LdaArtifacts {
  std::string json;
  std::string csv;  // x,p1,p2 for the reported input pmfs
};

/// Uniform baseline, wcurve target and, with `optimize`, the optimized value
/// and pmfs. Throws CapabilityError when max(ns, ni) > 6.
LdaArtifacts cmd_lda(int ns, int ni, bool optimize, const RunConfig& cfg);

/// snr_db,n,td_norm,gg_norm,dg_norm with n = floor(snr^(1/6)); normalized
/// sum-rates are max sum-rate / log2(1 + snr). With `check`, asserts
/// dg_norm > td_norm for snr_db >= 40.
Artifact cmd_fig3(const std::vector<double>& snr_db, double alpha, bool check,
                  const RunConfig& cfg);

/// gdof_csv rows; asserts inner and outer support values agree within 1e-9.
Artifact cmd_gdof(const std::vector<double>& alphas, const RunConfig& cfg);

struct GapArtifacts {
  std::string csv;
  std::string summary_json;
  bool ok = true;
};

GapArtifacts cmd_gap_scan(const std::vector<double>& snr_db, const std::vector<double>& alphas,
                          const RunConfig& cfg);

/// Region JSON for a symmetric channel. Schemes: scheme1, scheme2,
/// scheme2_etw, scheme1_numeric, etw_outer, thm1_outer, noisy_copy_inner,
/// inner_assembly, gg, td (the last two emit only "sum_rate"). n = 0 picks
/// nd(snr). Throws UsageError on an unknown scheme.
std::string cmd_region(double snr_db, double inr_db, std::string_view scheme, std::uint64_t n,
                       double d1, double d2, const RunConfig& cfg);

/// Fast internal consistency checks, one PASS/FAIL line each.
Artifact cmd_selftest(const RunConfig& cfg);

/// Full command-line entry point; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace icor::cli
