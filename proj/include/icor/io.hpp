#pragma once

// Text artifacts: region JSON, vertex/grid CSV tables, gap report summaries.
// Doubles are written in shortest round-trip form so output is reproducible
// byte for byte and parses back to the same value.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "icor/gap.hpp"
#include "icor/gdof.hpp"
#include "icor/lda.hpp"
#include "icor/regions.hpp"

namespace icor {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// Shortest decimal string that parses back to x; "inf"/"nan" never occur in
/// artifacts (callers validate first).
std::string format_double(double x);

/// 64-bit FNV-1a hash.
std::uint64_t fnv1a64(std::string_view bytes);

/// "# icor <version> config=<16 hex digits of fnv1a64(config)>\n".
std::string csv_comment(std::string_view config);

/// {"constraints":[{"a":[a1,a2],"b":b},...],"vertices":[[r1,r2],...],
///  "max_sum_rate":s}
std::string region_to_json(const RateRegion& r);
std::string region_to_json(const GdofRegion& r);

/// Reads the "constraints" array written by region_to_json (other keys are
/// ignored). Throws DomainError on malformed input or unknown directions.
RateRegion rate_region_from_json(std::string_view json);

/// Header "r1,r2" then one line per vertex.
std::string vertices_csv(const RateRegion& r);

/// alpha,a1,a2,b_inner,b_outer
std::string gdof_csv(const std::vector<GdofRow>& rows);

/// alpha,ns,ni,uniform_norm,optimized_norm,wcurve
std::string fig2_csv(const std::vector<Fig2Row>& rows);

/// snr_db,alpha,regime,gap_bits,gap_r1_only_bits,bound_bits,pass
std::string gap_csv(const GapReport& rep);

/// {"pass":bool,"points":n,"regimes":{"<name>":{"count","max_gap_bits",
///  "argmax_snr_db","argmax_alpha","bound_bits","pass"}}}
std::string gap_summary_json(const GapReport& rep);

}  // namespace icor
