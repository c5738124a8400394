#include "icor/io.hpp"

#include <cmath>

#include <fmt/format.h>

#include "icor/errors.hpp"
#include "json.hpp"

namespace icor {

namespace {

using nlohmann::ordered_json;

template <class Tag>
ordered_json region_json(const Region<Tag>& r) {
  ordered_json cons = ordered_json::array();
  for (const Constraint& c : r.constraints()) {
    cons.push_back({{"a", {c.a1, c.a2}}, {"b", c.b}});
  }
  ordered_json verts = ordered_json::array();
  for (const RatePair& v : r.vertices()) verts.push_back({v.r1, v.r2});
  return {{"constraints", cons}, {"vertices", verts}, {"max_sum_rate", r.max_sum_rate()}};
}

}  // namespace

std::string format_double(double x) { return fmt::format("{}", x); }

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string csv_comment(std::string_view config) {
  return fmt::format("# icor {} config={:016x}\n", kToolVersion, fnv1a64(config));
}

std::string region_to_json(const RateRegion& r) { return region_json(r).dump(); }
std::string region_to_json(const GdofRegion& r) { return region_json(r).dump(); }

RateRegion rate_region_from_json(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("region JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("constraints") || !j["constraints"].is_array()) {
    throw DomainError("region JSON needs a constraints array");
  }
  double r1 = std::numeric_limits<double>::infinity();
  double r2 = r1;
  std::vector<std::pair<Direction, double>> rest;
  for (const auto& c : j["constraints"]) {
    if (!c.contains("a") || !c.contains("b") || !c["a"].is_array() || c["a"].size() != 2 ||
        !c["b"].is_number()) {
      throw DomainError("malformed constraint in region JSON");
    }
    const auto d = direction_of(c["a"][0].get<int>(), c["a"][1].get<int>());
    if (!d) throw DomainError("unknown constraint direction in region JSON");
    const double b = c["b"].get<double>();
    if (*d == Direction::r1) {
      r1 = std::min(r1, b);
    } else if (*d == Direction::r2) {
      r2 = std::min(r2, b);
    } else {
      rest.emplace_back(*d, b);
    }
  }
  if (std::isinf(r1) || std::isinf(r2)) throw DomainError("region JSON lacks an axis constraint");
  RateRegion r(r1, r2);
  for (const auto& [d, b] : rest) r.limit(d, b);
  return r;
}

std::string vertices_csv(const RateRegion& r) {
  std::string out = "r1,r2\n";
  for (const RatePair& v : r.vertices()) {
    out += fmt::format("{},{}\n", format_double(v.r1), format_double(v.r2));
  }
  return out;
}

std::string gdof_csv(const std::vector<GdofRow>& rows) {
  std::string out = "alpha,a1,a2,b_inner,b_outer\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{}\n", format_double(r.alpha), r.a1, r.a2,
                       format_double(r.b_inner), format_double(r.b_outer));
  }
  return out;
}

std::string fig2_csv(const std::vector<Fig2Row>& rows) {
  std::string out = "alpha,ns,ni,uniform_norm,optimized_norm,wcurve\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{},{}\n", format_double(r.alpha), r.ns, r.ni,
                       format_double(r.uniform_normalized), format_double(r.optimized_normalized),
                       format_double(r.wcurve));
  }
  return out;
}

std::string gap_csv(const GapReport& rep) {
  std::string out = "snr_db,alpha,regime,gap_bits,gap_r1_only_bits,bound_bits,pass\n";
  for (const auto& p : rep.points) {
    out += fmt::format("{},{},{},{},{},{},{}\n", format_double(linear_to_db(p.snr)),
                       format_double(p.alpha), regime_name(p.regime), format_double(p.gap),
                       format_double(p.gap_r1_only), format_double(p.bound), p.pass ? 1 : 0);
  }
  return out;
}

std::string gap_summary_json(const GapReport& rep) {
  ordered_json regimes = ordered_json::object();
  for (Regime r : kRegimes) {
    const auto& s = rep.regimes[static_cast<std::size_t>(r)];
    ordered_json e = {{"count", s.count}, {"bound_bits", s.bound}, {"pass", s.pass}};
    if (s.count > 0) {
      e["max_gap_bits"] = s.max_gap;
      e["argmax_snr_db"] = linear_to_db(s.argmax_snr);
      e["argmax_alpha"] = s.argmax_alpha;
    }
    regimes[std::string(regime_name(r))] = e;
  }
  ordered_json j = {{"pass", rep.pass}, {"points", rep.points.size()}, {"regimes", regimes}};
  return j.dump(2) + "\n";
}

}  // namespace icor
