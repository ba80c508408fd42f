#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hbf/expsums.hpp"
#include "hbf/family.hpp"

namespace hbf {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Four binary digits, coefficient of beta^0 first ("0101").
std::string coords_string(unsigned coords);

Json to_json(const Family& family, const SearchRecord& r);
std::string csv_header_search();
std::string to_csv(const Family& family, const SearchRecord& r);

/// Exponential-sum record for one (m, a): K, Q, pattern, (r, s), n1, n2.
/// Q, pattern and the curve fields are null for a = 0.
struct SumsRecord {
  int m = 0;
  Elem a;
  std::int64_t k = 0;
  std::optional<std::int64_t> q;
  std::optional<FactorPattern> pattern;
  std::optional<WeilPair> pair;
  std::optional<CurveCounts> counts;
};

/// Computes and self-checks one record (n1 = 2^m + 1 + Q, n2 against (r, s)
/// when both counts are requested). `field` must contain GF(2^(2m)) when
/// with_curve is set, otherwise GF(2^m).
SumsRecord make_sums_record(const Field& field, int m, Elem a, bool with_curve);
Json to_json(const SumsRecord& r);
std::string csv_header_sums();
std::string to_csv(const SumsRecord& r);

}  // namespace hbf
