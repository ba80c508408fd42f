#include "hbf/records.hpp"

namespace hbf {

namespace {

template <typename T>
Json opt(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

template <typename T>
std::string csv_opt(const std::optional<T>& v) {
  return v ? std::to_string(*v) : std::string();
}

}  // namespace

std::string coords_string(unsigned coords) {
  std::string s(4, '0');
  for (int i = 0; i < 4; ++i) s[i] = (coords >> i) & 1u ? '1' : '0';
  return s;
}

Json to_json(const Family& family, const SearchRecord& r) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["n"] = family.n();
  j["a_hex"] = format_hex(r.a.bits);
  j["b_coords"] = coords_string(r.b_coords);
  j["b_name"] = r.b_name;
  j["K"] = r.k;
  j["Q"] = opt(r.q);
  j["pattern"] = r.pattern ? Json(r.pattern->to_string()) : Json(nullptr);
  j["lambda_direct"] = r.lambda_direct;
  j["lambda_prop32"] = r.lambda_prop32;
  j["lambda_closed"] = opt(r.lambda_closed);
  j["hyperbent"] = r.hyperbent;
  j["ps_ap"] = r.ps_ap;
  if (r.definitional) j["definitional"] = *r.definitional;
  if (r.anf_degree) j["anf_degree"] = *r.anf_degree;
  return j;
}

std::string csv_header_search() {
  return "n,a_hex,b_coords,b_name,K,Q,pattern,lambda_direct,lambda_prop32,lambda_closed,hyperbent,ps_ap";
}

std::string to_csv(const Family& family, const SearchRecord& r) {
  return std::to_string(family.n()) + "," + format_hex(r.a.bits) + "," + coords_string(r.b_coords) + "," +
         r.b_name + "," + std::to_string(r.k) + "," + csv_opt(r.q) + "," +
         (r.pattern ? r.pattern->to_string() : std::string()) + "," + std::to_string(r.lambda_direct) + "," +
         std::to_string(r.lambda_prop32) + "," + csv_opt(r.lambda_closed) + "," + (r.hyperbent ? "1" : "0") + "," +
         (r.ps_ap ? "1" : "0");
}

SumsRecord make_sums_record(const Field& field, int m, Elem a, bool with_curve) {
  SumsRecord r;
  r.m = m;
  r.a = a;
  r.k = kloosterman(field, m, a);
  if (a.is_zero()) return r;
  r.q = weil_q(field, m, a);
  r.pattern = quintic_pattern(field, m, a);
  r.pair = weil_pair_resolve(*r.pattern, m, *r.q);
  if (with_curve) {
    r.counts = curve_counts(field, m, a);
    const std::int64_t q = std::int64_t{1} << m;
    if (r.counts->n1 != q + 1 + *r.q) {
      throw Error(ErrorCode::CrossCheckFailure, "N1 != 2^m + 1 + Q at a = " + format_hex(a.bits));
    }
    if (r.counts->n2 != q * q + 1 + 2 * r.pair->s - r.pair->r * r.pair->r) {
      throw Error(ErrorCode::CrossCheckFailure, "N2 disagrees with (r, s) at a = " + format_hex(a.bits));
    }
  }
  return r;
}

Json to_json(const SumsRecord& r) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["m"] = r.m;
  j["a_hex"] = format_hex(r.a.bits);
  j["K"] = r.k;
  j["Q"] = opt(r.q);
  j["pattern"] = r.pattern ? Json(r.pattern->to_string()) : Json(nullptr);
  j["r"] = r.pair ? Json(r.pair->r) : Json(nullptr);
  j["s"] = r.pair ? Json(r.pair->s) : Json(nullptr);
  j["n1"] = r.counts ? Json(r.counts->n1) : Json(nullptr);
  j["n2"] = r.counts ? Json(r.counts->n2) : Json(nullptr);
  return j;
}

std::string csv_header_sums() { return "m,a_hex,K,Q,pattern,r,s,n1,n2"; }

std::string to_csv(const SumsRecord& r) {
  auto pr = [](const std::optional<WeilPair>& p, bool first) {
    return p ? std::to_string(first ? p->r : p->s) : std::string();
  };
  auto cc = [](const std::optional<CurveCounts>& c, bool first) {
    return c ? std::to_string(first ? c->n1 : c->n2) : std::string();
  };
  return std::to_string(r.m) + "," + format_hex(r.a.bits) + "," + std::to_string(r.k) + "," + csv_opt(r.q) + "," +
         (r.pattern ? r.pattern->to_string() : std::string()) + "," + pr(r.pair, true) + "," + pr(r.pair, false) +
         "," + cc(r.counts, true) + "," + cc(r.counts, false);
}

}  // namespace hbf
