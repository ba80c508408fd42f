#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace hbf {

/// Degree -> modulus map for GF(2^k), k = 2..32.
///
/// Text form is one line per degree, `k: hex`, where the hex value is the
/// modulus bit-vector (bit i = coefficient of x^i). Blank lines and lines
/// starting with `#` are ignored. Entries are re-verified whenever a field is
/// built from them, so a bad table fails loudly at construction.
class ModulusTable {
 public:
  /// The table shipped with the library (primitive polynomials, low-weight).
  static const ModulusTable& builtin();

  static ModulusTable parse(const std::string& text);
  static ModulusTable load(const std::string& path);

  /// Table named by HBF_MODULI if set, otherwise the builtin one.
  static ModulusTable from_environment();

  std::optional<std::uint64_t> lookup(int degree) const;
  void set(int degree, std::uint64_t modulus);

  std::string to_text() const;
  /// FNV-1a over `to_text()`; recorded in run manifests.
  std::uint64_t hash() const;

  const std::map<int, std::uint64_t>& entries() const { return entries_; }

 private:
  std::map<int, std::uint64_t> entries_;
};

}  // namespace hbf
