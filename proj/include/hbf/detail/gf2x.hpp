#pragma once

// Small-degree arithmetic in GF(2)[x], polynomials packed into machine words
// (bit i = coefficient of x^i). Used for field moduli and the field multiply.

#include <bit>
#include <cstdint>

#if defined(__PCLMUL__)
#include <immintrin.h>
#endif

namespace hbf::detail {

/// Carry-less product of two polynomials of degree < 32.
inline std::uint64_t clmul32(std::uint32_t a, std::uint32_t b) noexcept {
#if defined(__PCLMUL__)
  const __m128i va = _mm_cvtsi64_si128(static_cast<long long>(a));
  const __m128i vb = _mm_cvtsi64_si128(static_cast<long long>(b));
  return static_cast<std::uint64_t>(_mm_cvtsi128_si64(_mm_clmulepi64_si128(va, vb, 0)));
#else
  // 4-bit windowed schoolbook
  std::uint64_t table[16];
  table[0] = 0;
  for (int i = 1; i < 16; ++i) {
    table[i] = (i & 1) ? (table[i - 1] ^ a) : (table[i >> 1] << 1);
  }
  std::uint64_t acc = 0;
  for (int shift = 28; shift >= 0; shift -= 4) {
    acc = (acc << 4) ^ table[(b >> shift) & 0xF];
  }
  return acc;
#endif
}

inline int degree(std::uint64_t p) noexcept { return p == 0 ? -1 : 63 - std::countl_zero(p); }

/// p mod f over GF(2), any degrees, f != 0.
inline std::uint64_t mod(std::uint64_t p, std::uint64_t f) noexcept {
  const int df = degree(f);
  for (int dp = degree(p); dp >= df; dp = degree(p)) {
    p ^= f << (dp - df);
  }
  return p;
}

/// a*b mod f with deg a, deg b < deg f <= 32.
inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t f) noexcept {
  return mod(clmul32(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)), f);
}

inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept {
  while (b != 0) {
    const std::uint64_t r = mod(a, b);
    a = b;
    b = r;
  }
  return a;
}

/// Rabin's test: f of degree k is irreducible iff x^(2^k) = x mod f and
/// gcd(x^(2^(k/p)) - x, f) = 1 for each prime p | k.
inline bool is_irreducible(std::uint64_t f) noexcept {
  const int k = degree(f);
  if (k < 1 || k > 32) return false;
  if (k == 1) return true;
  // x^(2^i) mod f for i = 0..k
  std::uint64_t powers[33];
  powers[0] = mod(2, f);
  for (int i = 1; i <= k; ++i) powers[i] = mulmod(powers[i - 1], powers[i - 1], f);
  if (powers[k] != mod(2, f)) return false;
  int rest = k;
  for (int p = 2; p <= rest; ++p) {
    if (rest % p != 0) continue;
    while (rest % p == 0) rest /= p;
    if (gcd(f, powers[k / p] ^ mod(2, f)) != 1) return false;
  }
  return true;
}

}  // namespace hbf::detail
