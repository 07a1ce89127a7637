// Copyright (c) 2026 The quancrypt authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace quancrypt::ckks {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 add_mod(u64 a, u64 b, u64 p) {
    const u64 s = a + b;  // p < 2^62, no overflow
    return s >= p ? s - p : s;
}

inline u64 sub_mod(u64 a, u64 b, u64 p) {
    return a >= b ? a - b : a + p - b;
}

inline u64 mul_mod(u64 a, u64 b, u64 p) {
    return static_cast<u64>((u128(a) * b) % p);
}

// Shoup multiplication by a fixed operand w < p: precompute floor(w*2^64/p)
// once, then each product needs one high multiply and one correction.
inline u64 shoup_of(u64 w, u64 p) {
    return static_cast<u64>((u128(w) << 64) / p);
}

// Valid for any a < 2^64; result in [0, 2p).
inline u64 mul_shoup_lazy(u64 a, u64 w, u64 w_shoup, u64 p) {
    const u64 q = static_cast<u64>((u128(a) * w_shoup) >> 64);
    return a * w - q * p;
}

inline u64 mul_shoup(u64 a, u64 w, u64 w_shoup, u64 p) {
    const u64 r = mul_shoup_lazy(a, w, w_shoup, p);
    return r >= p ? r - p : r;
}

u64 pow_mod(u64 base, u64 exp, u64 p);
u64 inv_mod(u64 a, u64 p);

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime(u64 n);

// Largest prime of exactly `bits` bits congruent to 1 mod 2*degree that is
// not in `exclude`. Throws std::invalid_argument when none exists.
u64 find_ntt_prime(int bits, u64 degree, const std::vector<u64>& exclude);

// Precomputed tables for the negacyclic NTT modulo X^degree + 1 over one
// prime. Twiddles are powers of a primitive 2*degree-th root of unity psi,
// stored in bit-reversed order with Shoup companions for fast mulmod.
class NttTables {
public:
    NttTables(u64 prime, u64 degree);

    u64 prime() const { return prime_; }
    u64 degree() const { return degree_; }

    // In-place coefficient -> evaluation transform (values end up in the
    // transform's internal order; pointwise products followed by inverse()
    // realize negacyclic convolution).
    void forward(std::span<u64> a) const;
    // In-place inverse; exact round-trip with forward().
    void inverse(std::span<u64> a) const;

private:
    u64 prime_;
    u64 degree_;
    int log_degree_;
    std::vector<u64> psi_rev_;        // psi^bitrev(i)
    std::vector<u64> psi_rev_shoup_;
    std::vector<u64> ipsi_rev_;       // psi^-bitrev(i)
    std::vector<u64> ipsi_rev_shoup_;
    u64 degree_inv_;
    u64 degree_inv_shoup_;
};

}  // namespace quancrypt::ckks
