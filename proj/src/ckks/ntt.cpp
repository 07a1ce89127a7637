// Copyright (c) 2026 The quancrypt authors
// SPDX-License-Identifier: Apache-2.0

#include "quancrypt/ckks/ntt.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace quancrypt::ckks {

u64 pow_mod(u64 base, u64 exp, u64 p) {
    u64 result = 1;
    base %= p;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, p);
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    return result;
}

u64 inv_mod(u64 a, u64 p) {
    return pow_mod(a, p - 2, p);  // p prime
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // This witness set is deterministic for all n < 2^64.
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

u64 find_ntt_prime(int bits, u64 degree, const std::vector<u64>& exclude) {
    if (bits < 20 || bits > 61) {
        throw std::invalid_argument("parameter error: moduli bit sizes must be in [20, 61], got " +
                                    std::to_string(bits));
    }
    const u64 step = 2 * degree;
    const u64 hi = (bits == 63) ? ~u64{0} : ((u64{1} << bits) - 1);
    const u64 lo = u64{1} << (bits - 1);
    // Largest candidate <= hi with candidate % step == 1.
    u64 c = hi - ((hi - 1) % step);
    for (; c >= lo; c -= step) {
        if (!is_prime(c)) continue;
        bool used = false;
        for (u64 e : exclude) used |= (e == c);
        if (!used) return c;
    }
    throw std::invalid_argument("parameter error: no NTT prime of " + std::to_string(bits) +
                                " bits for ring degree " + std::to_string(degree));
}

namespace {

u64 bit_reverse(u64 x, int bits) {
    u64 r = 0;
    for (int i = 0; i < bits; ++i) {
        r = (r << 1) | ((x >> i) & 1);
    }
    return r;
}

// Primitive 2*degree-th root of unity mod p: g^((p-1)/2M) with psi^M = -1.
u64 find_primitive_root(u64 p, u64 degree) {
    const u64 order = 2 * degree;
    const u64 cofactor = (p - 1) / order;
    for (u64 g = 2;; ++g) {
        const u64 psi = pow_mod(g, cofactor, p);
        if (psi == 1) continue;
        if (pow_mod(psi, degree, p) == p - 1) return psi;
    }
}

}  // namespace

NttTables::NttTables(u64 prime, u64 degree) : prime_(prime), degree_(degree) {
    if (!std::has_single_bit(degree)) {
        throw std::invalid_argument("parameter error: NTT degree must be a power of two");
    }
    if ((prime - 1) % (2 * degree) != 0) {
        throw std::invalid_argument("parameter error: prime is not 1 mod 2*degree");
    }
    log_degree_ = std::countr_zero(degree);
    const u64 psi = find_primitive_root(prime, degree);
    const u64 ipsi = inv_mod(psi, prime);

    psi_rev_.resize(degree);
    psi_rev_shoup_.resize(degree);
    ipsi_rev_.resize(degree);
    ipsi_rev_shoup_.resize(degree);
    u64 power = 1, ipower = 1;
    std::vector<u64> psi_pow(degree), ipsi_pow(degree);
    for (u64 i = 0; i < degree; ++i) {
        psi_pow[i] = power;
        ipsi_pow[i] = ipower;
        power = mul_mod(power, psi, prime);
        ipower = mul_mod(ipower, ipsi, prime);
    }
    for (u64 i = 0; i < degree; ++i) {
        const u64 r = bit_reverse(i, log_degree_);
        psi_rev_[i] = psi_pow[r];
        psi_rev_shoup_[i] = shoup_of(psi_pow[r], prime);
        ipsi_rev_[i] = ipsi_pow[r];
        ipsi_rev_shoup_[i] = shoup_of(ipsi_pow[r], prime);
    }
    degree_inv_ = inv_mod(degree % prime, prime);
    degree_inv_shoup_ = shoup_of(degree_inv_, prime);
}

// Harvey-style lazy reduction: butterfly values stay below 4p (forward) or
// 2p (inverse) and are fully reduced only in a final pass. Needs p < 2^62.
void NttTables::forward(std::span<u64> a) const {
    const u64 p = prime_;
    const u64 twop = 2 * p;
    const u64 n = degree_;
    u64 t = n;
    for (u64 m = 1; m < n; m <<= 1) {
        t >>= 1;
        for (u64 i = 0; i < m; ++i) {
            const u64 w = psi_rev_[m + i];
            const u64 wq = psi_rev_shoup_[m + i];
            u64* x = a.data() + 2 * i * t;
            u64* y = x + t;
            for (u64 j = 0; j < t; ++j) {
                u64 u = x[j];
                if (u >= twop) u -= twop;
                const u64 v = mul_shoup_lazy(y[j], w, wq, p);
                x[j] = u + v;
                y[j] = u + twop - v;
            }
        }
    }
    for (u64 j = 0; j < n; ++j) {
        u64 v = a[j];
        if (v >= twop) v -= twop;
        if (v >= p) v -= p;
        a[j] = v;
    }
}

void NttTables::inverse(std::span<u64> a) const {
    const u64 p = prime_;
    const u64 twop = 2 * p;
    const u64 n = degree_;
    u64 t = 1;
    for (u64 m = n; m > 1; m >>= 1) {
        const u64 h = m >> 1;
        u64 j1 = 0;
        for (u64 i = 0; i < h; ++i) {
            const u64 w = ipsi_rev_[h + i];
            const u64 wq = ipsi_rev_shoup_[h + i];
            u64* x = a.data() + j1;
            u64* y = x + t;
            for (u64 j = 0; j < t; ++j) {
                const u64 u = x[j];
                const u64 v = y[j];
                const u64 s = u + v;
                x[j] = s >= twop ? s - twop : s;
                y[j] = mul_shoup_lazy(u + twop - v, w, wq, p);
            }
            j1 += 2 * t;
        }
        t <<= 1;
    }
    for (u64 j = 0; j < n; ++j) {
        const u64 r = mul_shoup_lazy(a[j], degree_inv_, degree_inv_shoup_, p);
        a[j] = r >= p ? r - p : r;
    }
}

}  // namespace quancrypt::ckks
