// Copyright (c) 2026 The quancrypt authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "quancrypt/ckks/ntt.hpp"
#include "quancrypt/util/rng.hpp"

namespace quancrypt::ckks {

class CkksContext;
using ContextPtr = std::shared_ptr<const CkksContext>;

/// Immutable CKKS parameter set: ring degree M, RNS prime chain, encoding
/// scale, error width, and all precomputed tables (NTT twiddles, embedding
/// FFT roots, CRT lift constants, discrete-Gaussian CDT).
///
/// Only the additive subset of the scheme is supported: encode/decode,
/// keygen, encrypt/decrypt, ciphertext addition, and one level of
/// ciphertext-by-plaintext-scalar multiplication.
class CkksContext {
public:
    CkksContext(u64 degree, std::vector<int> moduli_bits, double scale, double sigma);

    u64 degree() const { return degree_; }
    std::size_t slot_count() const { return degree_ / 2; }
    const std::vector<u64>& moduli() const { return moduli_; }
    const std::vector<int>& moduli_bits() const { return moduli_bits_; }
    double scale() const { return scale_; }
    double sigma() const { return sigma_; }
    bool insecure() const { return degree_ < 4096; }
    u64 param_hash() const { return param_hash_; }
    const NttTables& ntt(std::size_t prime_index) const { return ntt_[prime_index]; }

    // Canonical embedding restricted to real slots. Inverse embedding of
    // `slots` scaled by `scale` into M real coefficients; exact inverse of
    // coeffs_to_slots up to floating rounding.
    std::vector<double> slots_to_coeffs(std::span<const double> slots, double scale) const;
    std::vector<double> coeffs_to_slots(std::span<const double> coeffs) const;

    // Centered representative of an RNS residue vector entry, exact for
    // |value| < product(moduli)/4 (enforced at encode with headroom).
    double crt_lift(std::span<const std::vector<u64>> residues, std::size_t coeff_index) const;

    // Largest |value|*scale accepted by encode.
    double encode_bound() const { return encode_bound_; }

    // Samplers shared by keygen/encrypt; deterministic given the Rng state.
    // Integer-valued polynomials are sampled once and reduced into every
    // prime's residue vector by the caller.
    void sample_ternary(Rng& rng, std::span<int> out) const;
    void sample_gaussian(Rng& rng, std::span<int> out) const;
    void sample_uniform(Rng& rng, std::span<u64> out, std::size_t prime_index) const;

private:
    void fft(std::vector<std::complex<double>>& a, bool inverse_direction) const;

    u64 degree_;
    std::vector<int> moduli_bits_;
    std::vector<u64> moduli_;
    double scale_;
    double sigma_;
    u64 param_hash_;
    std::vector<NttTables> ntt_;

    // Embedding FFT tables.
    std::vector<std::complex<double>> roots_;  // e^{2*pi*i*j/M}
    std::vector<std::complex<double>> twist_;  // e^{pi*i*n/M}
    std::vector<std::uint32_t> bitrev_;

    // CRT lift tables (values mod 2^128).
    std::vector<u128> p_hat_;        // (P/p_j) mod 2^128
    std::vector<u64> p_hat_inv_;     // (P/p_j)^-1 mod p_j
    std::vector<long double> p_inv_; // 1/p_j
    u128 modulus_product_lo_;        // P mod 2^128
    double encode_bound_;

    // Discrete Gaussian CDT ordered by descending mass.
    std::vector<u64> cdt_threshold_;
    std::vector<int> cdt_value_;
};

/// Builds an immutable context. Throws std::invalid_argument when the degree
/// is not a power of two >= 1024, a bit size is out of [20, 61], no prime of
/// a requested size exists, or the scale does not fit the modulus chain.
ContextPtr make_context(u64 degree, std::vector<int> moduli_bits, double scale,
                        double sigma = 3.2);

}  // namespace quancrypt::ckks
