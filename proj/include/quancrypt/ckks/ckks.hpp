// Copyright (c) 2026 The quancrypt authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "quancrypt/ckks/context.hpp"

namespace quancrypt::ckks {

enum class PolyForm : std::uint8_t { coeff = 0, ntt = 1 };

/// RNS ring element: one residue vector of length `degree` per prime.
struct RingPoly {
    std::vector<std::vector<u64>> residues;
    PolyForm form = PolyForm::coeff;
};

struct SecretKey {
    RingPoly s;  // ternary, stored in NTT form
    std::vector<std::vector<u64>> s_shoup;  // per-element Shoup companions
    ContextPtr ctx;
};

struct PublicKey {
    RingPoly b;  // b = -a*s + e
    RingPoly a;
    std::vector<std::vector<u64>> b_shoup;
    std::vector<std::vector<u64>> a_shoup;
    ContextPtr ctx;
};

/// Rebuilds the fixed-operand multiplication tables (needed after
/// deserializing a key).
std::vector<std::vector<u64>> shoup_tables(const CkksContext& ctx, const RingPoly& poly);

struct Plaintext {
    RingPoly poly;
    double scale = 0.0;
    ContextPtr ctx;
};

struct Ciphertext {
    RingPoly c0;
    RingPoly c1;
    double scale = 0.0;
    int mul_depth = 0;
    ContextPtr ctx;

    std::size_t slot_count() const { return ctx->slot_count(); }
};

struct KeyPair {
    SecretKey secret;
    PublicKey pub;
};

/// Deterministic for a fixed seed; fresh randomness comes only from `seed`.
KeyPair keygen(const ContextPtr& ctx, u64 seed);

/// Packs up to degree/2 reals into the real parts of the slots at the
/// context scale. Throws on capacity overflow, non-finite input, or values
/// too large for the modulus chain.
Plaintext encode(const ContextPtr& ctx, std::span<const double> values);

/// Constant polynomial carrying `value` in every slot; O(degree).
Plaintext encode_scalar(const ContextPtr& ctx, double value);

/// Inverse embedding divided by the plaintext's stored scale.
std::vector<double> decode(const Plaintext& pt);

Ciphertext encrypt(const PublicKey& pk, const Plaintext& pt, u64 seed);
Plaintext decrypt(const SecretKey& sk, const Ciphertext& ct);

/// Slot-wise homomorphic addition; scales must agree to 1e-9 relative.
Ciphertext add(const Ciphertext& a, const Ciphertext& b);

/// One level of scalar multiplication; the scalar is encoded at the context
/// scale and the result's scale is the product. A second multiplication on
/// the product is a depth error.
Ciphertext multiply_scalar(const Ciphertext& ct, double value);

/// Whole-poly NTT with representation guards (wrong-domain input throws).
void ntt_forward(const CkksContext& ctx, RingPoly& poly);
void ntt_inverse(const CkksContext& ctx, RingPoly& poly);

}  // namespace quancrypt::ckks
