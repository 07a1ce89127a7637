// Copyright (c) 2026 The quancrypt authors
// SPDX-License-Identifier: Apache-2.0

#include "quancrypt/ckks/ckks.hpp"

#include <cmath>
#include <stdexcept>

namespace quancrypt::ckks {

namespace {

void require_same_context(u64 a, u64 b, const char* what) {
    if (a != b) {
        throw std::invalid_argument(std::string("context mismatch: ") + what);
    }
}

RingPoly zero_poly(const CkksContext& ctx, PolyForm form) {
    RingPoly p;
    p.form = form;
    p.residues.assign(ctx.moduli().size(), std::vector<u64>(ctx.degree(), 0));
    return p;
}

// Reduces a small-integer polynomial (|v| far below any prime) into every
// prime's residues.
RingPoly poly_from_ints(const CkksContext& ctx, std::span<const int> coeffs) {
    RingPoly out = zero_poly(ctx, PolyForm::coeff);
    for (std::size_t j = 0; j < ctx.moduli().size(); ++j) {
        const u64 p = ctx.moduli()[j];
        auto& r = out.residues[j];
        for (std::size_t n = 0; n < coeffs.size(); ++n) {
            const int v = coeffs[n];
            r[n] = v >= 0 ? static_cast<u64>(v) : p - static_cast<u64>(-v);
        }
    }
    return out;
}

RingPoly poly_from_int64(const CkksContext& ctx, std::span<const std::int64_t> coeffs) {
    RingPoly out = zero_poly(ctx, PolyForm::coeff);
    for (std::size_t j = 0; j < ctx.moduli().size(); ++j) {
        const u64 p = ctx.moduli()[j];
        auto& r = out.residues[j];
        for (std::size_t n = 0; n < coeffs.size(); ++n) {
            const std::int64_t v = coeffs[n];
            const u64 m = static_cast<u64>(v >= 0 ? v : -v) % p;
            r[n] = v >= 0 || m == 0 ? m : p - m;
        }
    }
    return out;
}

// out = key * x where `key` carries precomputed Shoup companions.
RingPoly pointwise_mul_keyed(const CkksContext& ctx, const RingPoly& key,
                             const std::vector<std::vector<u64>>& key_shoup, const RingPoly& x) {
    RingPoly out = x;
    for (std::size_t j = 0; j < ctx.moduli().size(); ++j) {
        const u64 p = ctx.moduli()[j];
        const auto& kj = key.residues[j];
        const auto& qj = key_shoup[j];
        auto& oj = out.residues[j];
        for (std::size_t n = 0; n < oj.size(); ++n) {
            oj[n] = mul_shoup(oj[n], kj[n], qj[n], p);
        }
    }
    return out;
}

void add_assign(const CkksContext& ctx, RingPoly& a, const RingPoly& b) {
    for (std::size_t j = 0; j < ctx.moduli().size(); ++j) {
        const u64 p = ctx.moduli()[j];
        const auto& bj = b.residues[j];
        auto& aj = a.residues[j];
        for (std::size_t n = 0; n < aj.size(); ++n) aj[n] = add_mod(aj[n], bj[n], p);
    }
}

void negate_assign(const CkksContext& ctx, RingPoly& a) {
    for (std::size_t j = 0; j < ctx.moduli().size(); ++j) {
        const u64 p = ctx.moduli()[j];
        for (auto& x : a.residues[j]) x = x == 0 ? 0 : p - x;
    }
}

void scale_assign(const CkksContext& ctx, RingPoly& a, std::span<const u64> factor_per_prime) {
    for (std::size_t j = 0; j < ctx.moduli().size(); ++j) {
        const u64 p = ctx.moduli()[j];
        const u64 f = factor_per_prime[j];
        const u64 fq = shoup_of(f, p);
        for (auto& x : a.residues[j]) x = mul_shoup(x, f, fq, p);
    }
}

}  // namespace

std::vector<std::vector<u64>> shoup_tables(const CkksContext& ctx, const RingPoly& poly) {
    std::vector<std::vector<u64>> tables(poly.residues.size());
    for (std::size_t j = 0; j < poly.residues.size(); ++j) {
        const u64 p = ctx.moduli()[j];
        tables[j].resize(poly.residues[j].size());
        for (std::size_t n = 0; n < tables[j].size(); ++n) {
            tables[j][n] = shoup_of(poly.residues[j][n], p);
        }
    }
    return tables;
}

void ntt_forward(const CkksContext& ctx, RingPoly& poly) {
    if (poly.form != PolyForm::coeff) {
        throw std::invalid_argument("representation error: forward NTT expects coefficient form");
    }
    for (std::size_t j = 0; j < poly.residues.size(); ++j) {
        ctx.ntt(j).forward(poly.residues[j]);
    }
    poly.form = PolyForm::ntt;
}

void ntt_inverse(const CkksContext& ctx, RingPoly& poly) {
    if (poly.form != PolyForm::ntt) {
        throw std::invalid_argument("representation error: inverse NTT expects NTT form");
    }
    for (std::size_t j = 0; j < poly.residues.size(); ++j) {
        ctx.ntt(j).inverse(poly.residues[j]);
    }
    poly.form = PolyForm::coeff;
}

KeyPair keygen(const ContextPtr& ctx, u64 seed) {
    Rng rng(mix_seed(seed, 0x6b657967656eULL));
    const std::size_t m = ctx->degree();

    std::vector<int> s_int(m);
    ctx->sample_ternary(rng, s_int);
    RingPoly s = poly_from_ints(*ctx, s_int);
    ntt_forward(*ctx, s);

    RingPoly a = zero_poly(*ctx, PolyForm::ntt);
    for (std::size_t j = 0; j < ctx->moduli().size(); ++j) {
        ctx->sample_uniform(rng, a.residues[j], j);
    }

    std::vector<int> e_int(m);
    ctx->sample_gaussian(rng, e_int);
    RingPoly e = poly_from_ints(*ctx, e_int);
    ntt_forward(*ctx, e);

    auto s_shoup = shoup_tables(*ctx, s);
    RingPoly b = pointwise_mul_keyed(*ctx, s, s_shoup, a);
    negate_assign(*ctx, b);
    add_assign(*ctx, b, e);

    KeyPair kp;
    kp.secret = SecretKey{std::move(s), std::move(s_shoup), ctx};
    auto b_shoup = shoup_tables(*ctx, b);
    auto a_shoup = shoup_tables(*ctx, a);
    kp.pub = PublicKey{std::move(b), std::move(a), std::move(b_shoup), std::move(a_shoup), ctx};
    return kp;
}

Plaintext encode(const ContextPtr& ctx, std::span<const double> values) {
    if (values.size() > ctx->slot_count()) {
        throw std::invalid_argument("capacity error: " + std::to_string(values.size()) +
                                    " values exceed " + std::to_string(ctx->slot_count()) +
                                    " slots");
    }
    double max_abs = 0.0;
    for (double v : values) {
        if (!std::isfinite(v)) throw std::invalid_argument("input error: non-finite value");
        max_abs = std::max(max_abs, std::fabs(v));
    }
    if (max_abs * ctx->scale() > ctx->encode_bound()) {
        throw std::invalid_argument("capacity error: values too large for the modulus chain");
    }

    const std::vector<double> coeffs = ctx->slots_to_coeffs(values, ctx->scale());
    std::vector<std::int64_t> rounded(coeffs.size());
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
        rounded[n] = static_cast<std::int64_t>(std::round(coeffs[n]));
    }
    Plaintext pt{poly_from_int64(*ctx, rounded), ctx->scale(), ctx};
    ntt_forward(*ctx, pt.poly);
    return pt;
}

Plaintext encode_scalar(const ContextPtr& ctx, double value) {
    if (!std::isfinite(value)) throw std::invalid_argument("input error: non-finite value");
    if (std::fabs(value) * ctx->scale() > ctx->encode_bound()) {
        throw std::invalid_argument("capacity error: scalar too large for the modulus chain");
    }
    const std::int64_t c0 = static_cast<std::int64_t>(std::round(value * ctx->scale()));
    // NTT of a constant polynomial is that constant in every lane.
    Plaintext pt{zero_poly(*ctx, PolyForm::ntt), ctx->scale(), ctx};
    for (std::size_t j = 0; j < ctx->moduli().size(); ++j) {
        const u64 p = ctx->moduli()[j];
        const u64 m = static_cast<u64>(c0 >= 0 ? c0 : -c0) % p;
        const u64 r = c0 >= 0 || m == 0 ? m : p - m;
        std::fill(pt.poly.residues[j].begin(), pt.poly.residues[j].end(), r);
    }
    return pt;
}

std::vector<double> decode(const Plaintext& pt) {
    if (!(pt.scale > 0)) throw std::invalid_argument("parameter error: plaintext scale must be positive");
    const CkksContext& ctx = *pt.ctx;
    RingPoly poly = pt.poly;
    if (poly.form == PolyForm::ntt) ntt_inverse(ctx, poly);

    const std::size_t m = ctx.degree();
    std::vector<double> coeffs(m);
    for (std::size_t n = 0; n < m; ++n) {
        coeffs[n] = ctx.crt_lift(poly.residues, n);
    }
    std::vector<double> slots = ctx.coeffs_to_slots(coeffs);
    const double inv_scale = 1.0 / pt.scale;
    for (double& v : slots) v *= inv_scale;
    return slots;
}

Ciphertext encrypt(const PublicKey& pk, const Plaintext& pt, u64 seed) {
    require_same_context(pk.ctx->param_hash(), pt.ctx->param_hash(), "plaintext vs public key");
    const CkksContext& ctx = *pk.ctx;
    Rng rng(mix_seed(seed, 0x656e63ULL));
    const std::size_t m = ctx.degree();

    std::vector<int> u_int(m);
    ctx.sample_ternary(rng, u_int);
    RingPoly u = poly_from_ints(ctx, u_int);
    ntt_forward(ctx, u);

    std::vector<int> e_int(m);
    ctx.sample_gaussian(rng, e_int);
    RingPoly e0 = poly_from_ints(ctx, e_int);
    ntt_forward(ctx, e0);
    ctx.sample_gaussian(rng, e_int);
    RingPoly e1 = poly_from_ints(ctx, e_int);
    ntt_forward(ctx, e1);

    Ciphertext ct;
    ct.c0 = pointwise_mul(ctx, pk.b, u);
    add_assign(ctx, ct.c0, e0);
    add_assign(ctx, ct.c0, pt.poly);
    ct.c1 = pointwise_mul(ctx, pk.a, u);
    add_assign(ctx, ct.c1, e1);
    ct.scale = pt.scale;
    ct.mul_depth = 0;
    ct.ctx = pk.ctx;
    return ct;
}

Plaintext decrypt(const SecretKey& sk, const Ciphertext& ct) {
    require_same_context(sk.ctx->param_hash(), ct.ctx->param_hash(), "ciphertext vs secret key");
    const CkksContext& ctx = *sk.ctx;
    RingPoly m = pointwise_mul(ctx, ct.c1, sk.s);
    add_assign(ctx, m, ct.c0);
    return Plaintext{std::move(m), ct.scale, ct.ctx};
}

Ciphertext add(const Ciphertext& a, const Ciphertext& b) {
    require_same_context(a.ctx->param_hash(), b.ctx->param_hash(), "ciphertext addition");
    if (a.mul_depth != b.mul_depth) {
        throw std::invalid_argument("depth error: addends have different multiplication depth");
    }
    if (std::fabs(a.scale - b.scale) / a.scale >= 1e-9) {
        throw std::invalid_argument("scale mismatch: ciphertext scales differ");
    }
    Ciphertext out = a;
    add_assign(*a.ctx, out.c0, b.c0);
    add_assign(*a.ctx, out.c1, b.c1);
    return out;
}

Ciphertext multiply_scalar(const Ciphertext& ct, double value) {
    if (!std::isfinite(value)) throw std::invalid_argument("input error: non-finite scalar");
    if (ct.mul_depth >= 1) {
        throw std::invalid_argument("depth error: ciphertext already carries one multiplication");
    }
    const CkksContext& ctx = *ct.ctx;
    if (std::fabs(value) * ctx.scale() > ctx.encode_bound()) {
        throw std::invalid_argument("capacity error: scalar too large for the modulus chain");
    }
    const std::int64_t k = static_cast<std::int64_t>(std::round(value * ctx.scale()));
    std::vector<u64> factors(ctx.moduli().size());
    for (std::size_t j = 0; j < factors.size(); ++j) {
        const u64 p = ctx.moduli()[j];
        const u64 m = static_cast<u64>(k >= 0 ? k : -k) % p;
        factors[j] = k >= 0 || m == 0 ? m : p - m;
    }
    Ciphertext out = ct;
    scale_assign(ctx, out.c0, factors);
    scale_assign(ctx, out.c1, factors);
    out.scale = ct.scale * ctx.scale();
    out.mul_depth = ct.mul_depth + 1;
    return out;
}

}  // namespace quancrypt::ckks
