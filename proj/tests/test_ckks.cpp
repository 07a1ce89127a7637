// Copyright (c) 2026 The quancrypt authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <vector>

#include "quancrypt/ckks/ckks.hpp"
#include "quancrypt/ckks/serial.hpp"
#include "quancrypt/util/rng.hpp"

using namespace quancrypt;
using namespace quancrypt::ckks;

namespace {

ContextPtr test_context() {
    // Light two-prime chain; unit tests do not need the full desk chain.
    static ContextPtr ctx = make_context(8192, {60, 40}, 0x1.0p40);
    return ctx;
}

std::vector<double> random_values(Rng& rng, std::size_t n, double lo, double hi) {
    std::vector<double> v(n);
    for (auto& x : v) x = lo + (hi - lo) * rng.next_double();
    return v;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        m = std::max(m, std::fabs(a[i] - b[i]));
    }
    return m;
}

}  // namespace

TEST_CASE("context creation matches requested parameters") {
    SUBCASE("paper parameters") {
        auto ctx = make_context(16384, {60, 40, 40, 40, 60}, 0x1.0p40);
        CHECK(ctx->moduli().size() == 5);
        CHECK(ctx->slot_count() == 8192);
        CHECK_FALSE(ctx->insecure());
    }
    SUBCASE("toy single-prime context is flagged insecure") {
        auto ctx = make_context(1024, {40}, 0x1.0p20);
        CHECK(ctx->moduli().size() == 1);
        CHECK(ctx->insecure());
    }
    SUBCASE("desk context primes satisfy p = 1 mod 2M") {
        auto ctx = make_context(8192, {60, 40, 40, 60}, 0x1.0p40);
        CHECK(ctx->moduli().size() == 4);
        for (u64 p : ctx->moduli()) CHECK(p % 16384 == 1);
        // repeated bit sizes give pairwise distinct primes
        CHECK(ctx->moduli()[1] != ctx->moduli()[2]);
    }
    SUBCASE("invalid parameters are rejected") {
        CHECK_THROWS_AS(make_context(1000, {40}, 0x1.0p20), std::invalid_argument);
        CHECK_THROWS_AS(make_context(1024, {}, 0x1.0p20), std::invalid_argument);
        CHECK_THROWS_AS(make_context(1024, {19}, 0x1.0p10), std::invalid_argument);
        CHECK_THROWS_AS(make_context(1024, {62}, 0x1.0p20), std::invalid_argument);
    }
}

TEST_CASE("encode/decode round-trip") {
    auto ctx = test_context();

    SUBCASE("zero vector decodes to ~0") {
        std::vector<double> zeros(ctx->slot_count(), 0.0);
        auto slots = decode(encode(ctx, zeros));
        for (double v : slots) CHECK(std::fabs(v) < 1e-9);
    }
    SUBCASE("unit-range vector round-trips under 1e-6") {
        Rng rng(42);
        auto v = random_values(rng, 4096, -1.0, 1.0);
        auto slots = decode(encode(ctx, v));
        CHECK(max_abs_diff(slots, v) < 1e-6);
    }
    SUBCASE("overlong input is a capacity error") {
        std::vector<double> v(ctx->slot_count() + 1, 0.0);
        CHECK_THROWS_AS(encode(ctx, v), std::invalid_argument);
    }
    SUBCASE("non-finite input is rejected") {
        std::vector<double> v = {1.0, std::nan("")};
        CHECK_THROWS_AS(encode(ctx, v), std::invalid_argument);
    }
    SUBCASE("values beyond the headroom bound are rejected") {
        std::vector<double> v = {0x1.0p30};
        CHECK_THROWS_AS(encode(ctx, v), std::invalid_argument);
    }
}

TEST_CASE("keygen determinism and noise behaviour") {
    auto ctx = test_context();

    SUBCASE("same seed gives bit-identical keys") {
        auto kp1 = keygen(ctx, 99);
        auto kp2 = keygen(ctx, 99);
        CHECK(kp1.secret.s.residues == kp2.secret.s.residues);
        CHECK(kp1.pub.a.residues == kp2.pub.a.residues);
        CHECK(kp1.pub.b.residues == kp2.pub.b.residues);
        auto kp3 = keygen(ctx, 100);
        CHECK(kp1.pub.a.residues != kp3.pub.a.residues);
    }
    SUBCASE("encrypt-zero noise stays below 1e-3 across 100 trials") {
        auto kp = keygen(ctx, 5);
        std::vector<double> zeros(1024, 0.0);
        auto pt = encode(ctx, zeros);
        double worst = 0.0;
        for (u64 trial = 0; trial < 100; ++trial) {
            auto ct = encrypt(kp.pub, pt, trial);
            auto out = decode(decrypt(kp.secret, ct));
            for (std::size_t i = 0; i < zeros.size(); ++i) {
                worst = std::max(worst, std::fabs(out[i]));
            }
        }
        CHECK(worst < 1e-3);
    }
    SUBCASE("wrong-key decryption is undetected garbage") {
        auto kp = keygen(ctx, 5);
        auto other = keygen(ctx, 6);
        std::vector<double> v(16, 1.0);
        auto ct = encrypt(kp.pub, encode(ctx, v), 1);
        auto out = decode(decrypt(other.secret, ct));  // must not throw
        double worst = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            worst = std::max(worst, std::fabs(out[i] - v[i]));
        }
        CHECK(worst > 1e6);
    }
}

TEST_CASE("encrypt/decrypt round-trip and guards") {
    auto ctx = test_context();
    auto kp = keygen(ctx, 17);
    Rng rng(3);

    SUBCASE("values in [-256, 256] round-trip under 1e-3") {
        auto v = random_values(rng, ctx->slot_count(), -256.0, 256.0);
        auto ct = encrypt(kp.pub, encode(ctx, v), 7);
        auto out = decode(decrypt(kp.secret, ct));
        CHECK(max_abs_diff(out, v) < 1e-3);
    }
    SUBCASE("fresh randomness per call, same decryption") {
        auto v = random_values(rng, 64, -1.0, 1.0);
        auto pt = encode(ctx, v);
        auto ct1 = encrypt(kp.pub, pt, 1);
        auto ct2 = encrypt(kp.pub, pt, 2);
        CHECK(ct1.c0.residues != ct2.c0.residues);
        auto out1 = decode(decrypt(kp.secret, ct1));
        auto out2 = decode(decrypt(kp.secret, ct2));
        CHECK(max_abs_diff(out1, v) < 1e-3);
        CHECK(max_abs_diff(out2, v) < 1e-3);
    }
    SUBCASE("context mismatch is rejected") {
        auto other_ctx = make_context(8192, {60, 41}, 0x1.0p40);
        auto pt = encode(other_ctx, std::vector<double>{1.0});
        CHECK_THROWS_AS(encrypt(kp.pub, pt, 1), std::invalid_argument);
        auto ct = encrypt(kp.pub, encode(ctx, std::vector<double>{1.0}), 1);
        auto other_kp = keygen(other_ctx, 17);
        CHECK_THROWS_AS(decrypt(other_kp.secret, ct), std::invalid_argument);
    }
}

TEST_CASE("homomorphic addition") {
    auto ctx = test_context();
    auto kp = keygen(ctx, 23);

    SUBCASE("additive identity") {
        std::vector<double> u = {1.5, -2.25, 3.0, 0.125};
        auto ct = add(encrypt(kp.pub, encode(ctx, u), 1),
                      encrypt(kp.pub, encode(ctx, std::vector<double>(4, 0.0)), 2));
        auto out = decode(decrypt(kp.secret, ct));
        CHECK(max_abs_diff(out, u) < 1e-3);
    }
    SUBCASE("slot-wise sum matches the plaintext oracle") {
        std::vector<double> u(128), v(128), expect(128);
        for (int i = 0; i < 128; ++i) {
            u[i] = i + 1;
            v[i] = 10.0 * (i + 1);
            expect[i] = u[i] + v[i];
        }
        auto ct = add(encrypt(kp.pub, encode(ctx, u), 3), encrypt(kp.pub, encode(ctx, v), 4));
        auto out = decode(decrypt(kp.secret, ct));
        CHECK(max_abs_diff(out, expect) < 1e-3);
        CHECK(ct.scale == doctest::Approx(0x1.0p40));
    }
    SUBCASE("fold of 10 one-vectors decrypts to tens") {
        std::vector<double> ones(256, 1.0);
        auto pt = encode(ctx, ones);
        Ciphertext acc = encrypt(kp.pub, pt, 100);
        for (u64 i = 1; i < 10; ++i) acc = add(acc, encrypt(kp.pub, pt, 100 + i));
        auto out = decode(decrypt(kp.secret, acc));
        std::vector<double> tens(256, 10.0);
        CHECK(max_abs_diff(out, tens) < 1e-2);
    }
    SUBCASE("scale mismatch is rejected") {
        auto a = encrypt(kp.pub, encode(ctx, std::vector<double>{1.0}), 1);
        auto b = a;
        b.scale *= 1.5;
        CHECK_THROWS_AS(add(a, b), std::invalid_argument);
    }
}

TEST_CASE("plaintext-scalar multiplication") {
    auto ctx = test_context();
    auto kp = keygen(ctx, 31);

    SUBCASE("multiplying by 1 preserves values") {
        std::vector<double> v = {0.5, -1.5, 2.0};
        auto ct = multiply_scalar(encrypt(kp.pub, encode(ctx, v), 1), 1.0);
        CHECK(ct.scale == doctest::Approx(0x1.0p80));
        auto out = decode(decrypt(kp.secret, ct));
        CHECK(max_abs_diff(out, v) < 1e-3);
    }
    SUBCASE("1/N un-does a fold of N") {
        std::vector<double> tens(128, 10.0);
        auto ct = multiply_scalar(encrypt(kp.pub, encode(ctx, tens), 2), 0.1);
        auto out = decode(decrypt(kp.secret, ct));
        std::vector<double> ones(128, 1.0);
        CHECK(max_abs_diff(out, ones) < 1e-2);
    }
    SUBCASE("second multiplication is a depth error") {
        auto ct = multiply_scalar(encrypt(kp.pub, encode(ctx, std::vector<double>{1.0}), 3), 0.5);
        CHECK_THROWS_AS(multiply_scalar(ct, 0.5), std::invalid_argument);
    }
    SUBCASE("adding mixed depths is rejected") {
        auto a = encrypt(kp.pub, encode(ctx, std::vector<double>{1.0}), 4);
        auto b = multiply_scalar(a, 1.0);
        CHECK_THROWS_AS(add(a, b), std::invalid_argument);
    }
}

TEST_CASE("ntt representation guards") {
    auto ctx = test_context();
    auto pt = encode(ctx, std::vector<double>{1.0, 2.0});
    REQUIRE(pt.poly.form == PolyForm::ntt);
    CHECK_THROWS_AS(ntt_forward(*ctx, pt.poly), std::invalid_argument);
    ntt_inverse(*ctx, pt.poly);
    CHECK(pt.poly.form == PolyForm::coeff);
    CHECK_THROWS_AS(ntt_inverse(*ctx, pt.poly), std::invalid_argument);
}

TEST_CASE("key serialization round-trip") {
    namespace fs = std::filesystem;
    auto ctx = test_context();
    auto kp = keygen(ctx, 77);
    const fs::path dir = fs::temp_directory_path() / "quancrypt_keys_test";
    fs::create_directories(dir);
    const fs::path pk_path = dir / "test.pk";
    const fs::path sk_path = dir / "test.sk";

    save_public_key(kp.pub, pk_path);
    save_secret_key(kp.secret, sk_path);

    auto pk = load_public_key(pk_path);
    auto sk = load_secret_key(sk_path);
    CHECK(pk.ctx->param_hash() == ctx->param_hash());
    CHECK(pk.a.residues == kp.pub.a.residues);
    CHECK(sk.s.residues == kp.secret.s.residues);

    // loaded keys interoperate with fresh ones
    std::vector<double> v = {3.25, -0.5};
    auto out = decode(decrypt(sk, encrypt(pk, encode(ctx, v), 5)));
    CHECK(std::fabs(out[0] - v[0]) < 1e-3);
    CHECK(std::fabs(out[1] - v[1]) < 1e-3);

    const auto perms = fs::status(sk_path).permissions();
    CHECK((perms & fs::perms::group_all) == fs::perms::none);
    CHECK((perms & fs::perms::others_all) == fs::perms::none);

    CHECK_THROWS(load_public_key(sk_path));  // kind mismatch
    fs::remove_all(dir);
}
