// Copyright (c) 2026 The quancrypt authors
// SPDX-License-Identifier: Apache-2.0

#include "quancrypt/ckks/serial.hpp"

#include <fstream>

#include "quancrypt/util/binio.hpp"

namespace quancrypt::ckks {

namespace {

constexpr char kMagic[4] = {'Q', 'C', 'H', 'E'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint8_t kKindPublic = 0;
constexpr std::uint8_t kKindSecret = 1;

void write_header(std::ostream& os, const CkksContext& ctx, std::uint8_t kind) {
    binio::write_magic(os, kMagic);
    binio::write_le<std::uint32_t>(os, kVersion);
    binio::write_le<std::uint8_t>(os, kind);
    binio::write_le<std::uint64_t>(os, ctx.degree());
    binio::write_le<std::uint32_t>(os, static_cast<std::uint32_t>(ctx.moduli_bits().size()));
    for (int bits : ctx.moduli_bits()) binio::write_le<std::int32_t>(os, bits);
    binio::write_le<double>(os, ctx.scale());
    binio::write_le<double>(os, ctx.sigma());
}

ContextPtr read_header(std::istream& is, const std::filesystem::path& path, std::uint8_t expect_kind) {
    binio::expect_magic(is, kMagic, path.string());
    const auto version = binio::read_le<std::uint32_t>(is);
    if (version != kVersion) {
        throw std::runtime_error("format error: unsupported key file version " +
                                 std::to_string(version));
    }
    const auto kind = binio::read_le<std::uint8_t>(is);
    if (kind != expect_kind) {
        throw std::runtime_error("format error: key kind mismatch in " + path.string());
    }
    const auto degree = binio::read_le<std::uint64_t>(is);
    const auto count = binio::read_le<std::uint32_t>(is);
    std::vector<int> bits(count);
    for (auto& b : bits) b = binio::read_le<std::int32_t>(is);
    const auto scale = binio::read_le<double>(is);
    const auto sigma = binio::read_le<double>(is);
    return make_context(degree, std::move(bits), scale, sigma);
}

void write_poly(std::ostream& os, const RingPoly& poly) {
    binio::write_le<std::uint8_t>(os, static_cast<std::uint8_t>(poly.form));
    for (const auto& residues : poly.residues) {
        os.write(reinterpret_cast<const char*>(residues.data()),
                 static_cast<std::streamsize>(residues.size() * sizeof(u64)));
    }
}

RingPoly read_poly(std::istream& is, const CkksContext& ctx) {
    RingPoly poly;
    poly.form = static_cast<PolyForm>(binio::read_le<std::uint8_t>(is));
    poly.residues.assign(ctx.moduli().size(), std::vector<u64>(ctx.degree()));
    for (std::size_t j = 0; j < poly.residues.size(); ++j) {
        auto& residues = poly.residues[j];
        is.read(reinterpret_cast<char*>(residues.data()),
                static_cast<std::streamsize>(residues.size() * sizeof(u64)));
        if (!is) throw std::runtime_error("format error: truncated key file");
        for (u64 r : residues) {
            if (r >= ctx.moduli()[j]) {
                throw std::runtime_error("format error: residue out of range");
            }
        }
    }
    return poly;
}

void restrict_to_owner(const std::filesystem::path& path) {
    std::error_code ec;
    std::filesystem::permissions(path,
                                 std::filesystem::perms::owner_read |
                                     std::filesystem::perms::owner_write,
                                 std::filesystem::perm_options::replace, ec);
    // Best effort: some filesystems do not support POSIX permissions.
}

}  // namespace

void save_public_key(const PublicKey& pk, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("I/O error: cannot open " + path.string());
    write_header(os, *pk.ctx, kKindPublic);
    write_poly(os, pk.b);
    write_poly(os, pk.a);
    if (!os) throw std::runtime_error("I/O error: failed writing " + path.string());
}

void save_secret_key(const SecretKey& sk, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("I/O error: cannot open " + path.string());
    write_header(os, *sk.ctx, kKindSecret);
    write_poly(os, sk.s);
    if (!os) throw std::runtime_error("I/O error: failed writing " + path.string());
    os.close();
    restrict_to_owner(path);
}

PublicKey load_public_key(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("I/O error: cannot open " + path.string());
    ContextPtr ctx = read_header(is, path, kKindPublic);
    PublicKey pk;
    pk.b = read_poly(is, *ctx);
    pk.a = read_poly(is, *ctx);
    pk.ctx = std::move(ctx);
    return pk;
}

SecretKey load_secret_key(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("I/O error: cannot open " + path.string());
    ContextPtr ctx = read_header(is, path, kKindSecret);
    SecretKey sk;
    sk.s = read_poly(is, *ctx);
    sk.ctx = std::move(ctx);
    return sk;
}

}  // namespace quancrypt::ckks
