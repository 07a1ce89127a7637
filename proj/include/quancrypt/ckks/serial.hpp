// Copyright (c) 2026 The quancrypt authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>

#include "quancrypt/ckks/ckks.hpp"

namespace quancrypt::ckks {

// Framed binary key files: magic "QCHE", version, context parameters, then
// residue arrays as 64-bit little-endian words. Loading rebuilds the context
// from the stored parameters. Secret-key files are written with owner-only
// permissions where the platform supports it.

void save_public_key(const PublicKey& pk, const std::filesystem::path& path);
void save_secret_key(const SecretKey& sk, const std::filesystem::path& path);

PublicKey load_public_key(const std::filesystem::path& path);
SecretKey load_secret_key(const std::filesystem::path& path);

}  // namespace quancrypt::ckks
