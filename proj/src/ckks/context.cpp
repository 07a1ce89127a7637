// Copyright (c) 2026 The quancrypt authors
// SPDX-License-Identifier: Apache-2.0

#include "quancrypt/ckks/context.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace quancrypt::ckks {

namespace {

u64 fnv_step(u64 h, u64 v) {
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xff;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

CkksContext::CkksContext(u64 degree, std::vector<int> moduli_bits, double scale, double sigma)
    : degree_(degree), moduli_bits_(std::move(moduli_bits)), scale_(scale), sigma_(sigma) {
    if (!std::has_single_bit(degree_) || degree_ < 1024) {
        throw std::invalid_argument(
            "parameter error: ring degree must be a power of two >= 1024, got " +
            std::to_string(degree_));
    }
    if (moduli_bits_.empty()) {
        throw std::invalid_argument("parameter error: moduli bit list is empty");
    }
    if (!(scale_ > 0) || !std::isfinite(scale_)) {
        throw std::invalid_argument("parameter error: scale must be positive and finite");
    }
    if (!(sigma_ > 0)) {
        throw std::invalid_argument("parameter error: sigma must be positive");
    }

    moduli_.reserve(moduli_bits_.size());
    for (int bits : moduli_bits_) {
        moduli_.push_back(find_ntt_prime(bits, degree_, moduli_));
    }
    // Scale must fit under the non-special primes (last prime held in reserve
    // when the chain has more than one).
    long double usable = 1.0L;
    const std::size_t non_special = moduli_.size() > 1 ? moduli_.size() - 1 : moduli_.size();
    for (std::size_t i = 0; i < non_special; ++i) usable *= static_cast<long double>(moduli_[i]);
    if (static_cast<long double>(scale_) >= usable) {
        throw std::invalid_argument("parameter error: scale exceeds the non-special prime product");
    }

    ntt_.reserve(moduli_.size());
    for (u64 p : moduli_) ntt_.emplace_back(p, degree_);

    u64 h = 0xcbf29ce484222325ULL;
    h = fnv_step(h, degree_);
    for (u64 p : moduli_) h = fnv_step(h, p);
    h = fnv_step(h, std::bit_cast<u64>(scale_));
    h = fnv_step(h, std::bit_cast<u64>(sigma_));
    param_hash_ = h;

    // Embedding FFT tables.
    const std::size_t m = degree_;
    roots_.resize(m);
    twist_.resize(m);
    const double pi = std::numbers::pi;
    for (std::size_t j = 0; j < m; ++j) {
        roots_[j] = std::polar(1.0, 2.0 * pi * static_cast<double>(j) / static_cast<double>(m));
        twist_[j] = std::polar(1.0, pi * static_cast<double>(j) / static_cast<double>(m));
    }
    const int logm = std::countr_zero(m);
    bitrev_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::uint32_t r = 0;
        for (int b = 0; b < logm; ++b) r = (r << 1) | ((i >> b) & 1);
        bitrev_[i] = r;
    }

    // CRT lift constants mod 2^128.
    const std::size_t count = moduli_.size();
    p_hat_.resize(count);
    p_hat_inv_.resize(count);
    p_inv_.resize(count);
    long double product = 1.0L;
    for (std::size_t j = 0; j < count; ++j) {
        u128 hat = 1;
        u64 hat_mod_pj = 1;
        for (std::size_t i = 0; i < count; ++i) {
            if (i == j) continue;
            hat *= moduli_[i];  // mod 2^128 wraparound is intended
            hat_mod_pj = mul_mod(hat_mod_pj, moduli_[i] % moduli_[j], moduli_[j]);
        }
        p_hat_[j] = hat;
        p_hat_inv_[j] = inv_mod(hat_mod_pj, moduli_[j]);
        p_inv_[j] = 1.0L / static_cast<long double>(moduli_[j]);
        product *= static_cast<long double>(moduli_[j]);
    }
    u128 ptotal = 1;
    for (u64 p : moduli_) ptotal *= p;
    modulus_product_lo_ = ptotal;

    const long double lift_bound = product / 4.0L;
    encode_bound_ = static_cast<double>(std::min<long double>(0x1.0p61L, lift_bound));

    // Discrete Gaussian CDT over 0, -1, +1, -2, +2, ... (descending mass).
    const int tail = static_cast<int>(std::ceil(10.0 * sigma_));
    std::vector<int> order;
    order.push_back(0);
    for (int k = 1; k <= tail; ++k) {
        order.push_back(-k);
        order.push_back(k);
    }
    long double total = 0.0L;
    std::vector<long double> mass(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        const long double k = order[i];
        mass[i] = std::exp(-k * k / (2.0L * sigma_ * sigma_));
        total += mass[i];
    }
    cdt_threshold_.resize(order.size());
    cdt_value_.assign(order.begin(), order.end());
    long double cum = 0.0L;
    for (std::size_t i = 0; i < order.size(); ++i) {
        cum += mass[i] / total;
        const long double scaled = cum * 0x1.0p64L;
        cdt_threshold_[i] = scaled >= 0x1.0p64L ? ~u64{0} : static_cast<u64>(scaled);
    }
    cdt_threshold_.back() = ~u64{0};
}

void CkksContext::fft(std::vector<std::complex<double>>& a, bool inverse_direction) const {
    const std::size_t m = a.size();
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t r = bitrev_[i];
        if (i < r) std::swap(a[i], a[r]);
    }
    for (std::size_t len = 2; len <= m; len <<= 1) {
        const std::size_t stride = m / len;
        for (std::size_t start = 0; start < m; start += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                std::complex<double> w = roots_[k * stride];
                if (inverse_direction) w = std::conj(w);
                const auto u = a[start + k];
                const auto v = a[start + k + len / 2] * w;
                a[start + k] = u + v;
                a[start + k + len / 2] = u - v;
            }
        }
    }
}

std::vector<double> CkksContext::slots_to_coeffs(std::span<const double> slots,
                                                 double scale) const {
    const std::size_t m = degree_;
    std::vector<std::complex<double>> work(m, std::complex<double>{0.0, 0.0});
    for (std::size_t k = 0; k < slots.size(); ++k) {
        work[k] = std::complex<double>{slots[k] * scale, 0.0};
    }
    fft(work, /*inverse_direction=*/true);
    std::vector<double> coeffs(m);
    const double norm = 2.0 / static_cast<double>(m);
    for (std::size_t n = 0; n < m; ++n) {
        coeffs[n] = norm * (std::conj(twist_[n]) * work[n]).real();
    }
    return coeffs;
}

std::vector<double> CkksContext::coeffs_to_slots(std::span<const double> coeffs) const {
    const std::size_t m = degree_;
    std::vector<std::complex<double>> work(m);
    for (std::size_t n = 0; n < m; ++n) work[n] = coeffs[n] * twist_[n];
    fft(work, /*inverse_direction=*/false);
    std::vector<double> slots(m / 2);
    for (std::size_t k = 0; k < m / 2; ++k) slots[k] = work[k].real();
    return slots;
}

double CkksContext::crt_lift(std::span<const std::vector<u64>> residues,
                             std::size_t coeff_index) const {
    const std::size_t count = moduli_.size();
    u128 acc = 0;
    long double wraps = 0.0L;
    for (std::size_t j = 0; j < count; ++j) {
        const u64 aj = mul_mod(residues[j][coeff_index], p_hat_inv_[j], moduli_[j]);
        acc += p_hat_[j] * aj;  // mod 2^128
        wraps += static_cast<long double>(aj) * p_inv_[j];
    }
    const u64 k = static_cast<u64>(wraps + 0.5L);
    acc -= modulus_product_lo_ * k;  // mod 2^128; true value fits in int128
    return static_cast<double>(static_cast<__int128>(acc));
}

void CkksContext::sample_ternary(Rng& rng, std::span<int> out) const {
    for (auto& x : out) x = static_cast<int>(rng.next_below(3)) - 1;
}

void CkksContext::sample_gaussian(Rng& rng, std::span<int> out) const {
    for (auto& x : out) {
        const u64 u = rng.next_u64();
        x = 0;
        for (std::size_t i = 0; i < cdt_threshold_.size(); ++i) {
            if (u <= cdt_threshold_[i]) {
                x = cdt_value_[i];
                break;
            }
        }
    }
}

void CkksContext::sample_uniform(Rng& rng, std::span<u64> out, std::size_t prime_index) const {
    const u64 p = moduli_[prime_index];
    for (auto& x : out) x = rng.next_below(p);
}

ContextPtr make_context(u64 degree, std::vector<int> moduli_bits, double scale, double sigma) {
    return std::make_shared<const CkksContext>(degree, std::move(moduli_bits), scale, sigma);
}

}  // namespace quancrypt::ckks
