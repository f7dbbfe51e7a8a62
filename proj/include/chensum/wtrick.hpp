// wtrick.hpp
// W-trick context: W = product of the odd primes up to t, the admissible
// residues b (gcd(b, W) = gcd(b + 2, W) = 1), the prime N in (2n/W, 4n/W],
// and the per-residue slices of a set A together with their images
// x -> (x - b) / W in Z_N.

#pragma once

#include "chensum/numeric.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace chensum::wtrick {

// Largest t accepted: the product of odd primes up to 43 still fits 64 bits.
inline constexpr std::uint64_t kMaxT = 43;

struct WContext {
    std::uint64_t t = 0;
    std::uint64_t W = 0;
    std::vector<std::uint64_t> primes;   // odd primes dividing W, ascending
    std::vector<std::uint64_t> phi_set;  // ascending
    std::uint64_t phi_W = 0;
    std::uint64_t n = 0;
    std::uint64_t N = 0;

    bool admissible(std::uint64_t b) const;
    // Position of b in phi_set, or -1.
    std::ptrdiff_t index_of(std::uint64_t b) const;
};

// W * prod (1 - 2/p), exact.
Rational phi_product_formula(std::span<const std::uint64_t> odd_primes);

// Throws std::invalid_argument for t < 3, t > kMaxT, W >= n or 2n/W < 2.
WContext build_context(std::uint64_t t, std::uint64_t n);

struct ResidueSlice {
    std::uint64_t b = 0;
    std::vector<std::uint64_t> members_n;  // x in A ∩ (sqrt n, n], x ≡ b (mod W)
    std::vector<std::uint64_t> members_N;  // (x - b) / W
    Rational delta;
};

struct SliceResult {
    std::vector<ResidueSlice> slices;  // one per b in phi_set, same order
    std::uint64_t in_range = 0;        // |A ∩ (sqrt n, n]|
    std::uint64_t below_sqrt = 0;      // elements of A in [1, sqrt n]
    std::uint64_t dropped = 0;         // in range but x mod W outside phi_set
    // delta_b = |members_n| * scale, scale = log^2 n * phi_W / (c1 n) taken exactly
    // from its double value so every comparison of deltas is exact.
    Rational scale;
};

// A must be sorted ascending within [1, n]; c1 > 0.
SliceResult slice(std::span<const std::uint64_t> A, const WContext& ctx, const Rational& c1);

// Whether A_n^(b1) + A_n^(b2) in Z and A_N^(b1) + A_N^(b2) in Z_N have the
// same number of elements.
bool sum_identification_check(const ResidueSlice& s1, const ResidueSlice& s2, const WContext& ctx);

}  // namespace chensum::wtrick
