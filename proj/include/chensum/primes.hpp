// primes.hpp
// Segmented sieve producing primality bits, smallest-prime-factor data and
// Chen classification for every integer up to a limit.
//
// A prime p is Chen when p+2 is prime or p+2 = p1*p2 with p1 <= p2 prime and
// p1 > p^(3/11). The factor test is done as p1^11 > p^3 in integer
// arithmetic; the strict inequality means ties are not Chen.

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace chensum::primes {

inline constexpr std::uint64_t kDefaultLimitCeiling = std::uint64_t{1} << 40;

struct SieveOptions {
    std::uint64_t segment_size = std::uint64_t{1} << 18;
    // Above this many entries spf is recomputed from the base primes on demand.
    std::uint64_t spf_memory_cap = std::uint64_t{1} << 25;
    std::uint64_t limit_ceiling = kDefaultLimitCeiling;
};

enum class ChenKind { NotPrime, PrimeNotChen, ChenTwin, ChenSemiprime };

const char* to_string(ChenKind kind);

struct ChenClass {
    ChenKind kind = ChenKind::NotPrime;
    // (p1, p2) with p1 <= p2 when kind == ChenSemiprime, else (0, 0).
    std::pair<std::uint64_t, std::uint64_t> factors{0, 0};

    bool is_chen() const { return kind == ChenKind::ChenTwin || kind == ChenKind::ChenSemiprime; }
};

class NotFoundError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// True iff q^11 > p^3, evaluated exactly.
bool exceeds_three_elevenths(std::uint64_t q, std::uint64_t p);

// Deterministic Miller-Rabin, valid for all 64-bit n.
bool is_prime_u64(std::uint64_t n);

// Primes <= limit by a plain Eratosthenes sieve.
std::vector<std::uint64_t> small_primes(std::uint64_t limit);

// Immutable after construction; safe to share across threads.
//
// Primality and spf are materialized through extent() = limit + 2 so that
// Chen flags are defined on the whole of [2, limit].
class PrimeTable {
public:
    static PrimeTable build(std::uint64_t limit, const SieveOptions& options = {});

    std::uint64_t limit() const { return limit_; }
    std::uint64_t extent() const { return limit_ + 2; }

    bool is_prime(std::uint64_t m) const;
    // Smallest prime factor of m in [2, extent()].
    std::uint64_t spf(std::uint64_t m) const;
    // Chen flag of m in [2, limit()]; false for composites.
    bool is_chen(std::uint64_t m) const;

    bool spf_materialized() const { return !spf_.empty(); }
    std::span<const std::uint64_t> base_primes() const { return base_primes_; }

    // Chen primes in [2, up_to], up_to <= limit().
    std::vector<std::uint64_t> chen_primes(std::uint64_t up_to, bool include_two = true) const;

private:
    PrimeTable() = default;
    static bool test_bit(const std::vector<std::uint64_t>& bits, std::uint64_t i) { return (bits[i >> 6] >> (i & 63)) & 1U; }

    std::uint64_t limit_ = 0;
    std::vector<std::uint64_t> prime_bits_;
    std::vector<std::uint64_t> chen_bits_;
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint64_t> base_primes_;
};

// Classification of p using the table's factorization of p+2.
// Throws std::out_of_range when p+2 > table.extent().
ChenClass classify_chen(std::uint64_t p, const PrimeTable& table);

struct ChenCount {
    std::uint64_t count = 0;
    double ratio = 0.0;  // count * log^2(limit) / limit
};

// Chen primes in [1, limit]; limit >= 100.
ChenCount count_chen(std::uint64_t limit, bool include_two = true);
ChenCount count_chen(const PrimeTable& table, std::uint64_t limit, bool include_two = true);

// Smallest prime in (lo, hi]; requires 1 <= lo < hi <= 2^62.
// Throws NotFoundError when the interval holds no prime.
std::uint64_t next_prime_in(std::uint64_t lo, std::uint64_t hi);

}  // namespace chensum::primes
