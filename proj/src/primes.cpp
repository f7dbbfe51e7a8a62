#include "chensum/primes.hpp"
#include "chensum/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace chensum::primes {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

void set_bit(std::vector<std::uint64_t>& bits, std::uint64_t i) { bits[i >> 6] |= std::uint64_t{1} << (i & 63); }

}  // namespace

const char* to_string(ChenKind kind) {
    switch (kind) {
        case ChenKind::NotPrime: return "NotPrime";
        case ChenKind::PrimeNotChen: return "PrimeNotChen";
        case ChenKind::ChenTwin: return "ChenTwin";
        case ChenKind::ChenSemiprime: return "ChenSemiprime";
    }
    return "?";
}

bool exceeds_three_elevenths(std::uint64_t q, std::uint64_t p) {
    // p <= 2^42 keeps p^3 inside 128 bits; q^11 is accumulated with an
    // early exit once it passes p^3.
    const u128 p3 = static_cast<u128>(p) * p * p;
    u128 acc = 1;
    for (int i = 0; i < 11; ++i) {
        if (acc > p3 / q) return true;
        acc *= q;
    }
    return acc > p3;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    static constexpr std::uint64_t kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (auto w : kWitnesses) {
        if (n % w == 0) return n == w;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (auto a : kWitnesses) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
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

std::vector<std::uint64_t> small_primes(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    if (limit < 2) return out;
    std::vector<char> mark(limit + 1, 1);
    mark[0] = mark[1] = 0;
    for (std::uint64_t i = 2; i * i <= limit; ++i)
        if (mark[i])
            for (std::uint64_t j = i * i; j <= limit; j += i) mark[j] = 0;
    for (std::uint64_t i = 2; i <= limit; ++i)
        if (mark[i]) out.push_back(i);
    return out;
}

PrimeTable PrimeTable::build(std::uint64_t limit, const SieveOptions& options) {
    if (limit < 2) throw std::domain_error("build_table: limit " + std::to_string(limit) + " is below 2");
    if (limit > options.limit_ceiling)
        throw std::domain_error("build_table: limit " + std::to_string(limit) + " exceeds ceiling " +
                                std::to_string(options.limit_ceiling));
    if (options.segment_size < 64) throw std::invalid_argument("build_table: segment size must be at least 64");

    PrimeTable table;
    table.limit_ = limit;
    const std::uint64_t extent = limit + 2;
    const std::uint64_t words = extent / 64 + 1;
    table.prime_bits_.assign(words, 0);
    table.chen_bits_.assign(words, 0);
    table.base_primes_ = small_primes(isqrt(extent));
    const bool keep_spf = extent + 1 <= options.spf_memory_cap;
    if (keep_spf) table.spf_.assign(extent + 1, 0);

    // Each segment [lo, hi) is sieved over [lo, hi + 2) so p+2 is
    // factorable for every p in the segment.
    std::vector<std::uint32_t> local;
    for (std::uint64_t lo = 2; lo <= extent; lo += options.segment_size) {
        const std::uint64_t hi = std::min(lo + options.segment_size, extent + 1);
        const std::uint64_t span_hi = std::min(hi + 2, extent + 1);
        local.assign(span_hi - lo, 0);
        for (std::uint64_t q : table.base_primes_) {
            if (q * q >= span_hi) break;
            std::uint64_t start = std::max(q * q, (lo + q - 1) / q * q);
            for (std::uint64_t j = start; j < span_hi; j += q)
                if (local[j - lo] == 0) local[j - lo] = static_cast<std::uint32_t>(q);
        }
        for (std::uint64_t m = lo; m < hi; ++m) {
            if (local[m - lo] == 0) set_bit(table.prime_bits_, m);
            if (keep_spf) table.spf_[m] = local[m - lo] == 0 ? static_cast<std::uint32_t>(m) : local[m - lo];
        }
        for (std::uint64_t p = lo; p < hi && p <= limit; ++p) {
            if (local[p - lo] != 0) continue;
            const std::uint64_t m = p + 2;
            const std::uint64_t q = local[m - lo];
            bool chen = false;
            if (q == 0) {
                chen = true;
            } else {
                const std::uint64_t rest = m / q;
                chen = test_bit(table.prime_bits_, rest) && exceeds_three_elevenths(q, p);
            }
            if (chen) set_bit(table.chen_bits_, p);
        }
    }
    return table;
}

bool PrimeTable::is_prime(std::uint64_t m) const {
    if (m > extent()) throw std::out_of_range("is_prime: " + std::to_string(m) + " beyond table extent");
    return test_bit(prime_bits_, m);
}

std::uint64_t PrimeTable::spf(std::uint64_t m) const {
    if (m < 2 || m > extent()) throw std::out_of_range("spf: " + std::to_string(m) + " outside [2, extent]");
    if (!spf_.empty()) return spf_[m];
    for (std::uint64_t q : base_primes_) {
        if (q * q > m) break;
        if (m % q == 0) return q;
    }
    return m;
}

bool PrimeTable::is_chen(std::uint64_t m) const {
    if (m > limit_) throw std::out_of_range("is_chen: " + std::to_string(m) + " beyond table limit");
    return test_bit(chen_bits_, m);
}

std::vector<std::uint64_t> PrimeTable::chen_primes(std::uint64_t up_to, bool include_two) const {
    if (up_to > limit_) throw std::out_of_range("chen_primes: bound beyond table limit");
    std::vector<std::uint64_t> out;
    for (std::uint64_t w = 0; w <= up_to / 64; ++w) {
        std::uint64_t bits = chen_bits_[w];
        while (bits) {
            const std::uint64_t m = w * 64 + static_cast<std::uint64_t>(__builtin_ctzll(bits));
            bits &= bits - 1;
            if (m > up_to) break;
            if (m == 2 && !include_two) continue;
            out.push_back(m);
        }
    }
    return out;
}

ChenClass classify_chen(std::uint64_t p, const PrimeTable& table) {
    if (p > table.limit())
        throw std::out_of_range("classify_chen: p+2 = " + std::to_string(p + 2) + " beyond table extent " +
                                std::to_string(table.extent()));
    if (p < 2 || !table.is_prime(p)) return {ChenKind::NotPrime, {0, 0}};
    const std::uint64_t m = p + 2;
    const std::uint64_t q1 = table.spf(m);
    if (q1 == m) return {ChenKind::ChenTwin, {0, 0}};
    const std::uint64_t q2 = m / q1;
    // Three or more prime factors: q2 is then composite.
    if (!table.is_prime(q2)) return {ChenKind::PrimeNotChen, {0, 0}};
    if (!exceeds_three_elevenths(q1, p)) return {ChenKind::PrimeNotChen, {0, 0}};
    return {ChenKind::ChenSemiprime, {q1, q2}};
}

ChenCount count_chen(const PrimeTable& table, std::uint64_t limit, bool include_two) {
    if (limit < 100) throw std::invalid_argument("count_chen: limit must be at least 100");
    ChenCount c;
    c.count = table.chen_primes(limit, include_two).size();
    const double lg = std::log(static_cast<double>(limit));
    c.ratio = static_cast<double>(c.count) * lg * lg / static_cast<double>(limit);
    return c;
}

ChenCount count_chen(std::uint64_t limit, bool include_two) {
    if (limit < 100) throw std::invalid_argument("count_chen: limit must be at least 100");
    return count_chen(PrimeTable::build(limit), limit, include_two);
}

std::uint64_t next_prime_in(std::uint64_t lo, std::uint64_t hi) {
    if (lo < 1 || lo >= hi || hi > (std::uint64_t{1} << 62))
        throw std::invalid_argument("next_prime_in: need 1 <= lo < hi <= 2^62, got (" + std::to_string(lo) + ", " +
                                    std::to_string(hi) + "]");
    for (std::uint64_t r = lo + 1; r <= hi; ++r)
        if (is_prime_u64(r)) return r;
    if (hi >= 2 * lo) throw std::logic_error("next_prime_in: no prime in (n, 2n], Bertrand's postulate violated");
    throw NotFoundError("next_prime_in: no prime in (" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

}  // namespace chensum::primes
