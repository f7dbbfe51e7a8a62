#include "chensum/wtrick.hpp"
#include "chensum/primes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace chensum::wtrick {

bool WContext::admissible(std::uint64_t b) const { return index_of(b) >= 0; }

std::ptrdiff_t WContext::index_of(std::uint64_t b) const {
    auto it = std::lower_bound(phi_set.begin(), phi_set.end(), b);
    if (it == phi_set.end() || *it != b) return -1;
    return it - phi_set.begin();
}

Rational phi_product_formula(std::span<const std::uint64_t> odd_primes) {
    Rational r(1);
    for (auto p : odd_primes) r *= Rational(BigInt(p)) * (Rational(1) - Rational(2, BigInt(p)));
    return r;
}

WContext build_context(std::uint64_t t, std::uint64_t n) {
    if (t < 3) throw std::invalid_argument("build_context: t must be at least 3");
    if (t > kMaxT) throw std::invalid_argument("build_context: t = " + std::to_string(t) + " overflows W (max 43)");
    WContext ctx;
    ctx.t = t;
    ctx.n = n;
    ctx.W = 1;
    for (auto p : primes::small_primes(t)) {
        if (p == 2) continue;
        ctx.primes.push_back(p);
        ctx.W *= p;
    }
    if (ctx.W >= n)
        throw std::invalid_argument("build_context: W = " + std::to_string(ctx.W) + " >= n = " + std::to_string(n) +
                                    ", context degenerate");
    if (2 * n / ctx.W < 2) throw std::invalid_argument("build_context: 2n/W below 2");

    for (std::uint64_t b = 0; b < ctx.W; ++b) {
        if (std::gcd(b, ctx.W) == 1 && std::gcd(b + 2, ctx.W) == 1) ctx.phi_set.push_back(b);
    }
    ctx.phi_W = ctx.phi_set.size();
    // N integer: N > 2n/W <=> N > floor(2n/W), N <= 4n/W <=> N <= floor(4n/W).
    ctx.N = primes::next_prime_in(2 * n / ctx.W, 4 * n / ctx.W);
    return ctx;
}

SliceResult slice(std::span<const std::uint64_t> A, const WContext& ctx, const Rational& c1) {
    if (c1 <= 0) throw std::invalid_argument("slice: c1 must be positive");
    SliceResult out;
    out.slices.resize(ctx.phi_set.size());
    for (std::size_t i = 0; i < ctx.phi_set.size(); ++i) out.slices[i].b = ctx.phi_set[i];

    std::uint64_t prev = 0;
    for (auto x : A) {
        if (x < 1 || x > ctx.n) throw std::invalid_argument("slice: element " + std::to_string(x) + " outside [1, n]");
        if (x <= prev && prev != 0) throw std::invalid_argument("slice: A must be strictly increasing");
        prev = x;
        if (static_cast<unsigned __int128>(x) * x <= ctx.n) {
            ++out.below_sqrt;
            continue;
        }
        ++out.in_range;
        const std::uint64_t r = x % ctx.W;
        const auto idx = ctx.index_of(r);
        if (idx < 0) {
            ++out.dropped;
            continue;
        }
        auto& s = out.slices[static_cast<std::size_t>(idx)];
        s.members_n.push_back(x);
        s.members_N.push_back((x - r) / ctx.W);
    }

    const double lg = std::log(static_cast<double>(ctx.n));
    out.scale = rational_from_double(lg * lg * static_cast<double>(ctx.phi_W) / static_cast<double>(ctx.n)) / c1;
    for (auto& s : out.slices) s.delta = Rational(BigInt(s.members_n.size())) * out.scale;
    return out;
}

namespace {

// Distinct values of {a + b : a in xs, b in ys}, optionally reduced mod m.
std::size_t distinct_sums(std::span<const std::uint64_t> xs, std::span<const std::uint64_t> ys, std::uint64_t modulus) {
    if (xs.empty() || ys.empty()) return 0;
    const std::uint64_t top = xs.back() + ys.back();
    const std::uint64_t size = modulus ? modulus : top + 1;
    std::vector<char> seen(size, 0);
    std::size_t count = 0;
    for (auto a : xs) {
        for (auto b : ys) {
            std::uint64_t s = a + b;
            if (modulus) s %= modulus;
            if (!seen[s]) {
                seen[s] = 1;
                ++count;
            }
        }
    }
    return count;
}

}  // namespace

bool sum_identification_check(const ResidueSlice& s1, const ResidueSlice& s2, const WContext& ctx) {
    return distinct_sums(s1.members_n, s2.members_n, 0) == distinct_sums(s1.members_N, s2.members_N, ctx.N);
}

}  // namespace chensum::wtrick
