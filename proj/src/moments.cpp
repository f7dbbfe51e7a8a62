#include "chensum/moments.hpp"
#include "chensum/random.hpp"
#include "chensum/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace chensum::moments {

std::vector<std::uint64_t> squarefree_odd_factors(std::uint64_t W) {
    if (W == 0 || W % 2 == 0) throw std::invalid_argument("W must be odd and positive");
    std::vector<std::uint64_t> out;
    std::uint64_t m = W;
    for (std::uint64_t p = 3; p * p <= m; p += 2) {
        if (m % p) continue;
        m /= p;
        if (m % p == 0) throw std::invalid_argument("W = " + std::to_string(W) + " is not squarefree");
        out.push_back(p);
    }
    if (m > 1) out.push_back(m);
    return out;
}

std::vector<std::uint64_t> admissible_residues(std::uint64_t W) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t b = 0; b < W; ++b)
        if (std::gcd(b, W) == 1 && std::gcd(b + 2, W) == 1) out.push_back(b);
    return out;
}

std::uint64_t odd_primorial(std::uint64_t t) {
    std::uint64_t W = 1;
    for (std::uint64_t p = 3; p <= t; p += 2) {
        bool prime = true;
        for (std::uint64_t q = 3; q * q <= p; q += 2)
            if (p % q == 0) prime = false;
        if (!prime) continue;
        if (W > UINT64_MAX / p) throw std::overflow_error("odd_primorial: t too large");
        W *= p;
    }
    return W;
}

std::vector<std::uint64_t> draw_subset(std::span<const std::uint64_t> phi, const Rational& alpha, std::uint64_t seed) {
    if (alpha <= 0 || alpha > 1) throw std::invalid_argument("draw_subset: alpha must lie in (0, 1]");
    const Rational want = alpha * BigInt(phi.size());
    BigInt take = boost::multiprecision::numerator(want) / boost::multiprecision::denominator(want);
    if (Rational(take) < want) ++take;
    std::vector<std::uint64_t> pool(phi.begin(), phi.end());
    Rng rng(seed);
    rng.shuffle(std::span<std::uint64_t>(pool));
    pool.resize(static_cast<std::size_t>(take));
    std::sort(pool.begin(), pool.end());
    return pool;
}

std::vector<std::uint64_t> rep_function(std::span<const std::uint64_t> B, std::uint64_t W, RepMethod method) {
    for (auto b : B)
        if (b >= W) throw std::out_of_range("rep_function: residue " + std::to_string(b) + " not below W");
    if (method == RepMethod::Auto) method = W > 10000 ? RepMethod::Transform : RepMethod::Direct;
    std::vector<std::uint64_t> r(W, 0);
    if (B.empty()) return r;

    if (method == RepMethod::Direct) {
        for (auto b1 : B)
            for (auto b2 : B) ++r[(b1 + b2) % W];
        return r;
    }

    // Linear self-convolution by a power-of-two FFT, folded mod W.
    std::size_t M = 1;
    while (M < 2 * W) M <<= 1;
    std::vector<spectral::Complex> a(M, 0.0);
    for (auto b : B) a[b] = 1.0;
    spectral::fft_pow2(a, -1);
    for (auto& v : a) v *= v;
    spectral::fft_pow2(a, +1);
    const double inv = 1.0 / static_cast<double>(M);
    for (std::size_t s = 0; s < 2 * W - 1; ++s) {
        const double v = a[s].real() * inv;
        const double rounded = std::nearbyint(v);
        if (std::abs(v - rounded) > 0.25)
            throw std::runtime_error("rep_function: transform rounding error too large at W = " + std::to_string(W));
        r[s % W] += static_cast<std::uint64_t>(rounded);
    }
    return r;
}

BigInt moment(std::span<const std::uint64_t> rB, std::uint64_t k) {
    if (k < 1) throw std::invalid_argument("moment: k must be at least 1");
    BigInt total = 0;
    for (auto v : rB) {
        if (v == 0) continue;
        total += boost::multiprecision::pow(BigInt(v), static_cast<unsigned>(k));
    }
    return total;
}

MomentReport lemma5_audit(std::uint64_t W, std::span<const std::uint64_t> B, const Rational& alpha, std::uint64_t k,
                          std::span<const double> Ctilde_grid) {
    squarefree_odd_factors(W);
    if (k < 2) throw std::invalid_argument("lemma5_audit: k must be at least 2");
    if (alpha <= 0) throw std::invalid_argument("lemma5_audit: alpha must be positive");
    const auto phi = admissible_residues(W);
    for (auto b : B)
        if (!std::binary_search(phi.begin(), phi.end(), b))
            throw std::domain_error("lemma5_audit: residue " + std::to_string(b) + " not in Phi_W");

    MomentReport rep;
    rep.W = W;
    rep.phi_W = phi.size();
    rep.B.assign(B.begin(), B.end());
    std::sort(rep.B.begin(), rep.B.end());
    if (std::adjacent_find(rep.B.begin(), rep.B.end()) != rep.B.end())
        throw std::invalid_argument("lemma5_audit: B has repeated residues");
    if (Rational(BigInt(rep.B.size())) < alpha * BigInt(rep.phi_W))
        throw std::invalid_argument("lemma5_audit: |B| below alpha * phi_W");
    rep.alpha = alpha;
    rep.k = k;
    rep.rB = rep_function(rep.B, W);
    rep.moment_k = moment(rep.rB, k);

    const auto kk = static_cast<unsigned>(k);
    const BigInt num = boost::multiprecision::pow(BigInt(rep.B.size()), kk) * boost::multiprecision::pow(BigInt(rep.phi_W), kk);
    const BigInt den = boost::multiprecision::pow(BigInt(W), kk - 1);
    rep.rhs_C0 = Rational(num, den) / (alpha * alpha);

    const double growth = std::pow(static_cast<double>(k), 3.0) * std::log(static_cast<double>(k));
    const double log_rhs0 = rep.rhs_C0 > 0 ? log_rational(rep.rhs_C0) : -spectral::kInf;
    if (rep.moment_k == 0 || Rational(rep.moment_k) <= rep.rhs_C0) {
        rep.Ctilde_min = 0.0;
    } else {
        rep.Ctilde_min = (log_big(rep.moment_k) - log_rhs0) / growth;
    }
    for (double c : Ctilde_grid) {
        GridPoint g;
        g.Ctilde = c;
        g.log_rhs = log_rhs0 + c * growth;
        g.holds = rep.moment_k == 0 || c >= rep.Ctilde_min;
        rep.grid.push_back(g);
    }
    return rep;
}

CollisionProfile collision_profile(std::span<const std::uint64_t> tuple, std::uint64_t W) {
    const auto primes = squarefree_odd_factors(W);
    CollisionProfile prof;
    prof.tuple.assign(tuple.begin(), tuple.end());
    const std::uint64_t k = tuple.size();
    for (auto p : primes) {
        std::uint64_t count = 0;
        for (std::uint64_t s = 0; s < p; ++s) {
            for (auto b : tuple) {
                const std::uint64_t u = (b % p + p - s) % p;
                if (u == 0 || (u + 2) % p == 0) {
                    ++count;
                    break;
                }
            }
        }
        prof.rp[p] = count;
        if (count + 1 <= 2 * k) prof.f_value += Rational(1, BigInt(p));
        if (p <= 5 * k) {
            prof.W1 *= p;
        } else {
            prof.W2 *= p;
        }
    }
    return prof;
}

ClaimReport claim_report(std::span<const std::uint64_t> B, std::uint64_t W, std::uint64_t k, const Rational& beta,
                         std::uint64_t seed, std::uint64_t max_tuples, std::uint64_t samples) {
    if (k < 1) throw std::invalid_argument("claim_report: k must be at least 1");
    ClaimReport rep;
    rep.k = k;
    rep.beta = beta;
    rep.seed = seed;
    if (B.empty()) {
        rep.exhaustive = true;
        return rep;
    }
    double total = 1.0;
    for (std::uint64_t i = 0; i < k; ++i) total *= static_cast<double>(B.size());
    rep.exhaustive = total <= static_cast<double>(max_tuples);

    std::vector<std::uint64_t> tuple(k);
    auto record = [&] {
        const auto prof = collision_profile(tuple, W);
        ++rep.tuples;
        ++rep.histogram[prof.f_value];
        if (prof.f_value >= beta) ++rep.K_size;
    };
    if (rep.exhaustive) {
        std::vector<std::size_t> idx(k, 0);
        while (true) {
            for (std::uint64_t i = 0; i < k; ++i) tuple[i] = B[idx[i]];
            record();
            std::size_t pos = 0;
            while (pos < k && ++idx[pos] == B.size()) idx[pos++] = 0;
            if (pos == k) break;
        }
    } else {
        Rng rng(seed);
        for (std::uint64_t s = 0; s < samples; ++s) {
            for (std::uint64_t i = 0; i < k; ++i) tuple[i] = B[rng.below(B.size())];
            record();
        }
    }
    return rep;
}

}  // namespace chensum::moments
