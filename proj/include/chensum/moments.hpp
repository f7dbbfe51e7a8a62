// moments.hpp
// Representation functions of residue sets in Z_W, their k-th moments in
// exact integers, and the moment bound
//
//   sum_x r_B(x)^k <= e^{C k^3 log k} |B|^k phi_W^k / (alpha^2 W^{k-1}),
//
// audited at small W. r_B counts ordered pairs.

#pragma once

#include "chensum/numeric.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace chensum::moments {

// Odd primes of a squarefree odd W, ascending; throws std::invalid_argument
// when W is even or not squarefree.
std::vector<std::uint64_t> squarefree_odd_factors(std::uint64_t W);

// {b in [0, W) : gcd(b, W) = gcd(b + 2, W) = 1}
std::vector<std::uint64_t> admissible_residues(std::uint64_t W);

// Product of the odd primes <= t.
std::uint64_t odd_primorial(std::uint64_t t);

// ceil(alpha |phi|) residues of phi chosen by a seeded shuffle, ascending.
std::vector<std::uint64_t> draw_subset(std::span<const std::uint64_t> phi, const Rational& alpha, std::uint64_t seed);

enum class RepMethod { Auto, Direct, Transform };

// r_B(x) = #{(b1, b2) in B x B : b1 + b2 ≡ x (mod W)}. Auto uses the
// transform path for W > 10^4.
std::vector<std::uint64_t> rep_function(std::span<const std::uint64_t> B, std::uint64_t W,
                                        RepMethod method = RepMethod::Auto);

BigInt moment(std::span<const std::uint64_t> rB, std::uint64_t k);

struct GridPoint {
    double Ctilde = 0;
    double log_rhs = 0;
    bool holds = false;  // moment <= rhs(Ctilde)
};

struct MomentReport {
    std::uint64_t W = 0;
    std::uint64_t phi_W = 0;
    std::vector<std::uint64_t> B;
    Rational alpha;
    std::uint64_t k = 0;
    std::vector<std::uint64_t> rB;
    BigInt moment_k;
    Rational rhs_C0;        // |B|^k phi_W^k / (alpha^2 W^{k-1})
    std::vector<GridPoint> grid;
    double Ctilde_min = 0;  // smallest C >= 0 with moment <= rhs(C)
};

// Requires W squarefree odd, B ⊆ Phi_W (std::domain_error otherwise),
// |B| >= alpha phi_W and k >= 2. |G| in the bound is read as |B|.
MomentReport lemma5_audit(std::uint64_t W, std::span<const std::uint64_t> B, const Rational& alpha, std::uint64_t k,
                          std::span<const double> Ctilde_grid = {});

struct CollisionProfile {
    std::vector<std::uint64_t> tuple;
    std::map<std::uint64_t, std::uint64_t> rp;  // p | W -> r_p
    Rational f_value;                           // sum over p with r_p <= 2k - 1 of 1/p
    std::uint64_t W1 = 1;                       // primes <= 5k
    std::uint64_t W2 = 1;
};

// d = 1 specialization: r_p counts s mod p with (b_i - s)(b_i - s + 2) ≡ 0
// for some i.
CollisionProfile collision_profile(std::span<const std::uint64_t> tuple, std::uint64_t W);

struct ClaimReport {
    std::uint64_t k = 0;
    Rational beta;
    bool exhaustive = false;
    std::uint64_t seed = 0;
    std::uint64_t tuples = 0;
    std::uint64_t K_size = 0;  // tuples with f_value >= beta
    std::map<Rational, std::uint64_t> histogram;
};

// Walks B^k when |B|^k <= max_tuples, else draws `samples` tuples from seed.
ClaimReport claim_report(std::span<const std::uint64_t> B, std::uint64_t W, std::uint64_t k, const Rational& beta,
                         std::uint64_t seed, std::uint64_t max_tuples = 100000000, std::uint64_t samples = 200000);

}  // namespace chensum::moments
