// majorant.hpp
// Enveloping sieve on Z_N for F(x) = (Wx + b)(Wx + b + 2).
//
// The majorant is a Selberg Lambda^2 form
//
//   raw(x) = ( sum_{d | F(x), d <= R, d squarefree, gcd(d, 2W) = 1} lambda_d )^2
//
// with the optimal Selberg weights for the local densities omega(p), evaluated
// at the representatives x in [0, N) and rescaled so that nu^(0) = 1.
// raw(x) = lambda_1^2 = 1 whenever F(x) has no prime factor <= R.

#pragma once

#include "chensum/numeric.hpp"
#include "chensum/spectral.hpp"
#include "chensum/wtrick.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace chensum::majorant {

// (1/p) * #{n mod p : gcd(p, F(n)) = 1}, by direct scan of Z_p.
Rational gamma_p(std::uint64_t p, std::uint64_t b, const wtrick::WContext& ctx);

struct SingularSeries {
    double value = 0.0;  // product over p <= truncation
    double lower = 0.0;  // bracket for the full product
    double upper = 0.0;
    std::uint64_t truncation = 0;
    double over_log2_t = 0.0;  // value / log^2 t
};

// prod_p gamma(p) / (1 - 1/p)^2 truncated at p <= truncation. Each factor
// with p > t is 1 - 1/(p-1)^2, so the tail lies in [(P-1)/P, 1].
SingularSeries singular_series(std::uint64_t b, const wtrick::WContext& ctx, std::uint64_t truncation = 100000);

struct SelbergWeights {
    std::uint64_t R = 0;
    std::vector<std::uint64_t> sieving_primes;            // p <= R, p not dividing 2W
    std::vector<std::pair<std::uint64_t, double>> terms;  // (d, lambda_d), d ascending

    double lambda(std::uint64_t d) const;
};

SelbergWeights selberg_weights(std::uint64_t b, const wtrick::WContext& ctx, std::uint64_t R);

struct MajorantProfile {
    std::uint64_t b = 0;
    std::uint64_t R = 0;
    bool in_lemma2_window = false;          // R^10 <= N
    std::map<std::uint64_t, Rational> gamma;  // primes p <= max(R, t)
    SingularSeries series;
    SelbergWeights weights;
    std::vector<double> raw;                // before rescaling
    double raw_mean = 0.0;
    spectral::ResidueSignal nu;
    std::vector<char> x_indicator;          // F(x) free of primes <= R

    bool in_X(std::uint64_t x) const { return x_indicator.at(x) != 0; }
};

// max(floor(N^(1/20)), 3)
std::uint64_t default_R(std::uint64_t N);

// Throws std::invalid_argument for R < 3 or R >= N, or b not admissible.
MajorantProfile build_majorant(std::uint64_t b, const wtrick::WContext& ctx, std::optional<std::uint64_t> R = {});

// E_x nu(x), accumulated in extended precision.
double nu_hat_zero(const MajorantProfile& profile);

struct Lemma1Row {
    std::uint64_t t = 0;
    std::uint64_t N = 0;
    std::uint64_t R = 0;
    double nu_hat_zero = 0.0;  // the value furthest from 1 over all b
    double sup_nonzero = 0.0;  // max over b of sup_{xi != 0} |nu^(xi)|
    double series_over_log2_t = 0.0;
};

struct Lemma1Report {
    std::vector<Lemma1Row> rows;
    // Least-squares slope of log(sup) against log(t) over rows with sup > 0;
    // NaN with fewer than two such rows.
    double fitted_exponent = 0.0;
    bool all_finite = true;
    bool normalized = true;  // |nu^(0) - 1| <= 1e-12 everywhere
};

Lemma1Report lemma1_diagnostic(std::span<const std::uint64_t> t_grid, std::uint64_t n,
                               std::optional<std::uint64_t> fixed_R = {});

// Same report from profiles already built (one entry per t).
Lemma1Report lemma1_from_profiles(const std::vector<std::pair<wtrick::WContext, std::vector<MajorantProfile>>>& grid);

struct Lemma2Report {
    double q = 0.0;
    int trials = 0;
    double max_ratio = 0.0;
    double mean_nu = 0.0;
};

// Ratio for one weight sequence; 0 when a vanishes identically.
double lemma2_ratio(const MajorantProfile& profile, std::span<const spectral::Complex> a, double q);

// Random a_x uniform in the closed unit disk. q <= 2 throws std::domain_error.
Lemma2Report lemma2_diagnostic(const MajorantProfile& profile, double q, int trials, std::uint64_t seed);

}  // namespace chensum::majorant
