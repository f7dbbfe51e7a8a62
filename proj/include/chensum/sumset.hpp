// sumset.hpp
// Support certificates for f^(b1) * f^(b2), good-residue selection and the
// aggregation of per-pair certificates into a lower bound for |A_n + A_n|,
// together with the exact bitset sumset used as the oracle.

#pragma once

#include "chensum/decomposition.hpp"
#include "chensum/numeric.hpp"
#include "chensum/wtrick.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace chensum::sumset {

struct HolderTerm {
    int i = 0, j = 0;
    double lhs = 0;  // ||f_i * f_j||_{L^2}^2
    double rhs = 0;  // ||f_j^||_inf^{2-lambda} ||f_i^||_{2+lambda}^2 ||f_j^||_{2+lambda}^lambda
    bool holds = false;
};

struct Lemma4Report {
    double l1_conv = 0;     // ||f1^(b1) * f1^(b2)||_{L^1}
    double l1_product = 0;  // ||f^(b1)||_{L^1} ||f^(b2)||_{L^1}
    bool l1_identity = false;
    std::array<HolderTerm, 3> holder{};  // (1,2), (2,1), (2,2)
    double sup_conv = 0;
    double sup_bound = 0;
    bool young = false;

    bool pass() const { return l1_identity && young && holder[0].holds && holder[1].holds && holder[2].holds; }
};

Lemma4Report lemma4_check(const decomposition::SpectralDecomposition& d1,
                          const decomposition::SpectralDecomposition& d2);

struct SupportCertificate {
    std::uint64_t b1 = 0, b2 = 0;
    double c2_measured = 0;
    std::size_t t11 = 0, t12 = 0, t21 = 0, t22 = 0;
    std::uint64_t certified = 0;  // max(0, |T11| - |T12| - |T21| - |T22|)
    bool dominant = false;        // |T11| > 4 max(|T12|, |T21|, |T22|)
    bool valid = false;           // certified > 0 and dominant
    // Exact side, computed alongside for the soundness checks.
    std::size_t support = 0;      // |{x : f^(b1) * f^(b2)(x) > 0}|
    bool inclusion = false;       // T11 \ (T12 ∪ T21 ∪ T22) ⊆ support, elementwise
};

// delta_b1 * delta_b2 = 0 yields certified = 0, valid = false.
SupportCertificate prop1_certificate(const decomposition::SpectralDecomposition& d1,
                                     const decomposition::SpectralDecomposition& d2, std::uint64_t b1,
                                     std::uint64_t b2, const Rational& delta_b1, const Rational& delta_b2);

// Size of {a + b mod N : a in xs, b in ys} by cyclic shift-or.
std::size_t cyclic_sumset_size(std::span<const std::uint64_t> xs, std::span<const std::uint64_t> ys, std::uint64_t N);

struct DeltaCell {
    std::uint64_t x = 0;
    Rational value;  // Delta_x
    std::uint64_t b1 = 0, b2 = 0;  // lexicographically smallest maximizer
};

struct AggregationPlan {
    Rational alpha;
    std::uint64_t W = 0;
    std::vector<std::uint64_t> G;  // ascending
    std::map<std::uint64_t, Rational> delta_map;
    std::vector<DeltaCell> Delta;  // x in G + G (mod W), ascending
    std::uint64_t k = 2;

    // Pairs needed by aggregate_lower_bound, deduplicated, ascending.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> maximizing_pairs() const;
};

AggregationPlan select_G(std::span<const wtrick::ResidueSlice> slices, const Rational& alpha, std::uint64_t W,
                         std::uint64_t k = 2);

using CertificateMap = std::map<std::pair<std::uint64_t, std::uint64_t>, SupportCertificate>;

// Sum over x in G + G of the certificate of the maximizing pair; only valid
// certificates contribute. Throws std::out_of_range naming a missing pair.
std::uint64_t aggregate_lower_bound(const AggregationPlan& plan, const CertificateMap& certs);

struct HolderChainReport {
    std::uint64_t k = 0;
    double pair_sum = 0;        // sum_{G x G} (delta_b1 + delta_b2)
    double weighted_sum = 0;    // sum_x r_G(x) Delta_x
    double holder_bound = 0;    // (sum r_G^k)^{1/k} (sum Delta^{k/(k-1)})^{(k-1)/k}
    double delta_sum = 0;       // sum_x Delta_x
    bool ordered = false;       // pair_sum <= weighted_sum <= holder_bound (with 1e-9 slack)
};

HolderChainReport holder_chain_report(const AggregationPlan& plan);

struct ExactSumset {
    std::uint64_t size = 0;
    std::vector<std::uint64_t> bits;  // bit s set iff s in A + A, s in [0, bound]

    bool contains(std::uint64_t s) const { return (bits[s >> 6] >> (s & 63)) & 1U; }
};

// A sorted ascending within [1, bound / 2]; throws std::out_of_range otherwise.
ExactSumset exact_sumset(std::span<const std::uint64_t> A, std::uint64_t bound);

struct Schedule {
    double epsilon = 0;  // = delta = alpha^{5/(2-lambda)}
    double delta = 0;
    double log_t_required = 0;  // alpha^{-5(2+lambda)/(2-lambda)} log(1/alpha)
    double t_required_log10 = 0;
    std::optional<std::uint64_t> k;  // floor((log(1/a) / loglog(1/a))^{1/3}) for a < e^{-e}
    std::optional<double> theorem2_exponent;  // log(1/a)^{2/3} loglog(1/a)^{1/3}
};

// 0 < alpha < 1 and 0 < lambda < 2; otherwise std::domain_error.
Schedule paper_schedule(double alpha, double lambda);

// alpha^{5/(2-lambda)}, defined for 0 < alpha <= 1.
double schedule_epsilon(double alpha, double lambda);

}  // namespace chensum::sumset
