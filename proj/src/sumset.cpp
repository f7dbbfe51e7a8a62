#include "chensum/sumset.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace chensum::sumset {

using decomposition::SpectralDecomposition;
using spectral::NormSide;
using spectral::ResidueSignal;

namespace {

constexpr double kSlack = 1e-9;

std::vector<std::uint64_t> support_of(const ResidueSignal& f) {
    std::vector<std::uint64_t> s;
    for (std::size_t x = 0; x < f.modulus(); ++x)
        if (f[x] > 0.0) s.push_back(x);
    return s;
}

void set_bit(std::vector<std::uint64_t>& bits, std::uint64_t i) { bits[i >> 6] |= std::uint64_t{1} << (i & 63); }

std::uint64_t popcount(const std::vector<std::uint64_t>& bits) {
    std::uint64_t c = 0;
    for (auto w : bits) c += static_cast<std::uint64_t>(__builtin_popcountll(w));
    return c;
}

// dst |= src << shift, both bitsets of the same word length.
void or_shifted(std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src, std::uint64_t shift) {
    const std::size_t word_shift = shift >> 6;
    const unsigned bit_shift = shift & 63;
    for (std::size_t i = dst.size(); i-- > word_shift;) {
        const std::size_t j = i - word_shift;
        std::uint64_t v = src[j] << bit_shift;
        if (bit_shift && j > 0) v |= src[j - 1] >> (64 - bit_shift);
        dst[i] |= v;
    }
}

}  // namespace

Lemma4Report lemma4_check(const SpectralDecomposition& d1, const SpectralDecomposition& d2) {
    if (d1.modulus() != d2.modulus()) throw std::domain_error("lemma4_check: modulus mismatch");
    Lemma4Report r;
    const double lambda = d1.lambda;
    const double q = 2.0 + lambda;

    const auto f11 = spectral::convolve(d1.f1, d2.f1);
    r.l1_conv = spectral::norm(f11, NormSide::Values, 1.0);
    r.l1_product = spectral::norm(d1.f, NormSide::Values, 1.0) * spectral::norm(d2.f, NormSide::Values, 1.0);
    r.l1_identity = std::abs(r.l1_conv - r.l1_product) <= kSlack * std::max(r.l1_product, 1e-300);

    const ResidueSignal* left[2] = {&d1.f1, &d1.f2};
    const ResidueSignal* right[2] = {&d2.f1, &d2.f2};
    const std::array<std::pair<int, int>, 3> pairs{{{1, 2}, {2, 1}, {2, 2}}};
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto [i, j] = pairs[k];
        const auto& fi = *left[i - 1];
        const auto& fj = *right[j - 1];
        const auto conv = spectral::convolve(fi, fj);
        HolderTerm h;
        h.i = i;
        h.j = j;
        h.lhs = std::pow(spectral::norm(conv, NormSide::Values, 2.0), 2.0);
        const double fj_sup = spectral::norm(fj, NormSide::Spectrum, spectral::kInf);
        h.rhs = std::pow(fj_sup, 2.0 - lambda) * std::pow(spectral::norm(fi, NormSide::Spectrum, q), 2.0) *
                std::pow(spectral::norm(fj, NormSide::Spectrum, q), lambda);
        h.holds = h.lhs <= h.rhs * (1.0 + kSlack) + 1e-30;
        r.holder[k] = h;
    }

    r.sup_conv = spectral::norm(f11, NormSide::Values, spectral::kInf);
    const double a = spectral::norm(d1.f1, NormSide::Values, 1.0) * spectral::norm(d2.f1, NormSide::Values, spectral::kInf);
    const double b = spectral::norm(d2.f1, NormSide::Values, 1.0) * spectral::norm(d1.f1, NormSide::Values, spectral::kInf);
    r.sup_bound = std::min(a, b);
    r.young = r.sup_conv <= r.sup_bound * (1.0 + kSlack) + 1e-15 * std::max(a, b);
    return r;
}

std::size_t cyclic_sumset_size(std::span<const std::uint64_t> xs, std::span<const std::uint64_t> ys, std::uint64_t N) {
    if (xs.empty() || ys.empty()) return 0;
    // Doubled copy of ys so a rotation is a plain shift followed by a fold.
    const std::size_t words = (2 * N) / 64 + 1;
    std::vector<std::uint64_t> base(words, 0), acc(words, 0);
    for (auto y : ys) set_bit(base, y % N);
    for (auto x : xs) or_shifted(acc, base, x % N);
    std::vector<std::uint64_t> folded((N + 63) / 64, 0);
    for (std::uint64_t s = 0; s < 2 * N; ++s)
        if ((acc[s >> 6] >> (s & 63)) & 1U) set_bit(folded, s % N);
    return popcount(folded);
}

SupportCertificate prop1_certificate(const SpectralDecomposition& d1, const SpectralDecomposition& d2,
                                     std::uint64_t b1, std::uint64_t b2, const Rational& delta_b1,
                                     const Rational& delta_b2) {
    if (d1.modulus() != d2.modulus()) throw std::domain_error("prop1_certificate: modulus mismatch");
    const std::size_t N = d1.modulus();
    SupportCertificate c;
    c.b1 = b1;
    c.b2 = b2;

    const auto s1 = support_of(d1.f);
    const auto s2 = support_of(d2.f);
    std::vector<char> in_support(N, 0);
    for (auto x : s1)
        for (auto y : s2) in_support[(x + y) % N] = 1;
    c.support = static_cast<std::size_t>(std::count(in_support.begin(), in_support.end(), 1));

    const Rational dd = delta_b1 * delta_b2;
    if (dd == 0) {
        c.inclusion = true;
        return c;
    }

    const auto f11 = spectral::convolve(d1.f1, d2.f1);
    const auto f12 = spectral::convolve(d1.f1, d2.f2);
    const auto f21 = spectral::convolve(d1.f2, d2.f1);
    const auto f22 = spectral::convolve(d1.f2, d2.f2);
    // c2 * delta_b1 * delta_b2 is the L^1 norm of f1 * f1, so the thresholds
    // do not depend on the delta normalization.
    const double l1 = spectral::norm(f11, NormSide::Values, 1.0);
    c.c2_measured = l1 / to_double(dd);
    const double hi = l1 / 2.0;
    const double lo = l1 / 20.0;

    c.inclusion = true;
    for (std::size_t x = 0; x < N; ++x) {
        const bool a = f11[x] > hi;
        const bool e12 = std::abs(f12[x]) > lo;
        const bool e21 = std::abs(f21[x]) > lo;
        const bool e22 = std::abs(f22[x]) > lo;
        c.t11 += a;
        c.t12 += e12;
        c.t21 += e21;
        c.t22 += e22;
        if (a && !e12 && !e21 && !e22 && !in_support[x]) c.inclusion = false;
    }
    const std::size_t minus = c.t12 + c.t21 + c.t22;
    c.certified = c.t11 > minus ? c.t11 - minus : 0;
    c.dominant = c.t11 > 4 * std::max({c.t12, c.t21, c.t22});
    c.valid = c.certified > 0 && c.dominant;
    return c;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> AggregationPlan::maximizing_pairs() const {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    for (const auto& cell : Delta) out.emplace_back(cell.b1, cell.b2);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

AggregationPlan select_G(std::span<const wtrick::ResidueSlice> slices, const Rational& alpha, std::uint64_t W,
                         std::uint64_t k) {
    AggregationPlan plan;
    plan.alpha = alpha;
    plan.W = W;
    plan.k = k;
    const Rational threshold = alpha / 4;
    for (const auto& s : slices) {
        plan.delta_map[s.b] = s.delta;
        if (s.delta >= threshold) plan.G.push_back(s.b);
    }
    std::sort(plan.G.begin(), plan.G.end());

    std::map<std::uint64_t, DeltaCell> cells;
    // G ascending, so the first maximizer met for each x is lexicographically smallest.
    for (auto b1 : plan.G) {
        for (auto b2 : plan.G) {
            const std::uint64_t x = (b1 + b2) % W;
            const Rational v = plan.delta_map[b1] + plan.delta_map[b2];
            auto it = cells.find(x);
            if (it == cells.end()) {
                cells.emplace(x, DeltaCell{x, v, b1, b2});
            } else if (v > it->second.value) {
                it->second = DeltaCell{x, v, b1, b2};
            }
        }
    }
    for (auto& [x, cell] : cells) plan.Delta.push_back(std::move(cell));
    return plan;
}

std::uint64_t aggregate_lower_bound(const AggregationPlan& plan, const CertificateMap& certs) {
    std::uint64_t total = 0;
    for (const auto& cell : plan.Delta) {
        auto it = certs.find({cell.b1, cell.b2});
        if (it == certs.end())
            throw std::out_of_range("aggregate_lower_bound: missing certificate for pair (" + std::to_string(cell.b1) +
                                    ", " + std::to_string(cell.b2) + ")");
        if (it->second.valid) total += it->second.certified;
    }
    return total;
}

HolderChainReport holder_chain_report(const AggregationPlan& plan) {
    HolderChainReport r;
    r.k = plan.k;
    if (plan.k < 2) throw std::invalid_argument("holder_chain_report: k must be at least 2");
    std::map<std::uint64_t, std::uint64_t> rep;
    for (auto b1 : plan.G) {
        for (auto b2 : plan.G) {
            ++rep[(b1 + b2) % plan.W];
            r.pair_sum += to_double(plan.delta_map.at(b1) + plan.delta_map.at(b2));
        }
    }
    const double k = static_cast<double>(plan.k);
    double moment = 0, dual = 0;
    for (const auto& cell : plan.Delta) {
        const double d = to_double(cell.value);
        const double rx = static_cast<double>(rep[cell.x]);
        r.weighted_sum += rx * d;
        r.delta_sum += d;
        moment += std::pow(rx, k);
        dual += std::pow(d, k / (k - 1.0));
    }
    r.holder_bound = std::pow(moment, 1.0 / k) * std::pow(dual, (k - 1.0) / k);
    r.ordered = r.pair_sum <= r.weighted_sum * (1.0 + kSlack) + 1e-12 &&
                r.weighted_sum <= r.holder_bound * (1.0 + kSlack) + 1e-12;
    return r;
}

ExactSumset exact_sumset(std::span<const std::uint64_t> A, std::uint64_t bound) {
    ExactSumset out;
    out.bits.assign(bound / 64 + 1, 0);
    if (A.empty()) return out;
    std::vector<std::uint64_t> base(out.bits.size(), 0);
    for (auto a : A) {
        if (a < 1 || a > bound / 2)
            throw std::out_of_range("exact_sumset: element " + std::to_string(a) + " outside [1, bound/2]");
        set_bit(base, a);
    }
    for (auto a : A) or_shifted(out.bits, base, a);
    out.size = popcount(out.bits);
    return out;
}

double schedule_epsilon(double alpha, double lambda) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::domain_error("schedule_epsilon: alpha must lie in (0, 1]");
    if (!(lambda > 0.0 && lambda < 2.0)) throw std::domain_error("schedule_epsilon: lambda must lie in (0, 2)");
    return std::pow(alpha, 5.0 / (2.0 - lambda));
}

Schedule paper_schedule(double alpha, double lambda) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("paper_schedule: alpha must lie in (0, 1)");
    Schedule s;
    s.epsilon = s.delta = schedule_epsilon(alpha, lambda);
    const double log_inv = std::log(1.0 / alpha);
    s.log_t_required = std::pow(alpha, -5.0 * (2.0 + lambda) / (2.0 - lambda)) * log_inv;
    s.t_required_log10 = s.log_t_required / std::log(10.0);
    if (alpha < std::exp(-std::numbers::e)) {
        const double ll = std::log(log_inv);
        s.k = static_cast<std::uint64_t>(std::floor(std::cbrt(log_inv / ll)));
        s.theorem2_exponent = std::pow(log_inv, 2.0 / 3.0) * std::cbrt(ll);
    }
    return s;
}

}  // namespace chensum::sumset
