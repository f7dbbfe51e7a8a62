#include "chensum/majorant.hpp"
#include "chensum/primes.hpp"
#include "chensum/random.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace chensum::majorant {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

// Number of n mod p with p | F(n), from the root structure of F:
// none when p | W, a double root when p = 2, two simple roots otherwise.
std::uint64_t root_count(std::uint64_t p, const wtrick::WContext& ctx) {
    if (ctx.W % p == 0) return 0;
    if (p == 2) return 1;
    return 2;
}

bool divides_F(std::uint64_t p, std::uint64_t x, std::uint64_t b, std::uint64_t W) {
    const std::uint64_t r = (mulmod(W % p, x % p, p) + b % p) % p;
    return r == 0 || (r + 2) % p == 0;
}

}  // namespace

Rational gamma_p(std::uint64_t p, std::uint64_t b, const wtrick::WContext& ctx) {
    if (p < 2) throw std::invalid_argument("gamma_p: p must be prime");
    std::uint64_t coprime = 0;
    for (std::uint64_t n = 0; n < p; ++n) {
        const std::uint64_t u = (mulmod(ctx.W % p, n, p) + b % p) % p;
        const std::uint64_t v = (u + 2) % p;
        if (mulmod(u, v, p) != 0) ++coprime;
    }
    return Rational(BigInt(coprime), BigInt(p));
}

SingularSeries singular_series(std::uint64_t b, const wtrick::WContext& ctx, std::uint64_t truncation) {
    (void)b;  // every admissible b has the same local densities
    if (truncation <= ctx.t) throw std::invalid_argument("singular_series: truncation must exceed t");
    SingularSeries s;
    s.truncation = truncation;
    double log_prod = 0.0;
    for (auto p : primes::small_primes(truncation)) {
        const double pd = static_cast<double>(p);
        const double gamma = (pd - static_cast<double>(root_count(p, ctx))) / pd;
        log_prod += std::log(gamma) - 2.0 * std::log1p(-1.0 / pd);
    }
    s.value = std::exp(log_prod);
    const double P = static_cast<double>(truncation);
    s.lower = s.value * (P - 1.0) / P;
    s.upper = s.value;
    const double lt = std::log(static_cast<double>(ctx.t));
    s.over_log2_t = s.value / (lt * lt);
    return s;
}

double SelbergWeights::lambda(std::uint64_t d) const {
    auto it = std::lower_bound(terms.begin(), terms.end(), d,
                               [](const auto& term, std::uint64_t key) { return term.first < key; });
    return (it != terms.end() && it->first == d) ? it->second : 0.0;
}

SelbergWeights selberg_weights(std::uint64_t b, const wtrick::WContext& ctx, std::uint64_t R) {
    SelbergWeights w;
    w.R = R;
    for (auto p : primes::small_primes(R)) {
        if (p == 2 || ctx.W % p == 0) continue;
        w.sieving_primes.push_back(p);
    }
    // omega(p) = p (1 - gamma(p)), g(p) = omega / (p - omega).
    std::vector<double> g_p, boost_p;
    for (auto p : w.sieving_primes) {
        const Rational omega = Rational(BigInt(p)) * (Rational(1) - gamma_p(p, b, ctx));
        const double om = to_double(omega);
        const double pd = static_cast<double>(p);
        g_p.push_back(om / (pd - om));
        boost_p.push_back(pd / (pd - om));
    }

    struct Entry {
        std::uint64_t d;
        double g;
        double boost;
        int mu;
        std::vector<std::size_t> factors;
    };
    std::vector<Entry> entries;
    std::vector<std::size_t> stack;
    std::function<void(std::size_t, std::uint64_t, double, double, int)> walk =
        [&](std::size_t from, std::uint64_t d, double g, double bst, int mu) {
            entries.push_back({d, g, bst, mu, stack});
            for (std::size_t i = from; i < w.sieving_primes.size(); ++i) {
                const std::uint64_t p = w.sieving_primes[i];
                if (d * p > R) break;
                stack.push_back(i);
                walk(i + 1, d * p, g * g_p[i], bst * boost_p[i], -mu);
                stack.pop_back();
            }
        };
    walk(0, 1, 1.0, 1.0, 1);
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& c) { return a.d < c.d; });

    double G = 0.0;
    for (const auto& e : entries) G += e.g;

    for (const auto& e : entries) {
        const std::uint64_t y = R / e.d;
        double Gd = 0.0;
        for (const auto& m : entries) {
            if (m.d > y) break;
            bool coprime = true;
            for (auto i : m.factors) {
                if (e.d % w.sieving_primes[i] == 0) {
                    coprime = false;
                    break;
                }
            }
            if (coprime) Gd += m.g;
        }
        w.terms.emplace_back(e.d, e.mu * e.boost * Gd / G);
    }
    return w;
}

std::uint64_t default_R(std::uint64_t N) {
    auto r = static_cast<std::uint64_t>(std::floor(std::pow(static_cast<double>(N), 1.0 / 20.0)));
    while (r > 0 && std::pow(static_cast<double>(r), 20.0) > static_cast<double>(N)) --r;
    return std::max<std::uint64_t>(r, 3);
}

MajorantProfile build_majorant(std::uint64_t b, const wtrick::WContext& ctx, std::optional<std::uint64_t> R_opt) {
    if (!ctx.admissible(b)) throw std::invalid_argument("build_majorant: b = " + std::to_string(b) + " not in Phi_W");
    const std::uint64_t N = ctx.N;
    const std::uint64_t R = R_opt.value_or(default_R(N));
    if (R < 3 || R >= N)
        throw std::invalid_argument("build_majorant: sieve level R = " + std::to_string(R) + " outside [3, N)");

    MajorantProfile prof;
    prof.b = b;
    prof.R = R;
    prof.in_lemma2_window = std::pow(static_cast<double>(R), 10.0) <= static_cast<double>(N);
    for (auto p : primes::small_primes(std::max(R, ctx.t))) prof.gamma.emplace(p, gamma_p(p, b, ctx));
    prof.series = singular_series(b, ctx);
    prof.weights = selberg_weights(b, ctx, R);

    const auto& sp = prof.weights.sieving_primes;
    const auto small = primes::small_primes(R);
    prof.raw.assign(N, 0.0);
    prof.x_indicator.assign(N, 0);
    std::vector<std::uint64_t> dividing;
    long double total = 0;
    for (std::uint64_t x = 0; x < N; ++x) {
        dividing.clear();
        for (auto p : sp)
            if (divides_F(p, x, b, ctx.W)) dividing.push_back(p);

        double s = 0.0;
        std::function<void(std::size_t, std::uint64_t)> sum_divisors = [&](std::size_t from, std::uint64_t d) {
            s += prof.weights.lambda(d);
            for (std::size_t i = from; i < dividing.size(); ++i) {
                if (d * dividing[i] > R) break;
                sum_divisors(i + 1, d * dividing[i]);
            }
        };
        sum_divisors(0, 1);
        prof.raw[x] = s * s;
        total += prof.raw[x];

        bool free_of_small = true;
        for (auto p : small) {
            if (divides_F(p, x, b, ctx.W)) {
                free_of_small = false;
                break;
            }
        }
        prof.x_indicator[x] = free_of_small ? 1 : 0;
    }
    prof.raw_mean = static_cast<double>(total / static_cast<long double>(N));
    if (!(prof.raw_mean > 0.0)) throw std::logic_error("build_majorant: majorant vanishes identically");
    std::vector<double> nu(N);
    for (std::uint64_t x = 0; x < N; ++x) nu[x] = prof.raw[x] / prof.raw_mean;
    prof.nu = spectral::ResidueSignal(std::move(nu));
    return prof;
}

double nu_hat_zero(const MajorantProfile& profile) {
    long double total = 0;
    for (double v : profile.nu.values()) total += v;
    return static_cast<double>(total / static_cast<long double>(profile.nu.modulus()));
}

Lemma1Report lemma1_from_profiles(const std::vector<std::pair<wtrick::WContext, std::vector<MajorantProfile>>>& grid) {
    Lemma1Report rep;
    std::vector<double> xs, ys;
    for (const auto& [ctx, profiles] : grid) {
        Lemma1Row row;
        row.t = ctx.t;
        row.N = ctx.N;
        row.nu_hat_zero = 1.0;
        for (const auto& prof : profiles) {
            row.R = prof.R;
            const double zero = nu_hat_zero(prof);
            if (std::abs(zero - 1.0) > std::abs(row.nu_hat_zero - 1.0)) row.nu_hat_zero = zero;
            // Without sieving primes nu is identically 1 and its nonzero
            // coefficients vanish exactly.
            if (!prof.weights.sieving_primes.empty())
                row.sup_nonzero = std::max(row.sup_nonzero, spectral::sup_nonzero_frequency(prof.nu));
            row.series_over_log2_t = prof.series.over_log2_t;
        }
        if (!std::isfinite(row.sup_nonzero)) rep.all_finite = false;
        if (std::abs(row.nu_hat_zero - 1.0) > 1e-12) rep.normalized = false;
        if (row.sup_nonzero > 0.0) {
            xs.push_back(std::log(static_cast<double>(row.t)));
            ys.push_back(std::log(row.sup_nonzero));
        }
        rep.rows.push_back(row);
    }
    if (xs.size() < 2) {
        rep.fitted_exponent = std::numeric_limits<double>::quiet_NaN();
    } else {
        const double n = static_cast<double>(xs.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sx += xs[i];
            sy += ys[i];
            sxx += xs[i] * xs[i];
            sxy += xs[i] * ys[i];
        }
        const double den = n * sxx - sx * sx;
        rep.fitted_exponent = den != 0.0 ? (n * sxy - sx * sy) / den : std::numeric_limits<double>::quiet_NaN();
    }
    return rep;
}

Lemma1Report lemma1_diagnostic(std::span<const std::uint64_t> t_grid, std::uint64_t n,
                               std::optional<std::uint64_t> fixed_R) {
    std::vector<std::pair<wtrick::WContext, std::vector<MajorantProfile>>> grid;
    for (auto t : t_grid) {
        auto ctx = wtrick::build_context(t, n);
        std::vector<MajorantProfile> profiles;
        for (auto b : ctx.phi_set) profiles.push_back(build_majorant(b, ctx, fixed_R));
        grid.emplace_back(std::move(ctx), std::move(profiles));
    }
    return lemma1_from_profiles(grid);
}

double lemma2_ratio(const MajorantProfile& profile, std::span<const spectral::Complex> a, double q) {
    if (!(q > 2.0)) throw std::domain_error("lemma2: q must exceed 2");
    const auto nu = profile.nu.values();
    if (a.size() != nu.size()) throw std::invalid_argument("lemma2: weight sequence length differs from N");
    std::vector<spectral::Complex> weighted(nu.size());
    double denom = 0.0;
    for (std::size_t x = 0; x < nu.size(); ++x) {
        weighted[x] = a[x] * nu[x];
        denom += std::norm(a[x]) * nu[x];
    }
    denom /= static_cast<double>(nu.size());
    if (denom <= 0.0) return 0.0;
    const auto spec = spectral::dft(std::span<const spectral::Complex>(weighted));
    return spectral::sum_norm(spec, q) / std::sqrt(denom);
}

Lemma2Report lemma2_diagnostic(const MajorantProfile& profile, double q, int trials, std::uint64_t seed) {
    if (!(q > 2.0)) throw std::domain_error("lemma2: q must exceed 2");
    Lemma2Report rep;
    rep.q = q;
    rep.trials = trials;
    rep.mean_nu = spectral::mean_norm(profile.nu.values(), 1.0);
    Rng rng(seed);
    const std::size_t N = profile.nu.modulus();
    std::vector<spectral::Complex> a(N);
    for (int trial = 0; trial < trials; ++trial) {
        for (auto& v : a) {
            const double r = std::sqrt(rng.uniform());
            const double th = 2.0 * std::numbers::pi * rng.uniform();
            v = std::polar(r, th);
        }
        rep.max_ratio = std::max(rep.max_ratio, lemma2_ratio(profile, a, q));
    }
    return rep;
}

}  // namespace chensum::majorant
