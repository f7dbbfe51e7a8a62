#include "chensum/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace chensum::decomposition {

using spectral::Complex;
using spectral::NormSide;
using spectral::ResidueSignal;

namespace {

constexpr double kSlack = 1e-9;

double min_nu_on(const wtrick::ResidueSlice& slice, const majorant::MajorantProfile& profile) {
    double m = std::numeric_limits<double>::infinity();
    for (auto x : slice.members_N) m = std::min(m, profile.nu[x]);
    return m;
}

}  // namespace

double log_factor(const wtrick::WContext& ctx) {
    const double ln = std::log(static_cast<double>(ctx.N));
    const double lt = std::log(static_cast<double>(ctx.t));
    return (ln * ln) / (lt * lt);
}

double global_calibration(std::span<const wtrick::ResidueSlice> slices,
                          std::span<const majorant::MajorantProfile> profiles, const wtrick::WContext& ctx,
                          double cap) {
    if (slices.size() != profiles.size()) throw std::invalid_argument("global_calibration: slice/profile count mismatch");
    const double L = log_factor(ctx);
    double c = cap;
    for (std::size_t i = 0; i < slices.size(); ++i) {
        if (slices[i].b != profiles[i].b) throw std::invalid_argument("global_calibration: residue mismatch");
        if (!slices[i].members_N.empty()) c = std::min(c, min_nu_on(slices[i], profiles[i]) / L);
    }
    return c;
}

WeightedSlice build_f(const wtrick::ResidueSlice& slice, const majorant::MajorantProfile& profile,
                      const wtrick::WContext& ctx, double cap) {
    if (slice.b != profile.b) throw std::invalid_argument("build_f: slice and profile disagree on b");
    if (profile.nu.modulus() != ctx.N) throw std::invalid_argument("build_f: profile modulus differs from N");
    const double L = log_factor(ctx);
    WeightedSlice out;
    if (slice.members_N.empty()) {
        out.c_calib = cap;
        out.height = cap * L;
        out.f = ResidueSignal::constant(ctx.N, 0.0);
        return out;
    }
    out.height = std::min(cap * L, min_nu_on(slice, profile));
    out.c_calib = out.height / L;
    out.f = ResidueSignal::indicator(ctx.N, slice.members_N, out.height);
    return out;
}

bool in_bohr(std::span<const std::uint64_t> spectrum, std::uint64_t x, std::uint64_t N, double epsilon) {
    const double bound = epsilon * epsilon + 1e-12;
    for (auto xi : spectrum) {
        const auto k = static_cast<std::uint64_t>(static_cast<unsigned __int128>(xi) * x % N);
        const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(N);
        if (2.0 - 2.0 * std::cos(a) > bound) return false;
    }
    return true;
}

SpectralDecomposition decompose(const ResidueSignal& f, double delta, double epsilon, double lambda, double c_calib) {
    if (!(delta > 0.0)) throw std::invalid_argument("decompose: delta must be positive");
    if (!(epsilon > 0.0 && epsilon <= 2.0)) throw std::invalid_argument("decompose: epsilon must lie in (0, 2]");
    if (!(lambda > 0.0 && lambda < 2.0)) throw std::invalid_argument("decompose: lambda must lie in (0, 2)");
    const std::size_t N = f.modulus();
    SpectralDecomposition d;
    d.f = f;
    d.c_calib = c_calib;
    d.delta = delta;
    d.epsilon = epsilon;
    d.lambda = lambda;

    const auto fh = f.fourier();
    for (std::size_t xi = 0; xi < N; ++xi)
        if (std::abs(fh[xi]) >= delta) d.spectrum.push_back(xi);
    for (std::size_t x = 0; x < N; ++x)
        if (in_bohr(d.spectrum, x, N, epsilon)) d.bohr.push_back(x);

    d.beta = ResidueSignal::indicator(N, d.bohr, static_cast<double>(N) / static_cast<double>(d.bohr.size()));
    const auto bh = d.beta.fourier();
    std::vector<Complex> f1h(N);
    for (std::size_t xi = 0; xi < N; ++xi) f1h[xi] = fh[xi] * bh[xi] * bh[xi];
    const auto back = spectral::inverse_dft(f1h);
    std::vector<double> f1(N), f2(N);
    for (std::size_t x = 0; x < N; ++x) {
        f1[x] = back[x].real();
        f2[x] = f[x] - f1[x];
    }
    d.f1 = ResidueSignal(std::move(f1));
    d.f2 = ResidueSignal(std::move(f2));
    return d;
}

Lemma3Report lemma3_check(const SpectralDecomposition& d, const ResidueSignal& nu) {
    if (nu.modulus() != d.modulus()) throw std::domain_error("lemma3_check: modulus mismatch");
    Lemma3Report r;
    const double q = 2.0 + d.lambda;
    r.f_l1 = spectral::norm(d.f, NormSide::Values, 1.0);
    r.f1_l1 = spectral::norm(d.f1, NormSide::Values, 1.0);
    r.nu_l1 = spectral::norm(nu, NormSide::Values, 1.0);
    r.l1_preserved = std::abs(r.f1_l1 - r.f_l1) <= kSlack * std::max(r.f_l1, 1e-300);
    r.l1_below_nu = r.f_l1 <= r.nu_l1 * (1.0 + kSlack);

    const auto fh = d.f.fourier();
    const auto f2h = d.f2.fourier();
    const double scale = spectral::sum_norm(fh, spectral::kInf);
    const double on_factor = 2.0 * d.epsilon + d.epsilon * d.epsilon;
    r.on_spectrum = r.off_spectrum = true;
    std::size_t next = 0;
    for (std::size_t xi = 0; xi < d.modulus(); ++xi) {
        const bool inside = next < d.spectrum.size() && d.spectrum[next] == xi;
        if (inside) ++next;
        const double lhs = std::abs(f2h[xi]);
        const double rhs = inside ? on_factor * std::abs(fh[xi]) : 2.0 * d.delta;
        const double ratio = rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? spectral::kInf : 0.0);
        const bool ok = lhs <= rhs + kSlack * std::max(rhs, scale);
        if (inside) {
            r.worst_on_spectrum = std::max(r.worst_on_spectrum, ratio);
            r.on_spectrum = r.on_spectrum && ok;
        } else {
            r.worst_off_spectrum = std::max(r.worst_off_spectrum, ratio);
            r.off_spectrum = r.off_spectrum && ok;
        }
    }

    r.f_hat_norm = spectral::norm(d.f, NormSide::Spectrum, q);
    r.f1_hat_norm = spectral::norm(d.f1, NormSide::Spectrum, q);
    r.f2_hat_norm = spectral::norm(d.f2, NormSide::Spectrum, q);
    r.f1_dominated = r.f1_hat_norm <= r.f_hat_norm * (1.0 + kSlack) + kSlack * scale;
    r.f2_dominated = r.f2_hat_norm <= 2.0 * r.f_hat_norm * (1.0 + kSlack) + kSlack * scale;
    r.f1_sup = spectral::norm(d.f1, NormSide::Values, spectral::kInf);
    r.bohr_measure = static_cast<double>(d.modulus()) / static_cast<double>(d.bohr.size());
    return r;
}

BohrBound bohr_size_bound(const SpectralDecomposition& d, double rho) {
    BohrBound b;
    b.bohr_size = d.bohr.size();
    b.spectrum_size = d.spectrum.size();
    const double base = d.epsilon / (2.0 * std::numbers::pi);
    b.pigeonhole_floor =
        std::floor(std::pow(base, static_cast<double>(b.spectrum_size)) * static_cast<double>(d.modulus())) * rho;
    b.pigeonhole = static_cast<double>(b.bohr_size) >= b.pigeonhole_floor;
    b.hard = b.spectrum_size <= 8;
    const double q = 2.0 + d.lambda;
    const double mass = std::pow(spectral::norm(d.f, NormSide::Spectrum, q), q);
    b.spectrum_cap = mass / std::pow(d.delta, q);
    b.spectrum_bound = static_cast<double>(b.spectrum_size) <= b.spectrum_cap * (1.0 + kSlack);
    return b;
}

}  // namespace chensum::decomposition
