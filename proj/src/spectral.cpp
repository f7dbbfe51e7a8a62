#include "chensum/spectral.hpp"
#include "chensum/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace chensum::spectral {

namespace {

bool is_pow2(std::size_t n) { return n && (n & (n - 1)) == 0; }

std::size_t ceil_pow2(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

// exp(sign * 2 pi i j / n) for j in [0, n), each entry evaluated directly.
std::vector<Complex> unit_roots(std::size_t n, int sign) {
    std::vector<Complex> w(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double a = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
        w[j] = {std::cos(a), sign * std::sin(a)};
    }
    return w;
}

std::vector<Complex> direct_sum(std::span<const Complex> in, int sign) {
    const std::size_t n = in.size();
    const auto w = unit_roots(n, sign);
    std::vector<Complex> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        Complex acc = 0;
        std::size_t idx = 0;
        for (std::size_t x = 0; x < n; ++x) {
            acc += in[x] * w[idx];
            idx += k;
            if (idx >= n) idx -= n;
        }
        out[k] = acc;
    }
    return out;
}

std::vector<Complex> chirp_z(std::span<const Complex> in, int sign) {
    const std::size_t n = in.size();
    const std::size_t m = ceil_pow2(2 * n - 1);
    // chirp[k] = exp(sign * pi i k^2 / n), with k^2 reduced mod 2n.
    std::vector<Complex> chirp(n);
    const std::uint64_t two_n = 2 * static_cast<std::uint64_t>(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::uint64_t kk = static_cast<std::uint64_t>(k) * k % two_n;
        const double a = std::numbers::pi * static_cast<double>(kk) / static_cast<double>(n);
        chirp[k] = {std::cos(a), sign * std::sin(a)};
    }
    std::vector<Complex> a(m, 0.0), b(m, 0.0);
    for (std::size_t k = 0; k < n; ++k) a[k] = in[k] * chirp[k];
    b[0] = std::conj(chirp[0]);
    for (std::size_t k = 1; k < n; ++k) b[k] = b[m - k] = std::conj(chirp[k]);
    fft_pow2(a, -1);
    fft_pow2(b, -1);
    for (std::size_t i = 0; i < m; ++i) a[i] *= b[i];
    fft_pow2(a, +1);
    std::vector<Complex> out(n);
    const double inv_m = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * inv_m * chirp[k];
    return out;
}

std::vector<Complex> transform(std::span<const Complex> in, int sign, DftMethod method) {
    const std::size_t n = in.size();
    if (n == 0) return {};
    if (method == DftMethod::Direct) return direct_sum(in, sign);
    if (method == DftMethod::Auto && is_pow2(n)) {
        std::vector<Complex> a(in.begin(), in.end());
        fft_pow2(a, sign);
        return a;
    }
    if (n == 1) return {in[0]};
    return chirp_z(in, sign);
}

}  // namespace

void fft_pow2(std::vector<Complex>& a, int sign) {
    const std::size_t n = a.size();
    if (!is_pow2(n)) throw std::invalid_argument("fft_pow2: length must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const auto w = unit_roots(n, sign);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        const std::size_t half = len >> 1;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < half; ++j) {
                const Complex u = a[i + j];
                const Complex v = a[i + j + half] * w[j * stride];
                a[i + j] = u + v;
                a[i + j + half] = u - v;
            }
        }
    }
}

std::vector<Complex> dft(std::span<const Complex> values, DftMethod method) {
    auto out = transform(values, -1, method);
    const double inv_n = 1.0 / static_cast<double>(values.size());
    for (auto& c : out) c *= inv_n;
    return out;
}

std::vector<Complex> dft(std::span<const double> values, DftMethod method) {
    std::vector<Complex> c(values.begin(), values.end());
    return dft(std::span<const Complex>(c), method);
}

std::vector<Complex> inverse_dft(std::span<const Complex> spectrum, DftMethod method) {
    return transform(spectrum, +1, method);
}

ResidueSignal::ResidueSignal(std::vector<double> values) {
    auto s = std::make_shared<State>();
    s->values = std::move(values);
    state_ = std::move(s);
}

ResidueSignal ResidueSignal::indicator(std::size_t N, std::span<const std::uint64_t> support, double height) {
    std::vector<double> v(N, 0.0);
    for (auto x : support) {
        if (x >= N) throw std::out_of_range("indicator: support point outside Z_N");
        v[x] = height;
    }
    return ResidueSignal(std::move(v));
}

std::span<const Complex> ResidueSignal::fourier() const {
    std::call_once(state_->once, [s = state_.get()] { s->spectrum = dft(std::span<const double>(s->values)); });
    return state_->spectrum;
}

ResidueSignal ResidueSignal::with_value(std::size_t x, double v) const {
    std::vector<double> copy = state_->values;
    copy.at(x) = v;
    return ResidueSignal(std::move(copy));
}

ResidueSignal convolve(const ResidueSignal& f, const ResidueSignal& g) {
    if (f.modulus() != g.modulus())
        throw std::domain_error("convolve: modulus mismatch (" + std::to_string(f.modulus()) + " vs " +
                                std::to_string(g.modulus()) + ")");
    const auto fh = f.fourier();
    const auto gh = g.fourier();
    std::vector<Complex> prod(fh.size());
    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = fh[i] * gh[i];
    const auto back = inverse_dft(prod);
    std::vector<double> v(back.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = back[i].real();
    return ResidueSignal(std::move(v));
}

ResidueSignal multiply(const ResidueSignal& f, const ResidueSignal& g) {
    if (f.modulus() != g.modulus()) throw std::domain_error("multiply: modulus mismatch");
    std::vector<double> v(f.modulus());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f[i] * g[i];
    return ResidueSignal(std::move(v));
}

double mean_norm(std::span<const double> values, double q) {
    if (!(q >= 1.0)) throw std::domain_error("norm: q must be at least 1");
    if (values.empty()) return 0.0;
    if (std::isinf(q)) {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }
    double acc = 0.0;
    for (double v : values) acc += std::pow(std::abs(v), q);
    return std::pow(acc / static_cast<double>(values.size()), 1.0 / q);
}

double sum_norm(std::span<const Complex> spectrum, double q) {
    if (!(q >= 1.0)) throw std::domain_error("norm: q must be at least 1");
    if (std::isinf(q)) {
        double m = 0.0;
        for (const auto& c : spectrum) m = std::max(m, std::abs(c));
        return m;
    }
    double acc = 0.0;
    for (const auto& c : spectrum) acc += std::pow(std::abs(c), q);
    return std::pow(acc, 1.0 / q);
}

double norm(const ResidueSignal& f, NormSide side, double q) {
    return side == NormSide::Values ? mean_norm(f.values(), q) : sum_norm(f.fourier(), q);
}

double sup_nonzero_frequency(const ResidueSignal& f) {
    const auto s = f.fourier();
    double m = 0.0;
    for (std::size_t i = 1; i < s.size(); ++i) m = std::max(m, std::abs(s[i]));
    return m;
}

namespace {

double rel_err(double a, double b) { return std::abs(a - b) / std::max(1e-300, std::max(std::abs(a), std::abs(b))); }

// Ratio lhs / rhs for an inequality lhs <= rhs (0 when both vanish).
double ineq_ratio(double lhs, double rhs) {
    if (rhs <= 0.0) return lhs <= 0.0 ? 0.0 : kInf;
    return lhs / rhs;
}

}  // namespace

std::vector<SelftestRow> selftest(std::uint64_t seed, std::span<const std::size_t> moduli, int trials) {
    constexpr double kTol = 1e-9;
    Rng rng(seed);
    std::vector<SelftestRow> rows;
    for (std::size_t N : moduli) {
        double plancherel = 0, roundtrip = 0, convolution = 0, direct = 0;
        double hy = 0, young = 0, holder = 0;
        for (int trial = 0; trial < trials; ++trial) {
            std::vector<double> fv(N), gv(N);
            for (auto& v : fv) v = rng.uniform();
            for (auto& v : gv) v = rng.uniform();
            ResidueSignal f(fv), g(gv);

            plancherel = std::max(plancherel, rel_err(norm(f, NormSide::Values, 2), norm(f, NormSide::Spectrum, 2)));

            const auto back = inverse_dft(f.fourier());
            double num = 0, den = 0;
            for (std::size_t x = 0; x < N; ++x) {
                num = std::max(num, std::abs(back[x] - fv[x]));
                den = std::max(den, std::abs(fv[x]));
            }
            roundtrip = std::max(roundtrip, num / den);

            const auto h = convolve(f, g);
            const auto hh = h.fourier();
            double scale = 0, err = 0;
            for (std::size_t i = 0; i < N; ++i) {
                const Complex expect = f.fourier()[i] * g.fourier()[i];
                scale = std::max(scale, std::abs(expect));
                err = std::max(err, std::abs(hh[i] - expect));
            }
            convolution = std::max(convolution, err / scale);

            if (N <= 4096) {
                const auto d = dft(fv, DftMethod::Direct);
                const auto c = dft(fv, DftMethod::ChirpZ);
                double e = 0, s = 0;
                for (std::size_t i = 0; i < N; ++i) {
                    e = std::max(e, std::abs(d[i] - c[i]));
                    s = std::max(s, std::abs(d[i]));
                }
                direct = std::max(direct, e / s);
            }

            for (double q : {1.0, 1.5, 2.0}) {
                const double qp = q == 1.0 ? kInf : q / (q - 1.0);
                hy = std::max(hy, ineq_ratio(norm(f, NormSide::Spectrum, qp), norm(f, NormSide::Values, q)));
            }
            // Young: 1/q + 1/q' = 1/r + 1 with (q, q', r) = (1.5, 1.5, 3) and (1, 2, 2).
            young = std::max(young, ineq_ratio(norm(h, NormSide::Values, 3.0),
                                               norm(f, NormSide::Values, 1.5) * norm(g, NormSide::Values, 1.5)));
            young = std::max(young, ineq_ratio(norm(h, NormSide::Values, 2.0),
                                               norm(f, NormSide::Values, 1.0) * norm(g, NormSide::Values, 2.0)));
            // Hölder: 1/q + 1/q' = 1/r with (q, q', r) = (4, 4, 2).
            const auto fg = multiply(f, g);
            holder = std::max(holder, ineq_ratio(norm(fg, NormSide::Values, 2.0),
                                                 norm(f, NormSide::Values, 4.0) * norm(g, NormSide::Values, 4.0)));
        }
        rows.push_back({"plancherel", N, plancherel, plancherel <= kTol});
        rows.push_back({"inversion", N, roundtrip, roundtrip <= kTol});
        rows.push_back({"convolution_identity", N, convolution, convolution <= kTol});
        if (N <= 4096) rows.push_back({"chirpz_vs_direct", N, direct, direct <= kTol});
        rows.push_back({"hausdorff_young", N, hy, hy <= 1.0 + kTol});
        rows.push_back({"young", N, young, young <= 1.0 + kTol});
        rows.push_back({"holder", N, holder, holder <= 1.0 + kTol});
    }
    return rows;
}

}  // namespace chensum::spectral
