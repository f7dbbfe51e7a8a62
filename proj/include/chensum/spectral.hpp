// spectral.hpp
// Fourier analysis on Z_N with the averaged convention used throughout:
//
//   forward   f^(xi) = E_{x in Z_N} f(x) e_N(-xi x)      (divides by N)
//   inverse   f(x)   = sum_{xi in Z_N} f^(xi) e_N(xi x)   (no division)
//   f * g(x)         = E_{y} f(x - y) g(y),   so (f * g)^ = f^ . g^
//
//   L^q norms average over x, l^q norms sum over xi; Plancherel reads
//   ||f||_{L^2} = ||f^||_{l^2}.
//
// Every lemma check in the project depends on this normalization.
//
// Power-of-two lengths use an iterative radix-2 FFT, every other length a
// chirp-Z (Bluestein) reduction to a power of two >= 2N - 1. The direct
// O(N^2) sum is kept as a reference path.

#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

namespace chensum::spectral {

using Complex = std::complex<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class DftMethod { Auto, Direct, ChirpZ };

std::vector<Complex> dft(std::span<const Complex> values, DftMethod method = DftMethod::Auto);
std::vector<Complex> dft(std::span<const double> values, DftMethod method = DftMethod::Auto);
std::vector<Complex> inverse_dft(std::span<const Complex> spectrum, DftMethod method = DftMethod::Auto);

// Unnormalized in-place radix-2 transform; size must be a power of two.
// sign = -1 computes sum_x a(x) exp(-2 pi i k x / M).
void fft_pow2(std::vector<Complex>& a, int sign);

// Real-valued function on Z_N with a lazily computed, shared spectrum.
// Values never change after construction; with_value() returns a new
// signal, so a cached spectrum is never stale.
class ResidueSignal {
public:
    ResidueSignal() : ResidueSignal(std::vector<double>{}) {}
    explicit ResidueSignal(std::vector<double> values);

    static ResidueSignal constant(std::size_t N, double c) { return ResidueSignal(std::vector<double>(N, c)); }
    static ResidueSignal indicator(std::size_t N, std::span<const std::uint64_t> support, double height = 1.0);

    std::size_t modulus() const { return state_->values.size(); }
    std::span<const double> values() const { return state_->values; }
    double operator[](std::size_t x) const { return state_->values[x]; }

    std::span<const Complex> fourier() const;

    ResidueSignal with_value(std::size_t x, double v) const;

private:
    struct State {
        std::vector<double> values;
        mutable std::once_flag once;
        mutable std::vector<Complex> spectrum;
    };
    std::shared_ptr<const State> state_;
};

// Throws std::domain_error when the moduli differ.
ResidueSignal convolve(const ResidueSignal& f, const ResidueSignal& g);

// Pointwise product (used by Hölder checks).
ResidueSignal multiply(const ResidueSignal& f, const ResidueSignal& g);

enum class NormSide {
    Values,    // L^q: (E_x |f(x)|^q)^(1/q)
    Spectrum,  // l^q: (sum_xi |f^(xi)|^q)^(1/q)
};

// q in [1, inf]; q = kInf is the supremum. q < 1 throws std::domain_error.
double norm(const ResidueSignal& f, NormSide side, double q);
double mean_norm(std::span<const double> values, double q);
double sum_norm(std::span<const Complex> spectrum, double q);

// sup_{xi != 0} |f^(xi)|.
double sup_nonzero_frequency(const ResidueSignal& f);

struct SelftestRow {
    std::string check;
    std::size_t N = 0;
    double worst = 0.0;  // worst relative error or worst lhs/rhs ratio
    bool pass = false;
};

// Random-signal checks of the transform identities and inequalities.
std::vector<SelftestRow> selftest(std::uint64_t seed, std::span<const std::size_t> moduli, int trials);

}  // namespace chensum::spectral
