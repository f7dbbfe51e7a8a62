// decomposition.hpp
// Split of the weighted slice indicator f into a structured part
// f1 = f * beta * beta, beta the normalized indicator of the Bohr set of the
// large spectrum, and a Fourier-small part f2 = f - f1.

#pragma once

#include "chensum/majorant.hpp"
#include "chensum/spectral.hpp"
#include "chensum/wtrick.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace chensum::decomposition {

// log^2 N / log^2 t
double log_factor(const wtrick::WContext& ctx);

// Smallest c with c * log_factor <= nu(x) over every member of every slice,
// capped at `cap`. Slices and profiles are matched by position.
double global_calibration(std::span<const wtrick::ResidueSlice> slices,
                          std::span<const majorant::MajorantProfile> profiles, const wtrick::WContext& ctx,
                          double cap = 1.0);

struct WeightedSlice {
    spectral::ResidueSignal f;
    double c_calib = 0.0;
    double height = 0.0;  // value of f on its support
};

// f = c * log_factor * 1_{A_N^(b)} with c = min(cap, min nu / log_factor);
// the height is taken directly as a minimum of nu, so f <= nu holds exactly.
WeightedSlice build_f(const wtrick::ResidueSlice& slice, const majorant::MajorantProfile& profile,
                      const wtrick::WContext& ctx, double cap = 1.0);

struct SpectralDecomposition {
    spectral::ResidueSignal f;
    double c_calib = 0.0;
    double delta = 0.0;
    double epsilon = 0.0;
    double lambda = 0.0;
    std::vector<std::uint64_t> spectrum;  // {xi : |f^(xi)| >= delta}, ascending
    std::vector<std::uint64_t> bohr;      // {x : sup_{xi in spectrum} |1 - e_N(xi x)| <= epsilon}
    spectral::ResidueSignal beta;         // (N / |bohr|) 1_bohr
    spectral::ResidueSignal f1;
    spectral::ResidueSignal f2;

    std::size_t modulus() const { return f.modulus(); }
};

// Requires delta > 0, 0 < epsilon <= 2, 0 < lambda < 2.
SpectralDecomposition decompose(const spectral::ResidueSignal& f, double delta, double epsilon, double lambda,
                                double c_calib = 0.0);

// Bohr membership test, shared with callers that need the exact rule:
// 2 - 2 cos(2 pi k / N) <= eps^2 + 1e-12 with k = xi x mod N.
bool in_bohr(std::span<const std::uint64_t> spectrum, std::uint64_t x, std::uint64_t N, double epsilon);

struct Lemma3Report {
    double f_l1 = 0, f1_l1 = 0, nu_l1 = 0;
    bool l1_preserved = false;    // (i) ||f1||_1 = ||f||_1
    bool l1_below_nu = false;     // (i) ||f||_1 <= ||nu||_1
    double worst_on_spectrum = 0;  // max |f2^| / ((2 eps + eps^2) |f^|)
    double worst_off_spectrum = 0; // max |f2^| / (2 delta)
    bool on_spectrum = false;     // (ii)
    bool off_spectrum = false;    // (ii)
    double f_hat_norm = 0, f1_hat_norm = 0, f2_hat_norm = 0;  // l^{2+lambda}
    bool f1_dominated = false;    // (iii)
    bool f2_dominated = false;    // (iii)
    double f1_sup = 0;            // (iv) ||f1||_inf
    double bohr_measure = 0;      // (iv) N / |B|

    bool pass() const {
        return l1_preserved && l1_below_nu && on_spectrum && off_spectrum && f1_dominated && f2_dominated;
    }
};

Lemma3Report lemma3_check(const SpectralDecomposition& d, const spectral::ResidueSignal& nu);

struct BohrBound {
    std::size_t bohr_size = 0;
    std::size_t spectrum_size = 0;
    double pigeonhole_floor = 0;  // floor((eps / 2 pi)^|R| N) * rho
    bool pigeonhole = false;      // |B| >= pigeonhole_floor
    bool hard = false;            // |R| <= 8: a pigeonhole failure counts
    double spectrum_cap = 0;      // ||f^||_{2+lambda}^{2+lambda} / delta^{2+lambda}
    bool spectrum_bound = false;  // |R| <= spectrum_cap

    bool ok() const { return spectrum_bound && (pigeonhole || !hard); }
};

BohrBound bohr_size_bound(const SpectralDecomposition& d, double rho = 0.5);

}  // namespace chensum::decomposition
