#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "opnet/common.hpp"

namespace opnet {

/// Truncated Fourier series on [-pi, pi)^d, d in {1, 2}, with an optional
/// Bochner-Riesz damping exponent. Modes are the multi-indices |k| <= R.
class FourierExpansion {
public:
    struct Mode {
        int k1 = 0;
        int k2 = 0;
    };

    FourierExpansion(int dim, double radius, double gamma, std::vector<Mode> modes,
                     std::vector<std::complex<double>> coefficients);

    int dim() const { return dim_; }
    double radius() const { return radius_; }
    double gamma() const { return gamma_; }
    const std::vector<Mode>& modes() const { return modes_; }
    const std::vector<std::complex<double>>& coefficients() const { return coeffs_; }

    double evaluate(double x) const;
    double evaluate(double x, double y) const;

    /// Max |c_k - conj(c_{-k})| over mode pairs; zero for a real function.
    double conjugate_symmetry_defect() const;

private:
    int dim_;
    double radius_;
    double gamma_;
    std::vector<Mode> modes_;
    std::vector<std::complex<double>> coeffs_;
};

/// DFT with a radix-2 fast path and a plain O(n^2) fallback. sign = -1 for
/// the forward transform (no normalization applied).
std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& in, int sign);

/// Fourier coefficients of a callable on [-pi, pi) by equispaced sampling
/// with 4*ceil(R) points per axis (Nyquist margin 2x against aliasing).
FourierExpansion fourier_from_samples(const std::function<double(double)>& f, double R);
FourierExpansion fourier_from_samples(const std::function<double(double, double)>& f, double R);

/// Bochner-Riesz means: coefficients scaled by (1 - |k|^2/R^2)^gamma for
/// |k| <= R, dropped otherwise. Throws ParameterError for R <= 0 or gamma < 0.
FourierExpansion bochner_riesz(const FourierExpansion& f, double R, double gamma);
FourierExpansion bochner_riesz(const std::function<double(double)>& f, double R, double gamma);

enum class LqNorm { L2, LInf };

/// Sampled estimates of the first/second-order moduli of continuity on
/// [a, b]: sup over a deterministic lattice of 64 shifts in (0, t] of
/// ||f(.+h) - f||_q resp. ||f(.+h) + f(.-h) - 2 f||_q. The lattice makes the
/// estimate a reproducible lower bound on the true sup. When not periodic,
/// the x-range shrinks so every argument stays inside [a, b].
double modulus_omega1(const std::function<double(double)>& f, double t, LqNorm q,
                      int sample_count = 2048, double a = -kPi, double b = kPi,
                      bool periodic = true, int shift_count = 64);
double modulus_omega2(const std::function<double(double)>& f, double t, LqNorm q,
                      int sample_count = 2048, double a = -kPi, double b = kPi,
                      bool periodic = true, int shift_count = 64);

}  // namespace opnet
