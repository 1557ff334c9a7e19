#include "opnet/fourier.hpp"

#include <algorithm>
#include <cmath>

namespace opnet {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fft_radix2(std::vector<std::complex<double>>& a, int sign) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * kTwoPi / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const auto u = a[i + j];
                const auto v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

double br_factor(double k2, double R, double gamma) {
    const double r = 1.0 - k2 / (R * R);
    if (gamma == 0.0) return 1.0;
    if (r <= 0.0) return 0.0;
    return std::pow(r, gamma);
}

int sample_count_for(double R) { return 4 * static_cast<int>(std::ceil(R)); }

}  // namespace

FourierExpansion::FourierExpansion(int dim, double radius, double gamma, std::vector<Mode> modes,
                                   std::vector<std::complex<double>> coefficients)
    : dim_(dim), radius_(radius), gamma_(gamma), modes_(std::move(modes)),
      coeffs_(std::move(coefficients)) {
    if (dim_ != 1 && dim_ != 2) throw ParameterError("FourierExpansion: dim must be 1 or 2");
    if (modes_.size() != coeffs_.size()) {
        throw InputError("FourierExpansion: mode/coefficient count mismatch");
    }
}

double FourierExpansion::evaluate(double x) const {
    if (dim_ != 1) throw InputError("FourierExpansion: 1D evaluation of a 2D expansion");
    std::complex<double> s(0.0, 0.0);
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        const double phase = modes_[i].k1 * x;
        s += coeffs_[i] * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return s.real();
}

double FourierExpansion::evaluate(double x, double y) const {
    if (dim_ != 2) throw InputError("FourierExpansion: 2D evaluation of a 1D expansion");
    std::complex<double> s(0.0, 0.0);
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        const double phase = modes_[i].k1 * x + modes_[i].k2 * y;
        s += coeffs_[i] * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return s.real();
}

double FourierExpansion::conjugate_symmetry_defect() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        for (std::size_t j = 0; j < modes_.size(); ++j) {
            if (modes_[j].k1 == -modes_[i].k1 && modes_[j].k2 == -modes_[i].k2) {
                worst = std::max(worst, std::abs(coeffs_[i] - std::conj(coeffs_[j])));
            }
        }
    }
    return worst;
}

std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& in, int sign) {
    if (is_pow2(in.size())) {
        auto out = in;
        fft_radix2(out, sign);
        return out;
    }
    const std::size_t n = in.size();
    std::vector<std::complex<double>> out(n, {0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> s(0.0, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            const double ang = sign * kTwoPi * static_cast<double>(k * j % n) / static_cast<double>(n);
            s += in[j] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        out[k] = s;
    }
    return out;
}

FourierExpansion fourier_from_samples(const std::function<double(double)>& f, double R) {
    if (R <= 0.0) throw ParameterError("fourier_from_samples: R must be positive");
    const int n = sample_count_for(R);
    std::vector<std::complex<double>> samples(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double x = -kPi + kTwoPi * j / n;
        samples[static_cast<std::size_t>(j)] = f(x);
    }
    auto freq = dft(samples, -1);
    const int kmax = static_cast<int>(std::floor(R));
    std::vector<FourierExpansion::Mode> modes;
    std::vector<std::complex<double>> coeffs;
    for (int k = -kmax; k <= kmax; ++k) {
        // samples start at -pi, the DFT assumes 0: shift by e^{i k pi}
        const int idx = (k % n + n) % n;
        const std::complex<double> shift(std::cos(k * kPi), std::sin(k * kPi));
        modes.push_back({k, 0});
        coeffs.push_back(freq[static_cast<std::size_t>(idx)] * shift / static_cast<double>(n));
    }
    return FourierExpansion(1, R, 0.0, std::move(modes), std::move(coeffs));
}

FourierExpansion fourier_from_samples(const std::function<double(double, double)>& f, double R) {
    if (R <= 0.0) throw ParameterError("fourier_from_samples: R must be positive");
    const int n = sample_count_for(R);
    // row-column transform over the n x n sample block
    std::vector<std::vector<std::complex<double>>> rows(static_cast<std::size_t>(n));
    for (int jx = 0; jx < n; ++jx) {
        std::vector<std::complex<double>> row(static_cast<std::size_t>(n));
        const double x = -kPi + kTwoPi * jx / n;
        for (int jy = 0; jy < n; ++jy) {
            const double y = -kPi + kTwoPi * jy / n;
            row[static_cast<std::size_t>(jy)] = f(x, y);
        }
        rows[static_cast<std::size_t>(jx)] = dft(row, -1);
    }
    std::vector<std::vector<std::complex<double>>> cols(static_cast<std::size_t>(n));
    for (int ky = 0; ky < n; ++ky) {
        std::vector<std::complex<double>> col(static_cast<std::size_t>(n));
        for (int jx = 0; jx < n; ++jx) {
            col[static_cast<std::size_t>(jx)] = rows[static_cast<std::size_t>(jx)][static_cast<std::size_t>(ky)];
        }
        cols[static_cast<std::size_t>(ky)] = dft(col, -1);
    }
    const int kmax = static_cast<int>(std::floor(R));
    std::vector<FourierExpansion::Mode> modes;
    std::vector<std::complex<double>> coeffs;
    for (int k1 = -kmax; k1 <= kmax; ++k1) {
        for (int k2 = -kmax; k2 <= kmax; ++k2) {
            if (k1 * k1 + k2 * k2 > R * R) continue;
            const int i1 = (k1 % n + n) % n;
            const int i2 = (k2 % n + n) % n;
            const std::complex<double> shift(std::cos((k1 + k2) * kPi), std::sin((k1 + k2) * kPi));
            modes.push_back({k1, k2});
            coeffs.push_back(cols[static_cast<std::size_t>(i2)][static_cast<std::size_t>(i1)] *
                             shift / static_cast<double>(n * n));
        }
    }
    return FourierExpansion(2, R, 0.0, std::move(modes), std::move(coeffs));
}

FourierExpansion bochner_riesz(const FourierExpansion& f, double R, double gamma) {
    if (R <= 0.0) throw ParameterError("bochner_riesz: R must be positive");
    if (gamma < 0.0) throw ParameterError("bochner_riesz: gamma must be nonnegative");
    std::vector<FourierExpansion::Mode> modes;
    std::vector<std::complex<double>> coeffs;
    for (std::size_t i = 0; i < f.modes().size(); ++i) {
        const auto& m = f.modes()[i];
        const double k2 = static_cast<double>(m.k1) * m.k1 + static_cast<double>(m.k2) * m.k2;
        if (k2 > R * R) continue;
        modes.push_back(m);
        coeffs.push_back(f.coefficients()[i] * br_factor(k2, R, gamma));
    }
    return FourierExpansion(f.dim(), R, gamma, std::move(modes), std::move(coeffs));
}

FourierExpansion bochner_riesz(const std::function<double(double)>& f, double R, double gamma) {
    return bochner_riesz(fourier_from_samples(f, R), R, gamma);
}

namespace {

double lattice_norm(const std::vector<double>& vals, LqNorm q, double cell) {
    if (q == LqNorm::LInf) {
        double m = 0.0;
        for (double v : vals) m = std::max(m, std::abs(v));
        return m;
    }
    std::vector<double> sq(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) sq[i] = vals[i] * vals[i];
    return std::sqrt(pairwise_sum(sq) * cell);
}

double modulus_impl(const std::function<double(double)>& f, double t, LqNorm q, int sample_count,
                    double a, double b, bool periodic, int shift_count, bool second_order) {
    if (t < 0.0) throw ParameterError("modulus: t must be nonnegative");
    if (t == 0.0) return 0.0;
    const double period = b - a;
    auto wrap = [&](double x) {
        double r = std::fmod(x - a, period);
        if (r < 0.0) r += period;
        return a + r;
    };
    double worst = 0.0;
    for (int s = 1; s <= shift_count; ++s) {
        const double h = t * static_cast<double>(s) / static_cast<double>(shift_count);
        double lo = a, hi = b;
        if (!periodic) {
            lo = a + (second_order ? h : 0.0);
            hi = b - h;
            if (hi <= lo) continue;
        }
        std::vector<double> vals(static_cast<std::size_t>(sample_count));
        const double cell = (hi - lo) / sample_count;
        for (int i = 0; i < sample_count; ++i) {
            const double x = lo + (static_cast<double>(i) + 0.5) * cell;
            double v;
            if (second_order) {
                const double xp = periodic ? wrap(x + h) : x + h;
                const double xm = periodic ? wrap(x - h) : x - h;
                v = f(xp) + f(xm) - 2.0 * f(x);
            } else {
                const double xp = periodic ? wrap(x + h) : x + h;
                v = f(xp) - f(x);
            }
            vals[static_cast<std::size_t>(i)] = v;
        }
        worst = std::max(worst, lattice_norm(vals, q, cell));
    }
    return worst;
}

}  // namespace

double modulus_omega1(const std::function<double(double)>& f, double t, LqNorm q, int sample_count,
                      double a, double b, bool periodic, int shift_count) {
    return modulus_impl(f, t, q, sample_count, a, b, periodic, shift_count, false);
}

double modulus_omega2(const std::function<double(double)>& f, double t, LqNorm q, int sample_count,
                      double a, double b, bool periodic, int shift_count) {
    return modulus_impl(f, t, q, sample_count, a, b, periodic, shift_count, true);
}

}  // namespace opnet
