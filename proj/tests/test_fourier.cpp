#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "opnet/fourier.hpp"
#include "opnet/quadrature.hpp"

using namespace opnet;

namespace {

// independent oracle: coefficients by 4096-point trapezoid, partial sum
// evaluated directly, L2 error by the same dense lattice
double partial_sum_l2_error(const std::function<double(double)>& f, double R, double gamma) {
    const int n = 4096;
    const int kmax = static_cast<int>(std::floor(R));
    std::vector<std::complex<double>> coeff(2 * kmax + 1);
    for (int k = -kmax; k <= kmax; ++k) {
        std::complex<double> acc(0.0, 0.0);
        for (int j = 0; j < n; ++j) {
            const double x = -kPi + kTwoPi * j / n;
            acc += f(x) * std::complex<double>(std::cos(-k * x), std::sin(-k * x));
        }
        coeff[static_cast<std::size_t>(k + kmax)] = acc / static_cast<double>(n);
    }
    double sq = 0.0;
    for (int j = 0; j < n; ++j) {
        const double x = -kPi + kTwoPi * j / n;
        std::complex<double> s(0.0, 0.0);
        for (int k = -kmax; k <= kmax; ++k) {
            const double factor =
                (gamma == 0.0) ? 1.0 : std::pow(std::max(0.0, 1.0 - k * k / (R * R)), gamma);
            s += coeff[static_cast<std::size_t>(k + kmax)] * factor *
                 std::complex<double>(std::cos(k * x), std::sin(k * x));
        }
        const double d = f(x) - s.real();
        sq += d * d;
    }
    return std::sqrt(sq * kTwoPi / n);
}

}  // namespace

TEST_SUITE("fourier") {

TEST_CASE("single mode passes through untouched at gamma 0") {
    std::vector<FourierExpansion::Mode> modes = {{3, 0}};
    std::vector<std::complex<double>> coeffs = {{1.0, 0.0}};
    FourierExpansion f(1, 5.0, 0.0, modes, coeffs);
    auto g0 = bochner_riesz(f, 5.0, 0.0);
    CHECK(std::abs(g0.coefficients()[0] - coeffs[0]) <= 1e-15);
    auto g1 = bochner_riesz(f, 5.0, 1.0);
    CHECK(g1.coefficients()[0].real() == doctest::Approx(0.64).epsilon(1e-14));
}

TEST_CASE("sampled construction recovers cosine coefficients") {
    auto f = [](double x) { return std::cos(3.0 * x); };
    auto exp = fourier_from_samples(f, 8.0);
    for (std::size_t i = 0; i < exp.modes().size(); ++i) {
        const int k = exp.modes()[i].k1;
        const double want = (k == 3 || k == -3) ? 0.5 : 0.0;
        CHECK(std::abs(exp.coefficients()[i].real() - want) <= 1e-12);
        CHECK(std::abs(exp.coefficients()[i].imag()) <= 1e-12);
    }
    CHECK(exp.conjugate_symmetry_defect() <= 1e-12);
}

TEST_CASE("gamma-0 projection is idempotent") {
    auto f = [](double x) { return std::abs(std::sin(x)); };
    auto once = bochner_riesz(fourier_from_samples(f, 9.0), 9.0, 0.0);
    auto twice = bochner_riesz(once, 9.0, 0.0);
    REQUIRE(once.coefficients().size() == twice.coefficients().size());
    for (std::size_t i = 0; i < once.coefficients().size(); ++i) {
        CHECK(std::abs(once.coefficients()[i] - twice.coefficients()[i]) <= 1e-14);
    }
}

TEST_CASE("parameter validation") {
    auto f = [](double x) { return std::sin(x); };
    CHECK_THROWS_AS(bochner_riesz(f, -1.0, 0.0), ParameterError);
    CHECK_THROWS_AS(bochner_riesz(f, 4.0, -0.5), ParameterError);
}

TEST_CASE("|sin| errors decrease in R and match the partial-sum oracle") {
    auto f = [](double x) { return std::abs(std::sin(x)); };
    double prev = 1e9;
    for (double R : {8.0, 16.0, 32.0}) {
        auto mean = bochner_riesz(f, R, 1.0);
        const double err =
            l2_error(f, [&](double x) { return mean.evaluate(x); }, -kPi, kPi, 512, 8);
        const double oracle = partial_sum_l2_error(f, R, 1.0);
        CHECK(err < prev);
        CHECK(err == doctest::Approx(oracle).epsilon(0.05));
        prev = err;
    }
}

TEST_CASE("radix-2 and direct DFT agree") {
    std::vector<std::complex<double>> in;
    for (int j = 0; j < 12; ++j) in.emplace_back(std::sin(0.7 * j), std::cos(1.3 * j));
    auto direct = dft(in, -1);  // n = 12 takes the O(n^2) path
    in.resize(16, {0.0, 0.0});
    auto fast = dft(in, -1);  // n = 16 takes the radix-2 path
    // compare against a hand-rolled sum for both sizes
    for (std::size_t n : {static_cast<std::size_t>(12), static_cast<std::size_t>(16)}) {
        const auto& out = (n == 12) ? direct : fast;
        for (std::size_t k = 0; k < n; ++k) {
            std::complex<double> want(0.0, 0.0);
            for (std::size_t j = 0; j < n; ++j) {
                const double ang = -kTwoPi * static_cast<double>(k * j) / static_cast<double>(n);
                const std::complex<double> x = (j < 12) ? in[j] : std::complex<double>(0.0, 0.0);
                want += x * std::complex<double>(std::cos(ang), std::sin(ang));
            }
            CHECK(std::abs(out[k] - want) <= 1e-10);
        }
    }
}

TEST_CASE("moduli of continuity") {
    auto sine = [](double x) { return std::sin(x); };
    CHECK(modulus_omega2(sine, 0.0, LqNorm::LInf) == 0.0);
    // omega_2 <= t^2 ||f''|| for smooth f
    CHECK(modulus_omega2(sine, 0.1, LqNorm::LInf) <= 0.01);
    CHECK(modulus_omega1(sine, 0.1, LqNorm::LInf) <= 0.1 + 1e-12);

    // |x| on [-1,1]: the kink at 0 gives exactly 2h, attained at x=0, h=t
    auto vee = [](double x) { return std::abs(x); };
    const double w = modulus_omega2(vee, 0.1, LqNorm::LInf, 2001, -1.0, 1.0, false);
    CHECK(w == doctest::Approx(0.2).epsilon(1e-9));
}

}  // TEST_SUITE
