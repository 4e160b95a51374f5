#include <cmath>
#include <stdexcept>

#include "alphacoh/fock.hpp"
#include "doctest.h"

using namespace alphacoh;

namespace {

// Poisson tail sum_{n > n_max} e^{-x} x^n / n!, long-double accumulation;
// independent of the amplitude recurrence in coherent_vector.
double poisson_tail(double x, int n_max) {
    long double term = std::exp((long double)(-x));
    long double cdf = term;
    for (int n = 1; n <= n_max; ++n) {
        term *= (long double)x / n;
        cdf += term;
    }
    return static_cast<double>(1.0L - cdf);
}

}  // namespace

TEST_SUITE("fock") {

TEST_CASE("coherent state amplitudes") {
    const FockVector vac = coherent_vector(CoherentLabel{0.0, 0.0}, 10);
    CHECK(vac.amplitude(0) == Complex{1.0, 0.0});
    for (int n = 1; n <= 10; ++n) CHECK(vac.amplitude(n) == Complex{0.0, 0.0});

    const FockVector one = coherent_vector(CoherentLabel{1.0, 0.0}, 40);
    CHECK(one.amplitude(0).real() == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
    CHECK(one.amplitudes().squaredNorm() == doctest::Approx(1.0).epsilon(1e-12));

    const FockVector twoi = coherent_vector(CoherentLabel{0.0, 2.0}, 60);
    CHECK(twoi.truncation_deficit() < 1e-12);
    CHECK(twoi.truncation_deficit() == doctest::Approx(poisson_tail(4.0, 60)).epsilon(1e-6));
}

TEST_CASE("coherent strict truncation guard") {
    CHECK_THROWS_AS(coherent_vector(CoherentLabel{6.0, 0.0}, 60), std::invalid_argument);
    CHECK_NOTHROW(coherent_vector(CoherentLabel{6.0, 0.0}, 60, /*strict=*/false));
    CHECK_THROWS_AS(coherent_vector(CoherentLabel{1.0, 0.0}, 0), std::invalid_argument);
}

TEST_CASE("overlaps against closed forms") {
    const FockVector a = coherent_vector(CoherentLabel{1.0, 0.0}, 60);
    CHECK(std::abs(overlap(a, a) - Complex{1.0, 0.0}) < 1e-12);

    const FockVector vac = coherent_vector(CoherentLabel{0.0, 0.0}, 60);
    CHECK(std::norm(overlap(vac, a)) == doctest::Approx(std::exp(-1.0)).epsilon(1e-10));

    const FockVector b = coherent_vector(CoherentLabel{-1.0, 0.0}, 60);
    CHECK(overlap(a, b).real() == doctest::Approx(std::exp(-2.0)).epsilon(1e-10));
    CHECK(std::abs(overlap(a, b).imag()) < 1e-14);

    const FockVector small = coherent_vector(CoherentLabel{1.0, 0.0}, 30);
    CHECK_THROWS_AS(overlap(a, small), std::invalid_argument);
}

TEST_CASE("Gaussian overlap law |<a|b>|^2 = exp(-|a-b|^2)") {
    const int n_max = 60;
    double worst = 0.0;
    for (double ax : {-3.0, -1.2, 0.0, 0.7, 2.5}) {
        for (double ay : {-2.0, 0.0, 1.5}) {
            for (double bx : {-2.5, 0.3, 3.0}) {
                for (double by : {-1.0, 0.0, 2.0}) {
                    const Complex za{ax, ay}, zb{bx, by};
                    const FockVector va = coherent_vector(CoherentLabel{za}, n_max);
                    const FockVector vb = coherent_vector(CoherentLabel{zb}, n_max);
                    const double got = std::norm(overlap(va, vb));
                    const double want = std::exp(-std::norm(za - zb));
                    worst = std::max(worst, std::abs(got - want));
                }
            }
        }
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("cat states") {
    const FockVector even0 = cat_state(CoherentLabel{0.0, 0.0}, Parity::even, 20);
    CHECK(fidelity(even0, fock_state(0, 20)) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(cat_state(CoherentLabel{0.0, 0.0}, Parity::odd, 20), std::invalid_argument);

    const FockVector odd_small = cat_state(CoherentLabel{0.01, 0.0}, Parity::odd, 40);
    CHECK(fidelity(odd_small, fock_state(1, 40)) > 0.9999);

    const FockVector even1 = cat_state(CoherentLabel{1.0, 0.0}, Parity::even, 40);
    for (int n = 1; n <= 40; n += 2) CHECK(even1.amplitude(n) == Complex{0.0, 0.0});
    const FockVector odd1 = cat_state(CoherentLabel{1.0, 0.0}, Parity::odd, 40);
    for (int n = 0; n <= 40; n += 2) CHECK(odd1.amplitude(n) == Complex{0.0, 0.0});

    // normalization (|a>+|-a>)/sqrt(2+2e^{-2|a|^2}): check against direct sum
    const CVector plus = coherent_vector(CoherentLabel{1.0, 0.0}, 40).amplitudes();
    const CVector minus = coherent_vector(CoherentLabel{-1.0, 0.0}, 40).amplitudes();
    const CVector direct = (plus + minus) / std::sqrt(2.0 + 2.0 * std::exp(-2.0));
    CHECK((even1.amplitudes() - direct).norm() < 1e-10);
}

TEST_CASE("fock states") {
    CHECK(fock_state(0, 10).amplitude(0) == Complex{1.0, 0.0});
    CHECK(mean_photon(fock_state(3, 10)) == doctest::Approx(3.0));
    CHECK_THROWS_AS(fock_state(11, 10), std::out_of_range);
    CHECK_THROWS_AS(fock_state(-1, 10), std::out_of_range);
}

TEST_CASE("squeezed vacuum") {
    const FockVector v0 = squeezed_vacuum(0.0, 0.0, 20);
    CHECK(fidelity(v0, fock_state(0, 20)) == doctest::Approx(1.0).epsilon(1e-12));

    const FockVector v1 = squeezed_vacuum(1.0, 0.0, 80);
    CHECK(mean_photon(v1) == doctest::Approx(std::sinh(1.0) * std::sinh(1.0)).epsilon(1e-6));

    const FockVector vh = squeezed_vacuum(0.5, 0.3, 60);
    for (int n = 1; n <= 60; n += 2) CHECK(vh.amplitude(n) == Complex{0.0, 0.0});

    CHECK_THROWS_AS(squeezed_vacuum(3.0, 0.0, 20), std::invalid_argument);
    CHECK_NOTHROW(squeezed_vacuum(3.0, 0.0, 20, /*strict=*/false));
    CHECK_THROWS_AS(squeezed_vacuum(-0.1, 0.0, 20), std::invalid_argument);
}

TEST_CASE("displacement operator") {
    const FockVector vac = fock_state(0, 60);
    const FockVector d1 = apply_displacement(vac, CoherentLabel{1.0, 0.0});
    CHECK(fidelity(d1, coherent_vector(CoherentLabel{1.0, 0.0}, 60)) >= 1.0 - 1e-8);

    const FockVector a = coherent_vector(CoherentLabel{0.5, 0.3}, 60);
    const FockVector shifted = apply_displacement(a, CoherentLabel{0.8, -0.2});
    CHECK(fidelity(shifted, coherent_vector(CoherentLabel{1.3, 0.1}, 60)) >= 1.0 - 1e-6);

    const FockVector one = fock_state(1, 60);
    CHECK(fidelity(apply_displacement(one, CoherentLabel{0.0, 0.0}), one) ==
          doctest::Approx(1.0).epsilon(1e-12));

    // headroom: output mean photon above n_max/2 is rejected
    const FockVector big = coherent_vector(CoherentLabel{4.0, 0.0}, 60, false);
    CHECK_THROWS_AS(apply_displacement(big, CoherentLabel{4.0, 0.0}), std::invalid_argument);
}

TEST_CASE("phase rotation") {
    const FockVector a = coherent_vector(CoherentLabel{1.0, 0.5}, 60);
    const FockVector rotated = apply_phase_rotation(a, M_PI / 3);
    const Complex expect = Complex{1.0, 0.5} * std::exp(Complex{0.0, M_PI / 3});
    CHECK(fidelity(rotated, coherent_vector(CoherentLabel{expect}, 60)) >= 1.0 - 1e-10);
}

TEST_CASE("mean photon numbers") {
    CHECK(mean_photon(fock_state(4, 12)) == doctest::Approx(4.0));
    CHECK(mean_photon(coherent_vector(CoherentLabel{1.5, 0.0}, 60)) ==
          doctest::Approx(2.25).epsilon(1e-8));

    // even cat: <n> = |a|^2 tanh(|a|^2); cross-check the closed form against a
    // direct Fock sum over independently built analytic amplitudes
    const FockVector cat = cat_state(CoherentLabel{1.0, 0.0}, Parity::even, 60);
    CHECK(mean_photon(cat) == doctest::Approx(std::tanh(1.0)).epsilon(1e-6));
    long double wsum = 0.0L, nsum = 0.0L, fact = 1.0L;
    for (int n = 0; n <= 60; ++n) {
        if (n > 0) fact *= n;
        if (n % 2 == 0) {
            const long double w = std::exp((long double)(-1.0)) / fact;  // |a|^{2n}/n! e^{-|a|^2}
            wsum += w;
            nsum += n * w;
        }
    }
    CHECK(mean_photon(cat) == doctest::Approx(static_cast<double>(nsum / wsum)).epsilon(1e-10));
}

TEST_CASE("FockVector and FockDensity invariants") {
    CVector tooshort(1);
    tooshort << Complex{1.0, 0.0};
    CHECK_THROWS_AS((void)FockVector{tooshort}, std::invalid_argument);
    CHECK_THROWS_AS((void)FockVector{CVector::Zero(5)}, std::invalid_argument);

    const FockVector psi = cat_state(CoherentLabel{1.5, 0.0}, Parity::even, 40);
    const FockDensity rho = FockDensity::pure(psi);
    CHECK(rho.matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-12));

    CMatrix bad = rho.matrix();
    bad(0, 1) += Complex{0.1, 0.0};  // breaks hermiticity
    CHECK_THROWS_AS(FockDensity{bad}, std::invalid_argument);

    CMatrix scaled = rho.matrix() * 1.5;
    CHECK_THROWS_AS(FockDensity{scaled}, std::invalid_argument);

    const FockDensity mix = FockDensity::classical_mixture(
        {{0.5, CoherentLabel{1.0, 0.0}}, {0.5, CoherentLabel{-1.0, 0.0}}}, 40);
    CHECK(mix.matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-10));
}

}  // TEST_SUITE
