#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "phasor/errors.hpp"
#include "phasor/fhrr.hpp"
#include "phasor/phase.hpp"
#include "phasor/vocabulary.hpp"
#include "support.hpp"

using namespace phasor;
using std::numbers::pi;

namespace {

PhasorVector uniform(std::size_t n, double phase) { return PhasorVector::constant(n, phase); }

double centered_distance(const PhasorVector &u, const PhasorVector &v)
{
    double worst = 0.0;
    for (std::size_t k = 0; k < u.dim(); ++k) {
        worst = std::max(worst, std::abs(center_phase(u[k] - v[k])));
    }
    return worst;
}

} // namespace

TEST_CASE("phases are canonicalized into [0, 2pi)")
{
    const PhasorVector v{-pi / 2, 2 * pi, 5 * pi};
    CHECK(v[0] == doctest::Approx(3 * pi / 2));
    CHECK(v[1] == 0.0);
    CHECK(v[2] == doctest::Approx(pi));
    CHECK_THROWS_AS(PhasorVector(std::vector<double>{}), ValidationError);
    CHECK_THROWS_AS(PhasorVector({std::nan("")}), ValidationError);
}

TEST_CASE("random_vector is deterministic and in range")
{
    CHECK(random_vector(100, 7) == random_vector(100, 7));
    const auto one = random_vector(1, 3);
    REQUIRE(one.dim() == 1);
    CHECK(one[0] >= 0.0);
    CHECK(one[0] < kTwoPi);
    CHECK_THROWS_AS(random_vector(0, 1), ValidationError);
}

TEST_CASE("random vectors from different seeds are nearly orthogonal")
{
    // 3/sqrt(N) bound, checked over 1000 seed pairs.
    for (std::uint64_t s = 0; s < 1000; ++s) {
        CHECK(std::abs(similarity(random_vector(100, 2 * s + 1), random_vector(100, 2 * s + 2))) < 0.3);
    }
}

TEST_CASE("bind adds phases modulo 2pi")
{
    const auto v = random_vector(16, 5);
    CHECK(bind(PhasorVector::identity(16), v) == v);
    CHECK(bind(uniform(1, pi / 2), uniform(1, pi))[0] == doctest::Approx(3 * pi / 2));
    CHECK(bind(uniform(1, 3 * pi / 2), uniform(1, pi))[0] == doctest::Approx(pi / 2));
    CHECK_THROWS_AS(bind(random_vector(3, 1), random_vector(4, 1)), DimensionMismatch);
}

TEST_CASE("unbind subtracts phases and inverts bind")
{
    const auto u = random_vector(64, 1);
    const auto v = random_vector(64, 2);
    CHECK(max_phase_deviation(unbind(bind(u, v), v), u) < 1e-12);
    CHECK(unbind(uniform(1, pi / 2), uniform(1, pi))[0] == doctest::Approx(3 * pi / 2));
    CHECK(max_phase_deviation(unbind(v, v), PhasorVector::identity(64)) == 0.0);
    CHECK(max_phase_deviation(unbind(v, u), bind(v, conjugate(u))) < 1e-12);
}

TEST_CASE("bundle keeps the phase of the complex sum")
{
    const auto v = random_vector(32, 9);
    CHECK(max_phase_deviation(bundle({v}), v) < 1e-15);
    const auto b = bundle({uniform(1, test::turns(0.2)), uniform(1, test::turns(0.5))});
    CHECK(b[0] == doctest::Approx(test::turns(0.35)));
    const auto wrap = bundle({uniform(1, test::turns(0.9)), uniform(1, test::turns(0.1))});
    CHECK(phase_distance(wrap[0], test::complex_midpoint(test::turns(0.9), test::turns(0.1))) < 1e-12);
    CHECK(phase_distance(wrap[0], 0.0) < 1e-12);
}

TEST_CASE("bundle of two random vectors stays similar to each")
{
    for (std::uint64_t s = 0; s < 100; ++s) {
        const auto u = random_vector(100, 500 + 2 * s);
        const auto v = random_vector(100, 501 + 2 * s);
        CHECK(similarity(bundle({u, v}), u) > 0.0);
    }
}

TEST_CASE("antipodal bundle raises a degenerate-bundle error naming the component")
{
    const PhasorVector u{0.1, 0.0, 0.2};
    const PhasorVector v{0.4, pi, 1.0};
    try {
        (void)bundle({u, v});
        FAIL("expected DegenerateBundle");
    } catch (const DegenerateBundle &e) {
        CHECK(e.component() == 1);
    }
}

TEST_CASE("permute rotates components")
{
    const PhasorVector v{0.0, 1.0, 2.0, 3.0};
    CHECK(permute(v, 0) == v);
    CHECK(permute(v, 1) == PhasorVector{1.0, 2.0, 3.0, 0.0});
    CHECK(permute(v, -1) == PhasorVector{3.0, 0.0, 1.0, 2.0});
    CHECK(permute(permute(v, 1), -1) == v);
    CHECK(permute(v, 9) == permute(v, 1));
    for (std::uint64_t s = 0; s < 1000; ++s) {
        const auto r = random_vector(100, 7000 + s);
        CHECK(std::abs(similarity(permute(r, 1), r)) < 0.3);
    }
}

TEST_CASE("fractional power scales centered phases")
{
    const auto v = random_vector(50, 4);
    CHECK(max_phase_deviation(fractional_power(v, 1.0), v) < 1e-12);
    CHECK(max_phase_deviation(fractional_power(v, 0.0), PhasorVector::identity(50)) == 0.0);
    CHECK(fractional_power(uniform(1, 3 * pi / 2), 2.0)[0] == doctest::Approx(pi));
    CHECK(fractional_power(uniform(1, 0.4), 2.5)[0] == doctest::Approx(1.0));
    for (double a : {-1.7, 0.3, 1.85}) {
        for (double b : {-0.65, 0.9, 2.2}) {
            const auto lhs = bind(fractional_power(v, a), fractional_power(v, b));
            CHECK(centered_distance(lhs, fractional_power(v, a + b)) < 1e-12);
        }
    }
}

TEST_CASE("similarity is the real part of the normalized inner product")
{
    const auto v = random_vector(100, 11);
    CHECK(similarity(v, v) == 1.0);
    CHECK(similarity(bind(v, uniform(100, pi)), v) == doctest::Approx(-1.0));
    CHECK(std::abs(similarity(v, random_vector(100, 12))) < 0.3);
    const auto u = random_vector(100, 13);
    const auto t = random_vector(100, 14);
    CHECK(similarity(u, v) == doctest::Approx(similarity(v, u)).epsilon(1e-14));
    CHECK(similarity(bind(u, t), bind(v, t)) == doctest::Approx(similarity(u, v)).epsilon(1e-12));
    CHECK(similarity(uniform(1, 0.0), uniform(1, pi / 3)) == doctest::Approx(0.5));
}

TEST_CASE("cleanup_oracle returns the nearest entry")
{
    const auto vocab = Vocabulary::random(100, 21, {"A", "B", "C"});
    const auto hit = cleanup_oracle(vocab.at("B"), vocab);
    CHECK(hit.name == "B");
    CHECK(hit.index == 1);
    CHECK(hit.similarity == 1.0);
    CHECK_THROWS_AS(cleanup_oracle(vocab.at("A"), Vocabulary(100)), ValidationError);
}

TEST_CASE("cleanup_oracle tolerates 0.1 rad phase noise")
{
    const auto vocab = Vocabulary::random(100, 22, {"A", "B", "C", "D", "E"});
    std::uint64_t seed = 0;
    for (const auto &e : vocab.entries()) {
        for (int trial = 0; trial < 20; ++trial) {
            const auto noise = random_vector(100, 9000 + seed++);
            std::vector<double> ph(100);
            for (std::size_t k = 0; k < 100; ++k) {
                ph[k] = e.vector[k] + (noise[k] / kTwoPi - 0.5) * 0.2;
            }
            const auto r = cleanup_oracle(PhasorVector(ph), vocab);
            CHECK(r.name == e.name);
            CHECK(r.similarity > 0.99);
        }
    }
}

TEST_CASE("cleanup_oracle breaks ties by lowest index")
{
    Vocabulary vocab(2);
    vocab.add("first", PhasorVector{0.0, 0.0});
    vocab.add("second", PhasorVector{0.0, 0.0});
    CHECK(cleanup_oracle(PhasorVector{0.1, 0.1}, vocab).name == "first");
}
