#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "ncrl/continuum_case3.hpp"
#include "ncrl/eigen.hpp"
#include "ncrl/errors.hpp"
#include "ncrl/operators.hpp"
#include "ncrl/pauli.hpp"
#include "ncrl/random_ops.hpp"
#include "ncrl/rng.hpp"

using namespace ncrl;

namespace {

const double kPi = std::acos(-1.0);

SphericalDirection random_direction(SplitMix64& rng) {
    const double z = 2.0 * rng.next_double() - 1.0;
    const double phi = 2.0 * kPi * rng.next_double();
    return SphericalDirection(std::acos(z), phi);
}

std::vector<ProjectionMapSample> conjugation_samples(SplitMix64& rng, const ComplexMatrix& u,
                                                     int count) {
    std::vector<ProjectionMapSample> out;
    out.reserve(static_cast<std::size_t>(count));
    const int n = u.dim();
    for (int i = 0; i < count; ++i) {
        const MinimalProjection p = random_minimal_projection(rng, n);
        out.push_back(ProjectionMapSample{p, conjugate_by(u, p.matrix())});
    }
    return out;
}

} // namespace

TEST_CASE("spherical directions validate ranges and round trip") {
    CHECK_NOTHROW(SphericalDirection(0.0, 0.0));
    CHECK_NOTHROW(SphericalDirection(kPi, 0.0));
    CHECK_THROWS_AS(SphericalDirection(-0.1, 0.0), InvariantViolationError);
    CHECK_THROWS_AS(SphericalDirection(kPi + 0.1, 0.0), InvariantViolationError);
    CHECK_THROWS_AS(SphericalDirection(0.5, 2.0 * kPi + 1e-6), InvariantViolationError);
    CHECK_THROWS_AS(SphericalDirection(0.5, -0.1), InvariantViolationError);

    SplitMix64 rng(51);
    for (int trial = 0; trial < 1000; ++trial) {
        const SphericalDirection d = random_direction(rng);
        if (d.theta < 1e-6 || d.theta > kPi - 1e-6) continue;
        const SphericalDirection back = from_unit_vector(to_unit_vector(d));
        CHECK(std::abs(back.theta - d.theta) < 1e-12);
        CHECK(std::abs(back.phi - d.phi) < 1e-12);
    }

    // poles normalize the azimuth to zero
    const SphericalDirection north = from_unit_vector({0, 0, 1});
    CHECK(north.theta == doctest::Approx(0.0));
    CHECK(north.phi == 0.0);
}

TEST_CASE("belt parameters require a strictly compressive factor") {
    CHECK_NOTHROW(BeltParameters(1.5));
    CHECK_THROWS_AS(BeltParameters(1.0), InvariantViolationError);
    CHECK_THROWS_AS(BeltParameters(1.0 + 1e-9), InvariantViolationError);
    CHECK_THROWS_AS(BeltParameters(0.5), InvariantViolationError);
}

TEST_CASE("band map fixed points and pole images") {
    const BeltParameters params(2.0);
    // the equator is fixed, azimuth preserved
    for (double phi : {0.0, 1.0, 3.0, 6.0}) {
        const SphericalDirection image = belt_f(SphericalDirection(kPi / 2.0, phi), params);
        CHECK(image.theta == doctest::Approx(kPi / 2.0).epsilon(1e-12));
        CHECK(image.phi == doctest::Approx(phi).epsilon(1e-12));
    }
    // poles land on the band edges with pinned azimuth
    const SphericalDirection top = belt_f(SphericalDirection(0.0, 0.0), params);
    CHECK(top.theta == doctest::Approx(kPi / 3.0).epsilon(1e-12));
    CHECK(top.phi == 0.0);
    const SphericalDirection bottom = belt_f(SphericalDirection(kPi, 0.0), params);
    CHECK(bottom.theta == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-12));
    CHECK(bottom.phi == doctest::Approx(kPi));
}

TEST_CASE("band map compresses the polar angle exactly") {
    SplitMix64 rng(52);
    for (double r : {1.5, 2.0, 3.0}) {
        const BeltParameters params(r);
        double worst = 0.0;
        for (int trial = 0; trial < 10000; ++trial) {
            const SphericalDirection a = random_direction(rng);
            const SphericalDirection image = belt_f(a, params);
            worst = std::max(worst, std::abs(r * std::cos(image.theta) - std::cos(a.theta)));
        }
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("band map images avoid the polar caps") {
    SplitMix64 rng(53);
    for (double r : {1.5, 2.0, 10.0}) {
        const BeltParameters params(r);
        for (int trial = 0; trial < 2000; ++trial) {
            const SphericalDirection image = belt_f(random_direction(rng), params);
            CHECK(std::abs(std::cos(image.theta)) <= 1.0 / r + 1e-12);
        }
    }
    CHECK(belt_image_gap(BeltParameters(2.0)) == doctest::Approx(kPi / 3.0).epsilon(1e-12));
    CHECK(belt_image_gap(BeltParameters(10.0)) == doctest::Approx(1.4706289056333368).epsilon(1e-12));
    CHECK(belt_image_gap(BeltParameters(1.001)) == doctest::Approx(0.0447).epsilon(2e-2));
}

TEST_CASE("band map is injective on sampled directions") {
    SplitMix64 rng(54);
    const BeltParameters params(2.0);
    std::vector<std::pair<double, double>> images;
    images.reserve(10000);
    for (int trial = 0; trial < 10000; ++trial) {
        const SphericalDirection image = belt_f(random_direction(rng), params);
        images.emplace_back(image.theta, image.phi);
    }
    std::sort(images.begin(), images.end());
    CHECK(std::adjacent_find(images.begin(), images.end()) == images.end());
}

TEST_CASE("the band state reproduces the original probabilities exactly") {
    // identity at one point, then the sampling contract
    const BeltParameters params(2.0);
    const SphericalDirection a(kPi / 4.0, 0.0);
    const double original = 0.5 * (1.0 + std::cos(kPi / 4.0));
    const BlochVector image = to_unit_vector(belt_f(a, params));
    const double mapped =
        born_probability(bloch_state(belt_g(params)), projection_from_bloch(image, +1));
    CHECK(mapped == doctest::Approx(original).epsilon(1e-14));
    CHECK(original == doctest::Approx(0.8535533905932738).epsilon(1e-14));

    for (double r : {1.5, 2.0, 3.0}) {
        CHECK(verify_belt_born(BeltParameters(r), 10000, 5) <= 1e-12);
    }
}

TEST_CASE("the band state vector is long and its operator is not psd") {
    const BlochVector g = belt_g(BeltParameters(2.0));
    CHECK(g.norm() == doctest::Approx(2.0));
    const std::vector<EigenPair> pairs = eigen_hermitian(bloch_state(g));
    REQUIRE(pairs.size() == 2);
    CHECK(pairs[0].eigenvalue == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(pairs[1].eigenvalue == doctest::Approx(1.5).epsilon(1e-12));
    CHECK_FALSE(is_psd(bloch_state(g)));
}

TEST_CASE("the covariant extension fails to preserve inner products") {
    for (double r : {1.5, 2.0, 3.0}) {
        const BeltFalsifierPair pair = belt_full_content_falsifier(BeltParameters(r), 9);
        CHECK(pair.discrepancy > 1e-6);
        // the violation never exceeds the geometric bound |f.g| + |a.s| <= r + 1
        CHECK(pair.discrepancy <= r + 1.0);
    }

    // for the fixed state itself the pairing is exact: that is the band identity
    const BeltParameters params(2.0);
    SplitMix64 rng(55);
    const BlochVector pole{0, 0, 1};
    for (int trial = 0; trial < 200; ++trial) {
        const SphericalDirection a = random_direction(rng);
        const double lhs = dot(to_unit_vector(a), pole);
        const double rhs = dot(to_unit_vector(belt_f(a, params)), belt_g(params));
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("rotation samples certify as one orthogonal map") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Lemma1Report report = lemma1_verify(rotation_lemma1_samples(seed, 100), 1e-10);
        CHECK(report.is_linear_extension);
        CHECK(report.is_orthogonal);
        CHECK(report.g_equals_f);
        CHECK(report.all_passed());
        CHECK(report.linearity_residual <= 1e-10);
        CHECK(report.orthogonality_residual <= 1e-10);
        CHECK(report.agreement_residual <= 1e-10);
    }
}

TEST_CASE("band samples are rejected as inconsistent with any orthogonal map") {
    CHECK_THROWS_AS(lemma1_verify(belt_lemma1_samples(BeltParameters(2.0), 4, 100), 1e-10),
                    InputInconsistentError);
    try {
        lemma1_verify(belt_lemma1_samples(BeltParameters(2.0), 4, 100), 1e-10);
    } catch (const InputInconsistentError& e) {
        CHECK(e.residual > 0.5); // f(x).g(x) = r on the equator axes
    }
}

TEST_CASE("scaling one side breaks biorthogonality") {
    std::vector<DirectionMapSample> samples = rotation_lemma1_samples(12, 100);
    for (DirectionMapSample& s : samples) s.g_image = 1.1 * s.g_image;
    try {
        lemma1_verify(samples, 1e-10);
        FAIL("expected InputInconsistentError");
    } catch (const InputInconsistentError& e) {
        CHECK(e.residual == doctest::Approx(0.1).epsilon(1e-9));
    }
}

TEST_CASE("lemma one requires an orthonormal basis up front") {
    std::vector<DirectionMapSample> samples = rotation_lemma1_samples(13, 100);
    samples[0].input = 0.9 * samples[0].input; // not unit any more
    CHECK_THROWS_AS(lemma1_verify(samples, 1e-10), InvariantViolationError);
    // too few extra samples
    std::vector<DirectionMapSample> few = rotation_lemma1_samples(13, 10);
    CHECK_THROWS_AS(lemma1_verify(few, 1e-10), DimensionMismatchError);
}

TEST_CASE("projection gram matrices match the pairwise trace rule") {
    const std::vector<MinimalProjection> basis = {
        projection_from_bloch({0, 0, 1}, +1), projection_from_bloch({0, 0, 1}, -1),
        projection_from_bloch({1, 0, 0}, +1), projection_from_bloch({0, 1, 0}, +1)};
    const FrameGram fg = lemma2_frame_gram(basis);
    const double expected[4][4] = {{1.0, 0.0, 0.5, 0.5},
                                   {0.0, 1.0, 0.5, 0.5},
                                   {0.5, 0.5, 1.0, 0.5},
                                   {0.5, 0.5, 0.5, 1.0}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(fg.gram.at(i, j) == doctest::Approx(expected[i][j]).epsilon(1e-12));
    CHECK(fg.invertible);
    CHECK(fg.min_eigenvalue > 1e-8);

    // z+, z-, x+, x- is linearly dependent: the two complete measurements sum
    // to the identity twice.
    const FrameGram singular = lemma2_frame_gram(
        {projection_from_bloch({0, 0, 1}, +1), projection_from_bloch({0, 0, 1}, -1),
         projection_from_bloch({1, 0, 0}, +1), projection_from_bloch({1, 0, 0}, -1)});
    CHECK_FALSE(singular.invertible);

    CHECK_THROWS_AS(lemma2_frame_gram({projection_from_bloch({0, 0, 1}, +1)}),
                    DimensionMismatchError);
}

TEST_CASE("random spanning projection sets have invertible grams") {
    for (int n : {2, 3}) {
        const std::vector<MinimalProjection> basis =
            random_projection_spanning_set(static_cast<std::uint64_t>(n), n);
        REQUIRE(static_cast<int>(basis.size()) == n * n);
        const FrameGram fg = lemma2_frame_gram(basis);
        CHECK(fg.invertible);
        for (std::size_t i = 0; i < basis.size(); ++i)
            CHECK(fg.gram.at(static_cast<int>(i), static_cast<int>(i)) ==
                  doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("unitary conjugation certifies as a hilbert schmidt unitary extension") {
    SplitMix64 root(61);
    for (int n : {2, 3}) {
        for (int trial = 0; trial < 20; ++trial) {
            SplitMix64 rng = root.fork();
            const std::vector<MinimalProjection> basis =
                random_projection_spanning_set(rng.next(), n);
            const ComplexMatrix u = random_unitary(rng, n);
            std::vector<ComplexMatrix> images;
            images.reserve(basis.size());
            for (const MinimalProjection& p : basis)
                images.push_back(conjugate_by(u, p.matrix()));
            const std::vector<ProjectionMapSample> extra = conjugation_samples(rng, u, 100);

            const Lemma2Report report =
                lemma2_verify(basis, images, images, extra, rng.next(), 1e-9);
            CHECK(report.is_linear_extension);
            CHECK(report.is_hs_unitary);
            CHECK(report.g_equals_f);
            CHECK(report.all_passed());
            CHECK(report.linearity_residual <= 1e-9);
            CHECK(report.unitarity_residual <= 1e-9);
            CHECK(report.agreement_residual <= 1e-9);
        }
    }
}

TEST_CASE("mismatched conjugations fail the trace pairing gate") {
    SplitMix64 rng(62);
    const int n = 2;
    const std::vector<MinimalProjection> basis = random_projection_spanning_set(rng.next(), n);
    const ComplexMatrix u = random_unitary(rng, n);
    const ComplexMatrix v = random_unitary(rng, n);
    std::vector<ComplexMatrix> f_images, g_images;
    for (const MinimalProjection& p : basis) {
        f_images.push_back(conjugate_by(u, p.matrix()));
        g_images.push_back(conjugate_by(v, p.matrix()));
    }
    const std::vector<ProjectionMapSample> extra = conjugation_samples(rng, u, 100);
    CHECK_THROWS_AS(lemma2_verify(basis, f_images, g_images, extra, 7, 1e-9),
                    InputInconsistentError);
}

TEST_CASE("the transpose map is hilbert schmidt unitary without being a conjugation") {
    SplitMix64 rng(63);
    for (int n : {2, 3}) {
        const std::vector<MinimalProjection> basis = random_projection_spanning_set(rng.next(), n);
        std::vector<ComplexMatrix> images;
        for (const MinimalProjection& p : basis) images.push_back(p.matrix().transpose());
        std::vector<ProjectionMapSample> extra;
        for (int i = 0; i < 100; ++i) {
            const MinimalProjection p = random_minimal_projection(rng, n);
            extra.push_back(ProjectionMapSample{p, p.matrix().transpose()});
        }
        const Lemma2Report report = lemma2_verify(basis, images, images, extra, 11, 1e-9);
        CHECK(report.all_passed());
    }
}

TEST_CASE("singular projection sets refuse to run the certifier") {
    const std::vector<MinimalProjection> dependent = {
        projection_from_bloch({0, 0, 1}, +1), projection_from_bloch({0, 0, 1}, -1),
        projection_from_bloch({1, 0, 0}, +1), projection_from_bloch({1, 0, 0}, -1)};
    std::vector<ComplexMatrix> images;
    for (const MinimalProjection& p : dependent) images.push_back(p.matrix());
    SplitMix64 rng(64);
    std::vector<ProjectionMapSample> extra;
    for (int i = 0; i < 100; ++i) {
        const MinimalProjection p = random_minimal_projection(rng, 2);
        extra.push_back(ProjectionMapSample{p, p.matrix()});
    }
    CHECK_THROWS_AS(lemma2_verify(dependent, images, images, extra, 3, 1e-9),
                    DegenerateSetupError);
}

TEST_CASE("the polarization identity recovers the inner product") {
    SplitMix64 rng(65);
    double worst = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 2 + static_cast<int>(rng.next() % 3ull);
        const HermitianOperator a = random_hermitian(rng, n);
        const HermitianOperator b = random_hermitian(rng, n);
        const double direct = trace_inner_product(a.matrix(), b.matrix()).real();
        const double sum_norm = trace_inner_product(a.matrix() + b.matrix(),
                                                    a.matrix() + b.matrix()).real();
        const double diff_norm = trace_inner_product(a.matrix() - b.matrix(),
                                                     a.matrix() - b.matrix()).real();
        worst = std::max(worst, std::abs(direct - 0.25 * (sum_norm - diff_norm)));
    }
    CHECK(worst <= 1e-10);
}
