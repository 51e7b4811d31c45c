#include "ncrl/selftest.hpp"

#include <cmath>

#include "ncrl/bloch_case1.hpp"
#include "ncrl/continuum_case3.hpp"
#include "ncrl/eigen.hpp"
#include "ncrl/errors.hpp"
#include "ncrl/pauli.hpp"
#include "ncrl/random_ops.hpp"
#include "ncrl/rng.hpp"
#include "ncrl/tomo_case2.hpp"

namespace ncrl {

namespace {

const double kPi = std::acos(-1.0);

BlochVector random_bloch_in_ball(SplitMix64& rng, double radius) {
    for (;;) {
        const double x = 2.0 * rng.next_double() - 1.0;
        const double y = 2.0 * rng.next_double() - 1.0;
        const double z = 2.0 * rng.next_double() - 1.0;
        BlochVector v{x, y, z};
        if (v.norm() <= 1.0) return radius * v;
    }
}

ThreeMeasurementSetup random_setup(SplitMix64& rng) {
    for (;;) {
        BlochVector dirs[3];
        for (BlochVector& d : dirs) {
            for (;;) {
                BlochVector v = random_bloch_in_ball(rng, 1.0);
                const double n = v.norm();
                if (n > 0.1) {
                    d = (1.0 / n) * v;
                    break;
                }
            }
        }
        const double triple = dot(dirs[0], cross(dirs[1], dirs[2]));
        if (std::abs(triple) > 0.05) return ThreeMeasurementSetup(dirs[0], dirs[1], dirs[2]);
    }
}

} // namespace

Report run_selftest(std::uint64_t seed) {
    Report report;
    report.seed = seed;
    report.params = {{"seed", seed}, {"subcommand", "selftest"}};
    SplitMix64 root(seed);

    {
        // State recovery: Born probabilities of a random density, inverted back.
        SplitMix64 rng = root.child(1);
        double worst = 0.0;
        for (int trial = 0; trial < 200; ++trial) {
            const ThreeMeasurementSetup setup = random_setup(rng);
            const HermitianOperator w = random_density(rng, 2);
            const BlochVector s_true = pauli_decompose(w.matrix()).s;
            const ConditionalProbTriple probs(
                born_probability(w, projection_from_bloch(setup.a(), +1)),
                born_probability(w, projection_from_bloch(setup.b(), +1)),
                born_probability(w, projection_from_bloch(setup.c(), +1)));
            const BlochVector s = solve_state_vector(setup, probs);
            worst = std::max(worst, (s - s_true).norm());
        }
        report.add_check("bloch-round-trip", worst <= 1e-9, worst);
    }

    {
        // Closed form against the full least-squares fit.
        SplitMix64 rng = root.child(2);
        double worst = 0.0;
        for (int trial = 0; trial < 200; ++trial) {
            const ThreeMeasurementSetup setup = random_setup(rng);
            const ConditionalProbTriple probs(rng.next_double(), rng.next_double(),
                                              rng.next_double());
            const BlochVector s = solve_state_vector(setup, probs);
            const PauliDecomposition fit = fit_general_operator(setup, probs);
            worst = std::max(worst, (s - fit.s).norm());
            worst = std::max(worst, std::abs(fit.s0 - 0.5));
            worst = std::max(worst, std::abs(fit.s0p));
            worst = std::max(worst, fit.sp.norm());
        }
        report.add_check("solve-fit-agreement", worst <= 1e-10, worst);
    }

    {
        // The long-vector region: every point of the coarse grid is non-density.
        const RegionScanResult scan =
            scan_region(kPi / 3.0, kPi / 2.0 - 0.01, 0.76, 1.0, 20);
        int density_points = 0;
        double min_norm = 1e300;
        for (const RegionScanPoint& pt : scan.points) {
            if (pt.is_density) ++density_points;
            min_norm = std::min(min_norm, pt.s_norm);
        }
        report.add_check("region-nondensity", density_points == 0 && min_norm > 1.0,
                         static_cast<double>(density_points));
    }

    {
        // Trace pairing of PSD operators stays nonnegative.
        SplitMix64 rng = root.child(3);
        double worst = 0.0;
        for (int n : {2, 3}) {
            for (int trial = 0; trial < 100; ++trial) {
                const HermitianOperator a = random_density(rng, n);
                const HermitianOperator b = random_density(rng, n);
                worst = std::min(worst, trace_inner_product(a.matrix(), b.matrix()).real());
            }
        }
        report.add_check("psd-pairing-nonnegative", worst >= -1e-10, worst);
    }

    {
        // Spectral reconstruction of random Hermitian matrices.
        SplitMix64 rng = root.child(4);
        double worst = 0.0;
        for (int n : {2, 3, 4}) {
            for (int trial = 0; trial < 100; ++trial) {
                const HermitianOperator a = random_hermitian(rng, n);
                ComplexMatrix sum(n);
                for (const EigenPair& pair : eigen_hermitian(a)) {
                    ComplexMatrix term = pair.projection.matrix();
                    term *= Complex(pair.eigenvalue, 0.0);
                    sum += term;
                }
                worst = std::max(worst, max_abs_diff(sum, a.matrix()));
            }
        }
        report.add_check("spectral-reconstruction", worst <= 1e-10, worst);
    }

    {
        // Tomographic round trip on densities.
        SplitMix64 rng = root.child(5);
        double worst = 0.0;
        for (int n : {2, 3}) {
            for (int trial = 0; trial < 10; ++trial) {
                const MeasurementFrame frame = random_frame(rng.next(), n, n + 1);
                const HermitianOperator w = random_density(rng, n);
                const HermitianOperator rec = reconstruct_state(frame, born_table(w, frame));
                worst = std::max(worst, max_abs_diff(rec.matrix(), w.matrix()));
            }
        }
        report.add_check("tomographic-round-trip", worst <= 1e-9, worst);
    }

    {
        // Witness search: Born-consistent but not positive semidefinite.
        SplitMix64 rng = root.child(6);
        bool ok = true;
        double worst_eig = 0.0;
        for (int n : {2, 3}) {
            const MeasurementFrame frame = random_frame(rng.next(), n, n + 1);
            const DualConeWitness witness = find_nonpsd_witness(frame, rng.next());
            ok = ok && witness.min_eigenvalue < -1e-8 && in_dual_cone(witness.w, frame) &&
                 !is_psd(witness.w);
            worst_eig = std::min(worst_eig, witness.min_eigenvalue);
        }
        report.add_check("nonpsd-witness", ok, worst_eig);
    }

    {
        // Band-map representation reproduces the fixed state's probabilities.
        const double err = verify_belt_born(BeltParameters(2.0), 1000, root.child(7).seed());
        report.add_check("belt-born-exactness", err <= 1e-12, err);
    }

    {
        // Certifier accepts a rotation pair and rejects the band-map pair.
        bool rotation_ok = false;
        bool belt_rejected = false;
        double residual = 0.0;
        const Lemma1Report rot =
            lemma1_verify(rotation_lemma1_samples(root.child(8).seed(), 100), 1e-10);
        rotation_ok = rot.all_passed();
        residual = std::max({rot.linearity_residual, rot.orthogonality_residual,
                             rot.agreement_residual});
        try {
            lemma1_verify(belt_lemma1_samples(BeltParameters(2.0), root.child(9).seed(), 100),
                          1e-10);
        } catch (const InputInconsistentError&) {
            belt_rejected = true;
        }
        report.add_check("linear-map-certifier", rotation_ok && belt_rejected, residual);
    }

    {
        // Superoperator certifier on a unitary conjugation.
        const std::uint64_t sub = root.child(10).seed();
        const int n = 2;
        const std::vector<MinimalProjection> basis = random_projection_spanning_set(sub, n);
        const ComplexMatrix u = random_unitary(sub ^ 0x5eedull, n);
        std::vector<ComplexMatrix> images;
        images.reserve(basis.size());
        for (const MinimalProjection& p : basis) images.push_back(conjugate_by(u, p.matrix()));
        std::vector<ProjectionMapSample> extra;
        SplitMix64 rng(sub + 1);
        for (int i = 0; i < 100; ++i) {
            const MinimalProjection p = random_minimal_projection(rng, n);
            extra.push_back(ProjectionMapSample{p, conjugate_by(u, p.matrix())});
        }
        const Lemma2Report rep = lemma2_verify(basis, images, images, extra, sub + 2, 1e-9);
        report.add_check("superoperator-certifier", rep.all_passed(),
                         std::max({rep.linearity_residual, rep.unitarity_residual,
                                   rep.agreement_residual}));
    }

    report.verdict = report.all_passed() ? "pass" : "fail";

    report.payload["region_min_norm"] = round_sig12([&] {
        double m = 1e300;
        const RegionScanResult scan = scan_region(kPi / 3.0, kPi / 2.0 - 0.01, 0.76, 1.0, 20);
        for (const RegionScanPoint& pt : scan.points) m = std::min(m, pt.s_norm);
        return m;
    }());
    report.payload["reference_norm_at_076"] = round_sig12(special_family_state(kPi / 3.0, 0.76).norm());
    return report;
}

} // namespace ncrl
