#include "ncrl/continuum_case3.hpp"

#include <cmath>
#include <string>

#include "ncrl/eigen.hpp"
#include "ncrl/errors.hpp"
#include "ncrl/random_ops.hpp"

namespace ncrl {

namespace {

const double kPi = std::acos(-1.0);

BlochVector sample_unit_vector(SplitMix64& rng) {
    const double cos_theta = 1.0 - 2.0 * rng.next_double();
    const double phi = 2.0 * kPi * rng.next_double();
    const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
    return {sin_theta * std::cos(phi), sin_theta * std::sin(phi), cos_theta};
}

SphericalDirection sample_direction(SplitMix64& rng) {
    const double cos_theta = 1.0 - 2.0 * rng.next_double();
    const double phi = 2.0 * kPi * rng.next_double();
    return SphericalDirection(safe_acos(cos_theta), phi);
}

} // namespace

SphericalDirection::SphericalDirection(double theta, double phi) : theta(theta), phi(phi) {
    if (!(theta >= -1e-12 && theta <= kPi + 1e-12))
        throw InvariantViolationError("SphericalDirection: theta " + std::to_string(theta) +
                                      " outside [0, pi]");
    if (!(phi >= -1e-12 && phi < 2.0 * kPi + 1e-12))
        throw InvariantViolationError("SphericalDirection: phi " + std::to_string(phi) +
                                      " outside [0, 2 pi)");
    this->theta = std::min(std::max(theta, 0.0), kPi);
    if (this->phi <= 0.0) this->phi = 0.0;
    if (this->phi >= 2.0 * kPi) this->phi -= 2.0 * kPi;
}

BlochVector to_unit_vector(const SphericalDirection& d) {
    const double st = std::sin(d.theta);
    return {st * std::cos(d.phi), st * std::sin(d.phi), std::cos(d.theta)};
}

SphericalDirection from_unit_vector(const BlochVector& v) {
    const double n = v.norm();
    if (std::abs(n - 1.0) > 1e-10)
        throw InvariantViolationError("from_unit_vector: |v| = " + std::to_string(n) +
                                      " is not 1");
    const double theta = safe_acos(v.z / n);
    if (theta == 0.0 || theta == kPi) return SphericalDirection(theta, 0.0);
    double phi = std::atan2(v.y, v.x);
    if (phi < 0.0) phi += 2.0 * kPi;
    if (phi >= 2.0 * kPi) phi = 0.0;
    return SphericalDirection(theta, phi);
}

BeltParameters::BeltParameters(double r) : r(r) {
    if (!(r > 1.0 + 1e-8))
        throw InvariantViolationError("BeltParameters: r = " + std::to_string(r) +
                                      " does not exceed 1");
}

double safe_acos(double x) {
    if (x > 1.0 + 1e-9 || x < -1.0 - 1e-9)
        throw InvariantViolationError("safe_acos: argument " + std::to_string(x) +
                                      " far outside [-1, 1]");
    return std::acos(std::min(1.0, std::max(-1.0, x)));
}

SphericalDirection belt_f(const SphericalDirection& a, const BeltParameters& params) {
    const double theta_prime = safe_acos(std::cos(a.theta) / params.r);
    double phi_prime = a.phi;
    if (a.theta == 0.0) phi_prime = 0.0;
    else if (a.theta == kPi) phi_prime = kPi;
    return SphericalDirection(theta_prime, phi_prime);
}

BlochVector belt_f_cartesian(const BlochVector& a, const BeltParameters& params) {
    return to_unit_vector(belt_f(from_unit_vector(a), params));
}

BlochVector belt_g(const BeltParameters& params) {
    return {0.0, 0.0, params.r};
}

double verify_belt_born(const BeltParameters& params, int num_samples, std::uint64_t seed) {
    if (num_samples < 1)
        throw InvariantViolationError("verify_belt_born: need at least one sample");
    const HermitianOperator w = bloch_state(belt_g(params));
    SplitMix64 root(seed);
    double max_err = 0.0;
    for (int i = 0; i < num_samples; ++i) {
        SplitMix64 rng = root.child(static_cast<std::uint64_t>(i));
        const SphericalDirection a = sample_direction(rng);
        const BlochVector image = to_unit_vector(belt_f(a, params));
        for (int sign : {1, -1}) {
            const double classical = 0.5 * (1.0 + sign * std::cos(a.theta));
            const double represented = born_probability(w, projection_from_bloch(image, sign));
            max_err = std::max(max_err, std::abs(represented - classical));
        }
    }
    return max_err;
}

double belt_image_gap(const BeltParameters& params) {
    const double gap = safe_acos(1.0 / params.r);
    const double cos_bound = 1.0 / params.r + 1e-12;

    SplitMix64 root(0x0be17u);
    for (int i = 0; i < 2048; ++i) {
        SplitMix64 rng = root.child(static_cast<std::uint64_t>(i));
        const SphericalDirection image = belt_f(sample_direction(rng), params);
        if (std::abs(std::cos(image.theta)) > cos_bound)
            throw InvariantViolationError("belt_image_gap: image entered an excluded cap");
    }
    for (double theta : {0.0, kPi}) {
        const SphericalDirection image = belt_f(SphericalDirection(theta, 0.0), params);
        if (std::abs(std::cos(image.theta)) > cos_bound)
            throw InvariantViolationError("belt_image_gap: pole image entered an excluded cap");
    }
    return gap;
}

BeltFalsifierPair belt_full_content_falsifier(const BeltParameters& params, std::uint64_t seed) {
    SplitMix64 root(seed);
    for (int i = 0; i < 100000; ++i) {
        SplitMix64 rng = root.child(static_cast<std::uint64_t>(i));
        const SphericalDirection a = sample_direction(rng);
        const BlochVector s = sample_unit_vector(rng);
        const BlochVector fa = to_unit_vector(belt_f(a, params));
        const BlochVector gs = params.r * s;
        const double discrepancy = std::abs(dot(to_unit_vector(a), s) - dot(fa, gs));
        if (discrepancy > 1e-6) return BeltFalsifierPair{a, s, discrepancy};
    }
    throw SearchExhaustedError("belt_full_content_falsifier: no violating pair in 1e5 samples");
}

RealMatrix random_rotation(SplitMix64& rng) {
    for (;;) {
        double cols[3][3];
        for (auto& col : cols)
            for (double& x : col) x = rng.next_gaussian();
        // Gram-Schmidt over columns.
        bool ok = true;
        for (int j = 0; j < 3 && ok; ++j) {
            for (int k = 0; k < j; ++k) {
                double proj = 0.0;
                for (int i = 0; i < 3; ++i) proj += cols[k][i] * cols[j][i];
                for (int i = 0; i < 3; ++i) cols[j][i] -= proj * cols[k][i];
            }
            double norm = 0.0;
            for (int i = 0; i < 3; ++i) norm += cols[j][i] * cols[j][i];
            norm = std::sqrt(norm);
            if (norm < 1e-6) {
                ok = false;
                break;
            }
            for (int i = 0; i < 3; ++i) cols[j][i] /= norm;
        }
        if (!ok) continue;

        const double det = cols[0][0] * (cols[1][1] * cols[2][2] - cols[1][2] * cols[2][1]) -
                           cols[1][0] * (cols[0][1] * cols[2][2] - cols[0][2] * cols[2][1]) +
                           cols[2][0] * (cols[0][1] * cols[1][2] - cols[0][2] * cols[1][1]);
        if (det < 0.0)
            for (double& x : cols[2]) x = -x;

        RealMatrix m(3, 3);
        for (int j = 0; j < 3; ++j)
            for (int i = 0; i < 3; ++i) m.at(i, j) = cols[j][i];
        return m;
    }
}

BlochVector apply3(const RealMatrix& m, const BlochVector& v) {
    return {m.at(0, 0) * v.x + m.at(0, 1) * v.y + m.at(0, 2) * v.z,
            m.at(1, 0) * v.x + m.at(1, 1) * v.y + m.at(1, 2) * v.z,
            m.at(2, 0) * v.x + m.at(2, 1) * v.y + m.at(2, 2) * v.z};
}

Lemma1Report lemma1_verify(const std::vector<DirectionMapSample>& samples, double tol) {
    if (samples.size() < 103)
        throw DimensionMismatchError(
            "lemma1_verify: need an orthonormal basis plus at least 100 samples");

    const BlochVector e[3] = {samples[0].input, samples[1].input, samples[2].input};
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            const double expected = i == j ? 1.0 : 0.0;
            if (std::abs(dot(e[i], e[j]) - expected) > 1e-10)
                throw InvariantViolationError(
                    "lemma1_verify: first three samples are not an orthonormal basis");
        }

    // Biorthogonality of the image families comes first: it is forced by
    // inner-product preservation and everything downstream assumes it.
    double biorth_residual = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const double expected = i == j ? 1.0 : 0.0;
            biorth_residual = std::max(
                biorth_residual, std::abs(dot(samples[i].f_image, samples[j].g_image) - expected));
        }
    if (biorth_residual > tol)
        throw InputInconsistentError("lemma1_verify: image families not biorthogonal",
                                     biorth_residual);

    // Linear extension in matrix form: F = [f(e1) f(e2) f(e3)] E^T.
    RealMatrix f_hat(3, 3);
    RealMatrix g_hat(3, 3);
    for (int col = 0; col < 3; ++col) {
        const double ecol[3] = {e[col].x, e[col].y, e[col].z};
        const BlochVector& fi = samples[static_cast<std::size_t>(col)].f_image;
        const BlochVector& gi = samples[static_cast<std::size_t>(col)].g_image;
        const double fcol[3] = {fi.x, fi.y, fi.z};
        const double gcol[3] = {gi.x, gi.y, gi.z};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                f_hat.at(i, j) += fcol[i] * ecol[j];
                g_hat.at(i, j) += gcol[i] * ecol[j];
            }
    }

    Lemma1Report report;
    report.biorthogonality_residual = biorth_residual;
    for (const DirectionMapSample& sample : samples) {
        const BlochVector predicted = apply3(f_hat, sample.input);
        report.linearity_residual =
            std::max(report.linearity_residual, (predicted - sample.f_image).norm());
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double dot_ij = 0.0;
            for (int l = 0; l < 3; ++l) dot_ij += f_hat.at(l, i) * f_hat.at(l, j);
            const double expected = i == j ? 1.0 : 0.0;
            report.orthogonality_residual =
                std::max(report.orthogonality_residual, std::abs(dot_ij - expected));
            report.agreement_residual =
                std::max(report.agreement_residual, std::abs(f_hat.at(i, j) - g_hat.at(i, j)));
        }

    report.is_linear_extension = report.linearity_residual <= tol;
    report.is_orthogonal = report.orthogonality_residual <= tol;
    report.g_equals_f = report.agreement_residual <= tol;
    return report;
}

std::vector<DirectionMapSample> rotation_lemma1_samples(std::uint64_t seed, int extra_count) {
    SplitMix64 rng(seed);
    const RealMatrix rot = random_rotation(rng);

    std::vector<DirectionMapSample> samples;
    samples.reserve(static_cast<std::size_t>(extra_count) + 3);
    const BlochVector basis[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (const BlochVector& e : basis)
        samples.push_back(DirectionMapSample{e, apply3(rot, e), apply3(rot, e)});
    for (int i = 0; i < extra_count; ++i) {
        const BlochVector v = sample_unit_vector(rng);
        samples.push_back(DirectionMapSample{v, apply3(rot, v), apply3(rot, v)});
    }
    return samples;
}

std::vector<DirectionMapSample> belt_lemma1_samples(const BeltParameters& params,
                                                    std::uint64_t seed, int extra_count) {
    SplitMix64 rng(seed);
    std::vector<DirectionMapSample> samples;
    samples.reserve(static_cast<std::size_t>(extra_count) + 3);
    const BlochVector basis[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (const BlochVector& e : basis)
        samples.push_back(DirectionMapSample{e, belt_f_cartesian(e, params), params.r * e});
    for (int i = 0; i < extra_count; ++i) {
        const BlochVector v = sample_unit_vector(rng);
        samples.push_back(DirectionMapSample{v, belt_f_cartesian(v, params), params.r * v});
    }
    return samples;
}

FrameGram lemma2_frame_gram(const std::vector<MinimalProjection>& basis) {
    if (basis.empty()) throw DimensionMismatchError("lemma2_frame_gram: empty basis");
    const int n = basis.front().dim();
    const int m = static_cast<int>(basis.size());
    if (m != n * n)
        throw DimensionMismatchError("lemma2_frame_gram: need n^2 projections, got " +
                                     std::to_string(m));

    FrameGram out;
    out.projections = basis;
    out.gram = RealMatrix(m, m);
    ComplexMatrix gram_c(m);
    for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) {
            const double g = trace_inner_product(basis[static_cast<std::size_t>(i)].matrix(),
                                                 basis[static_cast<std::size_t>(j)].matrix())
                                 .real();
            out.gram.at(i, j) = g;
            out.gram.at(j, i) = g;
            gram_c.at(i, j) = Complex(g, 0.0);
            gram_c.at(j, i) = Complex(g, 0.0);
        }
    }
    out.min_eigenvalue = eigen_system(gram_c).values.front();
    out.invertible = out.min_eigenvalue > 1e-8;
    return out;
}

std::vector<MinimalProjection> random_projection_spanning_set(std::uint64_t seed, int n) {
    SplitMix64 root(seed);
    for (int attempt = 0; attempt < 100; ++attempt) {
        SplitMix64 rng = root.child(static_cast<std::uint64_t>(attempt));
        std::vector<MinimalProjection> basis;
        basis.reserve(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n * n; ++i) basis.push_back(random_minimal_projection(rng, n));
        // Demand comfortable conditioning, not bare invertibility, so the
        // Gram solves downstream keep ~6 digits of headroom.
        if (lemma2_frame_gram(basis).min_eigenvalue > 1e-3) return basis;
    }
    throw SearchExhaustedError("random_projection_spanning_set: no invertible Gram in 100 tries");
}

namespace {

/// Shared expansion machinery: coefficients of A in the projection basis via
/// the Gram system, then recombination with the images.
class GramExpander {
public:
    GramExpander(const FrameGram& fg) : fg_(fg), m_(static_cast<int>(fg.projections.size())) {}

    std::vector<Complex> coefficients(const ComplexMatrix& a) const {
        std::vector<double> t_re(static_cast<std::size_t>(m_));
        std::vector<double> t_im(static_cast<std::size_t>(m_));
        for (int i = 0; i < m_; ++i) {
            Complex t(0.0, 0.0);
            const ComplexMatrix& p = fg_.projections[static_cast<std::size_t>(i)].matrix();
            for (int r = 0; r < a.dim(); ++r)
                for (int c = 0; c < a.dim(); ++c) t += p.at(r, c) * a.at(c, r);
            t_re[static_cast<std::size_t>(i)] = t.real();
            t_im[static_cast<std::size_t>(i)] = t.imag();
        }
        const std::vector<double> c_re = solve_least_squares(fg_.gram, t_re).x;
        const std::vector<double> c_im = solve_least_squares(fg_.gram, t_im).x;
        std::vector<Complex> out(static_cast<std::size_t>(m_));
        for (int i = 0; i < m_; ++i)
            out[static_cast<std::size_t>(i)] =
                Complex(c_re[static_cast<std::size_t>(i)], c_im[static_cast<std::size_t>(i)]);
        return out;
    }

    ComplexMatrix apply(const std::vector<ComplexMatrix>& images, const ComplexMatrix& a) const {
        const std::vector<Complex> c = coefficients(a);
        ComplexMatrix out(a.dim());
        for (int i = 0; i < m_; ++i) {
            const ComplexMatrix& img = images[static_cast<std::size_t>(i)];
            for (int r = 0; r < a.dim(); ++r)
                for (int s = 0; s < a.dim(); ++s)
                    out.at(r, s) += c[static_cast<std::size_t>(i)] * img.at(r, s);
        }
        return out;
    }

private:
    const FrameGram& fg_;
    int m_;
};

Complex plain_product_trace(const ComplexMatrix& a, const ComplexMatrix& b) {
    Complex t(0.0, 0.0);
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) t += a.at(r, c) * b.at(c, r);
    return t;
}

} // namespace

Lemma2Report lemma2_verify(const std::vector<MinimalProjection>& basis,
                           const std::vector<ComplexMatrix>& f_basis_images,
                           const std::vector<ComplexMatrix>& g_basis_images,
                           const std::vector<ProjectionMapSample>& extra_samples,
                           std::uint64_t seed, double tol) {
    const FrameGram fg = lemma2_frame_gram(basis);
    const int n = basis.front().dim();
    const int m = n * n;
    if (static_cast<int>(f_basis_images.size()) != m ||
        static_cast<int>(g_basis_images.size()) != m)
        throw DimensionMismatchError("lemma2_verify: image count does not match basis");
    if (static_cast<int>(extra_samples.size()) < 100)
        throw DimensionMismatchError("lemma2_verify: need at least 100 extra samples");
    if (!fg.invertible)
        throw DegenerateSetupError("lemma2_verify: projection basis does not span (Gram singular)");

    // Trace pairing Tr(f(P_i) g(P_j)) must reproduce the Gram matrix; this is
    // the lemma's hypothesis and gates everything else.
    double pairing_residual = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const Complex t = plain_product_trace(f_basis_images[static_cast<std::size_t>(i)],
                                                  g_basis_images[static_cast<std::size_t>(j)]);
            pairing_residual =
                std::max(pairing_residual, std::abs(t - Complex(fg.gram.at(i, j), 0.0)));
        }
    if (pairing_residual > tol)
        throw InputInconsistentError("lemma2_verify: trace pairing does not match the Gram matrix",
                                     pairing_residual);

    const GramExpander expander(fg);
    Lemma2Report report;
    report.pairing_residual = pairing_residual;

    for (const ProjectionMapSample& sample : extra_samples) {
        const ComplexMatrix predicted = expander.apply(f_basis_images, sample.input.matrix());
        report.linearity_residual =
            std::max(report.linearity_residual, max_abs_diff(predicted, sample.f_image));
    }

    // HS-unitarity via polarization: preserving the norms of A+B, A-B, A+iB,
    // A-iB forces preservation of <A,B> itself; the direct pairing deviation
    // is folded into the same residual.
    SplitMix64 root(seed);
    for (int pair = 0; pair < 500; ++pair) {
        SplitMix64 rng = root.child(static_cast<std::uint64_t>(pair));
        const ComplexMatrix a = random_complex_gaussian(rng, n);
        const ComplexMatrix b = random_complex_gaussian(rng, n);
        const ComplexMatrix fa = expander.apply(f_basis_images, a);
        const ComplexMatrix fb = expander.apply(f_basis_images, b);

        const Complex ipre = trace_inner_product(a, b);
        const Complex ipost = trace_inner_product(fa, fb);
        report.unitarity_residual = std::max(report.unitarity_residual, std::abs(ipost - ipre));

        const Complex phases[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
        for (const Complex& phase : phases) {
            ComplexMatrix combo = b;
            combo *= phase;
            combo += a;
            ComplexMatrix image = fb;
            image *= phase;
            image += fa;
            report.unitarity_residual = std::max(
                report.unitarity_residual,
                std::abs(hs_norm(image) * hs_norm(image) - hs_norm(combo) * hs_norm(combo)));
        }
    }

    const std::vector<ComplexMatrix> coord_basis = hermitian_basis(n);
    for (int col = 0; col < m; ++col) {
        const ComplexMatrix fb = expander.apply(f_basis_images, coord_basis[static_cast<std::size_t>(col)]);
        const ComplexMatrix gb = expander.apply(g_basis_images, coord_basis[static_cast<std::size_t>(col)]);
        report.agreement_residual = std::max(report.agreement_residual, max_abs_diff(fb, gb));
    }

    report.is_linear_extension = report.linearity_residual <= tol;
    report.is_hs_unitary = report.unitarity_residual <= tol;
    report.g_equals_f = report.agreement_residual <= tol;
    return report;
}

ComplexMatrix conjugate_by(const ComplexMatrix& u, const ComplexMatrix& a) {
    return u * a * u.adjoint();
}

} // namespace ncrl
