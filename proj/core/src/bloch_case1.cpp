#include "ncrl/bloch_case1.hpp"

#include <cmath>

#include "ncrl/eigen.hpp"
#include "ncrl/errors.hpp"
#include "ncrl/linalg.hpp"

namespace ncrl {

ThreeMeasurementSetup::ThreeMeasurementSetup(const BlochVector& a, const BlochVector& b,
                                             const BlochVector& c, double unit_tol,
                                             double triple_tol)
    : a_(a), b_(b), c_(c) {
    for (const BlochVector* v : {&a_, &b_, &c_}) {
        if (std::abs(v->norm() - 1.0) > unit_tol)
            throw InvariantViolationError("ThreeMeasurementSetup: direction norm " +
                                          std::to_string(v->norm()) + " is not 1");
    }
    triple_ = dot(a_, cross(b_, c_));
    if (std::abs(triple_) <= triple_tol)
        throw DegenerateSetupError("ThreeMeasurementSetup: directions linearly dependent, |a.(b x c)| = " +
                                   std::to_string(std::abs(triple_)));
}

ConditionalProbTriple::ConditionalProbTriple(double pa, double pb, double pc)
    : pa(pa), pb(pb), pc(pc) {
    for (double p : {pa, pb, pc}) {
        if (!(p >= 0.0 && p <= 1.0))
            throw InvariantViolationError("ConditionalProbTriple: probability " +
                                          std::to_string(p) + " outside [0,1]");
    }
}

PauliDecomposition fit_general_operator(const ThreeMeasurementSetup& setup,
                                        const ConditionalProbTriple& probs) {
    // Unknowns x = (s0, sx, sy, sz, s0p, spx, spy, spz). For each direction v
    // and sign e: real part gives s0 + e s.v = p, imaginary part gives
    // s0p + e sp.v = 0.
    const BlochVector dirs[3] = {setup.a(), setup.b(), setup.c()};
    const double plus[3] = {probs.pa, probs.pb, probs.pc};

    RealMatrix m(12, 8);
    std::vector<double> rhs(12, 0.0);
    int row = 0;
    for (int d = 0; d < 3; ++d) {
        for (double sign : {1.0, -1.0}) {
            m.at(row, 0) = 1.0;
            m.at(row, 1) = sign * dirs[d].x;
            m.at(row, 2) = sign * dirs[d].y;
            m.at(row, 3) = sign * dirs[d].z;
            rhs[static_cast<std::size_t>(row)] = sign > 0 ? plus[d] : 1.0 - plus[d];
            ++row;
            m.at(row, 4) = 1.0;
            m.at(row, 5) = sign * dirs[d].x;
            m.at(row, 6) = sign * dirs[d].y;
            m.at(row, 7) = sign * dirs[d].z;
            rhs[static_cast<std::size_t>(row)] = 0.0;
            ++row;
        }
    }

    const LeastSquaresResult lsq = solve_least_squares(std::move(m), std::move(rhs));

    PauliDecomposition out;
    out.s0 = lsq.x[0];
    out.s = {lsq.x[1], lsq.x[2], lsq.x[3]};
    out.s0p = lsq.x[4];
    out.sp = {lsq.x[5], lsq.x[6], lsq.x[7]};
    return out;
}

BlochVector solve_state_vector(const ThreeMeasurementSetup& setup,
                               const ConditionalProbTriple& probs) {
    const BlochVector bc = cross(setup.b(), setup.c());
    const BlochVector ca = cross(setup.c(), setup.a());
    const BlochVector ab = cross(setup.a(), setup.b());
    const BlochVector num = (probs.pa - 0.5) * bc + (probs.pb - 0.5) * ca + (probs.pc - 0.5) * ab;
    return (1.0 / setup.triple_product()) * num;
}

RepresentationClass classify_representation(const BlochVector& s) {
    return s.norm() <= 1.0 + 1e-12 ? RepresentationClass::QuantumDensity
                                   : RepresentationClass::NoncommutativeOnly;
}

ThreeMeasurementSetup special_family_setup(double phi) {
    return ThreeMeasurementSetup({1.0, 0.0, 0.0},
                                 {0.0, std::cos(phi), -std::sin(phi)},
                                 {0.0, 0.0, 1.0});
}

BlochVector special_family_state(double phi, double p) {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    const double denominator = 1.0 + c - s;
    if (std::abs(denominator) < 1e-14)
        throw DegenerateSetupError("special_family_state: phi makes the family degenerate");
    const double y = (1.0 + c + s) / denominator;
    return (p - 0.5) * BlochVector{1.0, y, 1.0};
}

RegionScanResult scan_region(double phi_min, double phi_max, double p_min, double p_max,
                             int steps) {
    if (steps < 2) throw InvariantViolationError("scan_region: steps must be >= 2");
    if (!(phi_min > 0.0 && phi_max <= std::acos(-1.0) / 2 && phi_min < phi_max))
        throw InvariantViolationError("scan_region: phi range must lie in (0, pi/2]");
    if (!(p_min >= 0.0 && p_max <= 1.0 && p_min <= p_max))
        throw InvariantViolationError("scan_region: p range must lie in [0,1]");

    RegionScanResult out;
    out.phi_min = phi_min;
    out.phi_max = phi_max;
    out.p_min = p_min;
    out.p_max = p_max;
    out.steps = steps;
    out.points.reserve(static_cast<std::size_t>(steps) * steps);

    for (int i = 0; i < steps; ++i) {
        const double p = p_min + (p_max - p_min) * i / (steps - 1);
        for (int j = 0; j < steps; ++j) {
            // Half-open on the right: phi = phi_max itself is never evaluated.
            const double phi = phi_min + (phi_max - phi_min) * j / steps;
            const BlochVector s = special_family_state(phi, p);

            const BlochVector solved =
                solve_state_vector(special_family_setup(phi), ConditionalProbTriple(p, p, p));
            const double s_norm = s.norm();
            if ((s - solved).norm() > 1e-12 * std::max(1.0, s_norm))
                throw InvariantViolationError(
                    "scan_region: closed form and linear solve disagree at p=" +
                    std::to_string(p) + ", phi=" + std::to_string(phi));

            const bool density = classify_representation(s) == RepresentationClass::QuantumDensity;
            out.points.push_back(RegionScanPoint{p, phi, s_norm, density});
        }
    }
    return out;
}

} // namespace ncrl
