#pragma once

#include <vector>

#include "ncrl/operators.hpp"
#include "ncrl/pauli.hpp"

namespace ncrl {

/// Three yes-no measurement directions a, b, c: unit vectors, linearly
/// independent (|a.(b x c)| > 1e-10).
class ThreeMeasurementSetup {
public:
    ThreeMeasurementSetup(const BlochVector& a, const BlochVector& b, const BlochVector& c,
                          double unit_tol = 1e-10, double triple_tol = 1e-10);

    const BlochVector& a() const { return a_; }
    const BlochVector& b() const { return b_; }
    const BlochVector& c() const { return c_; }
    double triple_product() const { return triple_; }

private:
    BlochVector a_, b_, c_;
    double triple_;
};

/// Probabilities of the "+" outcome for each direction; complements are 1-p.
struct ConditionalProbTriple {
    double pa;
    double pb;
    double pc;

    ConditionalProbTriple(double pa, double pb, double pc);
};

/// Least-squares fit of a general 2x2 operator to all six outcome
/// probabilities (12 real equations, 8 real unknowns). The imaginary
/// coefficients come out zero; s0 comes out 1/2.
PauliDecomposition fit_general_operator(const ThreeMeasurementSetup& setup,
                                        const ConditionalProbTriple& probs);

/// Closed-form state coefficient vector
///   s = [(pa-1/2)(b x c) + (pb-1/2)(c x a) + (pc-1/2)(a x b)] / (a.(b x c)).
BlochVector solve_state_vector(const ThreeMeasurementSetup& setup,
                               const ConditionalProbTriple& probs);

enum class RepresentationClass { QuantumDensity, NoncommutativeOnly };

/// QuantumDensity iff |s| <= 1 + 1e-12; the boundary counts as a density
/// (pure states).
RepresentationClass classify_representation(const BlochVector& s);

struct RegionScanPoint {
    double p;
    double phi;
    double s_norm;
    bool is_density;
};

/// Grid scan of the family a = x, b = (0, cos phi, -sin phi), c = z with
/// pa = pb = pc = p. p-axis closed on both ends; phi-axis half-open on the
/// right (phi = pi/2 degenerates the setup). Rows ordered by (p, phi).
struct RegionScanResult {
    double phi_min = 0.0;
    double phi_max = 0.0;
    double p_min = 0.0;
    double p_max = 0.0;
    int steps = 0;
    std::vector<RegionScanPoint> points;
};

RegionScanResult scan_region(double phi_min, double phi_max, double p_min, double p_max,
                             int steps);

/// s for the special family above: (p-1/2) (1, (1+cos+sin)/(1+cos-sin), 1).
BlochVector special_family_state(double phi, double p);

/// The setup (x, (0,cos,-sin), z) of the special family.
ThreeMeasurementSetup special_family_setup(double phi);

} // namespace ncrl
