#pragma once

#include "keglue/geometry.hpp"

namespace keglue {

// ---------------------------------------------------------------------------
// cut-off profile: 0 on (-inf, 1], 1 on [2, inf), exponentially flat at both
// ends (all derivatives vanish there), built from exp(-1/y) smoothstep.
// ---------------------------------------------------------------------------

inline Jet cutoff_profile_jet(const Jet& x) {
    if (x.value() <= 1.0) return Jet(0.0);
    if (x.value() >= 2.0) return Jet(1.0);
    const Jet e1 = jet_exp(-1.0 / (x - 1.0));
    const Jet e2 = jet_exp(-1.0 / (2.0 - x));
    return e1 / (e1 + e2);
}

/// value, first and second derivative of the profile
inline std::array<double, 3> cutoff_profile(double x) {
    const Jet j = cutoff_profile_jet(Jet::variable(x));
    return {j.value(), j.d1(), j.d2()};
}

// ---------------------------------------------------------------------------
// model potentials, all as jets in s = |w|^2
// ---------------------------------------------------------------------------

/// Eguchi-Hanson potential sqrt(s + t), t = delta^4; the unique scale with
/// eta = i ddbar sqrt(|w|^2+t) glued at sqrt(t) = delta^2.
inline Jet eh_potential_jet(const Jet& s, double t) { return jet_sqrt(s + t); }

/// Central model potential on the cone V_0 as a function of s0 = |z|^2:
/// |z| + c2 |z|^2 (the quadratic term stands in for the O(|z|^2) error of
/// the orbifold expansion).
inline Jet central_model_jet(const Jet& s0, double c2) {
    const Jet z = jet_sqrt(s0);
    return z + c2 * s0;
}

/// |z|^2 of the inverse smoothing map as a function of s = |w|^2:
/// zeta^2 = (s + P)/2 with P = sqrt(s^2 - t^2).  Needs s > t.
inline Jet zeta2_jet(const Jet& s, double t) {
    if (s.value() <= t)
        throw CollapsedLocusError("zeta2_jet: inverse map undefined at or below the cycle");
    const Jet P = jet_sqrt(s * s - t * t);
    return (s + P) * 0.5;
}

/// Pulled-back central potential phi^1_delta(s) = phi^1_0(zeta(s)).
inline Jet pulled_central_jet(const Jet& s, double t, double c2) {
    return central_model_jet(zeta2_jet(s, t), c2);
}

// ---------------------------------------------------------------------------
// the smoothing diffeomorphism psi_t : V_0 -> V_t and its inverse
// ---------------------------------------------------------------------------

inline Vec3c smoothing_map(const Vec3c& z, double t) {
    const double n2 = z.squaredNorm();
    if (2.0 * n2 <= t)
        throw CollapsedLocusError("smoothing_map: |z|^2 must exceed t/2");
    Vec3c w;
    for (int i = 0; i < 3; ++i) w(i) = z(i) + (t / (2.0 * n2)) * std::conj(z(i));
    return w;
}

inline Vec3c inverse_smoothing_map(const Vec3c& w, double t) {
    const double s = w.squaredNorm();
    if (s <= t)
        throw CollapsedLocusError("inverse_smoothing_map: point at or below the vanishing cycle");
    const double P = std::sqrt(s * s - t * t);
    const double z2 = 0.5 * (s + P);
    const double k = t / (2.0 * z2);
    Vec3c z;
    for (int i = 0; i < 3; ++i) z(i) = (w(i) - k * std::conj(w(i))) / (1.0 - k * k);
    return z;
}

// ---------------------------------------------------------------------------
// pluriharmonic correction Re(sum a_i w_i); i ddbar of it vanishes
// ---------------------------------------------------------------------------

inline double pluriharmonic_correction(const Vec3c& w, const std::array<cplx, 3>& a) {
    cplx acc = 0.0;
    for (int i = 0; i < 3; ++i) acc += a[i] * w(i);
    return acc.real();
}

}  // namespace keglue
