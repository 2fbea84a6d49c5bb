#pragma once

#include "keglue/potentials.hpp"

namespace keglue {

/// One glued configuration: the pre-glued Kaehler potential
///   Phi = tau (chi phi1 + (1-chi) phi2) + (1-tau) phi1   (minus p_t),
/// chi = chi(|w|/delta^{4/3}) climbing over [delta^{4/3}, 2 delta^{4/3}],
/// tau = 1 - chi(|w|) descending over [1, 2]; together with its Ricci
/// potential measured relative to the central model's own Ricci potential
/// transported by the smoothing map (the local stand-in for the KE identity
/// on the central fiber).
struct GluedModel {
    GluingParams gp;
    double Craw;  // raw EH volume ratio, computed at a reference point; 1/2 analytically

    explicit GluedModel(const GluingParams& g) : gp(g) {
        auto eh = [&](const Jet& s) { return eh_potential_jet(s, gp.t()); };
        Craw = vol_ratio_raw_jet(eh, 1.0, gp.t()).value();
    }

    Jet chi_jet(const Jet& s) const {
        return cutoff_profile_jet(jet_sqrt(s) * (1.0 / gp.glue_lo()));
    }
    Jet tau_jet(const Jet& s) const { return 1.0 - cutoff_profile_jet(jet_sqrt(s)); }

    Jet phi1_jet(const Jet& s) const { return pulled_central_jet(s, gp.t(), gp.c2); }
    Jet phi2_jet(const Jet& s) const { return eh_potential_jet(s, gp.t()); }

    /// radial part of the pre-glued potential
    Jet blend_jet(const Jet& s) const {
        const double r = std::sqrt(s.value());
        if (r <= gp.glue_lo()) return phi2_jet(s);       // chi = 0, tau = 1
        const Jet chi = chi_jet(s);
        const Jet inner = chi * phi1_jet(s) + (1.0 - chi) * phi2_jet(s);
        if (r <= 1.0) return inner;                      // tau = 1
        const Jet tau = tau_jet(s);
        return tau * inner + (1.0 - tau) * phi1_jet(s);  // equals phi1 since chi = 1 here
    }

    RadialPotential blend() const {
        return [this](const Jet& s) { return blend_jet(s); };
    }
    RadialPotential eh() const {
        return [this](const Jet& s) { return phi2_jet(s); };
    }
    RadialPotential pulled_central() const {
        return [this](const Jet& s) { return phi1_jet(s); };
    }

    /// full pre-glued potential at a point (pluriharmonic part included)
    double preglued_potential(const SurfacePoint& p) const {
        return blend_jet(Jet::variable(p.s())).value() -
               pluriharmonic_correction(p.w, gp.ph_coeffs);
    }

    /// pre-glued metric form in the chart of p; throws NotPositiveError with
    /// the location when the configuration fails positivity (delta too large)
    Mat2c metric(const SurfacePoint& p) const {
        const Mat2c g = complex_hessian_radial(blend(), p);
        if (min_eigenvalue(g) <= 0.0)
            throw NotPositiveError("preglued metric not positive at |w| = " +
                                   std::to_string(p.absw()));
        return g;
    }

    RadialFrame frame(double s) const { return radial_frame(blend(), s, gp.t()); }

    /// volume ratio omega^2 / (C Omega ^ bar-Omega), normalized so the
    /// Eguchi-Hanson metric gives exactly 1
    double vol_ratio_to_omega(const Mat2c& g, const SurfacePoint& p) const {
        return vol_ratio_raw(g, p) / Craw;
    }

    /// cone-model normalized volume ratio as a jet in s0 = |z|^2
    Jet cone_log_ratio_jet(const Jet& s0) const {
        auto pot = [&](const Jet& q) { return central_model_jet(q, gp.c2); };
        const Jet raw = vol_ratio_raw_jet(pot, s0.value(), 0.0);
        return jet_chain(jet_log(raw * (1.0 / Craw)), s0);
    }

    /// Radial part of the Ricci potential f (normalization Ric = omega + i ddbar f,
    /// measured relative to the transported central-model Ricci potential):
    ///   core:     f = -phi2
    ///   glue:     f = -log volratio(omega~) + chi log volratio_0(zeta) - (1-chi) phi2
    ///   chi == 1: f = -log1p(t^2 / (2 P (s+P))),  P = sqrt(s^2 - t^2)
    /// the last line being the exact cancellation of the first form; the
    /// pluriharmonic part is added pointwise in ricci_potential().
    Jet ricci_jet(double s) const {
        const double t = gp.t();
        const double r = std::sqrt(s);
        const Jet sj = Jet::variable(s);
        if (r <= gp.glue_lo()) return -phi2_jet(sj);
        if (r >= gp.glue_hi()) {
            const Jet P = jet_sqrt(sj * sj - t * t);
            return -jet_log1p((t * t) / (2.0 * P * (sj + P)));
        }
        const Jet chi = chi_jet(sj);
        const Jet logR = jet_log(vol_ratio_raw_jet(blend(), s, t) * (1.0 / Craw));
        const Jet logR0 = cone_log_ratio_jet(zeta2_jet(sj, t));
        return -logR + chi * logR0 - (1.0 - chi) * phi2_jet(sj);
    }

    double ricci_potential(const SurfacePoint& p) const {
        double f = ricci_jet(p.s()).value();
        if (gp.has_ph()) {
            f += pluriharmonic_correction(p.w, gp.ph_coeffs);
            const double chi = chi_jet(Jet::variable(p.s())).value();
            if (chi > 0.0) {
                const Vec3c z = inverse_smoothing_map(p.w, gp.t());
                f -= chi * pluriharmonic_correction(z, gp.ph_coeffs);
            }
        }
        return f;
    }

    RegionTag region(const SurfacePoint& p) const { return classify_region(p.absw(), gp); }
};

}  // namespace keglue
