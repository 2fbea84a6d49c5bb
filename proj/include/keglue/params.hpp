#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace keglue {

using cplx = std::complex<double>;

struct Error : std::runtime_error {
    explicit Error(const std::string& m) : std::runtime_error(m) {}
};

struct BranchCutError : Error { using Error::Error; };
struct DegenerateChartError : Error { using Error::Error; };
struct NotPositiveError : Error { using Error::Error; };
struct StepUnderflowError : Error { using Error::Error; };
struct UnregisteredRadialError : Error { using Error::Error; };
struct CollapsedLocusError : Error { using Error::Error; };
struct OutOfRangeError : Error { using Error::Error; };
struct EmptySampleError : Error { using Error::Error; };
struct DegenerateDataError : Error { using Error::Error; };
struct ConfigParseError : Error { using Error::Error; };
struct NoConvergenceError : Error { using Error::Error; };

/// Largest neck scale delta for which the pre-glued family is used.
inline constexpr double kDeltaMax = 0.2;

/// Parameters of one gluing configuration.  The smoothing parameter is
/// t = delta^4 (normalized so that sqrt(t) = delta^2), so the
/// vanishing cycle sits at |w| = delta^2 and the damage zone of the
/// cut-off at |w| ~ delta^{4/3}.
struct GluingParams {
    double delta = 1.0 / 16.0;
    double beta = -1.0;      // weight exponent, must be in (-2, 0)
    double gamma = 0.5;      // Hoelder exponent, in (0, 1)
    double c2 = 0.05;        // quadratic coefficient of the central model
    std::array<cplx, 3> ph_coeffs{};  // pluriharmonic correction Re(sum a_i w_i)

    GluingParams() = default;
    explicit GluingParams(double d) : delta(d) { validate(); }
    GluingParams(double d, double b) : delta(d), beta(b) { validate(); }

    double t() const { return delta * delta * delta * delta; }
    double sqrt_t() const { return delta * delta; }
    /// glue region inner edge |w| = delta^{4/3}
    double glue_lo() const { return std::pow(delta, 4.0 / 3.0); }
    double glue_hi() const { return 2.0 * glue_lo(); }

    bool has_ph() const {
        return std::abs(ph_coeffs[0]) + std::abs(ph_coeffs[1]) + std::abs(ph_coeffs[2]) > 0.0;
    }

    void validate() const {
        if (!(delta > 0.0) || delta > kDeltaMax)
            throw OutOfRangeError("delta must lie in (0, " + std::to_string(kDeltaMax) + "]");
        if (!(beta > -2.0) || !(beta < 0.0))
            throw OutOfRangeError("beta must lie in (-2, 0)");
        if (!(gamma > 0.0) || !(gamma < 1.0))
            throw OutOfRangeError("gamma must lie in (0, 1)");
        if (std::abs(c2) > 0.1)
            throw OutOfRangeError("|c2| must be <= 0.1 to keep the central model positive");
    }
};

/// Region labels on the smoothing, by ambient radius |w|.
enum class RegionTag { Core, Glue, Neck, Match, Outer };

inline RegionTag classify_region(double absw, const GluingParams& gp) {
    if (absw <= gp.glue_lo()) return RegionTag::Core;
    if (absw <= gp.glue_hi()) return RegionTag::Glue;
    if (absw <= 1.0) return RegionTag::Neck;
    if (absw <= 2.0) return RegionTag::Match;
    return RegionTag::Outer;
}

inline const char* region_name(RegionTag r) {
    switch (r) {
        case RegionTag::Core: return "core";
        case RegionTag::Glue: return "glue";
        case RegionTag::Neck: return "neck";
        case RegionTag::Match: return "match";
        case RegionTag::Outer: return "outer";
    }
    return "?";
}

/// Bound on the number of nodes of a nodal Del Pezzo surface of the given
/// degree that admits a smoothing with KE metrics of the glued kind:
/// #nodes <= 10 - 2*deg, degrees 1..9.
inline int node_bound(int degree) {
    if (degree < 1 || degree > 9)
        throw OutOfRangeError("node_bound: degree must lie in 1..9");
    return 10 - 2 * degree;  // nonpositive means no admissible nodal surface
}

}  // namespace keglue
