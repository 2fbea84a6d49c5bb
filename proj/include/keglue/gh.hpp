#pragma once

#include <queue>

#include "keglue/solver.hpp"

namespace keglue {

// ---------------------------------------------------------------------------
// geodesic radial distance in the glued metric
// ---------------------------------------------------------------------------

namespace detail {

/// integrand for radial arclength in the regularizing variable v = (s-t)^{1/4}:
/// ds = 4 v^3 dv and d(rho)/ds = sqrt(g1/(4 b^2)) with 4 b^2 = 2(s - t) = 2 v^4,
/// so d(rho) = 2 sqrt(2) v sqrt(g1(t + v^4)) dv, smooth down to the cycle.
inline double radial_speed(const GluedModel& M, double v) {
    const double t = M.gp.t();
    const double s = t + v * v * v * v;
    const double g1 = M.frame(s).g1.value();
    if (g1 <= 0.0) throw NotPositiveError("radial_speed: metric not positive");
    return 2.0 * std::sqrt(2.0) * v * std::sqrt(g1);
}

inline double simpson(const GluedModel& M, double a, double b, double fa, double fm,
                      double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson(const GluedModel& M, double a, double b, double fa,
                               double fm, double fb, double whole, double tol,
                               int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = radial_speed(M, lm), frm = radial_speed(M, rm);
    const double left = simpson(M, a, m, fa, flm, fm);
    const double right = simpson(M, m, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(M, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(M, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Geodesic length of the radial segment between the spheres |w| = r1, |w| = r2
/// (r1 may sit on the vanishing cycle, |w| = sqrt(t)).
inline double radial_distance(const GluedModel& M, double r1, double r2,
                              double tol = 1e-12) {
    if (r2 < r1) std::swap(r1, r2);
    const double t = M.gp.t();
    const double s1 = r1 * r1, s2 = r2 * r2;
    if (s1 < t * (1.0 - 1e-9))
        throw OutOfRangeError("radial_distance: radius below the vanishing cycle");
    const double a = std::pow(std::max(s1 - t, 0.0), 0.25);
    const double b = std::pow(s2 - t, 0.25);
    if (b <= a) return 0.0;
    const double fa = detail::radial_speed(M, a);
    const double fb = detail::radial_speed(M, b);
    const double fm = detail::radial_speed(M, 0.5 * (a + b));
    const double whole = detail::simpson(M, a, b, fa, fm, fb);
    return detail::adaptive_simpson(M, a, b, fa, fm, fb, whole, tol, 40);
}

// ---------------------------------------------------------------------------
// finite metric spaces, graph metrics, matched correspondences
// ---------------------------------------------------------------------------

struct MetricGraph {
    int n = 0;
    std::vector<std::vector<std::pair<int, double>>> adj;

    explicit MetricGraph(int nodes = 0) : n(nodes), adj(nodes) {}
    void add_edge(int i, int j, double w) {
        adj[i].push_back({j, w});
        adj[j].push_back({i, w});
    }

    std::vector<double> dijkstra(int src) const {
        std::vector<double> d(n, std::numeric_limits<double>::infinity());
        std::priority_queue<std::pair<double, int>, std::vector<std::pair<double, int>>,
                            std::greater<>> q;
        d[src] = 0.0;
        q.push({0.0, src});
        while (!q.empty()) {
            auto [dv, v] = q.top();
            q.pop();
            if (dv > d[v]) continue;
            for (auto [u, w] : adj[v])
                if (dv + w < d[u]) {
                    d[u] = dv + w;
                    q.push({d[u], u});
                }
        }
        return d;
    }

    Mat all_pairs() const {
        Mat D(n, n);
        for (int i = 0; i < n; ++i) {
            auto d = dijkstra(i);
            for (int j = 0; j < n; ++j) {
                if (!std::isfinite(d[j]))
                    throw DegenerateDataError("MetricGraph: disconnected sample graph");
                D(i, j) = d[j];
            }
        }
        return D;
    }
};

/// Intrinsic diameter of the vanishing cycle |w| = sqrt(t): it is a round
/// totally geodesic 2-sphere, measured here through a geodesic grid graph.
inline double vanishing_cycle_diameter(const GluedModel& M, int n_theta = 20,
                                       int n_phi = 40) {
    // the cycle is the real sphere |x|^2 = t; at its points the chart Hessian
    // reduces to g2 * I, so tangent speed is sqrt(2 g2) |dx| and the intrinsic
    // radius is sqrt(2 g2 t).
    const double t = M.gp.t();
    const double g2 = M.frame(t).g2.value();
    if (g2 <= 0.0) throw NotPositiveError("vanishing_cycle_diameter: metric degenerate");
    const double R = std::sqrt(2.0 * g2 * t);
    // geodesic graph on the unit sphere scaled by R, arc-length edges
    struct P3 { double x, y, z; };
    std::vector<P3> pts;
    pts.push_back({0, 0, 1});
    for (int i = 1; i < n_theta; ++i) {
        const double th = M_PI * double(i) / double(n_theta);
        for (int j = 0; j < n_phi; ++j) {
            const double ph = 2.0 * M_PI * double(j) / double(n_phi);
            pts.push_back({std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
                           std::cos(th)});
        }
    }
    pts.push_back({0, 0, -1});
    const int N = int(pts.size());
    auto arc = [&](int a, int b) {
        const double dot = pts[a].x * pts[b].x + pts[a].y * pts[b].y + pts[a].z * pts[b].z;
        return R * std::acos(std::clamp(dot, -1.0, 1.0));
    };
    MetricGraph G(N);
    auto idx = [&](int i, int j) { return 1 + (i - 1) * n_phi + ((j % n_phi + n_phi) % n_phi); };
    for (int j = 0; j < n_phi; ++j) {
        G.add_edge(0, idx(1, j), arc(0, idx(1, j)));
        G.add_edge(N - 1, idx(n_theta - 1, j), arc(N - 1, idx(n_theta - 1, j)));
    }
    for (int i = 1; i < n_theta; ++i)
        for (int j = 0; j < n_phi; ++j) {
            G.add_edge(idx(i, j), idx(i, j + 1), arc(idx(i, j), idx(i, j + 1)));
            if (i + 1 < n_theta)
                G.add_edge(idx(i, j), idx(i + 1, j), arc(idx(i, j), idx(i + 1, j)));
        }
    const Mat D = G.all_pairs();
    return D.maxCoeff();
}

// ---------------------------------------------------------------------------
// matched sampling of the cone and the smoothing, distortion bound
// ---------------------------------------------------------------------------

inline Vec3c surface_project(const Vec3c& w, double t);

struct MatchedSamples {
    // matched node sets: cone node k corresponds to smoothing node k; the cone
    // apex corresponds to a marked point of the vanishing cycle.
    Mat d_cone;    // graph metric on the cone sample
    Mat d_smooth;  // graph metric on the matched smoothing sample
    double mesh = 0.0;  // covering radius estimate of the sample in the cone
};

struct GhOptions {
    int n_shells = 14;
    int n_dirs = 24;
    int knn = 8;
    double r_cut = 1.0;  // outer radius of the compared region
};

/// Builds matched graph approximations of the cone region {delta-cycle scale
/// <= |z| <= r_cut} in the singular model and its image under the smoothing
/// map, including the apex / vanishing-cycle pair, and returns both graph
/// metrics over the shared combinatorics.
inline MatchedSamples matched_samples(const GluedModel& M, const GhOptions& opt = {}) {
    const double t = M.gp.t();
    if (opt.n_shells < 2 || opt.n_dirs < 4)
        throw OutOfRangeError("matched_samples: sample too small");

    // Cone side: the fixed graph on V_0 (potential sqrt(s) + c2 s), shells
    // uniform in sqrt(r) so radial gaps have constant metric length and the
    // cone sample is independent of delta. Smoothing side: the images under
    // the smoothing map; shell points inside the collapsed core
    // {2 |z|^2 <= t} are assigned to their limit points on the vanishing
    // cycle, the apex to a marked cycle point.
    std::vector<double> shell_r(opt.n_shells);
    for (int i = 0; i < opt.n_shells; ++i) {
        const double u = double(i + 1) / double(opt.n_shells);
        shell_r[i] = opt.r_cut * u * u;
    }
    const int N = opt.n_shells * opt.n_dirs + 1;  // +1: apex / cycle marker
    const int APEX = N - 1;

    std::vector<Vec3c> zpts(N), wpts(N);
    std::vector<double> rs(N);
    std::vector<bool> collapsed(N, false);
    for (int i = 0; i < opt.n_shells; ++i)
        for (int j = 0; j < opt.n_dirs; ++j) {
            const int k = i * opt.n_dirs + j;
            const Frame3 fr = frame_sample(j + 1);
            const double r = shell_r[i];
            rs[k] = r;
            // cone point: z = r (x + i y)/sqrt(2), |z| = r, lies on V_0
            for (int c = 0; c < 3; ++c)
                zpts[k](c) = (r / std::sqrt(2.0)) * cplx(fr.x(c), fr.y(c));
            if (2.0 * r * r <= t * (1.0 + 1e-12)) {
                collapsed[k] = true;
                // limit of the smoothing image as |z|^2 -> t/2: sqrt(t) x
                for (int c = 0; c < 3; ++c) wpts[k](c) = cplx(std::sqrt(t) * fr.x(c), 0.0);
            } else {
                wpts[k] = smoothing_map(zpts[k], t);
            }
        }
    zpts[APEX].setZero();
    rs[APEX] = 0.0;
    collapsed[APEX] = true;
    {   // marked cycle point: the cycle is the real sphere |x|^2 = t
        const Frame3 fr = frame_sample(1);
        for (int c = 0; c < 3; ++c) wpts[APEX](c) = cplx(std::sqrt(t) * fr.x(c), 0.0);
    }

    // edge set: kNN by ambient cone distance, shared by both graphs
    std::vector<std::pair<int, int>> edges;
    for (int k = 0; k < N - 1; ++k) {
        std::vector<std::pair<double, int>> cand;
        for (int l = 0; l < N - 1; ++l)
            if (l != k) cand.push_back({(zpts[k] - zpts[l]).norm(), l});
        std::partial_sort(cand.begin(), cand.begin() + std::min<size_t>(opt.knn, cand.size()),
                          cand.end());
        for (int q = 0; q < opt.knn && q < int(cand.size()); ++q) {
            int a = k, b = cand[q].second;
            if (a > b) std::swap(a, b);
            edges.push_back({a, b});
        }
    }
    // apex edges to the innermost shell
    for (int j = 0; j < opt.n_dirs; ++j) edges.push_back({0 * opt.n_dirs + j, APEX});
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    // cone edge lengths: Riemannian chords in the cone metric via the same
    // chart machinery as the smoothing side (t = 0 surface points); apex
    // edges use the exact radial arclength of the central model:
    // d rho / dv = 2 sqrt(1 + 4 c2 v^2) with v = sqrt(|z|), exact for c2 = 0
    // where d(apex, r) = 2 sqrt(r).
    auto cone_radial = [&](double a, double b) {
        const int NQ = 64;
        const double va = std::sqrt(a), vb = std::sqrt(b);
        double acc = 0.0;
        const double h = (vb - va) / NQ;
        for (int q = 0; q <= NQ; ++q) {
            const double v = va + h * q;
            const double wq = (q == 0 || q == NQ) ? 0.5 : 1.0;
            acc += wq * 2.0 * std::sqrt(1.0 + 4.0 * M.gp.c2 * v * v);
        }
        return acc * h;
    };
    RadialPotential cone_pot = [c2 = M.gp.c2](const Jet& s) {
        return central_model_jet(s, c2);
    };
    auto chord = [&](const Vec3c& wa, const Vec3c& wb, double tt, bool glued) {
        const Vec3c mid = 0.5 * (wa + wb);
        const Vec3c mid_on = mid.norm() > std::sqrt(tt) * 1.05 || tt == 0.0
                                 ? surface_project(mid, tt)
                                 : wa;
        SurfacePoint pm = make_point(mid_on, tt);
        const Mat2c g = glued ? M.metric(pm) : complex_hessian_radial(cone_pot, pm);
        auto [i1, i2] = free_indices(pm.chart);
        Vec2c du;
        du << wb(i1) - wa(i1), wb(i2) - wa(i2);
        const double l2 = riem_len2(g, du);
        if (l2 < 0.0) throw NotPositiveError("matched_samples: negative chord length");
        return std::sqrt(l2);
    };

    const double Rcyc = std::sqrt(2.0 * M.frame(t).g2.value() * t);
    auto frame_of = [&](int k) {
        return frame_sample(k == APEX ? 1 : (k % opt.n_dirs) + 1);
    };
    auto cycle_arc = [&](int a, int b) {
        const double dot = frame_of(a).x.dot(frame_of(b).x);
        return Rcyc * std::acos(std::clamp(dot, -1.0, 1.0));
    };
    // radial leg from the cycle out to the shell of node k (zero on the core)
    auto radial_leg = [&](int k) {
        return collapsed[k] ? 0.0 : radial_distance(M, std::sqrt(t), rs[k]);
    };

    MetricGraph Gc(N), Gs(N);
    for (auto [a, b] : edges) {
        double lc, ls;
        if (collapsed[a] || collapsed[b]) {
            // route through the apex on the cone; on the smoothing, drop to
            // the cycle, traverse the cycle arc, and climb back out
            lc = cone_radial(0.0, rs[a]) + cone_radial(0.0, rs[b]);
            ls = radial_leg(a) + cycle_arc(a, b) + radial_leg(b);
        } else {
            lc = chord(zpts[a], zpts[b], 0.0, false);
            ls = chord(wpts[a], wpts[b], t, true);
        }
        Gc.add_edge(a, b, lc);
        Gs.add_edge(a, b, ls);
    }

    MatchedSamples out;
    out.d_cone = Gc.all_pairs();
    out.d_smooth = Gs.all_pairs();
    // covering radius estimate: max over shells of (half radial gap + half arc
    // gap); the link length scale per radian at radius r is sqrt(2 f'(s) s)
    double mesh = 0.0;
    for (int i = 0; i + 1 < opt.n_shells; ++i)
        mesh = std::max(mesh, 0.5 * cone_radial(shell_r[i], shell_r[i + 1]));
    const double s_cut = opt.r_cut * opt.r_cut;
    const double link_scale =
        std::sqrt(2.0 * central_model_jet(Jet::variable(s_cut), M.gp.c2).deriv(1) * s_cut);
    mesh += 0.5 * link_scale * (2.0 * M_PI / std::sqrt(double(opt.n_dirs)));
    out.mesh = mesh;
    return out;
}

/// helper used above: pull an ambient midpoint back onto the surface by
/// re-solving the dominant coordinate
inline Vec3c surface_project(const Vec3c& w, double t) {
    int k = 0;
    double best = 0.0;
    for (int c = 0; c < 3; ++c)
        if (std::abs(w(c)) >= best) { best = std::abs(w(c)); k = c; }
    auto [i1, i2] = free_indices(ChartId{k, 1});
    Vec3c out = w;
    const cplx q = cplx(t, 0.0) - w(i1) * w(i1) - w(i2) * w(i2);
    cplx root = std::sqrt(q);
    if (std::abs(root - w(k)) > std::abs(root + w(k))) root = -root;
    out(k) = root;
    return out;
}

/// Exact radial distance from the cone apex to radius r for the central model
/// potential sqrt(s) + c2 s: arclength of 2 sqrt(1 + 4 c2 v^2) dv, v = sqrt(r).
inline double cone_apex_distance(double c2, double r) {
    const int NQ = 64;
    const double vb = std::sqrt(r);
    double acc = 0.0;
    const double h = vb / NQ;
    for (int q = 0; q <= NQ; ++q) {
        const double v = h * q;
        const double wq = (q == 0 || q == NQ) ? 0.5 : 1.0;
        acc += wq * 2.0 * std::sqrt(1.0 + 4.0 * c2 * v * v);
    }
    return acc * h;
}

struct GhResult {
    double distortion = 0.0;       // sup |d_cone - d_smooth| over matched pairs
    double collapse_defect = 0.0;  // diameter budget of the collapsed core
    double mesh = 0.0;             // covering radius of the sample (caveat)
    double gh_bound = 0.0;         // 3 * max(distortion, collapse defect)
    double cycle_diameter = 0.0;
};

inline GhResult gh_compare(const GluedModel& M, const GhOptions& opt = {}) {
    const MatchedSamples S = matched_samples(M, opt);
    GhResult out;
    out.distortion = (S.d_cone - S.d_smooth).cwiseAbs().maxCoeff();
    out.mesh = S.mesh;
    // collapsed core {2 |z|^2 <= t}: everything there is identified with a
    // cycle point, so the approximation defect it contributes is at most the
    // core's cone diameter (through the apex)
    out.collapse_defect = 2.0 * cone_apex_distance(M.gp.c2, std::sqrt(M.gp.t() / 2.0));
    out.gh_bound = 3.0 * std::max(out.distortion, out.collapse_defect);
    out.cycle_diameter = vanishing_cycle_diameter(M);
    return out;
}

/// Certified scale at which the solved metric is trapped near the pre-glued
/// one: reference diameter times the square root of the Hessian bound.
inline double solved_displacement_bound(double reference_diameter, double hess_bound) {
    if (hess_bound < 0.0) throw OutOfRangeError("solved_displacement_bound: negative bound");
    return reference_diameter * std::sqrt(hess_bound);
}

struct GhSweepRow {
    double delta;
    double gh_bound;
    double cycle_diameter;
    double distortion;
    double collapse_defect;
    double mesh;
};

inline std::vector<GhSweepRow> gh_sweep(const std::vector<double>& deltas,
                                        double c2 = 0.05, const GhOptions& opt = {}) {
    std::vector<GhSweepRow> rows;
    for (double d : deltas) {
        GluingParams gp;
        gp.delta = d;
        gp.c2 = c2;
        gp.validate();
        GluedModel M(gp);
        const GhResult r = gh_compare(M, opt);
        rows.push_back({d, r.gh_bound, r.cycle_diameter, r.distortion, r.collapse_defect,
                        r.mesh});
    }
    return rows;
}

}  // namespace keglue
