#include <emharv/magnetics.hpp>

#include <cmath>
#include <numbers>
#include <vector>

namespace emharv {

namespace {

// Nodes/weights of n-point Gauss-Legendre on [-1, 1], by Newton iteration on
// the Legendre recurrence. n stays small (<= ~1024), accuracy is ample.
void gauss_legendre(int n, std::vector<Scalar>& nodes, std::vector<Scalar>& weights) {
    nodes.resize(n);
    weights.resize(n);
    const Scalar pi = std::numbers::pi_v<Scalar>;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        Scalar x = std::cos(pi * (i + 0.75) / (n + 0.5));
        Scalar dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            Scalar p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const Scalar p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const Scalar step = p1 / dp;
            x -= step;
            if (std::abs(step) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        const Scalar w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

// Corner-sum of the arctan kernel for one charged face at height h = z - z_face.
Scalar face_corner_sum(Scalar u1, Scalar u2, Scalar v1, Scalar v2, Scalar h) {
    Scalar sum = 0;
    const Scalar us[2] = {u1, u2};
    const Scalar vs[2] = {v1, v2};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const Scalar u = us[i];
            const Scalar v = vs[j];
            const Scalar r = std::sqrt(u * u + v * v + h * h);
            const Scalar sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            sum += sign * std::atan2(u * v, h * r);
        }
    }
    return sum;
}

bool on_face_edge(const CuboidMagnet& m, const Vec3& p) {
    const Vec3 lo = m.center - m.half_extents;
    const Vec3 hi = m.center + m.half_extents;
    const bool on_x = (p.x() == lo.x() || p.x() == hi.x());
    const bool on_y = (p.y() == lo.y() || p.y() == hi.y());
    const bool on_z = (p.z() == lo.z() || p.z() == hi.z());
    const bool in_x = (p.x() >= lo.x() && p.x() <= hi.x());
    const bool in_y = (p.y() >= lo.y() && p.y() <= hi.y());
    // Edges of the charged faces z = lo.z/hi.z, where the kernel is singular.
    return on_z && ((on_x && in_y) || (on_y && in_x));
}

}  // namespace

Scalar bz_cuboid(const CuboidMagnet& magnet, const Vec3& point) {
    if (on_face_edge(magnet, point)) {
        throw singular_point_error("bz_cuboid: point lies on a charged-face edge");
    }
    const Vec3 lo = magnet.center - magnet.half_extents;
    const Vec3 hi = magnet.center + magnet.half_extents;
    const Scalar u1 = point.x() - lo.x();
    const Scalar u2 = point.x() - hi.x();
    const Scalar v1 = point.y() - lo.y();
    const Scalar v2 = point.y() - hi.y();

    const Scalar top = face_corner_sum(u1, u2, v1, v2, point.z() - hi.z());
    const Scalar bottom = face_corner_sum(u1, u2, v1, v2, point.z() - lo.z());

    const Scalar bz = magnet.magnetization_sign * magnet.remanence /
                      (4.0 * std::numbers::pi_v<Scalar>)*(top - bottom);
    if (!std::isfinite(bz)) {
        throw singular_point_error("bz_cuboid: singular evaluation");
    }
    return bz;
}

Scalar bz_array(const MagnetArray& array, const Vec3& point) {
    Scalar sum = 0;
    for (const auto& m : array.magnets) sum += bz_cuboid(m, point);
    return sum;
}

MagnetArray make_magnet_array(const DeviceGeometry& geom, const MaterialProps& mat) {
    MagnetArray array;
    const Vec3 half(geom.magnet_x / 2.0, geom.magnet_y / 2.0, geom.magnet_z / 2.0);
    const Scalar xc = geom.magnet_x / 2.0;              // column centers at +/- magnet_x/2
    const Scalar zc = geom.gap / 2.0 + geom.magnet_z / 2.0;
    int idx = 0;
    for (const Scalar sx : {-1.0, 1.0}) {
        const Scalar sign = (sx < 0) ? 1.0 : -1.0;      // left column +z, right column -z
        for (const Scalar sz : {1.0, -1.0}) {
            array.magnets[idx++] = CuboidMagnet{Vec3(sx * xc, 0.0, sz * zc), half,
                                                sign, mat.remanence};
        }
    }
    return array;
}

MagnetArray displaced(const MagnetArray& array, Scalar dx) {
    MagnetArray shifted = array;
    for (auto& m : shifted.magnets) m.center.x() += dx;
    return shifted;
}

Scalar flux_through_turn(const MagnetArray& array, Scalar turn_radius,
                         const Vec3& turn_center, const TurnQuadratureOptions& opts) {
    if (!(turn_radius >= 0)) {
        throw std::invalid_argument("flux_through_turn: negative turn radius");
    }
    if (turn_radius == 0.0) return 0.0;

    const Scalar pi = std::numbers::pi_v<Scalar>;
    Scalar scale = 0;
    for (const auto& m : array.magnets) scale = std::max(scale, std::abs(m.remanence));
    const Scalar abs_floor = 1e-12 * scale * pi * turn_radius * turn_radius;

    std::vector<Scalar> rn, rw;
    Scalar prev = 0;
    for (int level = 0; level < opts.max_levels; ++level) {
        const int nr = opts.initial_radial << level;
        const int nt = 2 * nr;
        gauss_legendre(nr, rn, rw);
        Scalar total = 0;
        for (int i = 0; i < nr; ++i) {
            const Scalar r = 0.5 * turn_radius * (rn[i] + 1.0);
            const Scalar wr = 0.5 * turn_radius * rw[i];
            Scalar ring = 0;
            for (int j = 0; j < nt; ++j) {
                const Scalar th = 2.0 * pi * (j + 0.5) / nt;
                const Vec3 p = turn_center + Vec3(r * std::cos(th), r * std::sin(th), 0.0);
                ring += bz_array(array, p);
            }
            total += wr * r * ring * (2.0 * pi / nt);
        }
        if (level > 0 && std::abs(total - prev) < std::max(opts.rel_tol * std::abs(total), abs_floor)) {
            return total;
        }
        prev = total;
    }
    throw quadrature_error("flux_through_turn: quadrature did not converge");
}

FluxLinkageCurve flux_linkage_curve(const DeviceGeometry& geom, const MaterialProps& mat,
                                    Scalar coil_r_inner, Scalar coil_r_outer,
                                    int n_samples, int n_turn_radii) {
    if (n_samples < 5 || n_samples % 2 == 0) {
        throw std::invalid_argument("flux_linkage_curve: n_samples must be odd and >= 5");
    }
    if (n_turn_radii < 1) {
        throw std::invalid_argument("flux_linkage_curve: n_turn_radii must be >= 1");
    }
    if (!(coil_r_inner > 0) || !(coil_r_outer > coil_r_inner)) {
        throw std::invalid_argument("flux_linkage_curve: require 0 < r_inner < r_outer");
    }
    if (coil_r_outer > 0.5 * geom.d) {
        throw std::invalid_argument("flux_linkage_curve: coil radius exceeds the gap lateral region");
    }

    const MagnetArray array = make_magnet_array(geom, mat);

    VecX radii = VecX::LinSpaced(n_turn_radii, coil_r_inner, coil_r_outer);
    if (n_turn_radii == 1) radii[0] = 0.5 * (coil_r_inner + coil_r_outer);

    FluxLinkageCurve curve;
    curve.displacements = VecX::LinSpaced(n_samples, -geom.x_m, geom.x_m);
    curve.displacements[(n_samples - 1) / 2] = 0.0;
    curve.flux_per_turn = VecX::Zero(n_samples);

    for (int i = 0; i < n_samples; ++i) {
        const MagnetArray at_x = displaced(array, curve.displacements[i]);
        Scalar mean = 0;
        for (int k = 0; k < n_turn_radii; ++k) {
            mean += flux_through_turn(at_x, radii[k], Vec3::Zero());
        }
        curve.flux_per_turn[i] = mean / n_turn_radii;
    }

    fit_gradient(curve);
    return curve;
}

Scalar fit_gradient(FluxLinkageCurve& curve) {
    const auto n = curve.displacements.size();
    if (n < 5 || curve.flux_per_turn.size() != n) {
        throw std::invalid_argument("fit_gradient: need >= 5 samples");
    }
    const VecX& x = curve.displacements;
    const VecX& phi = curve.flux_per_turn;
    const Scalar x_mean = x.mean();
    const Scalar phi_mean = phi.mean();
    const VecX dx = x.array() - x_mean;
    const Scalar sxx = dx.squaredNorm();
    if (sxx == 0.0) {
        throw std::invalid_argument("fit_gradient: degenerate displacement samples");
    }
    const Scalar slope = dx.dot((phi.array() - phi_mean).matrix()) / sxx;
    const Scalar intercept = phi_mean - slope * x_mean;
    const VecX residual = phi - (intercept + slope * x.array()).matrix();
    curve.fitted_gradient = slope;
    curve.fit_rms_residual = std::sqrt(residual.squaredNorm() / static_cast<Scalar>(n));
    return slope;
}

Scalar gradient_from_scaling_law(Scalar d, Scalar k_phi) {
    if (!(k_phi > 0)) {
        throw std::invalid_argument("gradient_from_scaling_law: k_phi must be > 0");
    }
    return k_phi * d;
}

}  // namespace emharv
