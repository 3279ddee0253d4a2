#include <doctest.h>

#include <emharv/magnetics.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace emharv;

namespace {

constexpr Scalar kPi = std::numbers::pi_v<Scalar>;

// Independent oracle: Bz from the two charged faces by composite Simpson
// integration of (z - z_f)/rho^3, refined until successive grids agree.
Scalar bz_surface_charge_quadrature(const CuboidMagnet& m, const Vec3& p, Scalar rel_tol = 1e-8) {
    const Vec3 lo = m.center - m.half_extents;
    const Vec3 hi = m.center + m.half_extents;

    auto face_integral = [&](Scalar zf, int n) {
        // composite Simpson on an n x n grid (n even)
        const Scalar hx = (hi.x() - lo.x()) / n;
        const Scalar hy = (hi.y() - lo.y()) / n;
        const Scalar h = p.z() - zf;
        Scalar sum = 0;
        for (int i = 0; i <= n; ++i) {
            const Scalar wx = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
            const Scalar x = lo.x() + i * hx;
            for (int j = 0; j <= n; ++j) {
                const Scalar wy = (j == 0 || j == n) ? 1.0 : (j % 2 ? 4.0 : 2.0);
                const Scalar y = lo.y() + j * hy;
                const Scalar dx = p.x() - x, dy = p.y() - y;
                const Scalar r2 = dx * dx + dy * dy + h * h;
                sum += wx * wy * h / (r2 * std::sqrt(r2));
            }
        }
        return sum * hx * hy / 9.0;
    };

    Scalar prev = 0;
    for (int n = 32; n <= 2048; n *= 2) {
        const Scalar val = face_integral(hi.z(), n) - face_integral(lo.z(), n);
        if (n > 32 && std::abs(val - prev) <= rel_tol * std::abs(val)) {
            return m.magnetization_sign * m.remanence / (4.0 * kPi) * val;
        }
        prev = val;
    }
    return m.magnetization_sign * m.remanence / (4.0 * kPi) * prev;
}

CuboidMagnet test_magnet() {
    CuboidMagnet m;
    m.center = Vec3(1e-3, -0.5e-3, 2e-3);
    m.half_extents = Vec3(0.5e-3, 3e-3, 1.2e-3);
    m.magnetization_sign = 1.0;
    m.remanence = 1.2;
    return m;
}

}  // namespace

TEST_CASE("bz_cuboid: far field decays as 1/r^3") {
    const CuboidMagnet m = test_magnet();
    const Vec3 dir = Vec3(0.3, 0.2, 1.0).normalized();
    const Scalar r1 = 0.5, r2 = 1.0;  // far relative to mm-scale magnet
    const Scalar b1 = bz_cuboid(m, m.center + r1 * dir);
    const Scalar b2 = bz_cuboid(m, m.center + r2 * dir);
    CHECK(b1 / b2 == doctest::Approx(8.0).epsilon(0.01));
}

TEST_CASE("bz_cuboid: mirror symmetry about the magnet center plane") {
    const CuboidMagnet m = test_magnet();
    for (const Scalar u : {0.2e-3, 1.1e-3, 3.7e-3}) {
        const Vec3 a(m.center.x() + u, m.center.y() + 0.4e-3, m.center.z() + 2.5e-3);
        const Vec3 b(m.center.x() - u, m.center.y() + 0.4e-3, m.center.z() + 2.5e-3);
        CHECK(bz_cuboid(m, a) == doctest::Approx(bz_cuboid(m, b)).epsilon(1e-12));
    }
}

TEST_CASE("bz_cuboid: matches surface-charge quadrature off axis") {
    const CuboidMagnet m = test_magnet();
    std::mt19937 rng(7);
    std::uniform_real_distribution<Scalar> u(-1.0, 1.0);
    int tested = 0;
    while (tested < 8) {
        const Vec3 p = m.center + Vec3(u(rng) * 4e-3, u(rng) * 8e-3, u(rng) * 5e-3);
        const Vec3 rel = p - m.center;
        // stay clearly outside the cuboid
        if (std::abs(rel.x()) < 1.3 * m.half_extents.x() &&
            std::abs(rel.y()) < 1.3 * m.half_extents.y() &&
            std::abs(rel.z()) < 1.3 * m.half_extents.z()) {
            continue;
        }
        const Scalar analytic = bz_cuboid(m, p);
        const Scalar quad = bz_surface_charge_quadrature(m, p);
        if (std::abs(quad) < 1e-9) continue;  // relative comparison meaningless
        CHECK(analytic == doctest::Approx(quad).epsilon(1e-6));
        ++tested;
    }
}

TEST_CASE("bz_cuboid: edge evaluation reports a singular point") {
    const CuboidMagnet m = test_magnet();
    const Vec3 edge = m.center + Vec3(m.half_extents.x(), 0.0, m.half_extents.z());
    CHECK_THROWS_AS(bz_cuboid(m, edge), singular_point_error);
}

TEST_CASE("bz_array: superposition over the four magnets") {
    const MagnetArray array = make_magnet_array(derive_geometry(6e-3), MaterialProps{});
    const Vec3 p(0.7e-3, -0.4e-3, 0.1e-3);
    Scalar sum = 0;
    for (const auto& m : array.magnets) sum += bz_cuboid(m, p);
    CHECK(bz_array(array, p) == sum);
}

TEST_CASE("magnet array: gap field is z-directed with opposite halves") {
    const DeviceGeometry geom = derive_geometry(6e-3);
    const MagnetArray array = make_magnet_array(geom, MaterialProps{});
    const Scalar x_probe = geom.magnet_x / 2.0;  // column centers
    const Scalar left = bz_array(array, Vec3(-x_probe, 0, 0));
    const Scalar right = bz_array(array, Vec3(x_probe, 0, 0));
    CHECK(left > 0.1);  // strong field in the gap [T]
    CHECK(right == doctest::Approx(-left).epsilon(1e-12));
}

TEST_CASE("flux_through_turn: centered turn sees zero net flux") {
    const DeviceGeometry geom = derive_geometry(6e-3);
    const MagnetArray array = make_magnet_array(geom, MaterialProps{});
    const Scalar flux = flux_through_turn(array, 0.3 * geom.d, Vec3::Zero());
    CHECK(std::abs(flux) < 1e-15);
    CHECK(flux_through_turn(array, 0.0, Vec3::Zero()) == 0.0);
}

TEST_CASE("flux_through_turn: matches a fine-grid Riemann sum") {
    const DeviceGeometry geom = derive_geometry(6e-3);
    const MagnetArray array = displaced(make_magnet_array(geom, MaterialProps{}), 0.8e-3);
    const Scalar radius = 0.3 * geom.d;
    const Scalar flux = flux_through_turn(array, radius, Vec3::Zero());

    // brute force: midpoint rule over the bounding square, disc mask
    const int n = 400;
    const Scalar h = 2.0 * radius / n;
    Scalar riemann = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Scalar x = -radius + (i + 0.5) * h;
            const Scalar y = -radius + (j + 0.5) * h;
            if (x * x + y * y > radius * radius) continue;
            riemann += h * h * bz_array(array, Vec3(x, y, 0));
        }
    }
    CHECK(flux == doctest::Approx(riemann).epsilon(5e-3));
}

TEST_CASE("flux_linkage_curve: odd, zero at center, flattens toward the ends") {
    const DeviceGeometry geom = derive_geometry(6e-3);
    const FluxLinkageCurve curve =
        flux_linkage_curve(geom, MaterialProps{}, 0.15 * geom.d, 0.45 * geom.d);

    const auto n = curve.displacements.size();
    const Scalar phi_max = curve.flux_per_turn.cwiseAbs().maxCoeff();
    CHECK(std::abs(curve.flux_per_turn[(n - 1) / 2]) < 1e-3 * phi_max);

    Scalar worst_odd = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        worst_odd = std::max(worst_odd,
                             std::abs(curve.flux_per_turn[i] + curve.flux_per_turn[n - 1 - i]));
    }
    CHECK(worst_odd <= 1e-3 * phi_max);

    // central slope exceeds end slope (flattening)
    const Scalar dx = curve.displacements[1] - curve.displacements[0];
    const Scalar central = std::abs(curve.flux_per_turn[(n + 1) / 2] -
                                    curve.flux_per_turn[(n - 3) / 2]) / (2.0 * dx);
    const Scalar end = std::abs(curve.flux_per_turn[n - 1] - curve.flux_per_turn[n - 2]) / dx;
    CHECK(central > end);
}

TEST_CASE("flux_linkage_curve: line fit is better over the central half") {
    const DeviceGeometry geom = derive_geometry(6e-3);
    FluxLinkageCurve full =
        flux_linkage_curve(geom, MaterialProps{}, 0.15 * geom.d, 0.45 * geom.d);

    auto r_squared = [](const VecX& x, const VecX& y) {
        const Scalar xm = x.mean(), ym = y.mean();
        const VecX dx = x.array() - xm, dy = y.array() - ym;
        const Scalar slope = dx.dot(dy) / dx.squaredNorm();
        const VecX res = dy - slope * dx;
        return 1.0 - res.squaredNorm() / dy.squaredNorm();
    };

    const auto n = full.displacements.size();
    const Eigen::Index q = n / 4;
    const VecX xc = full.displacements.segment(q, n - 2 * q);
    const VecX yc = full.flux_per_turn.segment(q, n - 2 * q);
    CHECK(r_squared(xc, yc) > r_squared(full.displacements, full.flux_per_turn));
}

TEST_CASE("flux_linkage_curve: input validation") {
    const DeviceGeometry geom = derive_geometry(6e-3);
    const MaterialProps mat;
    CHECK_THROWS_AS(flux_linkage_curve(geom, mat, 1e-3, 4e-3), std::invalid_argument);  // > d/2
    CHECK_THROWS_AS(flux_linkage_curve(geom, mat, 1e-3, 2e-3, 4), std::invalid_argument);
    CHECK_THROWS_AS(flux_linkage_curve(geom, mat, 2e-3, 1e-3), std::invalid_argument);
}

TEST_CASE("flux_linkage_curve: doubling remanence doubles everything") {
    const DeviceGeometry geom = derive_geometry(2e-3);
    MaterialProps mat;
    const FluxLinkageCurve base =
        flux_linkage_curve(geom, mat, 0.15 * geom.d, 0.45 * geom.d, 5, 1);
    mat.remanence *= 2.0;
    const FluxLinkageCurve twice =
        flux_linkage_curve(geom, mat, 0.15 * geom.d, 0.45 * geom.d, 5, 1);
    for (Eigen::Index i = 0; i < base.flux_per_turn.size(); ++i) {
        CHECK(twice.flux_per_turn[i] == doctest::Approx(2.0 * base.flux_per_turn[i]).epsilon(1e-12));
    }
    CHECK(twice.fitted_gradient == doctest::Approx(2.0 * base.fitted_gradient).epsilon(1e-12));
}

TEST_CASE("fit_gradient: exact line, constant, and degenerate input") {
    FluxLinkageCurve c;
    c.displacements = VecX::LinSpaced(7, -3.0, 3.0);
    c.flux_per_turn = 2.5 * c.displacements;
    CHECK(fit_gradient(c) == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(c.fit_rms_residual < 1e-14);

    c.flux_per_turn = VecX::Constant(7, 4.2);
    CHECK(fit_gradient(c) == doctest::Approx(0.0).epsilon(1e-14));

    c.displacements = VecX::Constant(7, 1.0);
    CHECK_THROWS_AS(fit_gradient(c), std::invalid_argument);

    FluxLinkageCurve tiny;
    tiny.displacements = VecX::LinSpaced(3, -1, 1);
    tiny.flux_per_turn = tiny.displacements;
    CHECK_THROWS_AS(fit_gradient(tiny), std::invalid_argument);
}

TEST_CASE("fitted gradient doubles from 1 mm to 2 mm") {
    const MaterialProps mat;
    auto grad = [&](Scalar d) {
        const DeviceGeometry g = derive_geometry(d);
        return flux_linkage_curve(g, mat, 0.15 * d, 0.45 * d).fitted_gradient;
    };
    const Scalar ratio = grad(2e-3) / grad(1e-3);
    CHECK(std::abs(ratio) == doctest::Approx(2.0).epsilon(0.10));
}

TEST_CASE("gradient_from_scaling_law: linear fast path and calibration") {
    CHECK(gradient_from_scaling_law(0.0, 5.0) == 0.0);
    CHECK(gradient_from_scaling_law(2e-3, 5.0) == doctest::Approx(2.0 * gradient_from_scaling_law(1e-3, 5.0)).epsilon(1e-14));
    CHECK_THROWS_AS(gradient_from_scaling_law(1e-3, 0.0), std::invalid_argument);

    // calibrate at 6 mm, predict 3 mm within 15%
    const MaterialProps mat;
    auto grad = [&](Scalar d) {
        const DeviceGeometry g = derive_geometry(d);
        return flux_linkage_curve(g, mat, 0.15 * d, 0.45 * d).fitted_gradient;
    };
    const Scalar k_phi = grad(6e-3) / 6e-3;
    CHECK(gradient_from_scaling_law(3e-3, std::abs(k_phi)) ==
          doctest::Approx(std::abs(grad(3e-3))).epsilon(0.15));
}
