#include <doctest.h>

#include <emharv/magnetics.hpp>
#include <emharv/optimizer.hpp>

#include <cmath>
#include <numbers>
#include <vector>

using namespace emharv;

namespace {

constexpr Scalar kTwoPi = 2.0 * std::numbers::pi_v<Scalar>;

SweepConfig default_config(QMode mode = QMode::DisplacementRule, Scalar q_fixed = 300.0) {
    SweepConfig cfg;
    cfg.q_mode = mode;
    cfg.q_fixed = q_fixed;
    cfg.parallel = false;
    return cfg;
}

// gradient cache: the analytic flux evaluation is the slow part
Scalar cached_gradient(Scalar d) {
    static std::vector<std::pair<Scalar, Scalar>> cache;
    for (const auto& [key, val] : cache) {
        if (key == d) return val;
    }
    const Scalar g = gradient_for_dimension(default_config(), d);
    cache.emplace_back(d, g);
    return g;
}

DesignProblem problem_for(Scalar d, CoilTechnology tech, QMode mode, Scalar q_fixed = 300.0) {
    return make_problem(d, tech, default_config(mode, q_fixed), cached_gradient(d));
}

}  // namespace

TEST_CASE("solve_matched_load: algebraic cases") {
    // N^2 g^2 = 2 D_p R_c  =>  R_l = R_c (matched damping meets impedance match)
    const Scalar dp = 1e-4, rc = 5.0;
    const Scalar g = std::sqrt(2.0 * dp * rc) / 100.0;
    const auto rl = solve_matched_load(100, g, dp, rc, 0.1);
    REQUIRE(rl.has_value());
    CHECK(*rl == doctest::Approx(rc).epsilon(1e-12));

    // N^2 g^2 < D_p R_c  =>  negative R_l, infeasible
    CHECK(!solve_matched_load(100, g / 2.0, dp, rc, 0.1).has_value());
    CHECK_THROWS_AS(solve_matched_load(100, g, 0.0, rc, 0.1), std::invalid_argument);
}

TEST_CASE("matched wire-wound load share is independent of N") {
    const DesignProblem p = problem_for(6e-3, CoilTechnology::WireWound, QMode::DisplacementRule);
    const Scalar mass = moving_mass(p.geometry, p.materials);
    const Scalar dp = parasitic_damping_from_q(mass, p.omega, p.q_oc);

    const Scalar alpha = coil_resistance(p, 1);
    const Scalar expected_share = 1.0 - alpha * dp / (p.flux_gradient * p.flux_gradient);

    for (const long n : {40L, 100L, 400L, 2000L}) {
        const Scalar rc = coil_resistance(p, n);
        const auto rl = solve_matched_load(n, p.flux_gradient, dp, rc, p.r_load_min);
        REQUIRE(rl.has_value());
        const DesignResult r = evaluate_candidate(p, n, *rl);
        CHECK(r.p_load / r.p_extracted == doctest::Approx(expected_share).epsilon(1e-12));
        CHECK(r.d_em == doctest::Approx(dp).epsilon(1e-9));
    }
}

TEST_CASE("optimize_design: wire-wound, displacement-rule Q at 6 mm is matched") {
    const DesignProblem p = problem_for(6e-3, CoilTechnology::WireWound, QMode::DisplacementRule);
    const DesignResult r = optimize_design(p);

    CHECK(r.strategy == Strategy::MatchedDamping);
    CHECK(r.d_em == doctest::Approx(r.d_parasitic).epsilon(1e-9));
    CHECK(r.displacement == doctest::Approx(p.geometry.x_m).epsilon(1e-9));
    CHECK(r.p_extracted == doctest::Approx(r.p_max).epsilon(1e-6));
    CHECK(r.p_load < r.p_extracted);
    CHECK(r.p_load > 0.5 * r.p_max);  // little lost in the coil at this size
}

TEST_CASE("optimize_design: Q = 300 selects impedance matching with R_l = R_c") {
    for (const auto tech : {CoilTechnology::WireWound, CoilTechnology::MicroFabricated}) {
        const DesignProblem p = problem_for(6e-3, tech, QMode::Fixed, 300.0);
        const DesignResult r = optimize_design(p);
        CHECK(r.strategy == Strategy::ImpedanceMatched);
        CHECK(r.r_load == r.r_coil);
        CHECK(r.d_em < r.d_parasitic);
        CHECK(r.displacement < p.geometry.x_m);
    }
}

TEST_CASE("optimize_design: micro-fabricated, high Q cannot reach the maximum") {
    const DesignProblem p =
        problem_for(6e-3, CoilTechnology::MicroFabricated, QMode::DisplacementRule);
    const DesignResult r = optimize_design(p);
    CHECK(r.strategy == Strategy::ImpedanceMatched);
    CHECK(r.p_load < r.p_max);
    CHECK(r.p_extracted < r.p_max);
}

TEST_CASE("optimize_design: invariants hold on every returned design") {
    for (const auto tech : {CoilTechnology::WireWound, CoilTechnology::MicroFabricated}) {
        for (const auto mode : {QMode::DisplacementRule, QMode::Fixed}) {
            const DesignProblem p = problem_for(4e-3, tech, mode);
            const DesignResult r = optimize_design(p);
            CHECK(r.displacement <= p.geometry.x_m * (1.0 + 1e-9));
            CHECK(r.p_load <= r.p_extracted * (1.0 + 1e-9));
            CHECK(r.p_extracted <= r.p_max * (1.0 + 1e-9));
            CHECK(r.r_coil > 0);
            CHECK(r.turns >= 1);
        }
    }
}

TEST_CASE("optimize_design: enlarging the turn budget never loses power") {
    SweepConfig coarse = default_config();
    coarse.limits.min_feature = 40e-6;
    SweepConfig fine = default_config();
    fine.limits.min_feature = 1e-6;

    const Scalar g = cached_gradient(6e-3);
    const DesignResult small =
        optimize_design(make_problem(6e-3, CoilTechnology::MicroFabricated, coarse, g));
    const DesignResult large =
        optimize_design(make_problem(6e-3, CoilTechnology::MicroFabricated, fine, g));
    CHECK(large.p_load >= small.p_load * (1.0 - 1e-12));
}

TEST_CASE("optimize_design: dominates a coarse exhaustive grid") {
    // displacement-rule mode, loads floored at r_load_min like the matched solve
    for (const auto tech : {CoilTechnology::WireWound, CoilTechnology::MicroFabricated}) {
        const DesignProblem p = problem_for(6e-3, tech, QMode::DisplacementRule);
        const DesignResult r = optimize_design(p);

        Scalar grid_best = 0;
        for (long n = 1; n <= 50; ++n) {
            for (int k = 0; k < 100; ++k) {
                const Scalar r_load = p.r_load_min * std::pow(10.0, 7.0 * k / 99.0);
                const DesignResult cand = evaluate_candidate(p, n, r_load);
                grid_best = std::max(grid_best, cand.p_load);
            }
        }
        CHECK(r.p_load >= grid_best - std::max(1e-9, 1e-9 * grid_best));
    }
}

TEST_CASE("optimize_design: infeasible when no coil fits") {
    SweepConfig cfg = default_config();
    cfg.limits.min_feature = 1.0;  // absurd lithography limit
    CHECK_THROWS_AS(
        optimize_design(make_problem(6e-3, CoilTechnology::MicroFabricated, cfg, 1e-4)),
        no_feasible_design);
}

TEST_CASE("sweep_dimensions: consistency, ordering, determinism") {
    SweepConfig cfg = default_config();
    const std::vector<Scalar> dims{2e-3, 6e-3};
    const std::vector<CoilTechnology> techs{CoilTechnology::WireWound,
                                            CoilTechnology::MicroFabricated};

    const auto serial = sweep_dimensions(dims, techs, cfg);
    REQUIRE(serial.size() == 4);
    CHECK(serial[0].d == 2e-3);
    CHECK(serial[0].technology == CoilTechnology::WireWound);
    CHECK(serial[1].technology == CoilTechnology::MicroFabricated);
    CHECK(serial[2].d == 6e-3);

    SweepConfig par = cfg;
    par.parallel = true;
    const auto parallel = sweep_dimensions(dims, techs, par);
    REQUIRE(parallel.size() == serial.size());
    for (size_t i = 0; i < serial.size(); ++i) {
        CHECK(parallel[i].d == serial[i].d);
        CHECK(parallel[i].result.p_load == serial[i].result.p_load);
        CHECK(parallel[i].result.turns == serial[i].result.turns);
    }

    // single-element sweep equals the direct solve
    const auto single = sweep_dimensions({6e-3}, {CoilTechnology::WireWound}, cfg);
    const DesignResult direct =
        optimize_design(make_problem(6e-3, CoilTechnology::WireWound, cfg));
    REQUIRE(single.size() == 1);
    REQUIRE(single[0].feasible);
    CHECK(single[0].result.p_load == doctest::Approx(direct.p_load).epsilon(1e-12));
    CHECK(single[0].result.turns == direct.turns);
}

TEST_CASE("sweep_dimensions: per-point infeasibility is flagged, not thrown") {
    SweepConfig cfg = default_config();
    cfg.limits.min_feature = 1.0;
    const auto rows = sweep_dimensions({2e-3, 6e-3}, {CoilTechnology::MicroFabricated}, cfg);
    REQUIRE(rows.size() == 2);
    CHECK(!rows[0].feasible);
    CHECK(!rows[1].feasible);
    CHECK_THROWS_AS(sweep_dimensions({}, {CoilTechnology::WireWound}, cfg),
                    std::invalid_argument);
    CHECK_THROWS_AS(sweep_dimensions({-1e-3}, {CoilTechnology::WireWound}, cfg),
                    std::invalid_argument);
}

TEST_CASE("displacement constraint is active exactly when matched damping binds") {
    const DesignProblem rule = problem_for(8e-3, CoilTechnology::WireWound, QMode::DisplacementRule);
    const DesignResult r = optimize_design(rule);
    CHECK(r.strategy == Strategy::MatchedDamping);
    CHECK(r.displacement == doctest::Approx(rule.geometry.x_m).epsilon(1e-9));

    const DesignProblem fixed = problem_for(8e-3, CoilTechnology::WireWound, QMode::Fixed, 300.0);
    const DesignResult rf = optimize_design(fixed);
    CHECK(rf.displacement < 0.5 * fixed.geometry.x_m);
}
