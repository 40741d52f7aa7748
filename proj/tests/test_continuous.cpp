#include "indopt/continuous.hpp"

#include "indopt/errors.hpp"
#include "indopt/numeric.hpp"
#include "indopt/oracle.hpp"
#include "support/fixtures.hpp"

#include <doctest.h>

#include <cmath>
#include <memory>

using namespace indopt;

namespace {

ContinuousModel mixture_window_model() {
    // An even-tailed mixture with a shallow quadratic payoff: the optimum is a
    // two-sided window rather than a right tail.
    ContinuousModel cm;
    cm.family = std::make_shared<PowerMixtureFamily>(0.2, 10.0, 0.7);
    cm.cost = CostSpec{0.02, 2.0};
    cm.payoff = PayoffSpec{PayoffSpec::Kind::Quadratic, 0.5};
    return cm;
}

} // namespace

TEST_CASE("power family identities") {
    const PowerFamily fam(3.0);
    const double e = 0.27, x = 0.6;

    CHECK(fam.cdf(x, e) == doctest::Approx(std::pow(x, 3.0 * e)).epsilon(1e-12));
    CHECK(fam.density(x, e) == doctest::Approx(3.0 * e * std::pow(x, 3.0 * e - 1.0)).epsilon(1e-12));
    CHECK(fam.cdf_e(x, e) ==
          doctest::Approx(3.0 * std::log(x) * std::pow(x, 3.0 * e)).epsilon(1e-12));
    CHECK(fam.score(x, e) == doctest::Approx(1.0 / e + 3.0 * std::log(x)).epsilon(1e-12));

    // Numerical cross-checks of the declared derivative structure.
    const double h = 1e-6;
    CHECK(fam.cdf_e(x, e) ==
          doctest::Approx((fam.cdf(x, e + h) - fam.cdf(x, e - h)) / (2 * h)).epsilon(1e-6));
    CHECK(fam.density_e(x, e) ==
          doctest::Approx((fam.density(x, e + h) - fam.density(x, e - h)) / (2 * h)).epsilon(1e-6));
    CHECK(fam.score_e(x, e) ==
          doctest::Approx((fam.score(x, e + h) - fam.score(x, e - h)) / (2 * h)).epsilon(1e-6));

    // The density integrates to one.
    const double mass = num::adaptive_simpson([&](double t) { return fam.density(t, e); }, 1e-12, 1.0, 1e-10);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("truncated exponential family identities") {
    const TruncatedExponentialFamily fam;
    const double e = 1.7, x = 0.35;

    CHECK(fam.cdf(x, e) ==
          doctest::Approx((std::pow(e, x) - 1.0) / (e - 1.0)).epsilon(1e-12));
    CHECK(fam.cdf(0.0, e) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(fam.cdf(1.0, e) == doctest::Approx(1.0).epsilon(1e-12));

    const double h = 1e-6;
    CHECK(fam.cdf_e(x, e) ==
          doctest::Approx((fam.cdf(x, e + h) - fam.cdf(x, e - h)) / (2 * h)).epsilon(1e-6));
    CHECK(fam.score(x, e) ==
          doctest::Approx(fam.density_e(x, e) / fam.density(x, e)).epsilon(1e-9));

    // The removable singularity at effort one is handled smoothly.
    CHECK(fam.cdf(x, 1.0 + 1e-12) == doctest::Approx(x).epsilon(1e-6));
    CHECK(std::isfinite(fam.cdf_e(x, 1.0 + 1e-12)));

    const double mass = num::adaptive_simpson([&](double t) { return fam.density(t, e); }, 0.0, 1.0, 1e-10);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("power mixture family identities") {
    const PowerMixtureFamily fam(0.2, 10.0, 0.7);
    const PowerFamily lo(0.2), hi(10.0);
    const double e = 0.7, x = 0.55;

    CHECK(fam.cdf(x, e) ==
          doctest::Approx(0.7 * lo.cdf(x, e) + 0.3 * hi.cdf(x, e)).epsilon(1e-12));
    CHECK(fam.density(x, e) ==
          doctest::Approx(0.7 * lo.density(x, e) + 0.3 * hi.density(x, e)).epsilon(1e-12));

    const double h = 1e-6;
    CHECK(fam.cdf_e(x, e) ==
          doctest::Approx((fam.cdf(x, e + h) - fam.cdf(x, e - h)) / (2 * h)).epsilon(1e-6));
    CHECK(fam.score_e(x, e) ==
          doctest::Approx((fam.score(x, e + h) - fam.score(x, e - h)) / (2 * h)).epsilon(1e-5));
}

TEST_CASE("expected payoff closed forms agree with quadrature") {
    SUBCASE("linear payoff under the power family") {
        const ContinuousModel cm = fixtures::example2_model();
        const double e = 0.27;
        const double direct = cm.expected_payoff(e);
        CHECK(direct == doctest::Approx(3.0 * e / (3.0 * e + 1.0)).epsilon(1e-10));
        const double quad = num::adaptive_simpson(
            [&](double x) { return cm.g(x) * cm.family->density(x, e); }, 1e-12, 1.0, 1e-11);
        CHECK(direct == doctest::Approx(quad).epsilon(1e-6));
        CHECK(cm.expected_payoff_d(e) ==
              doctest::Approx(num::central_diff([&](double t) { return cm.expected_payoff(t); }, e, 1e-6))
                  .epsilon(1e-6));
    }
    SUBCASE("quadratic payoff under the mixture family") {
        const ContinuousModel cm = mixture_window_model();
        const double e = 0.7;
        const double direct = cm.expected_payoff(e);
        // The integrand has an integrable singularity at zero for small
        // shapes; start the cross-check just inside the support.
        const double quad = num::adaptive_simpson(
            [&](double x) { return cm.g(x) * cm.family->density(x, e); }, 1e-8, 1.0, 1e-11);
        CHECK(direct == doctest::Approx(quad).epsilon(1e-4));
        CHECK(cm.expected_payoff_d(e) ==
              doctest::Approx(num::central_diff([&](double t) { return cm.expected_payoff(t); }, e, 1e-6))
                  .epsilon(1e-5));
    }
}

TEST_CASE("cost and payoff primitives") {
    const ContinuousModel cm = fixtures::example2_model();
    CHECK(cm.c(0.4) == doctest::Approx(0.5 * 0.16).epsilon(1e-14));
    CHECK(cm.c_d(0.4) == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(cm.c_dd(0.4) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(cm.g(0.3) == doctest::Approx(0.3).epsilon(1e-14));

    ContinuousModel quad = cm;
    quad.payoff = PayoffSpec{PayoffSpec::Kind::Quadratic, 0.5};
    CHECK(quad.g(0.3) == doctest::Approx(0.3 - 0.5 * 0.09).epsilon(1e-14));
    // Positive curvature parameter bends the payoff down: concave gains.
    CHECK(quad.g(0.8) < 0.8);
}

TEST_CASE("signal moments of threshold structures") {
    const ContinuousModel cm = fixtures::example2_model();

    SUBCASE("reference point on the benchmark model") {
        const ThresholdStructure t{ThresholdStructure::Kind::Single, 0.45, 1.0};
        const SignalMoments sm = signal_prob(cm, t, 0.2725);
        CHECK(sm.p == doctest::Approx(0.479403517).epsilon(1e-7));
        CHECK(sm.p_d == doctest::Approx(1.247100895).epsilon(1e-7));
    }
    SUBCASE("degenerate thresholds") {
        const SignalMoments all = signal_prob(cm, {ThresholdStructure::Kind::Single, 0.0, 1.0}, 0.3);
        CHECK(all.p == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(all.p_d == doctest::Approx(0.0).epsilon(1e-10));
        const SignalMoments none = signal_prob(cm, {ThresholdStructure::Kind::Single, 1.0, 1.0}, 0.3);
        CHECK(none.p == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("quadrature agreement across structures and models") {
        const ContinuousModel mix = mixture_window_model();
        const ThresholdStructure ts[] = {
            {ThresholdStructure::Kind::Single, 0.45, 1.0},
            {ThresholdStructure::Kind::Double, 0.2, 0.7},
        };
        for (const ContinuousModel* model : {&cm, &mix})
            for (const ThresholdStructure& t : ts)
                for (double e : {0.15, 0.4, 0.8}) {
                    const SignalMoments a = signal_prob(*model, t, e);
                    const SignalMoments b = signal_prob_quadrature(*model, t, e, 1e-10);
                    CHECK(a.p == doctest::Approx(b.p).epsilon(1e-7));
                    CHECK(a.p_d == doctest::Approx(b.p_d).epsilon(1e-6));
                }
    }
    SUBCASE("window mass plus complement mass is one") {
        const ThresholdStructure win{ThresholdStructure::Kind::Double, 0.2, 0.7};
        const SignalMoments sm = signal_prob(cm, win, 0.3);
        const double direct = cm.family->cdf(0.7, 0.3) - cm.family->cdf(0.2, 0.3);
        CHECK(sm.p == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("incentive multiplier") {
    const ContinuousModel cm = fixtures::example2_model();
    const ThresholdStructure t{ThresholdStructure::Kind::Single, 0.45, 1.0};

    SUBCASE("reference point") {
        const MultiplierResult r = multiplier(cm, t, 0.2725);
        CHECK(r.lambda == doctest::Approx(0.384414379).epsilon(1e-7));
        CHECK(r.pays_high);
    }
    SUBCASE("complementary structure pays the other signal at the same price") {
        // Swapping the paid set turns p into 1-p and p' into -p'; the
        // cost-per-incentive is unchanged but the wage moves to the signal
        // whose mass rises with effort.
        ContinuousModel quad = cm;
        const double e = 0.2725;
        const ThresholdStructure flipped{ThresholdStructure::Kind::Double, 0.0, 0.45};
        const MultiplierResult a = multiplier(cm, t, e);
        const MultiplierResult b = multiplier(quad, flipped, e);
        CHECK(a.lambda == doctest::Approx(b.lambda).epsilon(1e-9));
        CHECK(a.pays_high != b.pays_high);
    }
    SUBCASE("an uninformative structure has no incentive price") {
        CHECK_THROWS_AS(multiplier(cm, {ThresholdStructure::Kind::Single, 0.0, 1.0}, 0.3),
                        ZeroInformationError);
    }
}

TEST_CASE("equilibrium on the benchmark model") {
    const ContinuousModel cm = fixtures::example2_model();
    const ContinuousEquilibrium eq = solve_equilibrium(cm);

    CHECK(eq.structure.kind == ThresholdStructure::Kind::Single);
    CHECK(eq.structure.lo == doctest::Approx(0.440773758).epsilon(5e-4));
    CHECK(eq.effort == doctest::Approx(0.271009518).epsilon(1e-4));
    CHECK(eq.lambda == doctest::Approx(0.385136013).epsilon(1e-4));
    CHECK(eq.expected_wage == doctest::Approx(0.104375525).epsilon(1e-4));
    CHECK(eq.U_P == doctest::Approx(0.344061182).epsilon(1e-4));
    CHECK(eq.U_A == doctest::Approx(0.067652446).epsilon(1e-4));

    // Internal accounting: the multiplier prices the wage, the payoffs add up.
    CHECK(eq.expected_wage == doctest::Approx(eq.lambda * cm.c_d(eq.effort)).epsilon(1e-8));
    CHECK(eq.U_P == doctest::Approx(cm.expected_payoff(eq.effort) - eq.expected_wage).epsilon(1e-8));
    CHECK(eq.U_A == doctest::Approx(eq.expected_wage - cm.c(eq.effort)).epsilon(1e-8));
    CHECK(std::abs(eq.agent_foc_residual) < 1e-7);
    CHECK(std::abs(eq.principal_foc_residual) < 1e-6);

    // The wage level times the high-signal mass reproduces the expected wage.
    const SignalMoments sm = signal_prob(cm, eq.structure, eq.effort);
    CHECK(eq.wage_high * sm.p == doctest::Approx(eq.expected_wage).epsilon(1e-8));
}

TEST_CASE("equilibrium is reproducible") {
    const ContinuousModel cm = fixtures::example2_model();
    const ContinuousEquilibrium a = solve_equilibrium(cm);
    const ContinuousEquilibrium b = solve_equilibrium(cm);
    CHECK(a.structure.lo == b.structure.lo);
    CHECK(a.effort == b.effort);
    CHECK(a.U_A == b.U_A);
}

TEST_CASE("first-best benchmark") {
    const ContinuousModel cm = fixtures::example2_model();
    const FirstBest fb = first_best_continuous(cm);

    // dE/de = 3/(3e+1)^2 meets c'(e) = e at the unique interior root.
    const double root = num::brent_root(
        [](double e) { return 3.0 / ((3.0 * e + 1.0) * (3.0 * e + 1.0)) - e; }, 0.1, 1.0, 1e-12);
    CHECK(fb.effort == doctest::Approx(root).epsilon(1e-7));
    CHECK(fb.effort == doctest::Approx(0.490789).epsilon(1e-4));
    CHECK(fb.foc_residual < 1e-8);
    CHECK(fb.value ==
          doctest::Approx(cm.expected_payoff(fb.effort) - cm.c(fb.effort)).epsilon(1e-10));

    // Delegated information design cannot beat full information.
    const ContinuousEquilibrium eq = solve_equilibrium(cm);
    CHECK(eq.U_P + eq.U_A <= fb.value + 1e-6);
}

TEST_CASE("flatter cost keeps the equilibrium sensible") {
    // As the cost flattens the wage bill shrinks; the comparison uses two
    // rescaled benchmarks with the same technology.
    ContinuousModel nearly_flat = fixtures::example2_model();
    nearly_flat.cost = CostSpec{1e-2, 2.0};
    const ContinuousEquilibrium a = solve_equilibrium(nearly_flat);
    CHECK(a.expected_wage == doctest::Approx(0.055211).epsilon(5e-3));

    ContinuousModel flatter = nearly_flat;
    flatter.cost = CostSpec{1e-3, 2.0};
    const ContinuousEquilibrium b = solve_equilibrium(flatter);
    CHECK(b.expected_wage == doctest::Approx(0.034888).epsilon(5e-3));

    CHECK(b.expected_wage < a.expected_wage);
    // Agent and principal both stay inside the surplus frontier.
    for (const ContinuousEquilibrium* eq : {&a, &b}) {
        CHECK(eq->U_A >= 0.0);
        CHECK(eq->U_P >= 0.0);
    }
}

TEST_CASE("shape conditions on the score") {
    const AssumptionReport power = verify_assumption(fixtures::example2_model());
    CHECK(power.pass);
    CHECK(power.monotone_ok);
    CHECK(power.convex_ok);

    ContinuousModel te = fixtures::example2_model();
    te.family = std::make_shared<TruncatedExponentialFamily>();
    te.cost = CostSpec{0.5, 2.0};
    const AssumptionReport trunc = verify_assumption(te);
    CHECK(trunc.pass);

    ContinuousModel mix = fixtures::example2_model();
    mix.family = std::make_shared<PowerMixtureFamily>(0.5, 8.0, 0.5);
    const AssumptionReport bad = verify_assumption(mix);
    CHECK_FALSE(bad.pass);
    CHECK_FALSE(bad.detail.empty());
    // The witness pins a concrete grid point where a condition fails.
    CHECK(bad.witness_x > 0.0);
    CHECK(bad.witness_x < 1.0);
    CHECK(bad.witness_e > 0.0);
}

TEST_CASE("shadow price of the effort constraint at the benchmark equilibrium") {
    const ContinuousModel cm = fixtures::example2_model();
    const ContinuousEquilibrium eq = solve_equilibrium(cm);
    const double eta = estimate_eta(cm, eq.structure, eq.effort);
    CHECK(eta == doctest::Approx(0.078156).epsilon(2e-2));
    CHECK(eta > 0.0);
}

TEST_CASE("variational sign diagnostic at the benchmark equilibrium") {
    const ContinuousModel cm = fixtures::example2_model();
    const ContinuousEquilibrium eq = solve_equilibrium(cm);
    const double eta = estimate_eta(cm, eq.structure, eq.effort);

    const SignPattern sp = foc_sign_pattern(cm, eq.structure, eq.effort, eq.lambda, eta);
    CHECK_FALSE(sp.degenerate);
    CHECK(sp.sign_changes == 1);
    CHECK(sp.foc_ok);
    CHECK(sp.min_on_high >= -1e-6);
    CHECK(sp.max_on_low <= 1e-6);
}

TEST_CASE("variational sign diagnostic distinguishes a window optimum") {
    const ContinuousModel cm = mixture_window_model();
    const ContinuousEquilibrium eq = solve_equilibrium(cm);

    CHECK(eq.structure.kind == ThresholdStructure::Kind::Double);
    CHECK(eq.structure.lo == doctest::Approx(0.0487).epsilon(0.2));
    CHECK(eq.structure.hi == doctest::Approx(0.8516).epsilon(0.05));
    CHECK(eq.effort == doctest::Approx(0.7216).epsilon(0.02));
    CHECK(eq.U_A == doctest::Approx(0.083221).epsilon(1e-3));

    const double eta = estimate_eta(cm, eq.structure, eq.effort);
    const SignPattern sp = foc_sign_pattern(cm, eq.structure, eq.effort, eq.lambda, eta);
    CHECK_FALSE(sp.degenerate);
    CHECK(sp.sign_changes == 2);
    CHECK(sp.foc_ok);
}

TEST_CASE("sign diagnostic is degenerate without information") {
    const ContinuousModel cm = fixtures::example2_model();
    const SignPattern sp =
        foc_sign_pattern(cm, {ThresholdStructure::Kind::Single, 0.0, 1.0}, 0.3, 0.4, 0.05);
    CHECK(sp.degenerate);
}

TEST_CASE("discretization approximates the continuous threshold family") {
    const ContinuousModel cm = fixtures::example2_model();

    SUBCASE("tiny grid is a valid instance") {
        const ModelInstance m = discretize_continuous(cm, 2, 2);
        REQUIRE(validate_model(m).ok());
        CHECK(m.num_outcomes() == 2);
        CHECK(m.num_efforts() == 2);
        CHECK(m.cost(0) == 0.0);
    }
    SUBCASE("finite threshold values refine toward the continuous one") {
        const double v10 = fixtures::best_threshold_cut_value(discretize_continuous(cm, 10, 40));
        const double v50 = fixtures::best_threshold_cut_value(discretize_continuous(cm, 50, 40));
        const double v100 = fixtures::best_threshold_cut_value(discretize_continuous(cm, 100, 40));
        const double target = solve_equilibrium(cm).U_A;

        CHECK(std::abs(v50 - target) < 0.02);
        CHECK(std::abs(v50 - v100) <= std::abs(v10 - v100) + 1e-12);
        CHECK(std::abs(v100 - target) < 0.01);
    }
}
