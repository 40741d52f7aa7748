#pragma once

#include "indopt/defs.hpp"

#include <memory>
#include <string>

namespace indopt {

/**
 * A twice e-differentiable density family on [0,1] with closed-form cdf,
 * effort-derivative of the cdf, and score r = f_e/f. The remaining
 * derivatives follow identically: f_e = f*r, f_ee = f*(r^2 + r_e).
 */
class DensityFamily {
 public:
    virtual ~DensityFamily() = default;
    virtual std::string name() const = 0;
    virtual double density(double x, double e) const = 0;
    virtual double cdf(double x, double e) const = 0;
    virtual double cdf_e(double x, double e) const = 0;
    virtual double score(double x, double e) const = 0;
    virtual double score_e(double x, double e) const = 0;

    double density_e(double x, double e) const { return density(x, e) * score(x, e); }
    double density_ee(double x, double e) const {
        const double r = score(x, e);
        return density(x, e) * (r * r + score_e(x, e));
    }
};

/** f(x|e) = a e x^(a e - 1): cdf x^(a e), score 1/e + a ln x. */
class PowerFamily final : public DensityFamily {
 public:
    explicit PowerFamily(double a);
    std::string name() const override;
    double density(double x, double e) const override;
    double cdf(double x, double e) const override;
    double cdf_e(double x, double e) const override;
    double score(double x, double e) const override;
    double score_e(double x, double e) const override;
    double shape() const { return a_; }

 private:
    double a_;
};

/**
 * cdf (e^x - 1)/(e - 1) with the effort level as the base: higher effort
 * tilts mass toward high outcomes, e -> 1 is the uniform limit (handled by
 * series expansion near the removable singularity).
 */
class TruncatedExponentialFamily final : public DensityFamily {
 public:
    std::string name() const override;
    double density(double x, double e) const override;
    double cdf(double x, double e) const override;
    double cdf_e(double x, double e) const override;
    double score(double x, double e) const override;
    double score_e(double x, double e) const override;
};

/** Even mixture of two power densities; the score is non-monotone for spread shapes. */
class PowerMixtureFamily final : public DensityFamily {
 public:
    PowerMixtureFamily(double a1, double a2, double weight = 0.5);
    std::string name() const override;
    double density(double x, double e) const override;
    double cdf(double x, double e) const override;
    double cdf_e(double x, double e) const override;
    double score(double x, double e) const override;
    double score_e(double x, double e) const override;
    double low_shape() const { return low_.shape(); }
    double high_shape() const { return high_.shape(); }
    double weight() const { return w_; }

 private:
    PowerFamily low_, high_;
    double w_;
};

struct CostSpec {
    double kappa = 0.5;
    double k = 2.0; // c(e) = kappa * e^k, k >= 2 keeps c'' > 0 away from 0
};

struct PayoffSpec {
    enum class Kind { Linear, Quadratic };
    Kind kind = Kind::Linear;
    double gamma = 0.0; // g(x) = x - gamma x^2 for Quadratic
};

struct ContinuousModel {
    std::shared_ptr<const DensityFamily> family;
    CostSpec cost;
    PayoffSpec payoff;

    double c(double e) const;
    double c_d(double e) const;
    double c_dd(double e) const;
    double g(double x) const;
    /** E[g|e]; closed form where the family/payoff pair admits one, else quadrature. */
    double expected_payoff(double e) const;
    double expected_payoff_d(double e) const;
};

/** pi(H|x) = 1 on [lo, 1] (Single) or on [lo, hi] (Double). */
struct ThresholdStructure {
    enum class Kind { Single, Double };
    Kind kind = Kind::Single;
    double lo = 0.0;
    double hi = 1.0;
};

struct SignalMoments {
    double p = 0.0;   // P(high signal | e)
    double p_d = 0.0; // d/de of the same
};

/** Closed-form signal moments through the family cdf. */
SignalMoments signal_prob(const ContinuousModel& cm, const ThresholdStructure& t, double e);

/** Quadrature cross-check of signal_prob (adaptive, absolute tolerance tol). */
SignalMoments signal_prob_quadrature(const ContinuousModel& cm, const ThresholdStructure& t,
                                     double e, double tol = 1e-10);

struct MultiplierResult {
    double lambda = 0.0;
    bool pays_high = true; // wage sits on the signal whose mass rises with effort
};

/**
 * Cost-per-marginal-incentive of implementing e under t: p/p' when the high
 * signal rewards effort, (1-p)/(-p') when the low one does. Throws
 * ZeroInformationError when p' vanishes.
 */
MultiplierResult multiplier(const ContinuousModel& cm, const ThresholdStructure& t, double e);

/**
 * d/de of the principal's value E[g|e] - lambda(e) c'(e); the effort
 * derivative of lambda uses central differences with step 1e-5.
 */
double principal_foc(const ContinuousModel& cm, const ThresholdStructure& t, double e);

struct ContinuousEquilibrium {
    ThresholdStructure structure;
    double effort = 0.0;
    double lambda = 0.0;
    double expected_wage = 0.0; // lambda * c'(e)
    double wage_high = 0.0;     // level paid on the rewarded signal
    double U_P = 0.0;
    double U_A = 0.0;
    double agent_foc_residual = 0.0;
    double principal_foc_residual = 0.0;
};

/**
 * Agent-optimal threshold structure under the first-order approach: for each
 * candidate structure the principal's effort solves the effort-choice root on
 * [1e-6, 1]; the outer search covers single and double thresholds (coarse
 * scan, 1e-4 local resolution, golden refinement to 1e-8). Throws
 * NoInteriorEquilibrium when no structure admits an interior root.
 */
ContinuousEquilibrium solve_equilibrium(const ContinuousModel& cm);

struct AssumptionReport {
    bool pass = false;
    bool monotone_ok = false; // score strictly monotone in x
    bool convex_ok = false;   // d(score)/de convex as a function of the score
    double witness_e = 0.0;
    double witness_x = 0.0;
    std::string detail;
};

/** Samples the score and its effort derivative on a grid and checks both shape conditions. */
AssumptionReport verify_assumption(const ContinuousModel& cm, int nx = 64, int ne = 16);

struct FirstBest {
    double effort = 0.0;
    double value = 0.0;        // E[g|e] - c(e)
    double foc_residual = 0.0; // |dE/de - c'| at the reported effort
};

/** Full-information benchmark effort on (0, 1]. */
FirstBest first_best_continuous(const ContinuousModel& cm);

/**
 * Shadow price of the effort-choice constraint at a candidate equilibrium:
 * the stationarity ratio -dA/de over d(phi)/de with A the agent value and
 * phi the principal condition, both by central differences (step 1e-5).
 */
double estimate_eta(const ContinuousModel& cm, const ThresholdStructure& t, double e);

struct SignPattern {
    int sign_changes = 0;
    bool foc_ok = false;    // derivative nonnegative where pi = 1, nonpositive where pi = 0
    bool degenerate = false; // structure carries no information; pattern trivial
    double min_on_high = 0.0;
    double max_on_low = 0.0;
};

/**
 * Variational sign diagnostic of a candidate equilibrium. For each grid
 * outcome x, computes the feasible marginal value to the agent, per unit of
 * toggled outcome mass, of changing x's paid-set membership: the nearest
 * structure boundary is moved to x and the wage-setter's effort re-solved.
 * On the effort-choice constraint manifold this is the derivative of the
 * constrained objective, so at an optimum it is nonpositive off the paid set
 * and nonnegative on it, with sign changes exactly at the boundaries (one for
 * a lower-threshold structure, two for a window). Grid points closer than
 * `delta` to a boundary are skipped (the toggled mass vanishes there); a
 * structure with no usable information yields `degenerate`, as does an
 * all-one-sign result.
 */
SignPattern foc_sign_pattern(const ContinuousModel& cm, const ThresholdStructure& t, double e,
                             double lambda, double eta, int grid = 512, double delta = 1e-4);

} // namespace indopt
