#ifndef UM_CAUCHY_HPP
#define UM_CAUCHY_HPP

#include "um/chains.hpp"

#include <map>

namespace um {

/* Loop antiderivation of (zeta - z)^{-1} dzeta over the canonical border of
 * radius p^e around z. */
Ext unit_pole_loop(const Ctx& c, const Ext& z, long e, const Plan& pl);

struct CGridEntry {
    int n;
    long e;
    Ext value;
};

/* The normalization constant of the integral formulas, defined operationally
 * as the unit pole loop.  The grid records the value across smoothness
 * orders and border radii; invariance over the radius axis is exact, the
 * value itself depends on the smoothness order. */
struct CauchyConstant {
    Ext value;
    std::vector<CGridEntry> grid;
    sigma_kind sigma = sigma_kind::canonical;
    bool nonzero = false;
};

CauchyConstant compute_C_alpha(const Ctx& c);

/* Cached per (p, N, n, sigma). */
const CauchyConstant& cauchy_constant(const Ctx& c);

/* Reproduce f(z) from its border loop.  f must be free of zetabar
 * symbolically, z strictly inside the border ball, and f pole-free on the
 * closed ball (linear denominators are located exactly; other shapes are
 * the caller's responsibility). */
Ext cauchy_eval(const Ctx& c, const ExprP& f, const Ext& z, const Ball& border,
                const Plan& pl);

/* k-th derivative of f at z through the border loop. */
Ext taylor_coeff(const Ctx& c, const ExprP& f, const Ext& z, long k,
                 const Ball& border, const Plan& pl);

/* Two-sided expansion on an annulus p^e_inner < |z - center| <= p^e_outer.
 * Coefficients are stored for the whole window [k_min, k_max]; reading
 * outside the window is refused rather than treated as zero. */
struct LaurentSeries {
    Ext center;
    long k_min = 0;
    long k_max = 0;
    std::vector<Ext> a;
    long e_inner = 0;
    long e_outer = 0;

    const Ext& at(long k) const;
};

LaurentSeries laurent_coeffs(const Ctx& c, const ExprP& f, const Ext& xi,
                             long k_min, long k_max, long e_inner, long e_outer,
                             long e_border, const Plan& pl);

Ext laurent_eval(const Ctx& c, const LaurentSeries& s, const Ext& z);

/* C^{-1} times the loop of f around the ball of radius p^e at z. */
Ext residue(const Ctx& c, const ExprP& f, const Ext& z, long e, const Plan& pl);

/* Residue at the complement of B(0, p^e): the negated outer loop. */
Ext residue_at_A(const Ctx& c, const ExprP& f, long e, const Plan& pl);

struct AgreementReport {
    Ext lhs;
    Ext rhs;
    long agree_val = 0;
};

/* Outer loop of f versus C times the sum of the residues at the listed
 * poles; both sides computed independently. */
AgreementReport residue_theorem_check(const Ctx& c, const ExprP& f,
                                      const Ball& border,
                                      const std::vector<Ball>& poles,
                                      const Plan& pl);

/* Zeros minus poles of f inside the border, counted by the logarithmic
 * derivative loop.  raw is the unrounded value, count the nearest integer,
 * dist_val the valuation of their difference. */
struct ArgumentCount {
    Ext raw;
    long count = 0;
    long dist_val = 0;
};

ArgumentCount argument_principle(const Ctx& c, const ExprP& f, const Ball& border,
                                 const Plan& pl);

/* Classification is relative to the computed window: terms below the
 * threshold valuation count as zero, and a principal part that reaches the
 * window floor is reported as essential-within-window rather than a pole of
 * determinate order. */
enum class singularity_kind { removable, pole, essential_window };

struct Classification {
    singularity_kind kind = singularity_kind::removable;
    long order = 0;
};

Classification classify_critical_point(const Ctx& c, const LaurentSeries& s,
                                       long zero_val);

/* One evaluation of the dbar primitive at excision level eps: the pole node
 * is masked by excising B(z, p^-eps) from the area term. */
Ext dbar_solve_1d(const Ctx& c, const ExprP& f, const Ball& region, const Ext& z,
                  long eps, const Plan& pl);

struct SweepResult {
    Ext value;
    long eps = 0;
    std::vector<std::pair<long, Ext>> trail;
};

/* Run dbar_solve_1d across eps_lo..eps_hi until three consecutive values
 * agree pairwise to valuation stabilize_val. */
SweepResult dbar_sweep(const Ctx& c, const ExprP& f, const Ball& region,
                       const Ext& z, long eps_lo, long eps_hi,
                       long stabilize_val, const Plan& pl);

/* Several variables: one border loop per coordinate with the others frozen
 * at z, plus the excised area term in the first coordinate.  The components
 * must satisfy the cross compatibility d f_j / d zbar_l = d f_l / d zbar_j,
 * checked symbolically and by sampling. */
Ext dbar_solve_multi(const Ctx& c, const std::vector<ExprP>& f,
                     const Region& region, const std::vector<Ext>& z,
                     long eps, const Plan& pl);

}

#endif
