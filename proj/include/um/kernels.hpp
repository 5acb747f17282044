#ifndef UM_KERNELS_HPP
#define UM_KERNELS_HPP

#include "um/cauchy.hpp"

namespace um {

/* Kernel choices for the multidimensional integral operators.  The scaling
 * map is fixed to the canonical exponential normalization, whose logarithmic
 * differential collapses to p^{-shell} d(argument) per component, so kernel
 * coefficients never evaluate the exponential itself.  The section map v is
 * either the conjugate difference or a caller-supplied family close enough
 * to it that the residual exponential factors converge. */
struct KernelConfig {
    int m = 1;
    enum class v_choice { conj_difference, custom };
    v_choice v = v_choice::conj_difference;
    /* custom only: m components in zeta/zetabar with z baked in as
     * constants; z_free marks maps with no dependence on the evaluation
     * point, which is what the homotopy identity requires. */
    std::vector<ExprP> v_map;
    bool v_z_free = false;
    long dq_exp = 8; /* depth of the difference-quotient step in zbar */
};

/* Form whose terms all share one (dzeta, dzetabar) degree pair.  Terms are
 * normalized: covectors sorted, signs folded into coefficients, repeated
 * covectors dropped. */
struct BidegreeForm {
    Form form;
    int b = 0;
    int c = 0;
};

BidegreeForm make_bidegree(const Ctx& c, Form w);

/* Graded wedge with covector normalization; terms with a repeated covector
 * vanish. */
Form form_wedge(const Form& a, const Form& b);

/* The two halves of the exterior derivative. */
Form form_del(const Ctx& c, const Form& w);
Form form_dbar(const Ctx& c, const Form& w);

/* Reproducing kernel on the shell |zeta - z| = p^{-shell}: the alternating
 * sum over j of (zeta_j - z_j)^{-1} dzeta_j wedged with the scaled volume
 * factors of the other coordinates.  m = 1 reduces to the plain pole
 * kernel. */
BidegreeForm mb_kernel(const Ctx& c, const std::vector<Ext>& z, long shell,
                       const KernelConfig& cfg);

/* Loop normalization constant of the m-coordinate kernel, measured over a
 * radius sweep and compared against the closed form: the unit pole loop
 * constant times m (2 alpha)^{m-1}. */
struct KernelConstant {
    Ext value;
    Ext closed_form;
    long agree_val = 0;
    std::vector<std::pair<long, Ext>> sweep;
    bool nonzero = false;
};

const KernelConstant& q_m_constant(const Ctx& c, int m);

/* Polydisc of one common radius p^e around a coordinate-wise center. */
struct Polydisc {
    std::vector<Ext> center;
    long e = 0;
};

/* Value of a kernel operator: a zbar-degree t form in the evaluation point
 * with constant coefficients, stored over the sorted multi-indices. */
struct ZbarForm {
    int m = 1;
    int t = 0;
    std::vector<Ext> comp;

    bool is_zero() const;
};

ZbarForm zbar_zero(const Ctx& c, int m, int t);

/* Border and interior kernel operators.  The border side loops f against
 * the kernel over the canonical border of the polydisc; the interior side
 * antiderives over the polydisc with the shell-constant scale resolved
 * level by level and a polydisc excision of radius p^{-eps} around z, as in
 * the one-coordinate dbar solver.  Values vanish structurally outside the
 * degree range of the side. */
enum class bochner_side { boundary, interior };

ZbarForm bochner_ops(const Ctx& c, const BidegreeForm& f, const Polydisc& om,
                     const std::vector<Ext>& z, bochner_side which, long eps,
                     const KernelConfig& cfg, const Plan& pl);

/* Section-map operators.  L loops f against the section kernel over the
 * border; R antiderives against the interpolation kernel over border x
 * unit-ball, with the interpolation parameter as a genuine extra
 * coordinate.  For the conjugate difference the interpolation kernel has no
 * parameter differential, so R vanishes exactly and L collapses to the
 * border operator. */
struct LerayValues {
    ZbarForm l_value;
    ZbarForm r_value;
};

LerayValues leray_ops(const Ctx& c, const BidegreeForm& f, const Polydisc& om,
                      const std::vector<Ext>& z, const KernelConfig& cfg,
                      const Plan& pl);

/* Reproduction identity scorecard for a (0,t) input: the alternating-sign
 * reproduction of f(z) from the border term, the interior term of dbar f,
 * and the zbar derivative of the interior term taken by difference
 * quotients.  With a custom z-free section map the homotopy identity is
 * scored as well; its operator combines the section remainder with the
 * interior term.  Defects are reported as agreement valuations and regress
 * against goldens rather than asserting. */
struct KoppelmanReport {
    int t = 0;
    ZbarForm lhs;
    ZbarForm border_term;
    ZbarForm area_dbar_term;
    ZbarForm dbar_area_term;
    long defect_val = 0;
    bool homotopy_scored = false;
    ZbarForm homotopy_rhs;
    long homotopy_defect_val = 0;
};

KoppelmanReport koppelman_check(const Ctx& c, const BidegreeForm& f,
                                const Polydisc& om, const std::vector<Ext>& z,
                                long eps, const KernelConfig& cfg,
                                const Plan& pl);

}

#endif
