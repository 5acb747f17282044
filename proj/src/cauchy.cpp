#include "um/cauchy.hpp"

#include "um/rng.hpp"

#include <array>
#include <sstream>

namespace um {

namespace {

Form dz_form(ExprP coef) {
    Form w;
    w.m = 1;
    w.terms.push_back({std::move(coef), {{covector_kind::dz, 1}}});
    return w;
}

/* The node sum truncates where the discarded tail drops below p^-N only
 * relative to the integrand's size, so every operation stretches the plan
 * to cover the growth of the kernel factor it introduces on its border. */
Plan widen_plan(const Ctx& c, const Plan& pl, long vbound) {
    Plan q = make_plan(c, vbound);
    if (pl.L > q.L) q.L = pl.L;
    return q;
}

Ext border_loop(const Ctx& c, const ExprP& coef, const Ext& center, long e,
                const Plan& pl) {
    return chain_antiderive(c, dz_form(coef), canonical_border(c, {center}, e), pl);
}

/* (zeta_1 - z)^k */
ExprP pole_kernel(const Ctx& c, const Ext& z, long k) {
    return mk_ipow(mk_sum({zvar(1), mk_const(Ext(-z.x, -z.y, c.d))}), k);
}

void require_nonzero(const Ctx& c, const CauchyConstant& cc) {
    if (!cc.nonzero)
        fail(errc::zero_constant, "normalization constant vanishes at this precision");
}

void require_strictly_inside(const Ctx& c, const Ext& z, const Ball& b,
                             const char* who) {
    if (valuation(c, z - b.center) <= -b.radius_exp)
        fail(errc::out_of_domain, std::string(who) + ": point not strictly inside");
}

/* Roots of the affine-in-zeta_1 denominators of f.  Denominators that are
 * not affine in zeta_1 are left to the node sum itself, which aborts on a
 * pole it actually hits. */
void scan_linear_poles(const Ctx& c, const ExprP& f, std::vector<Ext>& roots) {
    if (f->kind == Expr::recip || (f->kind == Expr::ipow && f->e < 0)) {
        const ExprP& u = f->kids[0];
        ExprP du = derive(c, u, {var_kind::zeta, 1});
        if (!is_zero_expr(du) && is_zero_expr(derive(c, du, {var_kind::zeta, 1}))) {
            EvalPoint origin;
            origin.set({var_kind::zeta, 1}, Ext::zero(c));
            Ext u0 = evaluate(c, u, origin);
            Ext slope = evaluate(c, du, origin);
            if (!slope.is_zero()) roots.push_back(-(u0 * slope.inv()));
        }
    }
    for (const auto& kid : f->kids) scan_linear_poles(c, kid, roots);
}

void require_pole_free(const Ctx& c, const ExprP& f, const Ball& b) {
    std::vector<Ext> roots;
    scan_linear_poles(c, f, roots);
    for (const auto& r : roots)
        if (contains(c, b, r)) fail(errc::pole_inside, "denominator root inside the border ball");
}

void require_zetabar_free(const Ctx& c, const ExprP& f) {
    if (!is_zero_expr(wirtinger(c, f, wirtinger_op::d_zetabar, 1)))
        fail(errc::not_antiholomorphic_free, "integrand depends on the conjugate variable");
}

/* Exact in-place solve of A x = b by Gaussian elimination. */
std::vector<Ext> solve_exact(const Ctx& c, std::vector<std::vector<Ext>> A,
                             std::vector<Ext> b) {
    size_t nn = b.size();
    for (size_t col = 0; col < nn; ++col) {
        size_t piv = col;
        while (piv < nn && A[piv][col].is_zero()) ++piv;
        if (piv == nn) fail(errc::rank_deficiency, "singular coefficient system");
        std::swap(A[piv], A[col]);
        std::swap(b[piv], b[col]);
        Ext inv = A[col][col].inv();
        for (size_t r = 0; r < nn; ++r) {
            if (r == col || A[r][col].is_zero()) continue;
            Ext factor = A[r][col] * inv;
            for (size_t cc = col; cc < nn; ++cc) A[r][cc] -= factor * A[col][cc];
            b[r] -= factor * b[col];
        }
    }
    std::vector<Ext> x(nn);
    for (size_t r = 0; r < nn; ++r) x[r] = A[r][r].inv() * b[r];
    return x;
}

}  // namespace

Ext unit_pole_loop(const Ctx& c, const Ext& z, long e, const Plan& pl) {
    return border_loop(c, pole_kernel(c, z, -1), z, e, widen_plan(c, pl, e));
}

CauchyConstant compute_C_alpha(const Ctx& c) {
    CauchyConstant cc;
    cc.sigma = c.sigma;
    for (int n = 1; n <= 3; ++n) {
        Ctx cn(c.p, c.N, n, c.sigma);
        Plan pln = make_plan(cn);
        for (long k = 2; k <= 6; ++k)
            cc.grid.push_back({n, -k, unit_pole_loop(cn, Ext::zero(cn), -k, pln)});
    }
    for (const auto& g : cc.grid)
        if (g.n == c.n && g.e == -2) cc.value = g.value;
    cc.nonzero = valuation(c, cc.value) < make_plan(c).N_out;
    return cc;
}

const CauchyConstant& cauchy_constant(const Ctx& c) {
    static std::map<std::array<long, 4>, CauchyConstant> cache;
    std::array<long, 4> key = {static_cast<long>(c.p), c.N, c.n,
                               static_cast<long>(c.sigma)};
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, compute_C_alpha(c)).first;
    return it->second;
}

Ext cauchy_eval(const Ctx& c, const ExprP& f, const Ext& z, const Ball& border,
                const Plan& pl) {
    const CauchyConstant& cc = cauchy_constant(c);
    require_nonzero(c, cc);
    require_strictly_inside(c, z, border, "cauchy_eval");
    require_zetabar_free(c, f);
    require_pole_free(c, f, border);
    Ext loop = border_loop(c, mk_prod({f, pole_kernel(c, z, -1)}),
                           border.center, border.radius_exp,
                           widen_plan(c, pl, border.radius_exp));
    return cc.value.inv() * loop;
}

Ext taylor_coeff(const Ctx& c, const ExprP& f, const Ext& z, long k,
                 const Ball& border, const Plan& pl) {
    if (k < 0) fail(errc::bad_config, "taylor_coeff: negative order");
    const CauchyConstant& cc = cauchy_constant(c);
    require_nonzero(c, cc);
    require_strictly_inside(c, z, border, "taylor_coeff");
    require_zetabar_free(c, f);
    require_pole_free(c, f, border);
    Ext loop = border_loop(c, mk_prod({f, pole_kernel(c, z, -k - 1)}),
                           border.center, border.radius_exp,
                           widen_plan(c, pl, (k + 1) * border.radius_exp));
    return Ext::scalar(Qp(factorial(k)), c.d) * cc.value.inv() * loop;
}

const Ext& LaurentSeries::at(long k) const {
    if (k < k_min || k > k_max)
        fail(errc::window_exceeded, "Laurent coefficient outside the computed window");
    return a[static_cast<size_t>(k - k_min)];
}

LaurentSeries laurent_coeffs(const Ctx& c, const ExprP& f, const Ext& xi,
                             long k_min, long k_max, long e_inner, long e_outer,
                             long e_border, const Plan& pl) {
    if (k_min > k_max || e_inner >= e_outer)
        fail(errc::bad_config, "laurent_coeffs: empty window or annulus");
    if (e_border <= e_inner || e_border > e_outer)
        fail(errc::bad_config, "laurent_coeffs: border radius outside the annulus");
    const CauchyConstant& cc = cauchy_constant(c);
    require_nonzero(c, cc);
    std::vector<Ext> roots;
    scan_linear_poles(c, f, roots);
    for (const auto& r : roots) {
        long v = valuation(c, r - xi);
        if (v == -e_border) fail(errc::pole_on_border, "denominator root on the expansion sphere");
        if (v > -e_outer && v < -e_inner)
            fail(errc::pole_inside, "denominator root inside the annulus");
    }
    LaurentSeries s;
    s.center = xi;
    s.k_min = k_min;
    s.k_max = k_max;
    s.e_inner = e_inner;
    s.e_outer = e_outer;
    /* At finite truncation the loop of f against the k-th kernel picks up
     * exactly computable contributions from the other window monomials, so
     * the coefficients come from the window-sized linear system whose matrix
     * is the loop of each monomial against each kernel under the same plan.
     * In the limit that matrix is the identity and a_k is the bare loop. */
    Ext cinv = cc.value.inv();
    long vb_f = k_min < 0 ? e_border * (-k_min) : 0;
    size_t width = static_cast<size_t>(k_max - k_min + 1);
    std::vector<std::vector<Ext>> mono(width, std::vector<Ext>(width));
    std::vector<Ext> raw(width);
    for (long k = k_min; k <= k_max; ++k) {
        long vb = vb_f + (k >= 0 ? e_border * (k + 1) : 0);
        Plan row_plan = widen_plan(c, pl, vb);
        size_t row = static_cast<size_t>(k - k_min);
        raw[row] = cinv * border_loop(c, mk_prod({f, pole_kernel(c, xi, -k - 1)}),
                                      xi, e_border, row_plan);
        for (long ss = k_min; ss <= k_max; ++ss)
            mono[row][static_cast<size_t>(ss - k_min)] =
                cinv * border_loop(c, pole_kernel(c, xi, ss - k - 1), xi,
                                   e_border, row_plan);
    }
    s.a = solve_exact(c, std::move(mono), std::move(raw));
    return s;
}

Ext laurent_eval(const Ctx& c, const LaurentSeries& s, const Ext& z) {
    long v = valuation(c, z - s.center);
    if (v <= -s.e_outer || v > -s.e_inner)
        fail(errc::out_of_domain, "laurent_eval: point outside the annulus");
    Ext acc = Ext::zero(c);
    for (long k = s.k_min; k <= s.k_max; ++k)
        acc += s.at(k) * ext_pow(z - s.center, k);
    return acc;
}

Ext residue(const Ctx& c, const ExprP& f, const Ext& z, long e, const Plan& pl) {
    const CauchyConstant& cc = cauchy_constant(c);
    require_nonzero(c, cc);
    return cc.value.inv() * border_loop(c, f, z, e, widen_plan(c, pl, e));
}

Ext residue_at_A(const Ctx& c, const ExprP& f, long e, const Plan& pl) {
    const CauchyConstant& cc = cauchy_constant(c);
    require_nonzero(c, cc);
    return -(cc.value.inv() *
             border_loop(c, f, Ext::zero(c), e, widen_plan(c, pl, e)));
}

AgreementReport residue_theorem_check(const Ctx& c, const ExprP& f,
                                      const Ball& border,
                                      const std::vector<Ball>& poles,
                                      const Plan& pl) {
    const CauchyConstant& cc = cauchy_constant(c);
    require_nonzero(c, cc);
    AgreementReport rep;
    rep.lhs = border_loop(c, f, border.center, border.radius_exp,
                          widen_plan(c, pl, border.radius_exp));
    Ext sum = Ext::zero(c);
    for (const auto& b : poles) sum += residue(c, f, b.center, b.radius_exp, pl);
    rep.rhs = cc.value * sum;
    rep.agree_val = valuation(c, rep.lhs - rep.rhs);
    return rep;
}

ArgumentCount argument_principle(const Ctx& c, const ExprP& f, const Ball& border,
                                 const Plan& pl) {
    const CauchyConstant& cc = cauchy_constant(c);
    require_nonzero(c, cc);
    ExprP fp = derive(c, f, {var_kind::zeta, 1});
    ExprP integrand = mk_prod({fp, mk_recip(f)});
    ArgumentCount out;
    try {
        out.raw = cc.value.inv() *
                  border_loop(c, integrand, border.center, border.radius_exp,
                              widen_plan(c, pl, border.radius_exp));
    } catch (const error& err) {
        if (err.code == errc::pole_on_node)
            fail(errc::zero_on_border, "f vanishes or blows up on a border node");
        throw;
    }
    out.count = 0;
    out.dist_val = valuation(c, out.raw);
    for (long j = -60; j <= 60; ++j) {
        long v = valuation(c, out.raw - Ext::scalar(Qp(j), c.d));
        if (v > out.dist_val) {
            out.dist_val = v;
            out.count = j;
        }
    }
    return out;
}

Classification classify_critical_point(const Ctx& c, const LaurentSeries& s,
                                       long zero_val) {
    Classification out;
    long k_low = s.k_max + 1;
    for (long k = s.k_min; k < 0 && k <= s.k_max; ++k)
        if (valuation(c, s.at(k)) < zero_val) {
            k_low = k;
            break;
        }
    if (k_low > s.k_max || k_low >= 0) {
        out.kind = singularity_kind::removable;
    } else if (k_low == s.k_min) {
        out.kind = singularity_kind::essential_window;
    } else {
        out.kind = singularity_kind::pole;
        out.order = -k_low;
    }
    return out;
}

Ext dbar_solve_1d(const Ctx& c, const ExprP& f, const Ball& region, const Ext& z,
                  long eps, const Plan& pl) {
    const CauchyConstant& cc = cauchy_constant(c);
    require_nonzero(c, cc);
    require_strictly_inside(c, z, region, "dbar_solve_1d");
    if (-eps >= region.radius_exp)
        fail(errc::bad_config, "dbar_solve_1d: excision not inside the region");
    Ext cinv = cc.value.inv();
    Ext loop = border_loop(c, mk_prod({f, pole_kernel(c, z, -1)}),
                           region.center, region.radius_exp,
                           widen_plan(c, pl, region.radius_exp));
    Region cut;
    cut.m = 1;
    cut.discs = {{region}};
    cut.excluded = {{Ball{z, -eps}}};
    ExprP chi = mk_chi(cut, {{var_kind::zeta, 1}});
    Form area;
    area.m = 1;
    area.terms.push_back({mk_prod({f, pole_kernel(c, z, -1), chi}),
                          {{covector_kind::dzbar, 1}, {covector_kind::dz, 1}}});
    Chain disc;
    disc.add(1, ball_box(c, {region.center}, region.radius_exp));
    Ext area_v = chain_antiderive(c, area, disc, widen_plan(c, pl, -eps));
    return z.conj() * cinv * loop - cinv * area_v;
}

SweepResult dbar_sweep(const Ctx& c, const ExprP& f, const Ball& region,
                       const Ext& z, long eps_lo, long eps_hi,
                       long stabilize_val, const Plan& pl) {
    SweepResult out;
    for (long eps = eps_lo; eps <= eps_hi; ++eps) {
        out.trail.push_back({eps, dbar_solve_1d(c, f, region, z, eps, pl)});
        size_t t = out.trail.size();
        if (t < 3) continue;
        const Ext& u0 = out.trail[t - 3].second;
        const Ext& u1 = out.trail[t - 2].second;
        const Ext& u2 = out.trail[t - 1].second;
        if (valuation(c, u1 - u0) >= stabilize_val &&
            valuation(c, u2 - u1) >= stabilize_val &&
            valuation(c, u2 - u0) >= stabilize_val) {
            out.value = u2;
            out.eps = eps;
            return out;
        }
    }
    std::ostringstream msg;
    msg << "no three consecutive excision levels in [" << eps_lo << ", " << eps_hi
        << "] agree to valuation " << stabilize_val;
    fail(errc::non_convergent_sweep, msg.str());
}

namespace {

/* f with every coordinate but `keep` frozen at z, and `keep` renamed to
 * coordinate 1. */
ExprP freeze_except(const Ctx& c, const ExprP& f, int m, int keep,
                    const std::vector<Ext>& z) {
    std::vector<std::pair<VarRef, LinComb>> subs;
    for (int l = 0; l < m; ++l) {
        VarRef zv{var_kind::zeta, l + 1};
        VarRef zb{var_kind::zetabar, l + 1};
        if (l == keep) {
            if (l != 0) {
                subs.push_back({zv, {Ext::zero(c), {{Ext::one(c), {var_kind::zeta, 1}}}}});
                subs.push_back({zb, {Ext::zero(c), {{Ext::one(c), {var_kind::zetabar, 1}}}}});
            }
        } else {
            subs.push_back({zv, {z[static_cast<size_t>(l)], {}}});
            subs.push_back({zb, {z[static_cast<size_t>(l)].conj(), {}}});
        }
    }
    return subs.empty() ? f : mk_affine(f, std::move(subs));
}

void require_compatible(const Ctx& c, const std::vector<ExprP>& f, int m) {
    for (int j = 0; j < m; ++j)
        for (int l = j + 1; l < m; ++l) {
            ExprP wjl = wirtinger(c, f[static_cast<size_t>(j)], wirtinger_op::d_zetabar, l + 1);
            ExprP wlj = wirtinger(c, f[static_cast<size_t>(l)], wirtinger_op::d_zetabar, j + 1);
            if (expr_equal(wjl, wlj)) continue;
            ExprP diff = mk_sum({wjl, mk_prod({mk_int(c, -1), wlj})});
            Rng rng(0x636f6d70u);
            for (int trial = 0; trial < 20; ++trial) {
                EvalPoint pt;
                for (int q = 1; q <= m; ++q)
                    pt.set({var_kind::zeta, q}, sample_ext_unit_ball(c, rng, c.N + 2));
                if (!evaluate(c, diff, pt).is_zero())
                    fail(errc::bad_config, "dbar_solve_multi: components are not cross compatible");
            }
        }
}

}  // namespace

Ext dbar_solve_multi(const Ctx& c, const std::vector<ExprP>& f,
                     const Region& region, const std::vector<Ext>& z,
                     long eps, const Plan& pl) {
    int m = region.m;
    if (m < 1 || m > 2 || f.size() != static_cast<size_t>(m) ||
        z.size() != static_cast<size_t>(m))
        fail(errc::bad_config, "dbar_solve_multi: component count mismatch");
    if (region.discs.size() != 1 || !region.excluded.empty())
        fail(errc::bad_config, "dbar_solve_multi: region must be one polydisc");
    if (m == 1) return dbar_solve_1d(c, f[0], region.discs[0][0], z[0], eps, pl);
    require_compatible(c, f, m);
    const CauchyConstant& cc = cauchy_constant(c);
    require_nonzero(c, cc);
    for (int j = 0; j < m; ++j)
        require_strictly_inside(c, z[static_cast<size_t>(j)], region.discs[0][static_cast<size_t>(j)],
                                "dbar_solve_multi");
    Ext cinv = cc.value.inv();
    Ext acc = Ext::zero(c);
    for (int j = 0; j < m; ++j) {
        const Ball& bj = region.discs[0][static_cast<size_t>(j)];
        ExprP fj = freeze_except(c, f[static_cast<size_t>(j)], m, j, z);
        Ext loop = border_loop(c, mk_prod({fj, pole_kernel(c, z[static_cast<size_t>(j)], -1)}),
                               bj.center, bj.radius_exp,
                               widen_plan(c, pl, bj.radius_exp));
        acc += z[static_cast<size_t>(j)].conj() * cinv * loop;
    }
    const Ball& b1 = region.discs[0][0];
    if (-eps >= b1.radius_exp)
        fail(errc::bad_config, "dbar_solve_multi: excision not inside the region");
    Region cut;
    cut.m = 1;
    cut.discs = {{b1}};
    cut.excluded = {{Ball{z[0], -eps}}};
    ExprP chi = mk_chi(cut, {{var_kind::zeta, 1}});
    ExprP f1 = freeze_except(c, f[0], m, 0, z);
    Form area;
    area.m = 1;
    area.terms.push_back({mk_prod({f1, pole_kernel(c, z[0], -1), chi}),
                          {{covector_kind::dzbar, 1}, {covector_kind::dz, 1}}});
    Chain disc;
    disc.add(1, ball_box(c, {b1.center}, b1.radius_exp));
    acc -= cinv * chain_antiderive(c, area, disc, widen_plan(c, pl, -eps));
    return acc;
}

}
