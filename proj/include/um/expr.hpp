#ifndef UM_EXPR_HPP
#define UM_EXPR_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "um/jet.hpp"

namespace um {

enum class var_kind : int { zeta = 0, zetabar = 1, xr = 2, yr = 3, tpar = 4 };

struct VarRef {
    var_kind k = var_kind::zeta;
    int idx = 1;  /* coordinate index, 1-based; parameter slot for tpar */
};

inline long var_key(const VarRef& v) { return static_cast<long>(v.k) * 64 + v.idx; }

struct Expr;
using ExprP = std::shared_ptr<const Expr>;

/* c0 + sum coef * var: the substitution target of an affine node. */
struct LinComb {
    Ext c0;
    std::vector<std::pair<Ext, VarRef>> terms;
};

struct Expr {
    enum kind_t { konst, var, sum, prod, recip, ipow, expn, logn, affine, chi } kind;

    Ext k;
    VarRef v;
    std::vector<ExprP> kids;
    long e = 0;
    std::vector<std::pair<VarRef, LinComb>> subs;
    Region reg;
    std::vector<VarRef> reg_vars;  /* coordinates the region constrains */

    mutable std::map<long, ExprP> dcache;
};

ExprP mk_const(const Ext& v);
ExprP mk_int(const Ctx& c, long v);
ExprP mk_var(VarRef v);
ExprP mk_sum(std::vector<ExprP> kids);
ExprP mk_prod(std::vector<ExprP> kids);
ExprP mk_recip(ExprP u);
ExprP mk_ipow(ExprP u, long e);
ExprP mk_exp(ExprP u);
ExprP mk_log(ExprP u);
ExprP mk_affine(ExprP u, std::vector<std::pair<VarRef, LinComb>> subs);
ExprP mk_chi(Region r, std::vector<VarRef> vars);

bool expr_equal(const ExprP& a, const ExprP& b);
bool is_zero_expr(const ExprP& a);

/* Structural conjugation: zeta <-> zetabar, constants conjugated. */
ExprP conj_expr(const ExprP& a);

/* Exact symbolic derivative; chi nodes are locally constant and derive to 0. */
ExprP derive(const Ctx& c, const ExprP& f, VarRef v, int order = 1);

enum class wirtinger_op { d_zeta, d_zetabar };
ExprP wirtinger(const Ctx& c, const ExprP& f, wirtinger_op which, int j);

/* Point assignment and jet assignment evaluation. Unassigned zeta resolves
 * through assigned x/y of the same index and vice versa. */
struct EvalPoint {
    std::map<long, Ext> at;
    void set(VarRef v, const Ext& z) { at[var_key(v)] = z; }
};

Ext evaluate(const Ctx& c, const ExprP& f, const EvalPoint& pt);

struct JetPoint {
    const JetShape* sh = nullptr;
    std::map<long, Jet> at;
    void set(VarRef v, Jet j) { at[var_key(v)] = std::move(j); }
};

Jet eval_jet(const Ctx& c, const ExprP& f, const JetPoint& pt);

/* Iterated divided difference of order u along variable v with step h. */
Ext difference_quotient(const Ctx& c, const ExprP& f, VarRef v, const EvalPoint& pt,
                        const Ext& h, int u);

ExprP parse_expr(const Ctx& c, const std::string& text);
std::string print_expr(const Ctx& c, const ExprP& f);

/* Variables z1..zm for building integrands programmatically. */
inline ExprP zvar(int j = 1) { return mk_var({var_kind::zeta, j}); }
inline ExprP zbarvar(int j = 1) { return mk_var({var_kind::zetabar, j}); }
inline ExprP xvar(int j = 1) { return mk_var({var_kind::xr, j}); }
inline ExprP yvar(int j = 1) { return mk_var({var_kind::yr, j}); }
inline ExprP tvar(int slot = 1) { return mk_var({var_kind::tpar, slot}); }

}

#endif
