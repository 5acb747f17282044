#ifndef UM_CHAINS_HPP
#define UM_CHAINS_HPP

#include "um/antider.hpp"

namespace um {

/* Differential form over K(alpha)^m with expression coefficients. */
enum class covector_kind { dz, dzbar, dx, dy };

struct CoSym {
    covector_kind k;
    int j;  /* coordinate index, 1-based */
};

struct FormTerm {
    ExprP coef;
    std::vector<CoSym> syms;
};

struct Form {
    int m = 1;
    std::vector<FormTerm> terms;
};

Form form_scale(const Form& w, const Ext& s);
Form form_add(const Form& a, const Form& b);

/* Exterior derivative, expanded through the Wirtinger pair per coordinate. */
Form form_d(const Ctx& c, const Form& w);

/* A cell is an affine box gamma(t_1..t_k) = base + sum (t_i/beta) dirs[i]
 * with each t_i running over the unit ball, or a simplex [v_0..v_q] that
 * participates in boundary algebra (and is integrable when its dimension
 * is at most 1). */
struct Cell {
    enum kind_t { box, simplex } kind = box;
    std::vector<Ext> base;
    std::vector<std::vector<Ext>> dirs;
    std::vector<std::vector<Ext>> verts;

    int ambient() const;
    int dim() const;
};

Cell make_point(const std::vector<Ext>& at);
Cell make_segment(const std::vector<Ext>& a, const std::vector<Ext>& b);
Cell make_box(const std::vector<Ext>& base, const std::vector<std::vector<Ext>>& dirs);
Cell make_simplex(const std::vector<std::vector<Ext>>& verts);

bool cell_equal(const Cell& a, const Cell& b);

struct Chain {
    std::vector<std::pair<long, Cell>> cells;

    Chain& add(long coef, const Cell& cell);
    void normalize();          /* merge equal cells, drop zero coefficients */
    bool empty() const;
};

/* Signed faces; points have no boundary to take. */
Chain boundary(const Chain& ch);

/* The full ball (or polydisc) of radius p^e around z as a 2m-dimensional
 * box; e follows the Ball::radius_exp convention. */
Cell ball_box(const Ctx& c, const std::vector<Ext>& z, long e);

/* Canonical oriented border of the radius-p^e ball around z: the 4-corner
 * loop per coordinate, full-ball factors in the others; 4m cells. */
Chain canonical_border(const Ctx& c, const std::vector<Ext>& z, long e);

/* Node-sum antiderivation of the form over the chain by affine pullback.
 * Terms whose degree differs from a cell's dimension contribute zero. */
Ext chain_antiderive(const Ctx& c, const Form& w, const Chain& ch, const Plan& pl);

struct StokesReport {
    Ext lhs;       /* antiderivation of dw over the cell   */
    Ext rhs;       /* antiderivation of w over its border  */
    long agree_val;
};

StokesReport stokes_check(const Ctx& c, const Form& w, const Cell& tau, const Plan& pl);

}

#endif
