#ifndef UM_ANTIDER_HPP
#define UM_ANTIDER_HPP

#include "um/expr.hpp"
#include "um/sigma.hpp"

namespace um {

/* One summand of the node sum: everything contributed at node sigma_l(x). */
struct NodeTerm {
    long l;
    Qp node;
    Ext term;
};

/* Node-sum antiderivation of f along the variable v, evaluated at x with
 * base point 0.  Jets of f through order n-1 are taken at each node;
 * a pole of f on any node aborts with PoleOnNode. */
std::vector<NodeTerm> antiderive_terms(const Ctx& c, const ExprP& f, VarRef v,
                                       const Qp& x, const Plan& pl);
Ext antiderive_point(const Ctx& c, const ExprP& f, VarRef v, const Qp& x, const Plan& pl);
Ext antiderive_between(const Ctx& c, const ExprP& f, VarRef v,
                       const Qp& a, const Qp& b, const Plan& pl);

/* Iterated node-sum over the listed variables, each swept across the unit
 * ball and evaluated at beta; at most 4 variables. */
Ext antiderive_iterated(const Ctx& c, const ExprP& f, const std::vector<VarRef>& vars,
                        const Plan& pl);

/* Iterated node-sum over all 2m real coordinates of region's ambient space,
 * restricted to the region by membership filtering.  f reads z1..zm (or the
 * split coordinates); m <= 2. */
Ext antiderive_multi(const Ctx& c, const ExprP& f, const Region& region, const Plan& pl);

}

#endif
