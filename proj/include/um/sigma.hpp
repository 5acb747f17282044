#ifndef UM_SIGMA_HPP
#define UM_SIGMA_HPP

#include "um/ext.hpp"

#include <vector>

namespace um {

/* Truncation-level map onto the unit ball: sigma_l(x) keeps the digits of x
 * below p^l.  The offset variant starts at 0 and keeps one extra digit per
 * step; both satisfy the approximation laws the quadrature needs. */
Qp sigma_map(const Ctx& c, int level, const Qp& x);
Ext sigma_map(const Ctx& c, int level, const Ext& z);

/* Quadrature plan: node count L, requested smoothness n and the output
 * precision the node sum actually supports. */
struct Plan {
    int n = 1;
    long L = 0;
    int N_out = 0;
};

/* Smallest L so the discarded tail of the node sum sits below p^-N when the
 * integrand and its derivatives are bounded by p^-vbound on the unit ball. */
long truncation_level(const Ctx& c, long vbound, int n);

Plan make_plan(const Ctx& c);
Plan make_plan(const Ctx& c, long vbound);

/* sigma_0(x) .. sigma_L(x) followed by the tail node x itself. */
std::vector<Qp> sigma_nodes(const Ctx& c, const Plan& pl, const Qp& x);

}

#endif
