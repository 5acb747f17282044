#include "um/sigma.hpp"

#include "um/jet.hpp"

namespace um {

Qp sigma_map(const Ctx& c, int level, const Qp& x) {
    if (level < 0) fail(errc::bad_config, "negative sigma level");
    if (!(valuation(c, x) >= 0)) fail(errc::out_of_domain, "sigma needs an integral argument");
    if (c.sigma == sigma_kind::offset) {
        if (level == 0) return Qp(0);
        return residue_below(c, x, level + 1);
    }
    return residue_below(c, x, level);
}

Ext sigma_map(const Ctx& c, int level, const Ext& z) {
    return Ext(sigma_map(c, level, z.x), sigma_map(c, level, z.y), z.d);
}

long truncation_level(const Ctx& c, long vbound, int n) {
    (void)n; /* the j = 0 term dominates the tail for every smoothness order */
    long lo = c.N - vbound;
    /* smallest L with L - 1/(p-1) >= N - vbound; 0 < 1/(p-1) < 1 for odd p */
    return lo + 1;
}

Plan make_plan(const Ctx& c) { return make_plan(c, 0); }

Plan make_plan(const Ctx& c, long vbound) {
    Plan pl;
    pl.n = c.n;
    pl.L = truncation_level(c, vbound, c.n);
    long worst = 0;
    for (int j = 1; j <= c.n; ++j) {
        long v = factorial_valuation(c, j);
        if (v > worst) worst = v;
    }
    pl.N_out = c.N - static_cast<int>(worst);
    return pl;
}

std::vector<Qp> sigma_nodes(const Ctx& c, const Plan& pl, const Qp& x) {
    std::vector<Qp> nodes;
    nodes.reserve(pl.L + 2);
    for (long l = 0; l <= pl.L; ++l) nodes.push_back(sigma_map(c, static_cast<int>(l), x));
    nodes.push_back(x);
    return nodes;
}

}
