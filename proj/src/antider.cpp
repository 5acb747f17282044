#include "um/antider.hpp"

namespace um {

namespace {

Jet node_jet(const Ctx& c, const ExprP& f, const JetPoint& pt) {
    try {
        return eval_jet(c, f, pt);
    } catch (const error& e) {
        if (e.code == errc::pole_hit)
            fail(errc::pole_on_node, "integrand pole on a quadrature node");
        throw;
    }
}

Ext lift(const Ctx& c, const Qp& q) { return Ext(q, Qp(0), c.d); }

}

std::vector<NodeTerm> antiderive_terms(const Ctx& c, const ExprP& f, VarRef v,
                                       const Qp& x, const Plan& pl) {
    JetShape sh(1, pl.n - 1);
    std::vector<Qp> nodes = sigma_nodes(c, pl, x);
    std::vector<NodeTerm> out;
    out.reserve(pl.L + 1);
    for (long l = 0; l <= pl.L; ++l) {
        JetPoint pt;
        pt.sh = &sh;
        pt.at.emplace(var_key(v), jet_var(&sh, 0, lift(c, nodes[l]), Ext::one(c)));
        Jet jf = node_jet(c, f, pt);
        Qp delta = nodes[l + 1] - nodes[l];
        Ext term = Ext::zero(c);
        if (!delta.is_zero()) {
            Qp dp(1);
            for (int j = 0; j < pl.n; ++j) {
                dp = dp * delta;
                term = term + jf.c[j] * lift(c, dp / Qp(j + 1));
            }
        }
        out.push_back({l, nodes[l], term});
    }
    return out;
}

Ext antiderive_point(const Ctx& c, const ExprP& f, VarRef v, const Qp& x, const Plan& pl) {
    Ext acc = Ext::zero(c);
    for (const auto& t : antiderive_terms(c, f, v, x, pl)) acc = acc + t.term;
    return acc;
}

Ext antiderive_between(const Ctx& c, const ExprP& f, VarRef v,
                       const Qp& a, const Qp& b, const Plan& pl) {
    return antiderive_point(c, f, v, b, pl) - antiderive_point(c, f, v, a, pl);
}

namespace {

/* Shared odometer over node tuples.  vars[q] sweeps the unit ball; when a
 * region is given, vars must be the split pairs x1,y1,..,xm,ym and tuples
 * outside the region are skipped before any jet is taken. */
Ext iterated_core(const Ctx& c, const ExprP& f, const std::vector<VarRef>& vars,
                  const Region* region, const Plan& pl) {
    int nv = (int)vars.size();
    if (nv < 1 || nv > 4)
        fail(errc::bad_config, "iterated antiderivation handles at most 4 coordinates");
    JetShape sh(nv, pl.n - 1);
    std::vector<Qp> nodes = sigma_nodes(c, pl, beta_element(c));
    long terms = pl.L + 1;

    /* shared per-node weights: delta^(j+1)/(j+1); the beta chain has no
     * repeated nodes, so none of these vanish */
    std::vector<std::vector<Qp>> w(terms, std::vector<Qp>(pl.n));
    for (long l = 0; l < terms; ++l) {
        Qp delta = nodes[l + 1] - nodes[l];
        Qp dp(1);
        for (int j = 0; j < pl.n; ++j) {
            dp = dp * delta;
            w[l][j] = dp / Qp(j + 1);
        }
    }

    std::vector<long> tup(nv, 0);
    std::vector<int> jj(nv, 0);
    std::vector<Ext> z(nv / 2, Ext::zero(c));
    Ext acc = Ext::zero(c);
    for (;;) {
        bool keep = true;
        if (region) {
            for (int k = 0; 2 * k + 1 < nv; ++k)
                z[k] = Ext(nodes[tup[2 * k]], nodes[tup[2 * k + 1]], c.d);
            keep = region->member(c, z);
        }
        if (keep) {
            JetPoint pt;
            pt.sh = &sh;
            for (int q = 0; q < nv; ++q)
                pt.at.emplace(var_key(vars[q]),
                              jet_var(&sh, q, lift(c, nodes[tup[q]]), Ext::one(c)));
            Jet jf = node_jet(c, f, pt);
            std::fill(jj.begin(), jj.end(), 0);
            for (;;) {
                int flat = 0;
                Qp wt(1);
                for (int q = 0; q < nv; ++q) {
                    flat += jj[q] * sh.stride[q];
                    wt = wt * w[tup[q]][jj[q]];
                }
                acc = acc + jf.c[flat] * lift(c, wt);
                int q = 0;
                while (q < nv && ++jj[q] == pl.n) jj[q++] = 0;
                if (q == nv) break;
            }
        }
        int q = 0;
        while (q < nv && ++tup[q] == terms) tup[q++] = 0;
        if (q == nv) break;
    }
    return acc;
}

}

Ext antiderive_iterated(const Ctx& c, const ExprP& f, const std::vector<VarRef>& vars,
                        const Plan& pl) {
    return iterated_core(c, f, vars, nullptr, pl);
}

Ext antiderive_multi(const Ctx& c, const ExprP& f, const Region& region, const Plan& pl) {
    int m = region.m;
    if (m < 1 || m > 2) fail(errc::bad_config, "multi antiderivation handles m <= 2");
    region.validate(c);
    std::vector<VarRef> vars;
    for (int k = 1; k <= m; ++k) {
        vars.push_back({var_kind::xr, k});
        vars.push_back({var_kind::yr, k});
    }
    return iterated_core(c, f, vars, &region, pl);
}

}
