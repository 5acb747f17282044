#ifndef UM_JET_HPP
#define UM_JET_HPP

#include <array>
#include <memory>
#include <vector>

#include "um/ext.hpp"

namespace um {

/* Truncated Taylor coefficients in nv parameters, orders 0..ord kept per
 * parameter. All quadrature derivative oracles evaluate through these. */
struct JetShape {
    int nv;
    int ord;
    int size;
    std::array<int, 4> stride{};
    std::vector<std::array<int, 3>> mul_table;  /* (i, j, i+j) with capped sum */

    JetShape(int nv_, int ord_);
    int caps_ok(int i, int j) const;
};

struct Jet {
    const JetShape* sh = nullptr;
    std::vector<Ext> c;

    Jet() = default;
    Jet(const JetShape* s, const Ext& zero) : sh(s), c(s->size, zero) {}

    const Ext& value() const { return c[0]; }
};

Jet jet_const(const JetShape* sh, const Ext& v);
/* value + t_i, the affine coordinate jet */
Jet jet_var(const JetShape* sh, int i, const Ext& v, const Ext& slope);

Jet jet_add(const Jet& a, const Jet& b);
Jet jet_sub(const Jet& a, const Jet& b);
Jet jet_neg(const Jet& a);
Jet jet_scale(const Jet& a, const Ext& s);
Jet jet_mul(const Jet& a, const Jet& b);
Jet jet_recip(const Jet& a);                 /* errc::pole_hit on zero value */
Jet jet_pow(const Jet& a, long e);
Jet jet_conj(const Jet& a);

/* exp/log with the series heads truncated per the context precision. */
Jet jet_exp(const Ctx& c, const Jet& a);
Jet jet_log(const Ctx& c, const Jet& a);

/* Scalar series. exp needs |z| <= 1/p; log needs |z - 1| <= 1/p. */
Ext ext_exp(const Ctx& c, const Ext& z);
Ext ext_log(const Ctx& c, const Ext& z);

long factorial_valuation(const Ctx& c, long t);
mpz_class factorial(long t);

}

#endif
