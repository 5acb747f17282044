#ifndef UM_RNG_HPP
#define UM_RNG_HPP

#include <cstdint>
#include <random>

#include "um/ext.hpp"

namespace um {

/* Deterministic source; avoids std::uniform_int_distribution, whose output
 * is implementation-defined, so reports stay byte-identical everywhere. */
struct Rng {
    std::mt19937_64 g;
    explicit Rng(std::uint64_t seed) : g(seed) {}

    std::uint64_t word() { return g(); }

    std::uint64_t below(std::uint64_t m) {
        std::uint64_t lim = UINT64_MAX - UINT64_MAX % m;
        std::uint64_t w;
        do { w = g(); } while (w >= lim);
        return w % m;
    }

    long range(long lo, long hi) {  /* inclusive */
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
};

/* Integer with `digits` random p-adic digits: an element of the unit ball. */
inline Qp sample_unit_ball(const Ctx& c, Rng& rng, int digits) {
    mpz_class acc(0), pk(1);
    for (int i = 0; i < digits; ++i) {
        acc += pk * static_cast<long>(rng.below(c.p));
        pk *= static_cast<long>(c.p);
    }
    return Qp(acc);
}

/* Nonzero sample with valuation exactly v. */
inline Qp sample_at_valuation(const Ctx& c, Rng& rng, long v, int digits) {
    mpz_class acc(static_cast<long>(1 + rng.below(c.p - 1))), pk(static_cast<long>(c.p));
    for (int i = 1; i < digits; ++i) {
        acc += pk * static_cast<long>(rng.below(c.p));
        pk *= static_cast<long>(c.p);
    }
    return Qp(acc) * p_power(c, v);
}

inline Qp sample_field(const Ctx& c, Rng& rng, long vmin, long vmax, int digits) {
    return sample_at_valuation(c, rng, rng.range(vmin, vmax), digits);
}

inline Ext sample_ext_unit_ball(const Ctx& c, Rng& rng, int digits) {
    Qp x = sample_unit_ball(c, rng, digits);
    Qp y = sample_unit_ball(c, rng, digits);
    return Ext(x, y, c.d);
}

inline Ext sample_ext_at_valuation(const Ctx& c, Rng& rng, long v, int digits) {
    Qp x = sample_at_valuation(c, rng, v, digits);
    Qp y = sample_unit_ball(c, rng, digits) * p_power(c, v);
    if (rng.below(2)) return Ext(y, x, c.d);
    return Ext(x, y, c.d);
}

}

#endif
