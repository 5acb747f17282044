#ifndef UM_SCALAR_HPP
#define UM_SCALAR_HPP

#include <gmpxx.h>
#include <climits>
#include <string>
#include <vector>

#include "um/error.hpp"

namespace um {

/* Valuation of the zero element. */
inline constexpr long VAL_INF = LONG_MAX;

enum class sigma_kind : int { canonical = 0, offset = 1 };

/* Shared evaluation context: the prime, the absolute precision N used for
 * rendering and comparisons, the smoothness order n of the antiderivation,
 * the defining non-residue d of the quadratic extension, and the radius
 * parameter rho of the sigma-property statements. */
struct Ctx {
    unsigned long p;
    int N;
    int n;
    long d;
    mpq_class rho;
    sigma_kind sigma = sigma_kind::canonical;

    Ctx(unsigned long p_, int N_, int n_, sigma_kind s = sigma_kind::canonical);
};

/* An element of Q_p. The value is held exactly; the context's N bounds what
 * the digit renderers and order comparisons are allowed to distinguish. */
struct Qp {
    mpq_class r;

    Qp() : r(0) {}
    Qp(long v) : r(v) {}
    Qp(const mpz_class& v) : r(v) {}
    Qp(const mpq_class& v) : r(v) { r.canonicalize(); }
    Qp(long num, long den) : r(num, den) {
        if (den == 0) fail(errc::division_by_zero, "rational literal");
        r.canonicalize();
    }

    bool is_zero() const { return sgn(r) == 0; }

    Qp operator-() const { return Qp(mpq_class(-r)); }
    Qp operator+(const Qp& o) const { return Qp(mpq_class(r + o.r)); }
    Qp operator-(const Qp& o) const { return Qp(mpq_class(r - o.r)); }
    Qp operator*(const Qp& o) const { return Qp(mpq_class(r * o.r)); }
    Qp operator/(const Qp& o) const {
        if (o.is_zero()) fail(errc::division_by_zero, "Qp division");
        return Qp(mpq_class(r / o.r));
    }
    Qp& operator+=(const Qp& o) { r += o.r; return *this; }
    Qp& operator-=(const Qp& o) { r -= o.r; return *this; }
    Qp& operator*=(const Qp& o) { r *= o.r; return *this; }
    bool operator==(const Qp& o) const { return r == o.r; }
    bool operator!=(const Qp& o) const { return r != o.r; }
};

long valuation(const Ctx& c, const Qp& a);

/* p^e as an exact element. */
Qp p_power(const Ctx& c, long e);

/* |a| <= p^e, i.e. valuation >= -e. */
bool norm_le(const Ctx& c, const Qp& a, long e);

/* |a| < rho^m, decided exactly on rationals. */
bool lt_rho_pow(const Ctx& c, const Qp& a, long m);

/* Digit of the canonical expansion at index i (coefficient of p^i). */
unsigned long digit_at(const Ctx& c, const Qp& a, long i);

/* len digits starting at the valuation; empty for zero. */
std::vector<unsigned long> lead_digits(const Ctx& c, const Qp& a, int len);

/* Integer in [0, p^l) congruent to a modulo p^l; requires valuation >= 0. */
Qp residue_below(const Ctx& c, const Qp& a, long l);

enum class ordering : int { less = -1, equal = 0, greater = 1 };

/* The digit-lexicographic linear order. Values that differ only beyond
 * index N are reported as indistinguishable rather than ordered. */
ordering triangle_compare(const Ctx& c, const Qp& a, const Qp& b);

/* The largest element of the unit ball in the digit order: -1. */
Qp beta_element(const Ctx& c);

/* "d_v d_{v+1} ... *p^v" with N digits; "0" for zero. */
std::string format_qp(const Ctx& c, const Qp& a);

}

#endif
