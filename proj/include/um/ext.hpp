#ifndef UM_EXT_HPP
#define UM_EXT_HPP

#include <vector>

#include "um/scalar.hpp"

namespace um {

/* z = x + alpha*y in the quadratic extension K(alpha), alpha^2 = d. */
struct Ext {
    Qp x, y;
    long d = 0;

    Ext() = default;
    Ext(const Qp& re, const Qp& im, long dd) : x(re), y(im), d(dd) {}
    static Ext scalar(const Qp& re, long dd) { return Ext(re, Qp(0), dd); }
    static Ext zero(const Ctx& c) { return Ext(Qp(0), Qp(0), c.d); }
    static Ext one(const Ctx& c) { return Ext(Qp(1), Qp(0), c.d); }
    static Ext alpha(const Ctx& c) { return Ext(Qp(0), Qp(1), c.d); }

    bool is_zero() const { return x.is_zero() && y.is_zero(); }
    bool is_real() const { return y.is_zero(); }

    Ext conj() const { return Ext(x, -y, d); }

    /* d = 0 marks a plain rational constant built without a context; the
     * defining non-residue then comes from the other operand. */
    long join_d(const Ext& o) const { return d ? d : o.d; }

    Ext operator-() const { return Ext(-x, -y, d); }
    Ext operator+(const Ext& o) const { return Ext(x + o.x, y + o.y, join_d(o)); }
    Ext operator-(const Ext& o) const { return Ext(x - o.x, y - o.y, join_d(o)); }
    Ext operator*(const Ext& o) const {
        long dd = join_d(o);
        return Ext(x * o.x + Qp(dd) * (y * o.y), x * o.y + y * o.x, dd);
    }
    Ext& operator+=(const Ext& o) { x += o.x; y += o.y; if (!d) d = o.d; return *this; }
    Ext& operator-=(const Ext& o) { x -= o.x; y -= o.y; if (!d) d = o.d; return *this; }

    Ext inv() const {
        Qp nrm = x * x - Qp(d) * (y * y);
        if (nrm.is_zero()) fail(errc::division_by_zero, "Ext inverse");
        return Ext(x / nrm, -y / nrm, d);
    }
    Ext operator/(const Ext& o) const { return *this * o.inv(); }

    bool operator==(const Ext& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Ext& o) const { return !(*this == o); }
};

/* min of the coordinate valuations (max-norm of the unramified extension). */
long valuation(const Ctx& c, const Ext& z);

Ext ext_pow(const Ext& z, long e);

std::string format_ext(const Ctx& c, const Ext& z);

/* Ball in one K(alpha) coordinate: |z - center| <= p^radius_exp. */
struct Ball {
    Ext center;
    long radius_exp = 0;
};

bool contains(const Ctx& c, const Ball& b, const Ext& z);

/* disjoint / nested-left (a in b) / nested-right (b in a) / equal */
enum class ball_relation { disjoint, nested_left, nested_right, equal };
ball_relation classify(const Ctx& c, const Ball& a, const Ball& b);

/* Clopen region in K(alpha)^m: finite union of pairwise disjoint polydiscs,
 * optionally minus a union of excised polydiscs. */
struct Region {
    int m = 1;
    std::vector<std::vector<Ball>> discs;     /* each entry: m coordinate balls */
    std::vector<std::vector<Ball>> excluded;

    void validate(const Ctx& c) const;
    bool member(const Ctx& c, const std::vector<Ext>& z) const;
};

/* the unit polydisc U^m */
Region unit_region(const Ctx& c, int m);

}

#endif
