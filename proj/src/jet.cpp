#include "um/jet.hpp"

namespace um {

JetShape::JetShape(int nv_, int ord_) : nv(nv_), ord(ord_) {
    size = 1;
    for (int i = 0; i < nv; ++i) {
        stride[i] = size;
        size *= ord + 1;
    }
    auto decomp = [&](int idx, std::array<int, 4>& digits) {
        for (int i = 0; i < nv; ++i) {
            digits[i] = idx % (ord + 1);
            idx /= ord + 1;
        }
    };
    std::array<int, 4> di{}, dj{};
    for (int i = 0; i < size; ++i) {
        decomp(i, di);
        for (int j = 0; j < size; ++j) {
            decomp(j, dj);
            bool ok = true;
            int k = 0;
            for (int v = 0; v < nv; ++v) {
                int s = di[v] + dj[v];
                if (s > ord) { ok = false; break; }
                k += s * stride[v];
            }
            if (ok) mul_table.push_back({i, j, k});
        }
    }
}

Jet jet_const(const JetShape* sh, const Ext& v) {
    Jet r(sh, Ext(Qp(0), Qp(0), v.d));
    r.c[0] = v;
    return r;
}

Jet jet_var(const JetShape* sh, int i, const Ext& v, const Ext& slope) {
    Jet r = jet_const(sh, v);
    if (sh->ord >= 1) r.c[sh->stride[i]] = slope;
    return r;
}

Jet jet_add(const Jet& a, const Jet& b) {
    Jet r = a;
    for (int i = 0; i < a.sh->size; ++i) r.c[i] += b.c[i];
    return r;
}

Jet jet_sub(const Jet& a, const Jet& b) {
    Jet r = a;
    for (int i = 0; i < a.sh->size; ++i) r.c[i] -= b.c[i];
    return r;
}

Jet jet_neg(const Jet& a) {
    Jet r = a;
    for (auto& x : r.c) x = -x;
    return r;
}

Jet jet_scale(const Jet& a, const Ext& s) {
    Jet r = a;
    for (auto& x : r.c) x = x * s;
    return r;
}

Jet jet_mul(const Jet& a, const Jet& b) {
    Jet r(a.sh, Ext(Qp(0), Qp(0), a.c[0].d));
    for (const auto& t : a.sh->mul_table) {
        const Ext& av = a.c[t[0]];
        if (av.is_zero()) continue;
        const Ext& bv = b.c[t[1]];
        if (bv.is_zero()) continue;
        r.c[t[2]] += av * bv;
    }
    return r;
}

Jet jet_recip(const Jet& a) {
    if (a.c[0].is_zero()) fail(errc::pole_hit, "reciprocal of vanishing value");
    Ext inv0 = a.c[0].inv();
    /* a = c0 (1 + u); 1/a = c0^{-1} sum (-u)^k via Horner */
    Jet u = jet_scale(a, inv0);
    u.c[0] = Ext(Qp(0), Qp(0), a.c[0].d);
    int depth = a.sh->nv * a.sh->ord;
    Jet r = jet_const(a.sh, Ext(Qp(1), Qp(0), a.c[0].d));
    for (int k = 0; k < depth; ++k) {
        r = jet_mul(u, r);
        for (auto& x : r.c) x = -x;
        r.c[0] += Ext(Qp(1), Qp(0), a.c[0].d);
    }
    return jet_scale(r, inv0);
}

Jet jet_pow(const Jet& a, long e) {
    if (e < 0) return jet_pow(jet_recip(a), -e);
    Jet acc = jet_const(a.sh, Ext(Qp(1), Qp(0), a.c[0].d));
    Jet base = a;
    while (e > 0) {
        if (e & 1) acc = jet_mul(acc, base);
        base = jet_mul(base, base);
        e >>= 1;
    }
    return acc;
}

Jet jet_conj(const Jet& a) {
    Jet r = a;
    for (auto& x : r.c) x = x.conj();
    return r;
}

long factorial_valuation(const Ctx& c, long t) {
    long v = 0;
    for (long q = t / static_cast<long>(c.p); q > 0; q /= static_cast<long>(c.p)) v += q;
    return v;
}

mpz_class factorial(long t) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(t));
    return f;
}

/* smallest T with |z|^T / |T!| <= p^{-(N+2)} */
static long exp_terms(const Ctx& c, long vz) {
    for (long T = 1;; ++T)
        if (T * vz - factorial_valuation(c, T) >= c.N + 2) return T;
}

Ext ext_exp(const Ctx& c, const Ext& z) {
    if (!z.is_zero() && valuation(c, z) < 1)
        fail(errc::exp_domain, "exp argument too large");
    if (z.is_zero()) return Ext::one(c);
    long T = exp_terms(c, valuation(c, z));
    Ext acc = Ext::one(c), term = Ext::one(c);
    for (long t = 1; t < T; ++t) {
        term = term * z;
        acc += Ext(term.x / Qp(factorial(t)), term.y / Qp(factorial(t)), term.d);
    }
    return acc;
}

static long log_terms(const Ctx& c, long vw) {
    for (long T = 1;; ++T) {
        long vt = 0;
        for (long q = T; q % static_cast<long>(c.p) == 0; q /= static_cast<long>(c.p)) ++vt;
        if (T * vw - vt >= c.N + 2) return T;
    }
}

Ext ext_log(const Ctx& c, const Ext& z) {
    Ext w = z - Ext::one(c);
    if (w.is_zero()) return Ext::zero(c);
    if (valuation(c, w) < 1) fail(errc::log_domain, "log argument outside 1+E");
    long T = log_terms(c, valuation(c, w));
    Ext acc = Ext::zero(c), term = Ext::one(c);
    for (long t = 1; t <= T; ++t) {
        term = term * w;
        Ext contrib(term.x / Qp(t), term.y / Qp(t), term.d);
        if (t % 2 == 0) acc -= contrib; else acc += contrib;
    }
    return acc;
}

Jet jet_exp(const Ctx& c, const Jet& a) {
    Ext head = ext_exp(c, a.c[0]);
    Jet u = a;
    u.c[0] = Ext::zero(c);
    int depth = a.sh->nv * a.sh->ord;
    Jet acc = jet_const(a.sh, Ext::one(c));
    Jet term = jet_const(a.sh, Ext::one(c));
    for (int k = 1; k <= depth; ++k) {
        term = jet_mul(term, u);
        Qp fk(factorial(k));
        Jet scaled = term;
        for (auto& x : scaled.c) x = Ext(x.x / fk, x.y / fk, x.d);
        acc = jet_add(acc, scaled);
    }
    return jet_scale(acc, head);
}

Jet jet_log(const Ctx& c, const Jet& a) {
    Ext head = ext_log(c, a.c[0]);
    Jet u = jet_scale(a, a.c[0].inv());
    u.c[0] = Ext::zero(c);
    int depth = a.sh->nv * a.sh->ord;
    Jet acc = jet_const(a.sh, head);
    Jet term = jet_const(a.sh, Ext::one(c));
    for (int k = 1; k <= depth; ++k) {
        term = jet_mul(term, u);
        Jet scaled = term;
        Qp kk(k);
        for (auto& x : scaled.c) x = Ext(x.x / kk, x.y / kk, x.d);
        if (k % 2 == 0) acc = jet_sub(acc, scaled); else acc = jet_add(acc, scaled);
    }
    return acc;
}

}
