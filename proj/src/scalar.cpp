#include "um/scalar.hpp"

#include <sstream>

namespace um {

const char* errc_name(errc c) {
    switch (c) {
        case errc::ok: return "Ok";
        case errc::division_by_zero: return "DivisionByZero";
        case errc::indistinguishable_at_precision: return "IndistinguishableAtPrecision";
        case errc::out_of_domain: return "OutOfDomain";
        case errc::pole_hit: return "PoleHit";
        case errc::exp_domain: return "ExpDomainError";
        case errc::log_domain: return "LogDomainError";
        case errc::syntax_error: return "SyntaxError";
        case errc::arity_error: return "ArityError";
        case errc::pole_on_node: return "PoleOnNode";
        case errc::precision_exhausted: return "PrecisionExhausted";
        case errc::degree_mismatch: return "DegreeMismatch";
        case errc::zero_constant: return "ZeroConstant";
        case errc::pole_inside: return "PoleInside";
        case errc::pole_on_border: return "PoleOnBorder";
        case errc::zero_on_border: return "ZeroOnBorder";
        case errc::non_convergent_sweep: return "NonConvergentSweep";
        case errc::not_antiholomorphic_free: return "NotAntiholomorphicFree";
        case errc::window_exceeded: return "WindowExceeded";
        case errc::singular_at_evaluation: return "SingularAtEvaluation";
        case errc::border_touches_spectrum: return "BorderTouchesSpectrum";
        case errc::rank_deficiency: return "RankDeficiency";
        case errc::spectrum_mismatch: return "SpectrumMismatch";
        case errc::bad_config: return "BadConfig";
        case errc::io_error: return "IoError";
    }
    return "UnknownError";
}

static bool is_prime(unsigned long p) {
    if (p < 2) return false;
    for (unsigned long q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

static long pick_non_residue(unsigned long p) {
    if (p % 4 == 3) return -1;
    /* smallest quadratic non-residue unit */
    for (unsigned long k = 2; k < p; ++k) {
        mpz_class kk(static_cast<long>(k)), pp(static_cast<long>(p));
        if (mpz_legendre(kk.get_mpz_t(), pp.get_mpz_t()) == -1) return static_cast<long>(k);
    }
    fail(errc::bad_config, "no quadratic non-residue");
}

Ctx::Ctx(unsigned long p_, int N_, int n_, sigma_kind s)
    : p(p_), N(N_), n(n_), d(0), rho(0), sigma(s) {
    if (!is_prime(p_) || p_ == 2) fail(errc::bad_config, "p must be an odd prime");
    if (N_ < 4) fail(errc::bad_config, "N must be >= 4");
    if (n_ < 1) fail(errc::bad_config, "n must be >= 1");
    d = pick_non_residue(p_);
    /* rho in (1/p, 1) with rho^m <= p^{1-m} for all m <= N, so that the
     * proximity property of digit truncation holds at every tested level. */
    rho = mpq_class(2L * N + 1, 2L * N * static_cast<long>(p));
}

long valuation(const Ctx& c, const Qp& a) {
    if (a.is_zero()) return VAL_INF;
    mpz_class scratch;
    mpz_class pz(static_cast<long>(c.p));
    long vn = static_cast<long>(mpz_remove(scratch.get_mpz_t(), a.r.get_num_mpz_t(), pz.get_mpz_t()));
    long vd = static_cast<long>(mpz_remove(scratch.get_mpz_t(), a.r.get_den_mpz_t(), pz.get_mpz_t()));
    return vn - vd;
}

Qp p_power(const Ctx& c, long e) {
    mpz_class pe;
    mpz_ui_pow_ui(pe.get_mpz_t(), c.p, static_cast<unsigned long>(e < 0 ? -e : e));
    if (e >= 0) return Qp(mpq_class(pe));
    return Qp(mpq_class(1, pe));
}

bool norm_le(const Ctx& c, const Qp& a, long e) {
    if (a.is_zero()) return true;
    return valuation(c, a) >= -e;
}

bool lt_rho_pow(const Ctx& c, const Qp& a, long m) {
    if (a.is_zero()) return true;
    long v = valuation(c, a);
    /* p^{-v} < rho^m, both sides exact rationals */
    mpq_class lhs = p_power(c, -v).r;
    mpq_class rhs(1);
    for (long i = 0; i < m; ++i) rhs *= c.rho;
    return lhs < rhs;
}

/* Unit part of a written as a fraction with both parts prime to p. */
static void unit_parts(const Ctx& c, const Qp& a, mpz_class& num, mpz_class& den) {
    mpz_class pz(static_cast<long>(c.p));
    num = a.r.get_num();
    den = a.r.get_den();
    mpz_class tmp;
    mpz_remove(tmp.get_mpz_t(), num.get_mpz_t(), pz.get_mpz_t());
    num = tmp;
    mpz_remove(tmp.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t());
    den = tmp;
}

/* num/den mod p^len as a nonnegative integer, den a unit. */
static mpz_class unit_residue(const Ctx& c, const mpz_class& num, const mpz_class& den, long len) {
    mpz_class mod;
    mpz_ui_pow_ui(mod.get_mpz_t(), c.p, static_cast<unsigned long>(len));
    mpz_class deninv;
    if (mpz_invert(deninv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()) == 0)
        fail(errc::division_by_zero, "denominator not a unit");
    mpz_class r = (num % mod) * deninv % mod;
    if (r < 0) r += mod;
    return r;
}

unsigned long digit_at(const Ctx& c, const Qp& a, long i) {
    if (a.is_zero()) return 0;
    long v = valuation(c, a);
    if (i < v) return 0;
    mpz_class num, den;
    unit_parts(c, a, num, den);
    mpz_class rem = unit_residue(c, num, den, i - v + 1);
    mpz_class pi;
    mpz_ui_pow_ui(pi.get_mpz_t(), c.p, static_cast<unsigned long>(i - v));
    mpz_class q = rem / pi;
    return mpz_get_ui(q.get_mpz_t());
}

std::vector<unsigned long> lead_digits(const Ctx& c, const Qp& a, int len) {
    std::vector<unsigned long> out;
    if (a.is_zero() || len <= 0) return out;
    mpz_class num, den;
    unit_parts(c, a, num, den);
    mpz_class rem = unit_residue(c, num, den, len);
    for (int i = 0; i < len; ++i) {
        out.push_back(mpz_fdiv_q_ui(rem.get_mpz_t(), rem.get_mpz_t(), c.p));
    }
    return out;
}

Qp residue_below(const Ctx& c, const Qp& a, long l) {
    if (a.is_zero() || l <= 0) return Qp(0);
    long v = valuation(c, a);
    if (v < 0) fail(errc::out_of_domain, "not an integer element");
    if (v >= l) return Qp(0);
    mpz_class num, den;
    unit_parts(c, a, num, den);
    mpz_class rem = unit_residue(c, num, den, l - v);
    mpz_class pv;
    mpz_ui_pow_ui(pv.get_mpz_t(), c.p, static_cast<unsigned long>(v));
    return Qp(mpz_class(rem * pv));
}

ordering triangle_compare(const Ctx& c, const Qp& a, const Qp& b) {
    if (a == b) return ordering::equal;
    Qp diff = a - b;
    long j = valuation(c, diff);
    if (j > c.N)
        fail(errc::indistinguishable_at_precision, "values differ only beyond p^N");
    unsigned long da = digit_at(c, a, j), db = digit_at(c, b, j);
    return da < db ? ordering::less : ordering::greater;
}

Qp beta_element(const Ctx& c) {
    (void)c;
    return Qp(-1);
}

std::string format_qp(const Ctx& c, const Qp& a) {
    if (a.is_zero()) return "0";
    long v = valuation(c, a);
    std::ostringstream os;
    auto ds = lead_digits(c, a, c.N);
    for (size_t i = 0; i < ds.size(); ++i) {
        if (i) os << ' ';
        os << ds[i];
    }
    os << "*p^" << v;
    return os.str();
}

}
