#include "um/expr.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace um {

static ExprP node(Expr::kind_t kind) {
    auto n = std::make_shared<Expr>();
    n->kind = kind;
    return n;
}

ExprP mk_const(const Ext& v) {
    auto n = std::make_shared<Expr>();
    n->kind = Expr::konst;
    n->k = v;
    return n;
}

ExprP mk_int(const Ctx& c, long v) { return mk_const(Ext(Qp(v), Qp(0), c.d)); }

ExprP mk_var(VarRef v) {
    auto n = std::make_shared<Expr>();
    n->kind = Expr::var;
    n->v = v;
    return n;
}

static bool is_const(const ExprP& e) { return e->kind == Expr::konst; }
static bool is_const_zero(const ExprP& e) { return is_const(e) && e->k.is_zero(); }
static bool is_const_one(const ExprP& e) {
    return is_const(e) && e->k.y.is_zero() && e->k.x == Qp(1);
}

ExprP mk_sum(std::vector<ExprP> kids) {
    std::vector<ExprP> flat;
    Ext acc;
    bool have_const = false;
    for (auto& k : kids) {
        if (k->kind == Expr::sum) {
            for (auto& kk : k->kids) {
                if (is_const(kk)) { acc = have_const ? acc + kk->k : kk->k; have_const = true; }
                else flat.push_back(kk);
            }
        } else if (is_const(k)) {
            acc = have_const ? acc + k->k : k->k;
            have_const = true;
        } else {
            flat.push_back(k);
        }
    }
    if (have_const && !acc.is_zero()) flat.push_back(mk_const(acc));
    if (flat.empty()) return mk_const(have_const ? Ext(Qp(0), Qp(0), acc.d) : Ext());
    if (flat.size() == 1) return flat[0];
    auto n = node(Expr::sum);
    const_cast<Expr*>(n.get())->kids = std::move(flat);
    return n;
}

ExprP mk_prod(std::vector<ExprP> kids) {
    std::vector<ExprP> flat;
    Ext acc;
    bool have_const = false;
    for (auto& k : kids) {
        if (k->kind == Expr::prod) {
            for (auto& kk : k->kids) {
                if (is_const(kk)) { acc = have_const ? acc * kk->k : kk->k; have_const = true; }
                else flat.push_back(kk);
            }
        } else if (is_const(k)) {
            acc = have_const ? acc * k->k : k->k;
            have_const = true;
        } else {
            flat.push_back(k);
        }
    }
    if (have_const && acc.is_zero()) return mk_const(acc);
    if (have_const && !(acc.y.is_zero() && acc.x == Qp(1))) flat.insert(flat.begin(), mk_const(acc));
    if (flat.empty()) return mk_const(have_const ? acc : Ext());
    if (flat.size() == 1) return flat[0];
    auto n = node(Expr::prod);
    const_cast<Expr*>(n.get())->kids = std::move(flat);
    return n;
}

ExprP mk_recip(ExprP u) {
    if (is_const(u)) return mk_const(u->k.inv());
    if (u->kind == Expr::recip) return u->kids[0];
    auto n = node(Expr::recip);
    const_cast<Expr*>(n.get())->kids = {std::move(u)};
    return n;
}

ExprP mk_ipow(ExprP u, long e) {
    if (e == 0) return mk_const(Ext(Qp(1), Qp(0), u->kind == Expr::konst ? u->k.d : 0));
    if (e == 1) return u;
    if (is_const(u)) return mk_const(ext_pow(u->k, e));
    if (u->kind == Expr::ipow) return mk_ipow(u->kids[0], u->e * e);
    auto n = node(Expr::ipow);
    const_cast<Expr*>(n.get())->kids = {std::move(u)};
    const_cast<Expr*>(n.get())->e = e;
    return n;
}

ExprP mk_exp(ExprP u) {
    auto n = node(Expr::expn);
    const_cast<Expr*>(n.get())->kids = {std::move(u)};
    return n;
}

ExprP mk_log(ExprP u) {
    auto n = node(Expr::logn);
    const_cast<Expr*>(n.get())->kids = {std::move(u)};
    return n;
}

ExprP mk_affine(ExprP u, std::vector<std::pair<VarRef, LinComb>> subs) {
    if (is_const(u)) return u;
    auto n = node(Expr::affine);
    const_cast<Expr*>(n.get())->kids = {std::move(u)};
    const_cast<Expr*>(n.get())->subs = std::move(subs);
    return n;
}

ExprP mk_chi(Region r, std::vector<VarRef> vars) {
    auto n = node(Expr::chi);
    const_cast<Expr*>(n.get())->reg = std::move(r);
    const_cast<Expr*>(n.get())->reg_vars = std::move(vars);
    return n;
}

bool expr_equal(const ExprP& a, const ExprP& b) {
    if (a.get() == b.get()) return true;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Expr::konst: return a->k == b->k;
        case Expr::var: return var_key(a->v) == var_key(b->v);
        case Expr::ipow:
            if (a->e != b->e) return false;
            [[fallthrough]];
        case Expr::recip:
        case Expr::expn:
        case Expr::logn:
            return expr_equal(a->kids[0], b->kids[0]);
        case Expr::sum:
        case Expr::prod: {
            if (a->kids.size() != b->kids.size()) return false;
            for (size_t i = 0; i < a->kids.size(); ++i)
                if (!expr_equal(a->kids[i], b->kids[i])) return false;
            return true;
        }
        case Expr::affine: {
            if (!expr_equal(a->kids[0], b->kids[0])) return false;
            if (a->subs.size() != b->subs.size()) return false;
            for (size_t i = 0; i < a->subs.size(); ++i) {
                if (var_key(a->subs[i].first) != var_key(b->subs[i].first)) return false;
                const auto &la = a->subs[i].second, &lb = b->subs[i].second;
                if (la.c0 != lb.c0 || la.terms.size() != lb.terms.size()) return false;
                for (size_t t = 0; t < la.terms.size(); ++t)
                    if (la.terms[t].first != lb.terms[t].first ||
                        var_key(la.terms[t].second) != var_key(lb.terms[t].second)) return false;
            }
            return true;
        }
        case Expr::chi: {
            if (a->reg.m != b->reg.m || a->reg_vars.size() != b->reg_vars.size()) return false;
            for (size_t i = 0; i < a->reg_vars.size(); ++i)
                if (var_key(a->reg_vars[i]) != var_key(b->reg_vars[i])) return false;
            if (a->reg.discs.size() != b->reg.discs.size()) return false;
            for (size_t i = 0; i < a->reg.discs.size(); ++i)
                for (size_t j = 0; j < a->reg.discs[i].size(); ++j) {
                    if (a->reg.discs[i][j].center != b->reg.discs[i][j].center) return false;
                    if (a->reg.discs[i][j].radius_exp != b->reg.discs[i][j].radius_exp) return false;
                }
            return true;
        }
    }
    return false;
}

bool is_zero_expr(const ExprP& a) { return is_const_zero(a); }

ExprP conj_expr(const ExprP& a) {
    switch (a->kind) {
        case Expr::konst: return mk_const(a->k.conj());
        case Expr::var:
            if (a->v.k == var_kind::zeta) return mk_var({var_kind::zetabar, a->v.idx});
            if (a->v.k == var_kind::zetabar) return mk_var({var_kind::zeta, a->v.idx});
            return a;
        case Expr::sum: {
            std::vector<ExprP> kk;
            for (auto& k : a->kids) kk.push_back(conj_expr(k));
            return mk_sum(std::move(kk));
        }
        case Expr::prod: {
            std::vector<ExprP> kk;
            for (auto& k : a->kids) kk.push_back(conj_expr(k));
            return mk_prod(std::move(kk));
        }
        case Expr::recip: return mk_recip(conj_expr(a->kids[0]));
        case Expr::ipow: return mk_ipow(conj_expr(a->kids[0]), a->e);
        case Expr::expn: return mk_exp(conj_expr(a->kids[0]));
        case Expr::logn: return mk_log(conj_expr(a->kids[0]));
        case Expr::affine: {
            auto subs = a->subs;
            for (auto& s : subs) {
                s.second.c0 = s.second.c0.conj();
                for (auto& t : s.second.terms) t.first = t.first.conj();
            }
            /* conjugating the substituted variables is the callers' concern;
             * affine nodes only arise internally on real parameters */
            return mk_affine(conj_expr(a->kids[0]), std::move(subs));
        }
        case Expr::chi:
            /* 0/1-valued, fixed by conjugation */
            return a;
    }
    return a;
}

/* derivative of one variable symbol with respect to another */
static ExprP var_partial(const Ctx& c, VarRef u, VarRef v) {
    Ext one = Ext::one(c), alpha = Ext::alpha(c);
    Ext half(Qp(1, 2), Qp(0), c.d);
    Ext inv2a = (alpha + alpha).inv();
    if (var_key(u) == var_key(v)) return mk_const(one);
    if (u.idx != v.idx) return mk_const(Ext::zero(c));
    auto z = [&](const Ext& val) { return mk_const(val); };
    if (v.k == var_kind::xr) {
        if (u.k == var_kind::zeta || u.k == var_kind::zetabar) return z(one);
    } else if (v.k == var_kind::yr) {
        if (u.k == var_kind::zeta) return z(alpha);
        if (u.k == var_kind::zetabar) return z(-alpha);
    } else if (v.k == var_kind::zeta) {
        if (u.k == var_kind::xr) return z(half);
        if (u.k == var_kind::yr) return z(inv2a);
    } else if (v.k == var_kind::zetabar) {
        if (u.k == var_kind::xr) return z(half);
        if (u.k == var_kind::yr) return z(-inv2a);
    }
    return mk_const(Ext::zero(c));
}

static ExprP derive1(const Ctx& c, const ExprP& f, VarRef v) {
    long key = var_key(v);
    auto hit = f->dcache.find(key);
    if (hit != f->dcache.end()) return hit->second;
    ExprP r;
    switch (f->kind) {
        case Expr::konst: r = mk_const(Ext::zero(c)); break;
        case Expr::chi: r = mk_const(Ext::zero(c)); break;
        case Expr::var: r = var_partial(c, f->v, v); break;
        case Expr::sum: {
            std::vector<ExprP> kk;
            for (auto& k : f->kids) kk.push_back(derive1(c, k, v));
            r = mk_sum(std::move(kk));
            break;
        }
        case Expr::prod: {
            std::vector<ExprP> terms;
            for (size_t i = 0; i < f->kids.size(); ++i) {
                std::vector<ExprP> factors = f->kids;
                factors[i] = derive1(c, f->kids[i], v);
                terms.push_back(mk_prod(std::move(factors)));
            }
            r = mk_sum(std::move(terms));
            break;
        }
        case Expr::recip:
            r = mk_prod({mk_int(c, -1), derive1(c, f->kids[0], v),
                         mk_ipow(mk_recip(f->kids[0]), 2)});
            break;
        case Expr::ipow:
            r = mk_prod({mk_int(c, f->e), derive1(c, f->kids[0], v),
                         mk_ipow(f->kids[0], f->e - 1)});
            break;
        case Expr::expn:
            r = mk_prod({derive1(c, f->kids[0], v), f});
            break;
        case Expr::logn:
            r = mk_prod({derive1(c, f->kids[0], v), mk_recip(f->kids[0])});
            break;
        case Expr::affine: {
            std::vector<ExprP> terms;
            bool v_listed = false;
            for (auto& s : f->subs) {
                if (var_key(s.first) == key) v_listed = true;
                Ext coef = Ext::zero(c);
                for (auto& t : s.second.terms)
                    if (var_key(t.second) == key) coef += t.first;
                if (!coef.is_zero())
                    terms.push_back(mk_prod({mk_const(coef),
                                             mk_affine(derive1(c, f->kids[0], s.first), f->subs)}));
            }
            if (!v_listed)
                terms.push_back(mk_affine(derive1(c, f->kids[0], v), f->subs));
            r = mk_sum(std::move(terms));
            break;
        }
    }
    f->dcache.emplace(key, r);
    return r;
}

ExprP derive(const Ctx& c, const ExprP& f, VarRef v, int order) {
    ExprP r = f;
    for (int i = 0; i < order; ++i) r = derive1(c, r, v);
    return r;
}

ExprP wirtinger(const Ctx& c, const ExprP& f, wirtinger_op which, int j) {
    return derive(c, f, {which == wirtinger_op::d_zeta ? var_kind::zeta : var_kind::zetabar, j}, 1);
}

/* -------- evaluation -------- */

namespace {

struct EvalCtx {
    const Ctx& c;
    const JetPoint& pt;
    std::map<const Expr*, Jet> memo;

    Jet resolve_var(VarRef v) {
        auto it = pt.at.find(var_key(v));
        if (it != pt.at.end()) return it->second;
        Ext alpha = Ext::alpha(c);
        if (v.k == var_kind::zeta || v.k == var_kind::zetabar) {
            auto xi = pt.at.find(var_key({var_kind::xr, v.idx}));
            auto yi = pt.at.find(var_key({var_kind::yr, v.idx}));
            if (xi != pt.at.end() && yi != pt.at.end()) {
                Jet ay = jet_scale(yi->second, v.k == var_kind::zeta ? alpha : -alpha);
                return jet_add(xi->second, ay);
            }
            /* conjugate coordinate of an assigned zeta along real parameters */
            auto zi = pt.at.find(var_key({var_kind::zeta, v.idx}));
            if (v.k == var_kind::zetabar && zi != pt.at.end()) return jet_conj(zi->second);
        }
        if (v.k == var_kind::xr || v.k == var_kind::yr) {
            auto zi = pt.at.find(var_key({var_kind::zeta, v.idx}));
            auto zbi = pt.at.find(var_key({var_kind::zetabar, v.idx}));
            Jet zb;
            if (zbi != pt.at.end()) zb = zbi->second;
            else if (zi != pt.at.end()) zb = jet_conj(zi->second);
            if (zi != pt.at.end()) {
                Ext half(Qp(1, 2), Qp(0), c.d);
                if (v.k == var_kind::xr)
                    return jet_scale(jet_add(zi->second, zb), half);
                return jet_scale(jet_sub(zi->second, zb), (alpha + alpha).inv());
            }
        }
        fail(errc::out_of_domain, "unassigned variable in evaluation");
    }

    Jet run(const ExprP& f) {
        auto m = memo.find(f.get());
        if (m != memo.end()) return m->second;
        Jet r = compute(f);
        memo.emplace(f.get(), r);
        return r;
    }

    Jet compute(const ExprP& f) {
        switch (f->kind) {
            case Expr::konst: return jet_const(pt.sh, f->k);
            case Expr::var: return resolve_var(f->v);
            case Expr::sum: {
                Jet r = run(f->kids[0]);
                for (size_t i = 1; i < f->kids.size(); ++i) r = jet_add(r, run(f->kids[i]));
                return r;
            }
            case Expr::prod: {
                /* indicator factors first: a vanishing one masks poles in the rest */
                for (auto& k : f->kids)
                    if (k->kind == Expr::chi && run(k).value() == Ext::zero(c))
                        return jet_const(pt.sh, Ext::zero(c));
                Jet r = run(f->kids[0]);
                for (size_t i = 1; i < f->kids.size(); ++i) r = jet_mul(r, run(f->kids[i]));
                return r;
            }
            case Expr::recip: return jet_recip(run(f->kids[0]));
            case Expr::ipow: return jet_pow(run(f->kids[0]), f->e);
            case Expr::expn: return jet_exp(c, run(f->kids[0]));
            case Expr::logn: return jet_log(c, run(f->kids[0]));
            case Expr::affine: {
                JetPoint inner;
                inner.sh = pt.sh;
                /* unlisted variables pass through */
                inner.at = pt.at;
                for (auto& s : f->subs) {
                    Jet val = jet_const(pt.sh, s.second.c0);
                    for (auto& t : s.second.terms)
                        val = jet_add(val, jet_scale(resolve_var(t.second), t.first));
                    inner.at[var_key(s.first)] = std::move(val);
                }
                EvalCtx sub{c, inner, {}};
                return sub.run(f->kids[0]);
            }
            case Expr::chi: {
                std::vector<Ext> z;
                for (VarRef r : f->reg_vars) z.push_back(resolve_var(r).value());
                bool in = f->reg.member(c, z);
                return jet_const(pt.sh, in ? Ext::one(c) : Ext::zero(c));
            }
        }
        fail(errc::bad_config, "unreachable expression kind");
    }
};

}

Jet eval_jet(const Ctx& c, const ExprP& f, const JetPoint& pt) {
    EvalCtx ec{c, pt, {}};
    return ec.run(f);
}

Ext evaluate(const Ctx& c, const ExprP& f, const EvalPoint& pt) {
    static thread_local JetShape scalar_shape(1, 0);
    JetPoint jp;
    jp.sh = &scalar_shape;
    for (auto& [k, v] : pt.at) jp.at.emplace(k, jet_const(&scalar_shape, v));
    return eval_jet(c, f, jp).value();
}

Ext difference_quotient(const Ctx& c, const ExprP& f, VarRef v, const EvalPoint& pt,
                        const Ext& h, int u) {
    if (h.is_zero()) fail(errc::bad_config, "zero step");
    if (u <= 0) return evaluate(c, f, pt);
    std::vector<Ext> vals;
    long key = var_key(v);
    Ext base = pt.at.count(key) ? pt.at.at(key) : Ext::zero(c);
    /* u-th iterated quotient from u+1 shifted evaluations */
    for (int i = 0; i <= u; ++i) {
        EvalPoint q = pt;
        Ext shift = base;
        for (int s = 0; s < i; ++s) shift += h;
        q.at[key] = shift;
        vals.push_back(evaluate(c, f, q));
    }
    Ext hinv = h.inv();
    for (int level = u; level > 0; --level)
        for (int i = 0; i < level; ++i)
            vals[i] = (vals[i + 1] - vals[i]) * hinv;
    return vals[0];
}

/* -------- parser -------- */

namespace {

struct Parser {
    const Ctx& c;
    const std::string& s;
    size_t pos = 0;

    [[noreturn]] void err(const std::string& what) {
        fail(errc::syntax_error, what + " at position " + std::to_string(pos));
    }

    void ws() { while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos; }

    bool eat(char ch) {
        ws();
        if (pos < s.size() && s[pos] == ch) { ++pos; return true; }
        return false;
    }

    void expect(char ch) {
        if (!eat(ch)) err(std::string("expected '") + ch + "'");
    }

    bool peek_ident(std::string& out) {
        ws();
        size_t q = pos;
        if (q >= s.size() || !std::isalpha(static_cast<unsigned char>(s[q]))) return false;
        std::string id;
        while (q < s.size() && (std::isalnum(static_cast<unsigned char>(s[q])))) id += s[q++];
        out = id;
        return true;
    }

    std::string take_ident() {
        std::string id;
        if (!peek_ident(id)) err("expected identifier");
        pos += id.size();
        return id;
    }

    long integer() {
        ws();
        size_t q = pos;
        bool neg = false;
        if (q < s.size() && (s[q] == '-' || s[q] == '+')) { neg = s[q] == '-'; ++q; }
        if (q >= s.size() || !std::isdigit(static_cast<unsigned char>(s[q]))) err("expected integer");
        long v = 0;
        while (q < s.size() && std::isdigit(static_cast<unsigned char>(s[q]))) {
            v = v * 10 + (s[q] - '0');
            ++q;
        }
        pos = q;
        return neg ? -v : v;
    }

    ExprP expr() {
        ExprP lhs = term();
        for (;;) {
            ws();
            if (eat('+')) lhs = mk_sum({lhs, term()});
            else if (eat('-')) lhs = mk_sum({lhs, mk_prod({mk_int(c, -1), term()})});
            else return lhs;
        }
    }

    ExprP term() {
        ExprP lhs = factor();
        for (;;) {
            ws();
            if (eat('*')) lhs = mk_prod({lhs, factor()});
            else if (eat('/')) lhs = mk_prod({lhs, mk_recip(factor())});
            else return lhs;
        }
    }

    ExprP factor() {
        ExprP base = unary();
        ws();
        if (eat('^')) return mk_ipow(base, integer());
        return base;
    }

    ExprP unary() {
        ws();
        if (eat('-')) return mk_prod({mk_int(c, -1), unary()});
        return primary();
    }

    Ext const_value(const ExprP& e) {
        if (e->kind != Expr::konst) err("constant expression required");
        return e->k;
    }

    Ball ball_literal() {
        std::string id = take_ident();
        if (id != "B") err("expected ball literal");
        expect('(');
        Ext center = const_value(expr());
        expect(';');
        std::string pp = take_ident();
        if (pp != "p") err("expected radius p^k");
        expect('^');
        long k = integer();
        expect(')');
        return Ball{center, k};
    }

    std::vector<Ball> ball_list(int m) {
        std::vector<Ball> bs;
        bs.push_back(ball_literal());
        while (eat(',')) bs.push_back(ball_literal());
        if (static_cast<int>(bs.size()) != m) err("chi arity mismatch");
        return bs;
    }

    ExprP primary() {
        ws();
        if (eat('(')) {
            ExprP e = expr();
            expect(')');
            return e;
        }
        std::string id;
        if (peek_ident(id)) {
            pos += id.size();
            if (id == "exp") { expect('('); auto e = expr(); expect(')'); return mk_exp(e); }
            if (id == "log") { expect('('); auto e = expr(); expect(')'); return mk_log(e); }
            if (id == "conj") { expect('('); auto e = expr(); expect(')'); return conj_expr(e); }
            if (id == "chi") {
                expect('(');
                std::vector<VarRef> vars;
                /* optional leading coordinates: chi(z2; B(...)), chi(t; ...) */
                for (;;) {
                    ws();
                    size_t save = pos;
                    std::string vid;
                    if (!peek_ident(vid) || vid == "B") break;
                    pos += vid.size();
                    ws();
                    if (!(eat(';') || eat(','))) { pos = save; break; }
                    if (vid == "t") vars.push_back({var_kind::tpar, 1});
                    else {
                        int idx = vid.size() > 1 ? std::atoi(vid.c_str() + 1) : 0;
                        if (idx <= 0) err("bad chi coordinate");
                        if (vid[0] == 'z') vars.push_back({var_kind::zeta, idx});
                        else if (vid[0] == 'x') vars.push_back({var_kind::xr, idx});
                        else if (vid[0] == 'y') vars.push_back({var_kind::yr, idx});
                        else err("bad chi coordinate");
                    }
                }
                if (vars.empty()) vars.push_back({var_kind::zeta, 1});
                Region r;
                r.m = static_cast<int>(vars.size());
                r.discs.push_back(ball_list(r.m));
                while (eat('|')) r.discs.push_back(ball_list(r.m));
                expect(')');
                return mk_chi(std::move(r), std::move(vars));
            }
            if (id == "alpha") return mk_const(Ext::alpha(c));
            if (id == "t") return tvar(1);
            if ((id[0] == 'z' || id[0] == 'x' || id[0] == 'y') && id.size() > 1) {
                int idx = std::atoi(id.c_str() + 1);
                if (idx <= 0) err("bad variable index");
                if (id[0] == 'z') return zvar(idx);
                if (id[0] == 'x') return xvar(idx);
                return yvar(idx);
            }
            err("unknown identifier '" + id + "'");
        }
        ws();
        if (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])))) {
            long v = integer();
            return mk_int(c, v);
        }
        err("expected expression");
    }
};

}

ExprP parse_expr(const Ctx& c, const std::string& text) {
    Parser p{c, text};
    ExprP e = p.expr();
    p.ws();
    if (p.pos != text.size()) p.err("trailing input");
    return e;
}

/* -------- printer -------- */

static std::string print_q(const Qp& q) {
    std::ostringstream os;
    os << q.r.get_num().get_str();
    if (q.r.get_den() != 1) os << "/" << q.r.get_den().get_str();
    return os.str();
}

static std::string print_const(const Ext& k) {
    if (k.y.is_zero()) {
        std::string body = print_q(k.x);
        if (body.find('/') != std::string::npos || body[0] == '-') return "(" + body + ")";
        return body;
    }
    std::ostringstream os;
    os << "(" << print_q(k.x) << "+alpha*(" << print_q(k.y) << "))";
    return os.str();
}

static std::string print_rec(const Ctx& c, const ExprP& f, int parent_prec);

static std::string print_var(VarRef v) {
    switch (v.k) {
        case var_kind::zeta: return "z" + std::to_string(v.idx);
        case var_kind::zetabar: return "conj(z" + std::to_string(v.idx) + ")";
        case var_kind::xr: return "x" + std::to_string(v.idx);
        case var_kind::yr: return "y" + std::to_string(v.idx);
        case var_kind::tpar: return v.idx == 1 ? "t" : "t" + std::to_string(v.idx);
    }
    return "?";
}

static std::string wrap(const std::string& body, bool need) {
    return need ? "(" + body + ")" : body;
}

static std::string print_rec(const Ctx& c, const ExprP& f, int parent_prec) {
    switch (f->kind) {
        case Expr::konst: return print_const(f->k);
        case Expr::var: return print_var(f->v);
        case Expr::sum: {
            std::string body;
            for (size_t i = 0; i < f->kids.size(); ++i) {
                if (i) body += "+";
                body += print_rec(c, f->kids[i], 1);
            }
            return wrap(body, parent_prec > 1);
        }
        case Expr::prod: {
            std::string body;
            for (size_t i = 0; i < f->kids.size(); ++i) {
                if (i) body += "*";
                body += print_rec(c, f->kids[i], 2);
            }
            return wrap(body, parent_prec > 2);
        }
        case Expr::recip:
            return wrap("1/" + print_rec(c, f->kids[0], 3), parent_prec > 2);
        case Expr::ipow:
            return print_rec(c, f->kids[0], 3) + "^" + std::to_string(f->e);
        case Expr::expn: return "exp(" + print_rec(c, f->kids[0], 0) + ")";
        case Expr::logn: return "log(" + print_rec(c, f->kids[0], 0) + ")";
        case Expr::affine: {
            std::string body = "sub(" + print_rec(c, f->kids[0], 0);
            for (auto& s : f->subs) {
                body += "; " + print_var(s.first) + "=" + print_const(s.second.c0);
                for (auto& t : s.second.terms)
                    body += "+" + print_const(t.first) + "*" + print_var(t.second);
            }
            return body + ")";
        }
        case Expr::chi: {
            std::string body = "chi(";
            for (size_t i = 0; i < f->reg_vars.size(); ++i)
                body += print_var(f->reg_vars[i]) + "; ";
            for (size_t i = 0; i < f->reg.discs.size(); ++i) {
                if (i) body += "|";
                for (size_t j = 0; j < f->reg.discs[i].size(); ++j) {
                    if (j) body += ",";
                    const Ball& b = f->reg.discs[i][j];
                    body += "B(" + print_const(b.center) + "; p^" +
                            std::to_string(b.radius_exp) + ")";
                }
            }
            return body + ")";
        }
    }
    return "?";
}

std::string print_expr(const Ctx& c, const ExprP& f) { return print_rec(c, f, 0); }

}
