#include "um/chains.hpp"

#include <algorithm>

namespace um {

Form form_scale(const Form& w, const Ext& s) {
    Form out;
    out.m = w.m;
    for (const auto& t : w.terms)
        out.terms.push_back({mk_prod({mk_const(s), t.coef}), t.syms});
    return out;
}

Form form_add(const Form& a, const Form& b) {
    if (a.m != b.m) fail(errc::degree_mismatch, "form sum over different ambient spaces");
    Form out = a;
    out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
    return out;
}

Form form_d(const Ctx& c, const Form& w) {
    Form out;
    out.m = w.m;
    for (const auto& t : w.terms) {
        for (int j = 1; j <= w.m; ++j) {
            struct { covector_kind k; wirtinger_op op; } half[2] = {
                {covector_kind::dz, wirtinger_op::d_zeta},
                {covector_kind::dzbar, wirtinger_op::d_zetabar},
            };
            for (const auto& h : half) {
                bool repeated = false;
                for (const auto& s : t.syms)
                    if (s.k == h.k && s.j == j) repeated = true;
                if (repeated) continue;
                ExprP pc = wirtinger(c, t.coef, h.op, j);
                if (is_zero_expr(pc)) continue;
                FormTerm nt;
                nt.coef = pc;
                nt.syms.push_back({h.k, j});
                nt.syms.insert(nt.syms.end(), t.syms.begin(), t.syms.end());
                out.terms.push_back(std::move(nt));
            }
        }
    }
    return out;
}

int Cell::ambient() const {
    if (kind == box) return (int)base.size();
    return verts.empty() ? 0 : (int)verts[0].size();
}

int Cell::dim() const {
    if (kind == box) return (int)dirs.size();
    return (int)verts.size() - 1;
}

Cell make_point(const std::vector<Ext>& at) {
    Cell c;
    c.kind = Cell::box;
    c.base = at;
    return c;
}

Cell make_segment(const std::vector<Ext>& a, const std::vector<Ext>& b) {
    if (a.size() != b.size()) fail(errc::arity_error, "segment endpoints");
    Cell c;
    c.kind = Cell::box;
    c.base = a;
    std::vector<Ext> d(a.size());
    for (size_t j = 0; j < a.size(); ++j) d[j] = b[j] - a[j];
    c.dirs.push_back(std::move(d));
    return c;
}

Cell make_box(const std::vector<Ext>& base, const std::vector<std::vector<Ext>>& dirs) {
    Cell c;
    c.kind = Cell::box;
    c.base = base;
    c.dirs = dirs;
    for (const auto& d : dirs)
        if (d.size() != base.size()) fail(errc::arity_error, "box direction arity");
    if ((int)dirs.size() > 4) fail(errc::bad_config, "box dimension above 4");
    return c;
}

Cell make_simplex(const std::vector<std::vector<Ext>>& verts) {
    if (verts.empty()) fail(errc::arity_error, "simplex needs vertices");
    Cell c;
    c.kind = Cell::simplex;
    c.verts = verts;
    for (const auto& v : verts)
        if (v.size() != verts[0].size()) fail(errc::arity_error, "simplex vertex arity");
    return c;
}

namespace {

bool pt_equal(const std::vector<Ext>& a, const std::vector<Ext>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

}

bool cell_equal(const Cell& a, const Cell& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == Cell::box) {
        if (!pt_equal(a.base, b.base) || a.dirs.size() != b.dirs.size()) return false;
        for (size_t i = 0; i < a.dirs.size(); ++i)
            if (!pt_equal(a.dirs[i], b.dirs[i])) return false;
        return true;
    }
    if (a.verts.size() != b.verts.size()) return false;
    for (size_t i = 0; i < a.verts.size(); ++i)
        if (!pt_equal(a.verts[i], b.verts[i])) return false;
    return true;
}

Chain& Chain::add(long coef, const Cell& cell) {
    cells.emplace_back(coef, cell);
    return *this;
}

void Chain::normalize() {
    std::vector<std::pair<long, Cell>> out;
    for (auto& e : cells) {
        bool merged = false;
        for (auto& o : out)
            if (cell_equal(o.second, e.second)) {
                o.first += e.first;
                merged = true;
                break;
            }
        if (!merged) out.push_back(std::move(e));
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const auto& e) { return e.first == 0; }),
              out.end());
    cells = std::move(out);
}

bool Chain::empty() const {
    Chain c = *this;
    c.normalize();
    return c.cells.empty();
}

Chain boundary(const Chain& ch) {
    Chain out;
    for (const auto& [coef, cell] : ch.cells) {
        if (cell.dim() < 1) fail(errc::bad_config, "boundary of a point");
        if (cell.kind == Cell::box) {
            int k = cell.dim();
            for (int i = 0; i < k; ++i) {
                long sg = (i % 2 == 0) ? 1 : -1;
                std::vector<std::vector<Ext>> rest;
                for (int r = 0; r < k; ++r)
                    if (r != i) rest.push_back(cell.dirs[r]);
                std::vector<Ext> top = cell.base;
                for (size_t j = 0; j < top.size(); ++j) top[j] += cell.dirs[i][j];
                out.add(coef * sg, make_box(top, rest));
                out.add(-coef * sg, make_box(cell.base, rest));
            }
        } else {
            int q = cell.dim();
            for (int l = 0; l <= q; ++l) {
                std::vector<std::vector<Ext>> face;
                for (int r = 0; r <= q; ++r)
                    if (r != l) face.push_back(cell.verts[r]);
                out.add((l % 2 == 0) ? coef : -coef, make_simplex(face));
            }
        }
    }
    out.normalize();
    return out;
}

namespace {

/* corner offsets of the canonical square, in loop order; |offset| = p^e
 * means the rational scale is p^{-e} */
const long CORNER_X[4] = {1, -1, -1, 1};
const long CORNER_Y[4] = {1, 1, -1, -1};

Ext corner_offset(const Ctx& c, long e, int i) {
    Qp s = p_power(c, -e);
    return Ext(Qp(CORNER_X[i]) * s, Qp(CORNER_Y[i]) * s, c.d);
}

/* direction vector sweeping one real coordinate of slot j across a radius
 * p^e ball */
std::vector<Ext> ball_dir(const Ctx& c, int m, int j, long e, bool imag) {
    Qp s = beta_element(c) * p_power(c, -e);
    std::vector<Ext> d(m, Ext::zero(c));
    d[j] = imag ? Ext(Qp(0), s, c.d) : Ext(s, Qp(0), c.d);
    return d;
}

}

Cell ball_box(const Ctx& c, const std::vector<Ext>& z, long e) {
    int m = (int)z.size();
    if (m < 1 || m > 2) fail(errc::bad_config, "polydisc boxes handle m <= 2");
    std::vector<std::vector<Ext>> dirs;
    for (int j = 0; j < m; ++j) {
        dirs.push_back(ball_dir(c, m, j, e, false));
        dirs.push_back(ball_dir(c, m, j, e, true));
    }
    return make_box(z, dirs);
}

Chain canonical_border(const Ctx& c, const std::vector<Ext>& z, long e) {
    int m = (int)z.size();
    if (m < 1 || m > 2) fail(errc::bad_config, "canonical borders handle m <= 2");
    Chain out;
    for (int l = 0; l < m; ++l) {
        for (int i = 0; i < 4; ++i) {
            std::vector<Ext> base = z;
            base[l] = z[l] + corner_offset(c, e, i);
            Ext step = corner_offset(c, e, (i + 1) % 4) - corner_offset(c, e, i);
            std::vector<std::vector<Ext>> dirs;
            for (int j = 0; j < m; ++j) {
                if (j == l) {
                    std::vector<Ext> d(m, Ext::zero(c));
                    d[l] = step;
                    dirs.push_back(std::move(d));
                } else {
                    dirs.push_back(ball_dir(c, m, j, e, false));
                    dirs.push_back(ball_dir(c, m, j, e, true));
                }
            }
            out.add(1, make_box(base, dirs));
        }
    }
    return out;
}

namespace {

Ext ext_det(const Ctx& c, std::vector<std::vector<Ext>> m) {
    int n = (int)m.size();
    if (n == 0) return Ext::one(c);
    if (n == 1) return m[0][0];
    Ext acc = Ext::zero(c);
    for (int i = 0; i < n; ++i) {
        if (m[i][0].is_zero()) continue;
        std::vector<std::vector<Ext>> minor;
        for (int r = 0; r < n; ++r) {
            if (r == i) continue;
            minor.emplace_back(m[r].begin() + 1, m[r].end());
        }
        Ext term = m[i][0] * ext_det(c, minor);
        acc = (i % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

Ext cell_antiderive(const Ctx& c, const Form& w, const Cell& cell, const Plan& pl) {
    Cell cc = cell;
    if (cc.kind == Cell::simplex) {
        if (cc.dim() == 0) cc = make_point(cc.verts[0]);
        else if (cc.dim() == 1) cc = make_segment(cc.verts[0], cc.verts[1]);
        else fail(errc::bad_config, "antiderivation over simplices above dimension 1");
    }
    int k = cc.dim();
    int amb = cc.ambient();
    if (w.m > amb) fail(errc::degree_mismatch, "form coordinates exceed the cell's ambient space");
    Qp binv = Qp(1) / beta_element(c);

    Ext acc = Ext::zero(c);
    for (const auto& t : w.terms) {
        if ((int)t.syms.size() != k) continue;
        if (k == 0) {
            EvalPoint pt;
            for (int j = 0; j < amb; ++j) pt.set({var_kind::zeta, j + 1}, cc.base[j]);
            acc += evaluate(c, t.coef, pt);
            continue;
        }
        std::vector<std::vector<Ext>> jac(k, std::vector<Ext>(k));
        for (int r = 0; r < k; ++r) {
            const CoSym& s = t.syms[r];
            if (s.j < 1 || s.j > amb)
                fail(errc::degree_mismatch, "covector coordinate outside the ambient space");
            for (int i = 0; i < k; ++i) {
                Ext d = cc.dirs[i][s.j - 1];
                switch (s.k) {
                    case covector_kind::dz: jac[r][i] = d * Ext::scalar(binv, c.d); break;
                    case covector_kind::dzbar: jac[r][i] = d.conj() * Ext::scalar(binv, c.d); break;
                    case covector_kind::dx: jac[r][i] = Ext::scalar(d.x * binv, c.d); break;
                    case covector_kind::dy: jac[r][i] = Ext::scalar(d.y * binv, c.d); break;
                }
            }
        }
        Ext det = ext_det(c, jac);
        if (det.is_zero()) continue;

        std::vector<std::pair<VarRef, LinComb>> subs;
        for (int j = 0; j < amb; ++j) {
            LinComb lz, lzb;
            lz.c0 = cc.base[j];
            lzb.c0 = cc.base[j].conj();
            for (int i = 0; i < k; ++i) {
                Ext coef = cc.dirs[i][j] * Ext::scalar(binv, c.d);
                if (coef.is_zero()) continue;
                VarRef tp{var_kind::tpar, i + 1};
                lz.terms.emplace_back(coef, tp);
                lzb.terms.emplace_back(coef.conj(), tp);
            }
            subs.emplace_back(VarRef{var_kind::zeta, j + 1}, lz);
            subs.emplace_back(VarRef{var_kind::zetabar, j + 1}, lzb);
        }
        std::vector<VarRef> vars;
        for (int i = 0; i < k; ++i) vars.push_back({var_kind::tpar, i + 1});
        Ext val = antiderive_iterated(c, mk_affine(t.coef, subs), vars, pl);
        acc += val * det;
    }
    return acc;
}

}

Ext chain_antiderive(const Ctx& c, const Form& w, const Chain& ch, const Plan& pl) {
    Ext acc = Ext::zero(c);
    for (const auto& [coef, cell] : ch.cells) {
        if (coef == 0) continue;
        Ext v = cell_antiderive(c, w, cell, pl);
        acc += v * Ext::scalar(Qp(coef), c.d);
    }
    return acc;
}

StokesReport stokes_check(const Ctx& c, const Form& w, const Cell& tau, const Plan& pl) {
    Chain whole;
    whole.add(1, tau);
    StokesReport rep;
    rep.lhs = chain_antiderive(c, form_d(c, w), whole, pl);
    rep.rhs = chain_antiderive(c, w, boundary(whole), pl);
    rep.agree_val = valuation(c, rep.lhs - rep.rhs);
    return rep;
}

}
