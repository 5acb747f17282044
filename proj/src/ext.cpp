#include "um/ext.hpp"

#include <sstream>

namespace um {

long valuation(const Ctx& c, const Ext& z) {
    long vx = valuation(c, z.x), vy = valuation(c, z.y);
    return vx < vy ? vx : vy;
}

Ext ext_pow(const Ext& z, long e) {
    if (e < 0) return ext_pow(z.inv(), -e);
    Ext acc(Qp(1), Qp(0), z.d), base = z;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

std::string format_ext(const Ctx& c, const Ext& z) {
    std::ostringstream os;
    os << "(" << format_qp(c, z.x) << ", " << format_qp(c, z.y) << ")";
    return os.str();
}

bool contains(const Ctx& c, const Ball& b, const Ext& z) {
    return norm_le(c, z.x - b.center.x, b.radius_exp) &&
           norm_le(c, z.y - b.center.y, b.radius_exp);
}

ball_relation classify(const Ctx& c, const Ball& a, const Ball& b) {
    Ext diff = a.center - b.center;
    long vd = valuation(c, diff);
    bool centers_close = vd == VAL_INF || -vd <= std::max(a.radius_exp, b.radius_exp);
    if (!centers_close) return ball_relation::disjoint;
    if (a.radius_exp == b.radius_exp) return ball_relation::equal;
    return a.radius_exp < b.radius_exp ? ball_relation::nested_left : ball_relation::nested_right;
}

void Region::validate(const Ctx& c) const {
    for (const auto& d0 : discs)
        if (static_cast<int>(d0.size()) != m) fail(errc::bad_config, "region arity");
    for (size_t i = 0; i < discs.size(); ++i)
        for (size_t j = i + 1; j < discs.size(); ++j) {
            bool disjoint = false;
            for (int k = 0; k < m && !disjoint; ++k)
                disjoint = classify(c, discs[i][k], discs[j][k]) == ball_relation::disjoint;
            if (!disjoint) fail(errc::bad_config, "region constituents overlap");
        }
}

bool Region::member(const Ctx& c, const std::vector<Ext>& z) const {
    if (static_cast<int>(z.size()) != m) fail(errc::arity_error, "region membership arity");
    bool in_some = false;
    for (const auto& d0 : discs) {
        bool in = true;
        for (int k = 0; k < m && in; ++k) in = contains(c, d0[k], z[k]);
        if (in) { in_some = true; break; }
    }
    if (!in_some) return false;
    for (const auto& d0 : excluded) {
        bool in = true;
        for (int k = 0; k < m && in; ++k) in = contains(c, d0[k], z[k]);
        if (in) return false;
    }
    return true;
}

Region unit_region(const Ctx& c, int m) {
    (void)c;
    Region r;
    r.m = m;
    r.discs.push_back(std::vector<Ball>(m, Ball{Ext(Qp(0), Qp(0), 0), 0}));
    return r;
}

}
