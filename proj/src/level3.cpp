#include "qplab/level3.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <stdexcept>

namespace qp {

namespace {

constexpr long kUnbounded = LONG_MIN / 4;

void add_product(TensorVector& out, const CycScalar& c, const SlotTerms& t0, const SlotTerms& t1, const SlotTerms& t2) {
    for (const auto& [s0, c0] : t0) {
        CycScalar a = c * c0;
        for (const auto& [s1, c1] : t1) {
            CycScalar b = a * c1;
            for (const auto& [s2, c2] : t2) out.add(TensorState{{s0, s1, s2}}.key(), b * c2);
        }
    }
}

BigRat int_pow(long base, int e) {
    BigInt r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return BigRat(r);
}

}  // namespace

TensorVector tensor_vacuum() { return TensorVector(TensorState{}.key(), CycScalar(1)); }

int homogeneous_degree(const TensorVector& w) {
    int d = -1;
    for (const auto& [k, c] : w) {
        int e = TensorState::from_key(k).degree();
        if (d >= 0 && e != d) throw std::invalid_argument("inhomogeneous vector");
        d = e;
    }
    return d;
}

bool is_homogeneous(const TensorVector& w) {
    try {
        homogeneous_degree(w);
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

std::vector<TensorState> graded_component_basis(int n) {
    std::vector<TensorState> out;
    for (int a = n; a >= 0; --a)
        for (int b = n - a; b >= 0; --b) {
            int c = n - a - b;
            auto sa = states_of_degree(a), sb = states_of_degree(b), sc = states_of_degree(c);
            for (auto x : sa)
                for (auto y : sb)
                    for (auto z : sc) out.push_back(TensorState{{x, y, z}});
        }
    return out;
}

std::vector<std::pair<TensorState, CycScalar>> sorted_terms(const TensorVector& w) {
    std::vector<std::pair<TensorState, CycScalar>> v;
    for (const auto& [k, c] : w) v.emplace_back(TensorState::from_key(k), c);
    std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) {
        for (int s = 0; s < 3; ++s) {
            const auto& a = x.first.slot[s].parts();
            const auto& b = y.first.slot[s].parts();
            if (a != b) return a < b;
        }
        return false;
    });
    return v;
}

TensorVector Level3::heis(RootVector x, long n, const TensorVector& w) const {
    TensorVector out;
    SlotTerms t;
    for (const auto& [k, c] : w) {
        TensorState ts = TensorState::from_key(k);
        for (int s = 0; s < 3; ++s) {
            t.clear();
            fock_.heis_state(x, n, ts.slot[s], t);
            for (const auto& [u, a] : t) {
                TensorState r = ts;
                r.slot[s] = u;
                out.add(r.key(), c * a);
            }
        }
    }
    return out;
}

TensorVector Level3::x_root(RootVector x, long n, const TensorVector& w) const {
    TensorVector out;
    CycScalar ca = lattice().c_alpha();
    for (const auto& [k, c] : w) {
        TensorState ts = TensorState::from_key(k);
        for (int s = 0; s < 3; ++s) {
            for (const auto& [u, a] : fock_.vertex(x, n, ts.slot[s])) {
                TensorState r = ts;
                r.slot[s] = u;
                out.add(r.key(), c * a * ca);
            }
        }
    }
    return out;
}

TensorVector Level3::cached_state_op(int kind, long n, TensorKey k) const {
    {
        std::shared_lock lock(mu_);
        auto it = state_cache_.find({kind, n});
        if (it != state_cache_.end()) {
            auto jt = it->second.find(k);
            if (jt != it->second.end()) return jt->second;
        }
    }
    TensorVector single(k, CycScalar(1));
    TensorVector r = kind == 1 ? x_root(kAlpha, n, single) : apply_closed_form(x2_form(), n, single);
    std::unique_lock lock(mu_);
    state_cache_[{kind, n}].emplace(k, r);
    return r;
}

TensorVector Level3::x1(long n, const TensorVector& w) const {
    TensorVector out;
    for (const auto& [k, c] : w) out.add_scaled(cached_state_op(1, n, k), c);
    return out;
}

const std::vector<ClosedFormTerm>& Level3::x2_form() const {
    {
        std::shared_lock lock(mu_);
        if (x2_form_) return *x2_form_;
    }
    auto f = closed_form({kAlpha, kBeta});
    std::unique_lock lock(mu_);
    if (!x2_form_) x2_form_ = std::move(f);
    return *x2_form_;
}

TensorVector Level3::x2(long n, const TensorVector& w) const {
    if (!is_homogeneous(w)) throw std::invalid_argument("x2: inhomogeneous input");
    TensorVector out;
    for (const auto& [k, c] : w) out.add_scaled(cached_state_op(2, n, k), c);
    return out;
}

TensorVector Level3::x_multi(const std::vector<RootVector>& d, long n, const TensorVector& w) const {
    if (d.empty() || d.size() > 4) throw std::invalid_argument("x_multi: unsupported charge " + std::to_string(d.size()));
    return apply_closed_form(closed_form(d), n, w);
}

std::vector<ClosedFormTerm> Level3::closed_form(const std::vector<RootVector>& d) const {
    const TwistedLattice& lat = lattice();
    int r = static_cast<int>(d.size());
    lat.p_polynomial(d);  // precondition check
    // pair values: cross-slot P(1), same-slot (P * exchange)(1)
    std::vector<std::vector<CycScalar>> cross(r, std::vector<CycScalar>(r)), same(r, std::vector<CycScalar>(r));
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            CycPoly p = lat.p_pair(d[i], d[j]);
            cross[i][j] = p.eval(CycScalar(1));
            RatFunc f = lat.exchange(d[i], d[j]);
            CycPoly q;
            if (!f.den.divides_into(p * f.num, q))
                throw std::domain_error("closed_form: P does not cancel the exchange poles for " + d[i].str() + "," + d[j].str());
            same[i][j] = q.eval(CycScalar(1));
        }
    CycScalar cr = cyc_pow(lat.c_alpha(), r);
    std::map<std::array<std::pair<int, RootVector>, 3>, CycScalar> grouped;
    int total = 1;
    for (int i = 0; i < r; ++i) total *= 3;
    for (int code = 0; code < total; ++code) {
        std::vector<int> slot(r);
        for (int i = 0, c = code; i < r; ++i, c /= 3) slot[i] = c % 3;
        CycScalar k = cr;
        for (int i = 0; i < r && !k.is_zero(); ++i)
            for (int j = i + 1; j < r; ++j) k *= (slot[i] == slot[j] ? same[i][j] : cross[i][j]);
        if (k.is_zero()) continue;
        std::array<std::pair<int, RootVector>, 3> sig{};
        for (int i = 0; i < r; ++i) {
            sig[slot[i]].first = 1;
            sig[slot[i]].second = sig[slot[i]].second + d[i];
        }
        grouped[sig] += k;
    }
    std::vector<ClosedFormTerm> out;
    for (const auto& [sig, k] : grouped) {
        if (k.is_zero()) continue;
        ClosedFormTerm t;
        t.coef = k;
        for (int s = 0; s < 3; ++s)
            if (sig[s].first) t.sigma[s] = sig[s].second;
        out.push_back(t);
    }
    return out;
}

TensorVector Level3::apply_closed_form(const std::vector<ClosedFormTerm>& terms, long n, const TensorVector& w) const {
    TensorVector out;
    for (const auto& t : terms) {
        std::array<SlotOp, 3> ops{};
        for (int s = 0; s < 3; ++s)
            if (t.sigma[s]) ops[s] = SlotOp{SlotOp::Vertex, *t.sigma[s]};
        out.add_scaled(tensor_coeff(ops, n, w), t.coef);
    }
    return out;
}

const SlotTerms& Level3::slot_terms(const SlotOp& op, long n, FockState s, SlotTerms& scratch) const {
    switch (op.kind) {
        case SlotOp::Vertex: return fock_.vertex(op.root, n, s);
        case SlotOp::EPlus: return fock_.e_plus(op.root, n, s);
        case SlotOp::EMinus: return fock_.e_minus(op.root, n, s);
        default:
            scratch.clear();
            if (n == 0) scratch.emplace_back(s, CycScalar(1));
            return scratch;
    }
}

TensorVector Level3::tensor_coeff(const std::array<SlotOp, 3>& ops, long n, const TensorVector& w) const {
    TensorVector out;
    SlotTerms scratch[3];
    for (const auto& [k, c] : w) {
        TensorState ts = TensorState::from_key(k);
        long lo[3], hi[3];
        for (int s = 0; s < 3; ++s) {
            long d = ts.slot[s].degree();
            switch (ops[s].kind) {
                case SlotOp::Vertex: lo[s] = kUnbounded; hi[s] = d; break;
                case SlotOp::EPlus: lo[s] = 0; hi[s] = d; break;
                case SlotOp::EMinus: lo[s] = kUnbounded; hi[s] = 0; break;
                default: lo[s] = 0; hi[s] = 0; break;
            }
        }
        for (int s = 0; s < 3; ++s) lo[s] = std::max(lo[s], n - (hi[0] + hi[1] + hi[2] - hi[s]));
        for (long n0 = lo[0]; n0 <= hi[0]; ++n0) {
            const SlotTerms& t0 = slot_terms(ops[0], n0, ts.slot[0], scratch[0]);
            if (t0.empty()) continue;
            for (long n1 = lo[1]; n1 <= hi[1]; ++n1) {
                long n2 = n - n0 - n1;
                if (n2 < lo[2] || n2 > hi[2]) continue;
                const SlotTerms& t1 = slot_terms(ops[1], n1, ts.slot[1], scratch[1]);
                if (t1.empty()) continue;
                const SlotTerms& t2 = slot_terms(ops[2], n2, ts.slot[2], scratch[2]);
                if (t2.empty()) continue;
                add_product(out, c, t0, t1, t2);
            }
        }
    }
    return out;
}

TensorVector Level3::e_coeff(int sign, RootVector x, long n, const TensorVector& w) const {
    SlotOp op{sign > 0 ? SlotOp::EPlus : SlotOp::EMinus, x};
    return tensor_coeff({op, op, op}, n, w);
}

LaurentWindow<TensorVector> Level3::e_window3(int sign, RootVector x, const TensorVector& w, long lo, long hi) const {
    if (lo > hi) throw std::invalid_argument("e_window3: lo > hi");
    LaurentWindow<TensorVector> win;
    win.lo = lo;
    win.hi = hi;
    for (long n = lo; n <= hi; ++n) {
        TensorVector r = e_coeff(sign, x, n, w);
        if (!r.is_zero()) win.coeff.emplace(n, std::move(r));
    }
    return win;
}

TensorVector Level3::normal_ordered_sum(const std::array<SlotPair, 3>& pattern, long n, int p, int q, const TensorVector& w) const {
    struct Entry {
        long n1, n2;
        FockVector v;
    };
    TensorVector out;
    for (const auto& [k, c] : w) {
        TensorState ts = TensorState::from_key(k);
        long dout = ts.degree() - n;
        if (dout < 0) continue;
        std::vector<Entry> lists[3];
        for (int s = 0; s < 3; ++s) {
            const SlotPair& sp = pattern[s];
            FockState st = ts.slot[s];
            long d = st.degree();
            std::map<std::pair<long, long>, FockVector> acc;
            long p2max = sp.b ? d : 0;
            for (long p2 = 0; p2 <= p2max; ++p2) {
                SlotTerms id2{{st, CycScalar(1)}};
                const SlotTerms& t2 = sp.b ? fock_.e_plus(-*sp.b, p2, st) : id2;
                for (const auto& [u, cu] : t2) {
                    long p1max = sp.a ? u.degree() : 0;
                    for (long p1 = 0; p1 <= p1max; ++p1) {
                        SlotTerms id1{{u, CycScalar(1)}};
                        const SlotTerms& t1 = sp.a ? fock_.e_plus(-*sp.a, p1, u) : id1;
                        for (const auto& [v, cv] : t1) {
                            long room = dout - v.degree();
                            if (room < 0) continue;
                            long m2max = sp.b ? room : 0;
                            for (long m2 = 0; m2 <= m2max; ++m2) {
                                SlotTerms idm{{v, CycScalar(1)}};
                                const SlotTerms& tm2 = sp.b ? fock_.e_minus(-*sp.b, -m2, v) : idm;
                                for (const auto& [x, cx] : tm2) {
                                    long m1max = sp.a ? room - m2 : 0;
                                    for (long m1 = 0; m1 <= m1max; ++m1) {
                                        SlotTerms idn{{x, CycScalar(1)}};
                                        const SlotTerms& tm1 = sp.a ? fock_.e_minus(-*sp.a, -m1, x) : idn;
                                        FockVector& dst = acc[{p1 - m1, p2 - m2}];
                                        for (const auto& [y, cy] : tm1) dst.add(y, cu * cv * cx * cy);
                                    }
                                }
                            }
                        }
                    }
                }
            }
            for (auto& [key, v] : acc)
                if (!v.is_zero()) lists[s].push_back({key.first, key.second, std::move(v)});
        }
        for (const auto& e0 : lists[0])
            for (const auto& e1 : lists[1])
                for (const auto& e2 : lists[2]) {
                    long n1 = e0.n1 + e1.n1 + e2.n1, n2 = e0.n2 + e1.n2 + e2.n2;
                    if (n1 + n2 != n) continue;
                    CycScalar wgt = c * (int_pow(n1, p) * int_pow(n2, q));
                    if (wgt.is_zero()) continue;
                    for (const auto& [s0, a0] : e0.v)
                        for (const auto& [s1, a1] : e1.v)
                            for (const auto& [s2, a2] : e2.v) out.add(TensorState{{s0, s1, s2}}.key(), wgt * a0 * a1 * a2);
                }
    }
    return out;
}

TensorVector Level3::x2_raw(long n, const TensorVector& w, int margin, RawSumStats* stats) const {
    CycPoly p = lattice().p_pair(kAlpha, kBeta);
    int dw = homogeneous_degree(w);
    TensorVector out;
    int zeros = 0;
    long b = dw;
    long nonzero = 0;
    std::map<long, TensorVector> inner;  // X(beta; m) w
    for (; zeros < margin; --b) {
        TensorVector f;
        for (int k = 0; k <= p.degree(); ++k) {
            if (p.coeff(k).is_zero()) continue;
            long m = b + k;
            auto it = inner.find(m);
            if (it == inner.end()) it = inner.emplace(m, x_root(kBeta, m, w)).first;
            if (it->second.is_zero()) continue;
            f.add_scaled(x_root(kAlpha, n - b - k, it->second), p.coeff(k));
        }
        if (f.is_zero()) {
            ++zeros;
        } else {
            zeros = 0;
            ++nonzero;
            out += f;
        }
    }
    if (stats) {
        stats->lowest_index = b + 1;
        stats->nonzero_terms = nonzero;
    }
    return out;
}

}  // namespace qp
