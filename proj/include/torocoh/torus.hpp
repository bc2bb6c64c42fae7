#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "torocoh/matrix.hpp"
#include "torocoh/real.hpp"
#include "torocoh/status.hpp"

namespace torocoh {

// Period matrix P = (I_n S) in first normal form, S an n x m complex matrix.
struct PeriodMatrix {
    std::size_t n = 0;
    std::size_t m = 0;
    CMatrix S;

    PeriodMatrix() = default;
    PeriodMatrix(std::size_t n_, std::size_t m_, CMatrix s) : n(n_), m(m_), S(std::move(s)) {
        if (m < 1 || m > n) throw Error(Errc::invalid_input, "need 1 <= m <= n");
        if (S.rows() != n || S.cols() != m) throw Error(Errc::invalid_input, "S must be n x m");
    }

    RMatrix im_S1() const {
        RMatrix b(m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) b(i, j) = S(i, j).im;
        return b;
    }

    bool has_evidence() const {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < m; ++j)
                if (S(i, j).is_evidence()) return true;
        return false;
    }
};

// Real-coordinate frame: s_j = j-th column of S for j <= m and s_j = i e_j
// otherwise; A = Re(s), B = Im(s), C = B^{-1}.
struct RealCoordFrame {
    std::size_t n = 0, m = 0;
    RMatrix A, B, C, A1, C1, AC;
};

inline RealCoordFrame build_frame(const PeriodMatrix& P) {
    RealCoordFrame f;
    f.n = P.n;
    f.m = P.m;
    f.A = RMatrix(P.n, P.n);
    f.B = RMatrix(P.n, P.n);
    for (std::size_t i = 0; i < P.n; ++i)
        for (std::size_t j = 0; j < P.n; ++j) {
            if (j < P.m) {
                f.A(i, j) = P.S(i, j).re;
                f.B(i, j) = P.S(i, j).im;
            } else {
                f.B(i, j) = Real(i == j ? 1 : 0);
            }
        }
    auto c = inverse(f.B);
    if (!c) throw Error(Errc::singular_b, "B = Im(s_1..s_n) is not certifiably invertible (det Im S_1 = 0?)");
    f.C = *c;
    f.A1 = f.A.block(0, 0, P.m, P.m);
    f.C1 = f.C.block(0, 0, P.m, P.m);
    f.AC = f.A * f.C;
    return f;
}

// z -> t: t' = x - A C y, t'' = C y.
inline RVector z_to_t(const RealCoordFrame& f, const RVector& x, const RVector& y) {
    RVector cy = times_col(f.C, y);
    RVector acy = times_col(f.A, cy);
    RVector t(2 * f.n);
    for (std::size_t k = 0; k < f.n; ++k) {
        t[k] = x[k] - acy[k];
        t[f.n + k] = cy[k];
    }
    return t;
}

// t -> z: x = t' + A t'', y = B t''.
inline std::pair<RVector, RVector> t_to_z(const RealCoordFrame& f, const RVector& t) {
    RVector t1(t.begin(), t.begin() + static_cast<long>(f.n)), t2(t.begin() + static_cast<long>(f.n), t.end());
    RVector at = times_col(f.A, t2);
    RVector x(f.n), y = times_col(f.B, t2);
    for (std::size_t k = 0; k < f.n; ++k) x[k] = t1[k] + at[k];
    return {x, y};
}

enum class Direction { z_to_t, t_to_z };

// Point as 2n reals: (x, y) for z = x + i y, or t.
inline RVector coord_map(const RealCoordFrame& f, Direction dir, const RVector& point) {
    if (point.size() != 2 * f.n) throw Error(Errc::invalid_input, "coord_map needs 2n real components");
    if (dir == Direction::z_to_t) {
        RVector x(point.begin(), point.begin() + static_cast<long>(f.n)), y(point.begin() + static_cast<long>(f.n), point.end());
        return z_to_t(f, x, y);
    }
    auto [x, y] = t_to_z(f, point);
    x.insert(x.end(), y.begin(), y.end());
    return x;
}

// Coefficients of d/dz-bar_j on d/dt_1 .. d/dt_{2n}.
inline CVector dbar_vector(const RealCoordFrame& f, std::size_t j) {
    if (j < 1 || j > f.n) throw Error(Errc::invalid_input, "dbar_vector index out of range");
    std::size_t c = j - 1;
    Rational half(1, 2);
    CVector v(2 * f.n);
    for (std::size_t k = 0; k < f.n; ++k) {
        v[k] = Complex(Real(k == c ? half : Rational(0)), -(Real(half) * f.AC(k, c)));
        v[f.n + k] = Complex(Real(0), Real(half) * f.C(k, c));
    }
    return v;
}

struct IrrationalityReport {
    Status status = Status::unknown;
    std::optional<std::vector<Integer>> tau;
    unsigned long search_bound = 0;
    std::string method;
};

namespace detail {

// All integer vectors of length n with l1 norm exactly s, first nonzero entry positive, in lex order.
inline std::vector<std::vector<long>> shell_vectors(std::size_t n, long s) {
    std::vector<std::vector<long>> out;
    std::vector<long> cur(n, 0);
    std::function<void(std::size_t, long, bool)> rec = [&](std::size_t i, long left, bool seen_nonzero) {
        if (i == n) {
            if (left == 0) out.push_back(cur);
            return;
        }
        if (i + 1 == n) {
            if (left == 0) {
                cur[i] = 0;
                out.push_back(cur);
            } else {
                cur[i] = left;
                out.push_back(cur);
                if (seen_nonzero) {
                    cur[i] = -left;
                    out.push_back(cur);
                }
            }
            cur[i] = 0;
            return;
        }
        for (long v = seen_nonzero ? -left : 0; v <= left; ++v) {
            cur[i] = v;
            rec(i + 1, left - (v < 0 ? -v : v), seen_nonzero || v != 0);
        }
        cur[i] = 0;
    };
    rec(0, s, false);
    std::sort(out.begin(), out.end());
    return out;
}

// tau S in Z^m exactly.
inline bool violates(const PeriodMatrix& P, const std::vector<long>& tau) {
    for (std::size_t k = 0; k < P.m; ++k) {
        Complex acc;
        for (std::size_t i = 0; i < P.n; ++i)
            if (tau[i] != 0) acc += Complex(Real(tau[i])) * P.S(i, k);
        if (!acc.im.is_zero() || !acc.re.is_rational() || !is_integer(acc.re.rational_value())) return false;
    }
    return true;
}

// Enclosure test: tau S may lie in Z^m.
inline bool may_violate(const PeriodMatrix& P, const std::vector<long>& tau) {
    for (std::size_t k = 0; k < P.m; ++k) {
        Complex acc;
        for (std::size_t i = 0; i < P.n; ++i)
            if (tau[i] != 0) acc += Complex(Real(tau[i])) * P.S(i, k);
        Interval im = acc.im.to_interval(), re = acc.re.to_interval();
        if (!im.contains_zero()) return false;
        if (floor_q(re.lo) == floor_q(re.hi) && !is_integer(re.lo)) return false;
    }
    return true;
}

} // namespace detail

// Condition (IS): tau S not in Z^m for every nonzero integer tau. Decided
// exactly by expanding tau Im S = 0, tau Re S = u over a Q-basis of the
// scalar field; evidence inputs fall back to a bounded search.
inline IrrationalityReport check_irrationality(const PeriodMatrix& P, unsigned long tau_bound = 12) {
    if (tau_bound < 1) throw Error(Errc::invalid_input, "tau bound must be >= 1");
    IrrationalityReport rep;
    rep.search_bound = tau_bound;
    const std::size_t n = P.n, m = P.m;

    if (P.has_evidence()) {
        rep.method = "bounded search over 0 < |tau|_1 <= " + std::to_string(tau_bound);
        for (long s = 1; s <= static_cast<long>(tau_bound); ++s)
            for (const auto& tau : detail::shell_vectors(n, s))
                if (detail::may_violate(P, tau)) {
                    rep.status = Status::unknown;
                    rep.tau = std::vector<Integer>(tau.begin(), tau.end());
                    rep.method += "; candidate violation within enclosure width";
                    return rep;
                }
        rep.status = Status::evidence_holds;
        return rep;
    }

    // values: Im S (n*m), Re S (n*m), 1
    std::vector<Real> vals;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < m; ++k) vals.push_back(P.S(i, k).im);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < m; ++k) vals.push_back(P.S(i, k).re);
    vals.emplace_back(1);
    auto coords = basis_coordinates(vals);
    std::size_t dim = coords.front().size();
    const std::size_t cols = n + m;
    std::vector<std::vector<Rational>> rows;
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t b = 0; b < dim; ++b) {
            std::vector<Rational> im_row(cols), re_row(cols);
            for (std::size_t i = 0; i < n; ++i) {
                im_row[i] = coords[i * m + k][b];
                re_row[i] = coords[n * m + i * m + k][b];
            }
            re_row[n + k] = -coords.back()[b];
            rows.push_back(std::move(im_row));
            rows.push_back(std::move(re_row));
        }
    auto basis = nullspace(rows, cols);
    const std::vector<Rational>* witness = nullptr;
    for (const auto& v : basis)
        if (std::any_of(v.begin(), v.begin() + static_cast<long>(n), [](const Rational& x) { return x != 0; })) {
            witness = &v;
            break;
        }
    if (!witness) {
        rep.status = Status::certified_holds;
        rep.method = "exact: tau Im S = 0, tau Re S in Z^m has only the trivial rational solution";
        return rep;
    }

    // Integer multiple of the rational witness bounds the search.
    Integer l = 1;
    for (const auto& x : *witness) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Integer> scaled;
    Integer norm = 0;
    for (std::size_t i = 0; i < n; ++i) {
        scaled.push_back(Rational((*witness)[i] * Rational(l)).get_num());
        norm += abs(scaled.back());
    }
    for (const auto& x : scaled) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : scaled) y = -y;
        break;
    }
    rep.status = Status::certified_fails;
    rep.method = "exact: rational nullspace contains tau != 0";
    std::size_t budget = 500000;
    for (long s = 1; norm.fits_slong_p() && s <= norm.get_si(); ++s) {
        auto shell = detail::shell_vectors(n, s);
        if (shell.size() > budget) break;
        budget -= shell.size();
        for (const auto& tau : shell)
            if (detail::violates(P, tau)) {
                rep.tau = std::vector<Integer>(tau.begin(), tau.end());
                rep.method += "; smallest |tau|_1, then lex";
                return rep;
            }
    }
    rep.tau = scaled;
    rep.method += "; scaled nullspace vector";
    return rep;
}

} // namespace torocoh
