#include "twistbench/smith.hpp"

#include <numeric>
#include <type_traits>
#include <stdexcept>
#include <utility>

namespace twistbench {

BigMatrix multiply(const BigMatrix& a, const BigMatrix& b)
{
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix shapes do not match");
    BigMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

std::vector<BigInt> SmithResult::diagonal() const
{
    std::vector<BigInt> d;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
    return d;
}

namespace {

// g = s·a + u·b with g = gcd(a, b) >= 0; prefers (s, u) = (1, 0) or (0, 1)
// when one entry divides the other.
template <class T>
void ext_gcd(const T& a, const T& b, T& g, T& s, T& u)
{
    if (a != 0 && b % a == 0) {
        g = a;
        s = 1;
        u = 0;
    } else if (b != 0 && a % b == 0) {
        g = b;
        s = 0;
        u = 1;
    } else {
        T r0 = a, r1 = b, s0 = 1, s1 = 0, u0 = 0, u1 = 1;
        while (r1 != 0) {
            T q = r0 / r1;
            T t = r0 - q * r1;
            r0 = r1;
            r1 = t;
            t = s0 - q * s1;
            s0 = s1;
            s1 = t;
            t = u0 - q * u1;
            u0 = u1;
            u1 = t;
        }
        g = r0;
        s = s0;
        u = u0;
    }
    if (g < 0) {
        g = -g;
        s = -s;
        u = -u;
    }
}

struct Overflow {};

// p·a + q·b in int64, bounded by 2^62 so that negations stay exact
std::int64_t checked_lin(std::int64_t p, std::int64_t a, std::int64_t q, std::int64_t b)
{
    std::int64_t x, y, z;
    if (__builtin_mul_overflow(p, a, &x) || __builtin_mul_overflow(q, b, &y) || __builtin_add_overflow(x, y, &z))
        throw Overflow{};
    constexpr std::int64_t bound = std::int64_t(1) << 62;
    if (z > bound || z < -bound) throw Overflow{};
    return z;
}

// Elimination workspace. Row ops act on A and R (left transform) and inversely
// on Rinv; column ops on A and C and inversely on Cinv. Arithmetic is exact
// for BigInt and reduced mod m for int64_t.
template <class T>
struct Eliminator {
    Matrix<T>& A;
    Matrix<T>* R;
    Matrix<T>* Rinv;
    Matrix<T>* C;
    Matrix<T>* Cinv;
    T m;  // 0 for exact arithmetic

    T red(const T& v) const
    {
        if (m == 0) return v;
        T r = v % m;
        return r < 0 ? r + m : r;
    }

    T lin(const T& p, const T& a, const T& q, const T& b) const
    {
        if constexpr (std::is_same_v<T, std::int64_t>) {
            if (m == 0) return checked_lin(p, a, q, b);
        }
        return red(p * a + q * b);
    }

    // rows (i, j) <- [[p, q], [r, s]] applied on the left
    void row_mix(Matrix<T>& M, std::size_t i, std::size_t j, const T& p, const T& q, const T& r, const T& s)
    {
        for (std::size_t c = 0; c < M.cols(); ++c) {
            T a = M(i, c), b = M(j, c);
            if (a == 0 && b == 0) continue;
            M(i, c) = lin(p, a, q, b);
            M(j, c) = lin(r, a, s, b);
        }
    }
    void col_mix(Matrix<T>& M, std::size_t i, std::size_t j, const T& p, const T& q, const T& r, const T& s)
    {
        // new col_i = p·col_i + q·col_j, new col_j = r·col_i + s·col_j
        for (std::size_t c = 0; c < M.rows(); ++c) {
            T a = M(c, i), b = M(c, j);
            if (a == 0 && b == 0) continue;
            M(c, i) = lin(p, a, q, b);
            M(c, j) = lin(r, a, s, b);
        }
    }

    // unimodular row operation with inverse [[s, -q], [-r, p]]
    void rows_op(std::size_t i, std::size_t j, const T& p, const T& q, const T& r, const T& s)
    {
        row_mix(A, i, j, p, q, r, s);
        if (R) row_mix(*R, i, j, p, q, r, s);
        // Rinv <- Rinv·E^{-1}: column form of the inverse
        if (Rinv) col_mix(*Rinv, i, j, s, red(-r), red(-q), p);
    }
    void cols_op(std::size_t i, std::size_t j, const T& p, const T& q, const T& r, const T& s)
    {
        col_mix(A, i, j, p, q, r, s);
        if (C) col_mix(*C, i, j, p, q, r, s);
        // F has F[i][i]=p, F[j][i]=q, F[i][j]=r, F[j][j]=s; Cinv <- F^{-1}·Cinv
        if (Cinv) row_mix(*Cinv, i, j, s, red(-r), red(-q), p);
    }
};

template <class T>
void swap_rows_tracked(Eliminator<T>& E, std::size_t i, std::size_t j)
{
    if (i == j) return;
    auto sw = [](Matrix<T>& M, std::size_t a, std::size_t b) {
        for (std::size_t c = 0; c < M.cols(); ++c) std::swap(M(a, c), M(b, c));
    };
    auto swc = [](Matrix<T>& M, std::size_t a, std::size_t b) {
        for (std::size_t r = 0; r < M.rows(); ++r) std::swap(M(r, a), M(r, b));
    };
    sw(E.A, i, j);
    if (E.R) sw(*E.R, i, j);
    if (E.Rinv) swc(*E.Rinv, i, j);
}

template <class T>
void swap_cols_tracked(Eliminator<T>& E, std::size_t i, std::size_t j)
{
    if (i == j) return;
    auto sw = [](Matrix<T>& M, std::size_t a, std::size_t b) {
        for (std::size_t c = 0; c < M.cols(); ++c) std::swap(M(a, c), M(b, c));
    };
    auto swc = [](Matrix<T>& M, std::size_t a, std::size_t b) {
        for (std::size_t r = 0; r < M.rows(); ++r) std::swap(M(r, a), M(r, b));
    };
    swc(E.A, i, j);
    if (E.C) swc(*E.C, i, j);
    if (E.Cinv) sw(*E.Cinv, i, j);
}

template <class T>
T abs_value(const T& v)
{
    return v < 0 ? T(-v) : v;
}

// Reduces the pivot row and column at t to zero off the diagonal.
// Returns once both are clear.
template <class T>
void clear_cross(Eliminator<T>& E, std::size_t t)
{
    auto& A = E.A;
    bool dirty = true;
    while (dirty) {
        dirty = false;
        for (std::size_t i = t + 1; i < A.rows(); ++i) {
            if (A(i, t) == 0) continue;
            T a = A(t, t), b = A(i, t), g, s, u;
            ext_gcd(a, b, g, s, u);
            E.rows_op(t, i, s, u, E.red(T(-(b / g))), E.red(T(a / g)));
        }
        for (std::size_t j = t + 1; j < A.cols(); ++j) {
            if (A(t, j) == 0) continue;
            T a = A(t, t), b = A(t, j), g, s, u;
            ext_gcd(a, b, g, s, u);
            E.cols_op(t, j, s, u, E.red(T(-(b / g))), E.red(T(a / g)));
            dirty = true;
        }
        if (dirty) {
            dirty = false;
            for (std::size_t i = t + 1; i < A.rows(); ++i)
                if (A(i, t) != 0) dirty = true;
        }
    }
}

template <class T>
struct SmithWork {
    Matrix<T> U, D, V, U_inv, V_inv;
};

template <class T>
void integer_smith(SmithWork<T>& w, bool track_columns)
{
    const std::size_t r = w.D.rows(), c = w.D.cols();
    w.U = Matrix<T>::identity(r);
    w.U_inv = Matrix<T>::identity(r);
    if (track_columns) {
        w.V = Matrix<T>::identity(c);
        w.V_inv = Matrix<T>::identity(c);
    }
    Eliminator<T> E{w.D, &w.U, &w.U_inv, track_columns ? &w.V : nullptr, track_columns ? &w.V_inv : nullptr, T(0)};
    auto& A = w.D;
    const std::size_t n = std::min(r, c);
    for (std::size_t t = 0; t < n; ++t) {
        for (;;) {
            // smallest nonzero entry of the trailing block becomes the pivot
            bool found = false;
            std::size_t pi = t, pj = t;
            T best = 0;
            for (std::size_t i = t; i < r; ++i)
                for (std::size_t j = t; j < c; ++j)
                    if (A(i, j) != 0 && (!found || abs_value(A(i, j)) < best)) {
                        found = true;
                        best = abs_value(A(i, j));
                        pi = i;
                        pj = j;
                    }
            if (!found) break;
            swap_rows_tracked(E, t, pi);
            swap_cols_tracked(E, t, pj);
            clear_cross(E, t);
            // divisibility: fold in any row whose entries the pivot misses
            std::size_t bad = r;
            for (std::size_t i = t + 1; i < r && bad == r; ++i)
                for (std::size_t j = t + 1; j < c; ++j)
                    if (A(i, j) % A(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad == r) break;
            E.rows_op(t, bad, 1, 1, 0, 1);
        }
        if (A(t, t) == 0) break;
        if (A(t, t) < 0) {
            for (std::size_t j = 0; j < c; ++j) A(t, j) = -A(t, j);
            for (std::size_t j = 0; j < r; ++j) w.U(t, j) = -w.U(t, j);
            for (std::size_t i = 0; i < r; ++i) w.U_inv(i, t) = -w.U_inv(i, t);
        }
    }
}

BigMatrix widen(const Matrix<std::int64_t>& m)
{
    BigMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j)) out(i, j) = m(i, j);
    return out;
}

}  // namespace

SmithResult smith_normal_form(const BigMatrix& M, bool track_columns)
{
    SmithResult res;
    bool small = true;
    constexpr std::int64_t bound = std::int64_t(1) << 62;
    for (std::size_t i = 0; i < M.rows() && small; ++i)
        for (std::size_t j = 0; j < M.cols() && small; ++j) small = M(i, j) < bound && M(i, j) > -bound;
    bool done = false;
    if (small) {
        // int64 elimination, redone exactly if an entry outgrows 2^62
        SmithWork<std::int64_t> w;
        w.D = Matrix<std::int64_t>(M.rows(), M.cols());
        for (std::size_t i = 0; i < M.rows(); ++i)
            for (std::size_t j = 0; j < M.cols(); ++j) w.D(i, j) = M(i, j).convert_to<std::int64_t>();
        try {
            integer_smith(w, track_columns);
            res.U = widen(w.U);
            res.D = widen(w.D);
            res.U_inv = widen(w.U_inv);
            if (track_columns) {
                res.V = widen(w.V);
                res.V_inv = widen(w.V_inv);
            }
            done = true;
        } catch (const Overflow&) {
        }
    }
    if (!done) {
        SmithWork<BigInt> w;
        w.D = M;
        integer_smith(w, track_columns);
        res.U = std::move(w.U);
        res.D = std::move(w.D);
        res.U_inv = std::move(w.U_inv);
        res.V = std::move(w.V);
        res.V_inv = std::move(w.V_inv);
    }
    const std::size_t n = std::min(M.rows(), M.cols());
    res.rank = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (res.D(i, i) != 0) ++res.rank;
    return res;
}

std::int64_t mod_reduce(std::int64_t a, std::int64_t m)
{
    if (m == 0) return a;
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m)
{
    std::int64_t g, s, u;
    ext_gcd<std::int64_t>(mod_reduce(a, m), m, g, s, u);
    if (g != 1) throw std::invalid_argument("not invertible modulo m");
    return mod_reduce(s, m);
}

ModularSmith modular_smith(const Matrix<std::int64_t>& A0, std::int64_t m, bool track_rows)
{
    if (m < 2) throw std::invalid_argument("modular_smith needs modulus >= 2");
    ModularSmith res;
    res.modulus = m;
    Matrix<std::int64_t> A(A0.rows(), A0.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) A(i, j) = mod_reduce(A0(i, j), m);
    const std::size_t r = A.rows(), c = A.cols();
    res.V = Matrix<std::int64_t>::identity(c);
    res.V_inv = Matrix<std::int64_t>::identity(c);
    if (track_rows) {
        res.U = Matrix<std::int64_t>::identity(r);
        res.U_inv = Matrix<std::int64_t>::identity(r);
    }
    Eliminator<std::int64_t> E{A, track_rows ? &res.U : nullptr, track_rows ? &res.U_inv : nullptr, &res.V,
                               &res.V_inv, m};
    const std::size_t n = std::min(r, c);
    res.d.assign(c, 0);
    for (std::size_t t = 0; t < n; ++t) {
        // pivot with the smallest gcd against m
        bool found = false;
        std::size_t pi = t, pj = t;
        std::int64_t best = m + 1;
        for (std::size_t i = t; i < r; ++i)
            for (std::size_t j = t; j < c; ++j) {
                if (A(i, j) == 0) continue;
                std::int64_t g = std::gcd(A(i, j), m);
                if (g < best || (g == best && A(i, j) < A(pi, pj))) {
                    found = true;
                    best = g;
                    pi = i;
                    pj = j;
                }
            }
        if (!found) break;
        swap_rows_tracked(E, t, pi);
        swap_cols_tracked(E, t, pj);
        clear_cross(E, t);
        res.d[t] = A(t, t);
    }
    return res;
}

}  // namespace twistbench
