#include "toridouble/lattice.hpp"

#include <algorithm>

namespace toridouble {

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row_a -= q·row_b
void add_row(IntMatrix& m, std::size_t a, std::size_t b, const Integer& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < m.cols(); ++j) m(a, j) -= q * m(b, j);
}

void add_col(IntMatrix& m, std::size_t a, std::size_t b, const Integer& q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, a) -= q * m(i, b);
}

void negate_row(IntMatrix& m, std::size_t a) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(a, j) = -m(a, j);
}

// (row_a, row_b) <- (s·row_a + t·row_b, -(y/g)·row_a + (x/g)·row_b) with s·x + t·y = g
void gcd_rows(IntMatrix& m, std::size_t a, std::size_t b, const Integer& s, const Integer& t, const Integer& u,
              const Integer& v) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
        Integer ra = m(a, j), rb = m(b, j);
        m(a, j) = s * ra + t * rb;
        m(b, j) = u * ra + v * rb;
    }
}

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace

HermiteForm hnf(const IntMatrix& m) {
    IntMatrix h = m;
    IntMatrix u = IntMatrix::identity(m.rows());
    std::size_t r = 0;
    for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
        for (std::size_t i = r + 1; i < h.rows(); ++i) {
            if (h(i, c) == 0) continue;
            Integer x = h(r, c), y = h(i, c), g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
            Integer p = -y / g, q = x / g;
            gcd_rows(h, r, i, s, t, p, q);
            gcd_rows(u, r, i, s, t, p, q);
        }
        if (h(r, c) == 0) continue;
        if (h(r, c) < 0) {
            negate_row(h, r);
            negate_row(u, r);
        }
        for (std::size_t i = 0; i < r; ++i) {
            Integer q = floor_div(h(i, c), h(r, c));
            add_row(h, i, r, q);
            add_row(u, i, r, q);
        }
        ++r;
    }
    return {h, u};
}

SmithForm smith(const IntMatrix& m) {
    IntMatrix s = m;
    IntMatrix u = IntMatrix::identity(m.rows());
    IntMatrix v = IntMatrix::identity(m.cols());
    const std::size_t rows = s.rows(), cols = s.cols();
    const std::size_t lim = std::min(rows, cols);
    for (std::size_t t = 0; t < lim; ++t) {
        for (;;) {
            // smallest nonzero entry of the trailing block becomes the pivot
            std::size_t pi = rows, pj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (s(i, j) != 0 && (pi == rows || abs(s(i, j)) < abs(s(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == rows) return {s, u, v};
            swap_rows(s, t, pi);
            swap_rows(u, t, pi);
            swap_cols(s, t, pj);
            swap_cols(v, t, pj);
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                Integer q = floor_div(s(i, t), s(t, t));
                add_row(s, i, t, q);
                add_row(u, i, t, q);
                if (s(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                Integer q = floor_div(s(t, j), s(t, t));
                add_col(s, j, t, q);
                add_col(v, j, t, q);
                if (s(t, j) != 0) clean = false;
            }
            if (!clean) continue;
            // divisibility of the trailing block by the pivot
            std::size_t bad_row = rows;
            for (std::size_t i = t + 1; i < rows && bad_row == rows; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (s(i, j) % s(t, t) != 0) {
                        bad_row = i;
                        break;
                    }
            if (bad_row == rows) break;
            add_row(s, t, bad_row, Integer(-1));
            add_row(u, t, bad_row, Integer(-1));
        }
        if (s(t, t) < 0) {
            negate_row(s, t);
            negate_row(u, t);
        }
    }
    return {s, u, v};
}

IntVector LatticeCosets::reduce(const IntVector& v) const {
    IntVector w = v;
    const std::size_t n = hermite.rows();
    for (std::size_t i = 0; i < n; ++i) {
        Integer q = floor_div(w[i], hermite(i, i));
        if (q == 0) continue;
        for (std::size_t j = i; j < n; ++j) w[j] -= q * hermite(i, j);
    }
    return w;
}

std::size_t LatticeCosets::index_of(const IntVector& v) const {
    IntVector w = reduce(v);
    auto it = std::lower_bound(representatives.begin(), representatives.end(), w);
    if (it == representatives.end() || *it != w) throw ValidationError("vector has no coset representative");
    return static_cast<std::size_t>(it - representatives.begin());
}

LatticeCosets cosets(const IntMatrix& m) {
    if (!m.is_square()) throw ShapeMismatch("coset modulus must be square");
    if (det(m) == 0) throw SingularModulus("det M = 0");
    LatticeCosets out;
    out.modulus = m;
    out.hermite = hnf(m.transpose()).H;
    const std::size_t n = m.rows();
    IntVector cur(n, Integer(0));
    // odometer over the box, last coordinate fastest
    for (;;) {
        out.representatives.push_back(cur);
        std::size_t i = n;
        while (i > 0) {
            --i;
            cur[i] += 1;
            if (cur[i] < out.hermite(i, i)) break;
            cur[i] = 0;
            if (i == 0) return out;
        }
        if (n == 0) return out;
    }
}

bool is_saturated(const IntMatrix& u) {
    if (u.cols() > u.rows()) return false;
    SmithForm sf = smith(u);
    for (std::size_t i = 0; i < u.cols(); ++i)
        if (sf.S(i, i) != 1) return false;
    return true;
}

IntMatrix right_inverse_of_transpose(const IntMatrix& u) {
    // S = P·u^T·Q = [I | 0]  =>  V = Q·[I; 0]·P
    SmithForm sf = smith(u.transpose());
    const std::size_t d = u.cols(), big = u.rows();
    for (std::size_t i = 0; i < d; ++i)
        if (sf.S(i, i) != 1) throw InvalidBrane("support lattice is not saturated");
    IntMatrix ident(big, d);
    for (std::size_t i = 0; i < d; ++i) ident(i, i) = 1;
    return sf.V * ident * sf.U;
}

IntMatrix annihilator(const IntMatrix& u) {
    SmithForm sf = smith(u.transpose());
    const std::size_t d = u.cols(), big = u.rows();
    std::size_t r = 0;
    while (r < std::min(d, big) && sf.S(r, r) != 0) ++r;
    // u^T·Q_j = 0 for the columns of Q past the rank
    return sf.V.block(0, r, big, big - r).transpose();
}

}  // namespace toridouble
