#include "toridouble/matrix.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace toridouble {

RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
    return r;
}

RatVector to_rational(const IntVector& v) {
    RatVector r;
    r.reserve(v.size());
    for (const auto& x : v) r.emplace_back(x);
    return r;
}

bool is_integral(const RatMatrix& m) {
    for (const auto& v : m.data())
        if (v.get_den() != 1) return false;
    return true;
}

bool is_integral(const RatVector& v) {
    for (const auto& x : v)
        if (x.get_den() != 1) return false;
    return true;
}

IntMatrix to_integer(const RatMatrix& m) {
    IntMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (m(i, j).get_den() != 1) throw ValidationError("matrix entry " + to_string(m(i, j)) + " is not an integer");
            r(i, j) = m(i, j).get_num();
        }
    return r;
}

IntVector to_integer(const RatVector& v) {
    IntVector r;
    r.reserve(v.size());
    for (const auto& x : v) {
        if (x.get_den() != 1) throw ValidationError("vector entry " + to_string(x) + " is not an integer");
        r.push_back(x.get_num());
    }
    return r;
}

namespace {

// Row-reduce in place; returns the pivot columns. Tracks the determinant sign/scale when asked.
std::vector<std::size_t> row_reduce(RatMatrix& a, Rational* det_out) {
    const std::size_t rows = a.rows(), cols = a.cols();
    std::vector<std::size_t> pivots;
    Rational det = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a(p, c) == 0) ++p;
        if (p == rows) {
            det = 0;
            continue;
        }
        if (p != r) {
            for (std::size_t j = 0; j < cols; ++j) std::swap(a(p, j), a(r, j));
            det = -det;
        }
        Rational piv = a(r, c);
        det *= piv;
        for (std::size_t j = c; j < cols; ++j) a(r, j) /= piv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a(i, c) == 0) continue;
            Rational f = a(i, c);
            for (std::size_t j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    if (det_out) *det_out = (pivots.size() == rows && rows == cols) ? det : Rational(0);
    return pivots;
}

}  // namespace

Rational det(const RatMatrix& m) {
    if (!m.is_square()) throw ShapeMismatch("determinant of a non-square matrix");
    if (m.rows() == 0) return 1;
    RatMatrix a = m;
    Rational d;
    row_reduce(a, &d);
    return d;
}

Integer det(const IntMatrix& m) {
    Rational d = det(to_rational(m));
    return d.get_num();
}

std::size_t rank(const RatMatrix& m) {
    RatMatrix a = m;
    return row_reduce(a, nullptr).size();
}

RatMatrix inverse(const RatMatrix& m) {
    if (!m.is_square()) throw ShapeMismatch("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    RatMatrix aug = RatMatrix::hstack(m, RatMatrix::identity(n));
    auto piv = row_reduce(aug, nullptr);
    if (piv.size() < n || piv[n - 1] != n - 1) throw SingularMatrix("matrix is singular");
    return aug.block(0, n, n, n);
}

RatMatrix nullspace(const RatMatrix& m) {
    RatMatrix a = m;
    auto piv = row_reduce(a, nullptr);
    const std::size_t cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (auto c : piv) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < cols; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    RatMatrix basis(cols, free_cols.size());
    for (std::size_t f = 0; f < free_cols.size(); ++f) {
        basis(free_cols[f], f) = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) basis(piv[r], f) = -a(r, free_cols[f]);
    }
    return basis;
}

RatMatrix symmetric_part(const RatMatrix& m) {
    return Rational(1, 2) * (m + m.transpose());
}

bool is_positive_definite(const RatMatrix& m) {
    if (!m.is_square()) return false;
    RatMatrix s = symmetric_part(m);
    for (std::size_t k = 1; k <= s.rows(); ++k)
        if (det(s.block(0, 0, k, k)) <= 0) return false;
    return true;
}

Rational dot(const RatVector& a, const RatVector& b) {
    if (a.size() != b.size()) throw ShapeMismatch("dot product length mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

RatVector operator+(const RatVector& a, const RatVector& b) {
    if (a.size() != b.size()) throw ShapeMismatch("vector length mismatch");
    RatVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

RatVector operator-(const RatVector& a, const RatVector& b) {
    if (a.size() != b.size()) throw ShapeMismatch("vector length mismatch");
    RatVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

RatVector operator*(const Rational& s, const RatVector& a) {
    RatVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

Integer floor_q(const Rational& q) {
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return f;
}

RatVector frac(const RatVector& v) {
    RatVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] - Rational(floor_q(v[i]));
    return r;
}

double to_double(const Rational& q) {
    if (q == 0) return 0.0;
    Integer a = abs(q.get_num());
    Integer b = q.get_den();
    long e = static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 2)) - static_cast<long>(mpz_sizeinbase(b.get_mpz_t(), 2)) - 54;
    // quotient a / (b·2^e) has 54 or 55 bits; keep 53 plus rounding
    Integer num = a, den = b;
    if (e >= 0)
        den <<= static_cast<mp_bitcnt_t>(e);
    else
        num <<= static_cast<mp_bitcnt_t>(-e);
    Integer quot, rem;
    mpz_tdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    while (mpz_sizeinbase(quot.get_mpz_t(), 2) > 53) {
        // fold the lowest bit into the remainder
        bool low = mpz_odd_p(quot.get_mpz_t());
        quot >>= 1;
        den <<= 1;
        if (low) rem += den / 2;
        ++e;
    }
    int cmp = mpz_cmp(Integer(rem * 2).get_mpz_t(), den.get_mpz_t());
    if (cmp > 0 || (cmp == 0 && mpz_odd_p(quot.get_mpz_t()))) quot += 1;
    double mant = quot.get_d();
    double r = std::ldexp(mant, static_cast<int>(e));
    return q < 0 ? -r : r;
}

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw ValidationError("empty number");
    auto bad = [&]() { return ValidationError("malformed rational '" + text + "'"); };
    auto slash = s.find('/');
    auto is_int = [](const std::string& t) {
        std::size_t i = (t.size() > 0 && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i >= t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    auto strip_plus = [](std::string t) {
        if (!t.empty() && t[0] == '+') t.erase(0, 1);
        return t;
    };
    if (slash != std::string::npos) {
        std::string p = s.substr(0, slash), qs = s.substr(slash + 1);
        if (!is_int(p) || !is_int(qs)) throw bad();
        Integer num(strip_plus(p), 10), den(strip_plus(qs), 10);
        if (den == 0) throw ValidationError("zero denominator in '" + text + "'");
        Rational r(num, den);
        r.canonicalize();
        return r;
    }
    // decimal with optional exponent
    std::size_t epos = s.find_first_of("eE");
    std::string mant = s.substr(0, epos);
    long exp10 = 0;
    if (epos != std::string::npos) {
        std::string es = s.substr(epos + 1);
        if (!is_int(es)) throw bad();
        exp10 = std::stol(es);
    }
    bool neg = false;
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
        neg = mant[0] == '-';
        mant.erase(0, 1);
    }
    auto dot_pos = mant.find('.');
    std::string digits = mant;
    if (dot_pos != std::string::npos) {
        digits = mant.substr(0, dot_pos) + mant.substr(dot_pos + 1);
        exp10 -= static_cast<long>(mant.size() - dot_pos - 1);
    }
    if (digits.empty()) throw bad();
    for (char c : digits)
        if (!std::isdigit(static_cast<unsigned char>(c))) throw bad();
    Integer num(digits, 10);
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    Rational r = exp10 >= 0 ? Rational(num * scale) : Rational(num, scale);
    r.canonicalize();
    return neg ? Rational(-r) : r;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const RatMatrix& m) {
    std::ostringstream os;
    os << m.rows() << "x" << m.cols() << ":";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) os << ";";
        for (std::size_t j = 0; j < m.cols(); ++j) os << " " << m(i, j).get_str();
    }
    return os.str();
}

std::string to_string(const IntMatrix& m) { return to_string(to_rational(m)); }

std::string to_string(const RatVector& v) {
    std::ostringstream os;
    os << v.size() << ":";
    for (const auto& x : v) os << " " << x.get_str();
    return os.str();
}

std::string to_string(const IntVector& v) { return to_string(to_rational(v)); }

CRatMatrix inverse(const CRatMatrix& m) {
    // (X + iY)^{-1} via the real embedding [[X, -Y], [Y, X]]
    const std::size_t n = m.rows();
    RatMatrix big = RatMatrix::blocks(m.re, -m.im, m.im, m.re);
    RatMatrix inv = inverse(big);
    return {inv.block(0, 0, n, n), inv.block(n, 0, n, n)};
}

CRatMatrix to_complex(const RatMatrix& m) { return {m, RatMatrix(m.rows(), m.cols())}; }

}  // namespace toridouble

namespace toridouble {

CRatVector CRatVector::conj() const {
    RatVector ni(im.size());
    for (std::size_t i = 0; i < im.size(); ++i) ni[i] = -im[i];
    return {re, ni};
}

CRatVector operator*(const CRatMatrix& m, const CRatVector& v) {
    return {m.re * v.re - m.im * v.im, m.re * v.im + m.im * v.re};
}

CRational dot(const CRatVector& a, const CRatVector& b) {
    if (a.size() != b.size()) throw ShapeMismatch("dot of vectors with different lengths");
    return {dot(a.re, b.re) - dot(a.im, b.im), dot(a.re, b.im) + dot(a.im, b.re)};
}

std::string to_string(const CRational& z) {
    if (z.im == 0) return z.re.get_str();
    std::string im = (z.im == 1) ? "" : (z.im == -1) ? "-" : z.im.get_str();
    if (z.re == 0) return im + "i";
    if (z.im > 0) return z.re.get_str() + "+" + im + "i";
    return z.re.get_str() + im + "i";
}

std::string to_string(const CRatVector& v) {
    std::string out = std::to_string(v.size()) + ":";
    for (std::size_t i = 0; i < v.size(); ++i) out += " " + to_string(v[i]);
    return out;
}

std::string to_string(const CRatMatrix& m) {
    std::string out = std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ":";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) out += ";";
        for (std::size_t j = 0; j < m.cols(); ++j) out += " " + to_string(CRational{m.re(i, j), m.im(i, j)});
    }
    return out;
}

CRational parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw ValidationError("empty complex number");
    if (s.back() != 'i') return {parse_rational(s), 0};
    s.pop_back();
    // split at the last sign that is not leading and not part of an exponent
    std::size_t cut = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;)
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            cut = i;
            break;
        }
    std::string re = cut == std::string::npos ? "" : s.substr(0, cut);
    std::string im = cut == std::string::npos ? s : s.substr(cut);
    Rational im_val;
    if (im.empty() || im == "+")
        im_val = 1;
    else if (im == "-")
        im_val = -1;
    else
        im_val = parse_rational(im);
    return {re.empty() ? Rational(0) : parse_rational(re), im_val};
}

}  // namespace toridouble
