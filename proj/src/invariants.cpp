#include "tangle/invariants.hpp"

#include "tangle/error.hpp"

namespace tangle {

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
    int n = (int)rows.size();
    IntMatrix m(n);
    for (int i = 0; i < n; ++i) {
        if ((int)rows[i].size() != n) throw Error("NotSquare", "row " + std::to_string(i), {i});
        for (int k = 0; k < n; ++k) m(i, k) = rows[i][k];
    }
    return m;
}

std::vector<std::vector<int>> IntMatrix::rows() const {
    std::vector<std::vector<int>> r(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) r[i][k] = (int)(*this)(i, k);
    return r;
}

RingMatrix RingMatrix::validate(const std::vector<std::vector<int>>& raw) {
    RingMatrix r;
    r.m_ = IntMatrix::from_rows(raw);
    int n = r.n();
    long long cap = (long long)(n - 2) * (n - 3) / 2;
    if (cap < 0) cap = 0;
    for (int i = 0; i < n; ++i) {
        if (r.m_(i, i) != 0) throw Error("BadDiagonal", "", {i});
        for (int k = 0; k < n; ++k)
            if (r.m_(i, k) < 0 || r.m_(i, k) > cap) throw Error("BadEntry", "", {i, k});
    }
    return r;
}

RingMatrix RingMatrix::zero(int n) {
    RingMatrix r;
    r.m_ = IntMatrix(n);
    return r;
}

int RingMatrix::zero_rows() const {
    int c = 0;
    for (int i = 0; i < n(); ++i) {
        bool z = true;
        for (int k = 0; k < n(); ++k) z = z && m_(i, k) == 0;
        c += z;
    }
    return c;
}

QMatrix q_matrix(const ChiralityMatrix& p) {
    int n = p.n();
    QMatrix q(n);
    std::vector<int> s(n);
    for (int i = 0; i < n; ++i) {
        // orient every other line so that row i becomes all +1, then take column sums
        for (int j = 0; j < n; ++j) s[j] = j == i ? 1 : p(i, j);
        for (int k = 0; k < n; ++k) {
            long long sum = 0;
            for (int j = 0; j < n; ++j) sum += s[j] * p(j, k) * s[k];
            q(i, k) = sum;
        }
    }
    return q;
}

QMatrix q_matrix_closed_form(const ChiralityMatrix& p) {
    int n = p.n();
    QMatrix q(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if (i == k) {
                q(i, k) = n - 1;
                continue;
            }
            long long sq = 0;
            for (int j = 0; j < n; ++j) sq += p(i, j) * p(j, k);
            q(i, k) = 1 + p(i, k) * sq;
        }
    return q;
}

RingVector ring_vector(const RingMatrix& r) {
    RingVector v(r.n());
    for (int i = 0; i < r.n(); ++i) {
        long long s = 0;
        for (int k = 0; k < r.n(); ++k) s += r(i, k);
        if (s % 3 != 0) throw Error("RowSumNotDivisibleBy3", "row sum " + std::to_string(s), {i});
        v[i] = s / 3;
    }
    return v;
}

namespace {

// tr(Q (I - R)^{-1}) as tr(Y) with (I - R) Y = Q
mpq_class trace_solve(const QMatrix& q, const RingMatrix& r) {
    int n = q.n;
    std::vector<mpq_class> a((size_t)n * n), y((size_t)n * n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            a[i * n + k] = (long)((i == k ? 1 : 0) - r(i, k));
            y[i * n + k] = (long)q(i, k);
        }
    for (int c = 0; c < n; ++c) {
        int piv = c;
        while (piv < n && a[piv * n + c] == 0) ++piv;
        if (piv == n) throw Error("SingularIMinusR", "column " + std::to_string(c), {c});
        if (piv != c)
            for (int k = 0; k < n; ++k) {
                std::swap(a[c * n + k], a[piv * n + k]);
                std::swap(y[c * n + k], y[piv * n + k]);
            }
        mpq_class d = a[c * n + c];
        for (int k = 0; k < n; ++k) {
            a[c * n + k] /= d;
            y[c * n + k] /= d;
        }
        for (int i = 0; i < n; ++i) {
            if (i == c || a[i * n + c] == 0) continue;
            mpq_class f = a[i * n + c];
            for (int k = 0; k < n; ++k) {
                a[i * n + k] -= f * a[c * n + k];
                y[i * n + k] -= f * y[c * n + k];
            }
        }
    }
    mpq_class t = 0;
    for (int i = 0; i < n; ++i) t += y[i * n + i];
    return t;
}

}  // namespace

mpq_class wp(const ChiralityMatrix& p, const RingMatrix& r) {
    if (p.n() != r.n())
        throw Error("DimensionMismatch", "P is " + std::to_string(p.n()) + ", R is " + std::to_string(r.n()));
    return trace_solve(q_matrix(p), r);
}

mpq_class wp_ring(const ChiralityMatrix& p, const RingMatrix& r) { return wp(p, r) + wp(mirror(p), r); }

bool complement_identity_check(const ChiralityMatrix& p) {
    int n = p.n();
    QMatrix a = q_matrix(p), b = q_matrix(mirror(p));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            if (a(i, k) + b(i, k) != (i == k ? 2 * (n - 1) : 2)) return false;
    return true;
}

std::string render_decimal(const mpq_class& q, int places) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, places);
    mpq_class a = abs(q) * scale;
    // floor(a + 1/2) on the magnitude gives half away from zero
    mpz_class num = a.get_num() * 2 + a.get_den();
    mpz_class den = a.get_den() * 2;
    mpz_class v;
    mpz_fdiv_q(v.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    std::string digits = v.get_str();
    if ((int)digits.size() <= places) digits = std::string(places + 1 - digits.size(), '0') + digits;
    std::string s = digits.substr(0, digits.size() - places);
    if (places > 0) s += "." + digits.substr(digits.size() - places);
    if (sgn(q) < 0 && v != 0) s = "-" + s;
    return s;
}

std::string pad_decimal(const std::string& s, int places) {
    auto dot = s.find('.');
    std::string ip = dot == std::string::npos ? s : s.substr(0, dot);
    std::string fp = dot == std::string::npos ? "" : s.substr(dot + 1);
    if ((int)fp.size() < places) fp += std::string(places - fp.size(), '0');
    return places > 0 ? ip + "." + fp : ip;
}

}  // namespace tangle
