#include "tangle/seidel.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

#include "tangle/error.hpp"

namespace tangle {

std::string to_string(Int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? (unsigned __int128)(-(v + 1)) + 1 : (unsigned __int128)v;
    std::string s;
    while (u) {
        s.push_back(char('0' + int(u % 10)));
        u /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

namespace {

Int128 mpz_to_i128(const mpz_class& z) {
    mpz_class a = abs(z);
    unsigned __int128 u = 0;
    size_t count = 0;
    uint64_t limbs[4] = {0, 0, 0, 0};
    if (mpz_sizeinbase(a.get_mpz_t(), 2) > 126) throw Error("Overflow", "integer exceeds 126 bits");
    mpz_export(limbs, &count, -1, sizeof(uint64_t), 0, 0, a.get_mpz_t());
    u = ((unsigned __int128)limbs[1] << 64) | limbs[0];
    Int128 v = (Int128)u;
    return sgn(z) < 0 ? -v : v;
}

}  // namespace

ChiralityMatrix ChiralityMatrix::validate(const std::vector<std::vector<int>>& raw) {
    int n = (int)raw.size();
    if (n < 2) throw Error("DimensionTooSmall", "n = " + std::to_string(n));
    if (n > kMaxDim) throw Error("DimensionTooLarge", "n = " + std::to_string(n));
    for (int i = 0; i < n; ++i)
        if ((int)raw[i].size() != n) throw Error("NotSquare", "row " + std::to_string(i), {i});
    for (int i = 0; i < n; ++i)
        if (raw[i][i] != 0) throw Error("BadDiagonal", "", {i});
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            if (i != k && raw[i][k] != 1 && raw[i][k] != -1) throw Error("BadEntry", "", {i, k});
    for (int i = 0; i < n; ++i)
        for (int k = i + 1; k < n; ++k)
            if (raw[i][k] != raw[k][i]) throw Error("NonSymmetric", "", {i, k});
    ChiralityMatrix m;
    m.n_ = n;
    m.a_.resize(n * n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) m.a_[i * n + k] = (int8_t)raw[i][k];
    return m;
}

std::vector<std::vector<int>> ChiralityMatrix::rows() const {
    std::vector<std::vector<int>> r(n_, std::vector<int>(n_));
    for (int i = 0; i < n_; ++i)
        for (int k = 0; k < n_; ++k) r[i][k] = (*this)(i, k);
    return r;
}

uint32_t ChiralityMatrix::row_mask(int i) const {
    uint32_t m = 0;
    for (int k = 0; k < n_; ++k)
        if ((*this)(i, k) < 0) m |= 1u << k;
    return m;
}

MatrixBuilder::MatrixBuilder(int n) {
    m_.n_ = n;
    m_.a_.assign(n * n, 1);
    for (int i = 0; i < n; ++i) m_.a_[i * n + i] = 0;
}

MatrixBuilder::MatrixBuilder(const ChiralityMatrix& p) : m_(p) {}

void MatrixBuilder::set(int i, int k, int v) {
    m_.a_[i * m_.n_ + k] = (int8_t)v;
    m_.a_[k * m_.n_ + i] = (int8_t)v;
}

ChiralityMatrix from_row_masks(const std::vector<uint32_t>& masks) {
    int n = (int)masks.size();
    MatrixBuilder b(n);
    for (int i = 0; i < n; ++i)
        for (int k = i + 1; k < n; ++k) b.set(i, k, (masks[i] >> k & 1u) ? -1 : 1);
    return b.build();
}

ChiralityMatrix flip_orientation(const ChiralityMatrix& p, int i) {
    if (i < 0 || i >= p.n()) throw Error("IndexOutOfRange", "", {i});
    MatrixBuilder b(p);
    for (int k = 0; k < p.n(); ++k)
        if (k != i) b.set(i, k, -p(i, k));
    return b.build();
}

ChiralityMatrix permute(const ChiralityMatrix& p, const std::vector<int>& perm) {
    int n = p.n();
    if ((int)perm.size() != n) throw Error("NotAPermutation", "length " + std::to_string(perm.size()));
    std::vector<char> seen(n, 0);
    for (int v : perm) {
        if (v < 0 || v >= n || seen[v]) throw Error("NotAPermutation", "", {v});
        seen[v] = 1;
    }
    MatrixBuilder b(n);
    for (int i = 0; i < n; ++i)
        for (int k = i + 1; k < n; ++k) b.set(i, k, p(perm[i], perm[k]));
    return b.build();
}

ChiralityMatrix mirror(const ChiralityMatrix& p) {
    MatrixBuilder b(p);
    for (int i = 0; i < p.n(); ++i)
        for (int k = i + 1; k < p.n(); ++k) b.set(i, k, -p(i, k));
    return b.build();
}

ChiralityMatrix switch_entry(const ChiralityMatrix& p, int i, int k) {
    if (i < 0 || i >= p.n() || k < 0 || k >= p.n()) throw Error("IndexOutOfRange", "", {i, k});
    if (i == k) throw Error("DiagonalSwitch", "", {i, k});
    MatrixBuilder b(p);
    b.set(i, k, -p(i, k));
    return b.build();
}

Int128 determinant(const ChiralityMatrix& p) {
    int n = p.n();
    std::vector<mpz_class> a(n * n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) a[i * n + k] = p(i, k);
    mpz_class prev = 1;
    int sign = 1;
    for (int c = 0; c < n - 1; ++c) {
        if (a[c * n + c] == 0) {
            int r = c + 1;
            while (r < n && a[r * n + c] == 0) ++r;
            if (r == n) return 0;
            for (int k = 0; k < n; ++k) std::swap(a[c * n + k], a[r * n + k]);
            sign = -sign;
        }
        for (int i = c + 1; i < n; ++i) {
            for (int k = c + 1; k < n; ++k) {
                mpz_class t = a[i * n + k] * a[c * n + c] - a[i * n + c] * a[c * n + k];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a[i * n + k] = t;
            }
            a[i * n + c] = 0;
        }
        prev = a[c * n + c];
    }
    mpz_class d = a[(n - 1) * n + (n - 1)];
    if (sign < 0) d = -d;
    return mpz_to_i128(d);
}

Int128 CharPoly::eval(Int128 x) const {
    Int128 v = 0;
    for (size_t k = coeffs.size(); k-- > 0;) v = v * x + coeffs[k];
    return v;
}

std::string CharPoly::to_string() const {
    std::string s;
    int deg = (int)coeffs.size() - 1;
    for (int k = deg; k >= 0; --k) {
        Int128 c = coeffs[k];
        if (c == 0) continue;
        Int128 mag = c < 0 ? -c : c;
        if (s.empty()) {
            if (c < 0) s += "-";
        } else {
            s += c < 0 ? " - " : " + ";
        }
        if (mag != 1 || k == 0) s += tangle::to_string(mag);
        if (k >= 1) s += "x";
        if (k >= 2) s += "^" + std::to_string(k);
    }
    return s.empty() ? "0" : s;
}

// Berkowitz: division-free, exact over the integers.
CharPoly char_poly(const ChiralityMatrix& p) {
    int n = p.n();
    std::vector<mpz_class> vect = {1, -mpz_class(p(0, 0))};
    for (int r = 1; r < n; ++r) {
        std::vector<mpz_class> t(r + 2);
        t[0] = 1;
        t[1] = -p(r, r);
        std::vector<mpz_class> col(r);
        for (int i = 0; i < r; ++i) col[i] = p(i, r);
        for (int j = 2; j < r + 2; ++j) {
            mpz_class dot = 0;
            for (int i = 0; i < r; ++i) dot += p(r, i) * col[i];
            t[j] = -dot;
            std::vector<mpz_class> next(r, 0);
            for (int i = 0; i < r; ++i)
                for (int k = 0; k < r; ++k) next[i] += p(i, k) * col[k];
            col.swap(next);
        }
        std::vector<mpz_class> nv(r + 2, 0);
        for (int i = 0; i < r + 2; ++i)
            for (int j = 0; j <= std::min(i, r); ++j) nv[i] += t[i - j] * vect[j];
        vect.swap(nv);
    }
    CharPoly cp;
    cp.coeffs.resize(n + 1);
    for (int k = 0; k <= n; ++k) cp.coeffs[k] = mpz_to_i128(vect[n - k]);
    return cp;
}

namespace {

using u64 = uint64_t;
using u128 = unsigned __int128;

constexpr u64 kP1 = 2305843009213693951ull;  // 2^61 - 1
constexpr u64 kP2 = 2305843009213693921ull;

u64 mulmod(u64 a, u64 b, u64 m) { return (u64)((u128)a * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 inv(u64 a, u64 m) { return powmod(a, m - 2, m); }

// coefficients low to high, modulo m
std::vector<u64> hessenberg_charpoly(const ChiralityMatrix& p, u64 m) {
    int n = p.n();
    std::vector<u64> a(n * n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            int v = p(i, k);
            a[i * n + k] = v < 0 ? m - 1 : (u64)v;
        }
    auto at = [&](int i, int k) -> u64& { return a[i * n + k]; };
    for (int j = 0; j + 2 < n; ++j) {
        int piv = -1;
        for (int i = j + 1; i < n; ++i)
            if (at(i, j)) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != j + 1) {
            for (int k = 0; k < n; ++k) std::swap(at(piv, k), at(j + 1, k));
            for (int k = 0; k < n; ++k) std::swap(at(k, piv), at(k, j + 1));
        }
        u64 hinv = inv(at(j + 1, j), m);
        for (int i = j + 2; i < n; ++i) {
            if (!at(i, j)) continue;
            u64 u = mulmod(at(i, j), hinv, m);
            for (int k = 0; k < n; ++k) at(i, k) = (at(i, k) + m - mulmod(u, at(j + 1, k), m)) % m;
            for (int k = 0; k < n; ++k) at(k, j + 1) = (at(k, j + 1) + mulmod(u, at(k, i), m)) % m;
        }
    }
    std::vector<std::vector<u64>> ps(n + 1);
    ps[0] = {1};
    for (int k = 1; k <= n; ++k) {
        const auto& prev = ps[k - 1];
        std::vector<u64> cur(k + 1, 0);
        u64 hkk = at(k - 1, k - 1);
        for (int d = 0; d < k; ++d) {
            cur[d + 1] = (cur[d + 1] + prev[d]) % m;
            cur[d] = (cur[d] + m - mulmod(hkk, prev[d], m)) % m;
        }
        u64 prod = 1;
        for (int i = k - 1; i >= 1; --i) {
            prod = mulmod(prod, at(i, i - 1), m);
            u64 coef = mulmod(at(i - 1, k - 1), prod, m);
            if (!coef) continue;
            const auto& q = ps[i - 1];
            for (size_t d = 0; d < q.size(); ++d) cur[d] = (cur[d] + m - mulmod(coef, q[d], m)) % m;
        }
        ps[k] = std::move(cur);
    }
    return ps[n];
}

}  // namespace

CharPoly char_poly_modular(const ChiralityMatrix& p) {
    auto c1 = hessenberg_charpoly(p, kP1);
    auto c2 = hessenberg_charpoly(p, kP2);
    static const u64 inv1 = inv(kP1 % kP2, kP2);
    const u128 M = (u128)kP1 * kP2;
    CharPoly cp;
    cp.coeffs.resize(c1.size());
    for (size_t k = 0; k < c1.size(); ++k) {
        u64 diff = (c2[k] + kP2 - c1[k] % kP2) % kP2;
        u64 t = mulmod(diff, inv1, kP2);
        u128 x = (u128)c1[k] + (u128)kP1 * t;
        cp.coeffs[k] = x > M / 2 ? -(Int128)(M - x) : (Int128)x;
    }
    return cp;
}

std::vector<std::pair<int, int>> ee_pairs(const ChiralityMatrix& p) {
    int n = p.n();
    std::vector<uint32_t> rows(n);
    for (int i = 0; i < n; ++i) rows[i] = p.row_mask(i);
    uint32_t all = n == 32 ? 0xffffffffu : ((1u << n) - 1);
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n; ++i)
        for (int k = i + 1; k < n; ++k) {
            uint32_t mask = all & ~(1u << i) & ~(1u << k);
            uint32_t diff = (rows[i] ^ rows[k]) & mask;
            if (diff == 0 || diff == mask) out.emplace_back(i, k);
        }
    return out;
}

std::vector<std::vector<int>> parse_int_matrix(std::istream& in, const std::string& origin) {
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& what) {
        throw Error("ParseError", origin + ": line " + std::to_string(lineno) + ": " + what);
    };
    auto next_tokens = [&]() {
        if (!std::getline(in, line)) {
            ++lineno;
            fail("unexpected end of input");
        }
        ++lineno;
        std::vector<std::string> toks;
        std::istringstream ss(line);
        std::string t;
        while (ss >> t) toks.push_back(t);
        return toks;
    };
    auto to_int = [&](const std::string& t) {
        size_t pos = 0;
        long v = 0;
        try {
            v = std::stol(t, &pos);
        } catch (...) {
            fail("not an integer: '" + t + "'");
        }
        if (pos != t.size()) fail("not an integer: '" + t + "'");
        return (int)v;
    };
    auto head = next_tokens();
    if (head.size() != 1) fail("expected the dimension alone on the first line");
    int n = to_int(head[0]);
    if (n < 1 || n > 4096) fail("bad dimension " + head[0]);
    std::vector<std::vector<int>> m(n);
    for (int i = 0; i < n; ++i) {
        auto toks = next_tokens();
        if ((int)toks.size() != n) fail("expected " + std::to_string(n) + " entries");
        for (auto& t : toks) m[i].push_back(to_int(t));
    }
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") != std::string::npos) fail("trailing content");
    }
    return m;
}

std::vector<std::vector<int>> read_int_matrix(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("ParseError", path + ": cannot open");
    return parse_int_matrix(f, path);
}

ChiralityMatrix read_matrix(const std::string& path) { return ChiralityMatrix::validate(read_int_matrix(path)); }

std::string format_matrix(const std::vector<std::vector<int>>& m) {
    std::string s = std::to_string(m.size()) + "\n";
    for (auto& r : m) {
        for (size_t k = 0; k < r.size(); ++k) {
            if (k) s += ' ';
            s += std::to_string(r[k]);
        }
        s += '\n';
    }
    return s;
}

}  // namespace tangle
