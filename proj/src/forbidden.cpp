#include "tangle/forbidden.hpp"

#include <array>
#include <mutex>
#include <set>

#include "tangle/enumeration.hpp"
#include "tangle/error.hpp"

namespace tangle {

std::string SubmatrixWitness::to_string() const {
    std::string s = kind == WitnessKind::K5 ? "K5" : "P250";
    for (int i : indices) s += " " + std::to_string(i);
    s += " det=" + std::to_string(det);
    return s;
}

namespace detail {

namespace {

// exact determinant of a small integer matrix (k <= 8) by fraction-free elimination
long long small_det(std::array<long long, 64> a, int k) {
    long long prev = 1;
    int sign = 1;
    for (int c = 0; c < k - 1; ++c) {
        if (a[c * k + c] == 0) {
            int r = c + 1;
            while (r < k && a[r * k + c] == 0) ++r;
            if (r == k) return 0;
            for (int j = 0; j < k; ++j) std::swap(a[c * k + j], a[r * k + j]);
            sign = -sign;
        }
        for (int i = c + 1; i < k; ++i) {
            for (int j = c + 1; j < k; ++j) a[i * k + j] = (a[i * k + j] * a[c * k + c] - a[i * k + c] * a[c * k + j]) / prev;
            a[i * k + c] = 0;
        }
        prev = a[c * k + c];
    }
    return sign * a[(k - 1) * k + (k - 1)];
}

std::array<long long, 64> from_bits(uint32_t bits, int k) {
    std::array<long long, 64> a{};
    int pos = 0;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            long long v = (bits >> pos++ & 1u) ? -1 : 1;
            a[i * k + j] = a[j * k + i] = v;
        }
    return a;
}

struct Det5Table {
    std::array<int8_t, 1024> det{};
    Det5Table() {
        for (uint32_t b = 0; b < 1024; ++b) det[b] = (int8_t)small_det(from_bits(b, 5), 5);
    }
};

const Det5Table& det5_table() {
    static const Det5Table t;
    return t;
}

// 7x7 classes keyed by the 15 pair bits among indices 1..6 after switching row 0 to all +1
struct P250Table {
    std::array<uint8_t, 1 << 15> hit{};
    P250Table() {
        const auto& d5 = det5_table();
        for (uint32_t b = 0; b < (1u << 15); ++b) {
            uint32_t full = b << 6;  // pairs (0,1)..(0,6) occupy bits 0..5 and are +1
            auto a = from_bits(full, 7);
            long long d = small_det(a, 7);
            if (d != 250 && d != -250) continue;
            bool k5 = false;
            int idx[5];
            uint32_t rows[7] = {0};
            for (int i = 0; i < 7; ++i)
                for (int j = 0; j < 7; ++j)
                    if (i != j && a[i * 7 + j] < 0) rows[i] |= 1u << j;
            for (idx[0] = 0; idx[0] < 7 && !k5; ++idx[0])
                for (idx[1] = idx[0] + 1; idx[1] < 7 && !k5; ++idx[1])
                    for (idx[2] = idx[1] + 1; idx[2] < 7 && !k5; ++idx[2])
                        for (idx[3] = idx[2] + 1; idx[3] < 7 && !k5; ++idx[3])
                            for (idx[4] = idx[3] + 1; idx[4] < 7 && !k5; ++idx[4]) {
                                int v = d5.det[pair_bits(rows, idx, 5)];
                                k5 = v == 4 || v == -4;
                            }
            hit[b] = !k5;
        }
    }
};

const P250Table& p250_table() {
    static const P250Table t;
    return t;
}

}  // namespace

uint32_t pair_bits(const uint32_t* rows, const int* idx, int k) {
    uint32_t bits = 0;
    int pos = 0;
    for (int a = 0; a < k; ++a) {
        uint32_t r = rows[idx[a]];
        for (int b = a + 1; b < k; ++b) bits |= (r >> idx[b] & 1u) << pos++;
    }
    return bits;
}

int8_t det5_from_bits(uint32_t bits) { return det5_table().det[bits & 1023u]; }

bool p250_from_bits(uint32_t bits) {
    uint32_t s = bits & 63u;  // sign of (0,j) for j = 1..6 at bit j-1
    uint32_t key = 0;
    int pos = 6, out = 0;
    for (int a = 1; a < 7; ++a)
        for (int b = a + 1; b < 7; ++b) {
            uint32_t v = (bits >> pos++ & 1u) ^ (s >> (a - 1) & 1u) ^ (s >> (b - 1) & 1u);
            key |= v << out++;
        }
    return p250_table().hit[key];
}

}  // namespace detail

ChiralityMatrix k5_matrix() { return MatrixBuilder(5).build(); }

std::vector<ChiralityMatrix> k5_switch_forms() {
    std::set<ChiralityMatrix> seen;
    std::vector<ChiralityMatrix> out;
    for (int sign : {1, -1}) {
        ChiralityMatrix base = sign > 0 ? k5_matrix() : mirror(k5_matrix());
        for (int mask = 0; mask < 16; ++mask) {
            ChiralityMatrix m = base;
            for (int j = 1; j < 5; ++j)
                if (mask >> (j - 1) & 1) m = flip_orientation(m, j);
            if (seen.insert(m).second) out.push_back(m);
        }
    }
    return out;
}

namespace {

template <class F>
bool for_each_subset(int n, int k, std::optional<int> must, F&& f) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    if (k > n) return false;
    while (true) {
        bool ok = !must;
        if (must)
            for (int v : idx) ok = ok || v == *must;
        if (ok && f(idx)) return true;
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return false;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

std::vector<uint32_t> masks_of(const ChiralityMatrix& p) {
    std::vector<uint32_t> rows(p.n());
    for (int i = 0; i < p.n(); ++i) rows[i] = p.row_mask(i);
    return rows;
}

ChiralityMatrix principal(const ChiralityMatrix& p, const std::vector<int>& idx) {
    int k = (int)idx.size();
    MatrixBuilder b(k);
    for (int a = 0; a < k; ++a)
        for (int c = a + 1; c < k; ++c) b.set(a, c, p(idx[a], idx[c]));
    return b.build();
}

}  // namespace

std::optional<SubmatrixWitness> contains_k5(const ChiralityMatrix& p, std::optional<int> restrict_to) {
    if (p.n() < 5) return std::nullopt;
    if (restrict_to && (*restrict_to < 0 || *restrict_to >= p.n())) throw Error("IndexOutOfRange", "", {*restrict_to});
    auto rows = masks_of(p);
    std::optional<SubmatrixWitness> w;
    for_each_subset(p.n(), 5, restrict_to, [&](const std::vector<int>& idx) {
        int d = detail::det5_from_bits(detail::pair_bits(rows.data(), idx.data(), 5));
        if (d == 4 || d == -4) {
            w = SubmatrixWitness{idx, WitnessKind::K5, d};
            return true;
        }
        return false;
    });
    return w;
}

std::optional<SubmatrixWitness> contains_p250(const ChiralityMatrix& p, std::optional<int> restrict_to) {
    if (p.n() < 7) return std::nullopt;
    if (restrict_to && (*restrict_to < 0 || *restrict_to >= p.n())) throw Error("IndexOutOfRange", "", {*restrict_to});
    auto rows = masks_of(p);
    std::optional<SubmatrixWitness> w;
    for_each_subset(p.n(), 7, restrict_to, [&](const std::vector<int>& idx) {
        if (!detail::p250_from_bits(detail::pair_bits(rows.data(), idx.data(), 7))) return false;
        w = SubmatrixWitness{idx, WitnessKind::P250, (long long)determinant(principal(p, idx))};
        return true;
    });
    return w;
}

std::optional<SubmatrixWitness> contains_k5_by_forms(const ChiralityMatrix& p) {
    if (p.n() < 5) return std::nullopt;
    static const std::vector<ChiralityMatrix> forms = k5_switch_forms();
    std::optional<SubmatrixWitness> w;
    for_each_subset(p.n(), 5, std::nullopt, [&](const std::vector<int>& idx) {
        ChiralityMatrix sub = principal(p, idx);
        for (const auto& f : forms)
            if (f == sub) {
                w = SubmatrixWitness{idx, WitnessKind::K5, (long long)determinant(sub)};
                return true;
            }
        return false;
    });
    return w;
}

ChiralityMatrix p250_representative() {
    static std::once_flag once;
    static ChiralityMatrix rep;
    std::call_once(once, [] {
        ClassCatalog c7 = extend(enumerate_base(6), FilterSet{true, false});
        // the -250 class is the mirror image of the +250 one
        std::vector<ChiralityMatrix> hits;
        for (const auto& m : c7.reps)
            if (determinant(m) == 250) hits.push_back(m);
        if (hits.size() != 1)
            throw Error("CountMismatch", "expected one K5-free 7x7 class with det = 250, found " +
                                             std::to_string(hits.size()));
        rep = hits[0];
    });
    return rep;
}

bool EESwitchReport::any_k5() const {
    for (auto& r : rows)
        if (r.k5_after) return true;
    return false;
}

bool EESwitchReport::all_k5() const {
    for (auto& r : rows)
        if (!r.k5_after) return false;
    return !rows.empty();
}

EESwitchReport ee_switch_property(const ChiralityMatrix& p) {
    auto pairs = ee_pairs(p);
    if (pairs.empty()) throw Error("NoEEPairs", "");
    EESwitchReport rep;
    rep.det_before = (long long)determinant(p);
    for (auto [i, k] : pairs) {
        ChiralityMatrix s = switch_entry(p, i, k);
        rep.rows.push_back({i, k, (long long)determinant(s), contains_k5(s)});
    }
    return rep;
}

mpq_class radii_determinant(const ChiralityMatrix& p, const std::vector<mpq_class>& r) {
    int n = p.n();
    if ((int)r.size() != n)
        throw Error("DimensionMismatch", "P is " + std::to_string(n) + ", r has " + std::to_string(r.size()));
    for (int i = 0; i < n; ++i)
        if (sgn(r[i]) < 0) throw Error("NegativeRadius", "", {i});
    std::vector<mpq_class> a((size_t)n * n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) a[i * n + k] = i == k ? mpq_class(0) : mpq_class(p(i, k) * (r[i] + r[k]));
    mpq_class det = 1;
    for (int c = 0; c < n; ++c) {
        int piv = c;
        while (piv < n && a[piv * n + c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            for (int k = 0; k < n; ++k) std::swap(a[c * n + k], a[piv * n + k]);
            det = -det;
        }
        det *= a[c * n + c];
        for (int i = c + 1; i < n; ++i) {
            if (a[i * n + c] == 0) continue;
            mpq_class f = a[i * n + c] / a[c * n + c];
            for (int k = c; k < n; ++k) a[i * n + k] -= f * a[c * n + k];
        }
    }
    return det;
}

}  // namespace tangle
