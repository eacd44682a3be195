#include "tangle/enumeration.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <map>
#include <thread>

#include "tangle/error.hpp"
#include "tangle/forbidden.hpp"

namespace tangle {

std::string FilterSet::name() const {
    if (k5 && p250) return "k5,p250";
    if (k5) return "k5";
    if (p250) return "p250";
    return "none";
}

FilterSet FilterSet::parse(const std::string& s) {
    FilterSet f;
    if (s.empty() || s == "none") return f;
    size_t start = 0;
    while (start <= s.size()) {
        size_t end = s.find(',', start);
        if (end == std::string::npos) end = s.size();
        std::string tok = s.substr(start, end - start);
        if (tok == "k5")
            f.k5 = true;
        else if (tok == "p250")
            f.p250 = true;
        else
            throw Error("ParseError", "unknown filter '" + tok + "'");
        start = end + 1;
    }
    return f;
}

namespace {

using Key = std::vector<Int128>;
using Origin = std::pair<size_t, uint32_t>;  // (parent index, sign vector)

ClassCatalog assemble(int n, std::map<Key, std::pair<Origin, ChiralityMatrix>>&& found, FilterSet verified) {
    ClassCatalog c;
    c.n = n;
    c.verified = verified;
    for (auto& [key, val] : found) {
        c.keys.push_back(CharPoly{key});
        c.reps.push_back(std::move(val.second));
    }
    return c;
}

}  // namespace

ClassCatalog enumerate_base(int n) {
    if (n > 6) throw Error("DimensionTooLarge", "base sweep supports n <= 6, got " + std::to_string(n));
    if (n < 2) throw Error("DimensionTooSmall", "n = " + std::to_string(n));
    int pairs = n * (n - 1) / 2;
    std::map<Key, std::pair<Origin, ChiralityMatrix>> found;
    for (uint32_t bits = 0; bits < (1u << pairs); ++bits) {
        MatrixBuilder b(n);
        int pos = 0;
        for (int i = 0; i < n; ++i)
            for (int k = i + 1; k < n; ++k) b.set(i, k, (bits >> pos++ & 1u) ? -1 : 1);
        ChiralityMatrix m = b.build();
        Key key = char_poly_modular(m).coeffs;
        if (!found.count(key)) found.emplace(key, std::make_pair(Origin{0, bits}, m));
    }
    return assemble(n, std::move(found), FilterSet{});
}

namespace {

struct Scanner {
    int n;  // parent dimension; the new index is n
    FilterSet filters;
    bool k5_restricted, p250_restricted;
    std::vector<std::array<int, 4>> quads;
    std::vector<uint32_t> quad_base;
    std::vector<std::array<int, 6>> sixes;

    Scanner(int n_, FilterSet f, FilterSet verified) : n(n_), filters(f) {
        k5_restricted = f.k5 && verified.k5;
        p250_restricted = f.p250 && verified.p250;
        if (k5_restricted)
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b)
                    for (int c = b + 1; c < n; ++c)
                        for (int d = c + 1; d < n; ++d) quads.push_back({a, b, c, d});
        if (p250_restricted && n >= 6) {
            std::array<int, 6> idx;
            for (int i = 0; i < 6; ++i) idx[i] = i;
            while (true) {
                sixes.push_back(idx);
                int i = 5;
                while (i >= 0 && idx[i] == n - 6 + i) --i;
                if (i < 0) break;
                ++idx[i];
                for (int j = i + 1; j < 6; ++j) idx[j] = idx[j - 1] + 1;
            }
        }
    }

    void prepare(const uint32_t* rows) {
        quad_base.resize(quads.size());
        for (size_t q = 0; q < quads.size(); ++q) {
            auto& s = quads[q];
            uint32_t r0 = rows[s[0]], r1 = rows[s[1]], r2 = rows[s[2]];
            // pair slots with the new index last: (a,b)0 (a,c)1 (a,d)2 (a,m)3 (b,c)4 (b,d)5 (b,m)6 (c,d)7 (c,m)8 (d,m)9
            quad_base[q] = (r0 >> s[1] & 1u) | (r0 >> s[2] & 1u) << 1 | (r0 >> s[3] & 1u) << 2 |
                           (r1 >> s[2] & 1u) << 4 | (r1 >> s[3] & 1u) << 5 | (r2 >> s[3] & 1u) << 7;
        }
    }

    // rows: candidate row masks of dimension n+1
    bool passes(const uint32_t* rows, uint32_t v) const {
        if (filters.k5) {
            if (k5_restricted) {
                for (size_t q = 0; q < quads.size(); ++q) {
                    auto& s = quads[q];
                    uint32_t key = quad_base[q] | (v >> s[0] & 1u) << 3 | (v >> s[1] & 1u) << 6 |
                                   (v >> s[2] & 1u) << 8 | (v >> s[3] & 1u) << 9;
                    int d = detail::det5_from_bits(key);
                    if (d == 4 || d == -4) return false;
                }
            } else {
                std::vector<uint32_t> r(rows, rows + n + 1);
                if (contains_k5(from_row_masks(r))) return false;
            }
        }
        if (filters.p250 && n + 1 >= 7) {
            if (p250_restricted) {
                int idx[7];
                idx[6] = n;
                for (auto& s : sixes) {
                    for (int i = 0; i < 6; ++i) idx[i] = s[i];
                    if (detail::p250_from_bits(detail::pair_bits(rows, idx, 7))) return false;
                }
            } else {
                std::vector<uint32_t> r(rows, rows + n + 1);
                if (contains_p250(from_row_masks(r))) return false;
            }
        }
        return true;
    }
};

}  // namespace

ClassCatalog extend(const ClassCatalog& catalog, FilterSet filters, int threads) {
    int n = catalog.n;
    if (n + 1 > kMaxDim) throw Error("DimensionTooLarge", "n = " + std::to_string(n + 1));
    if (threads <= 0) threads = (int)std::max(1u, std::thread::hardware_concurrency());
    Scanner proto(n, filters, catalog.verified);

    // work items: (parent, block of sign vectors)
    const uint32_t total = 1u << n;
    const uint32_t block = std::min<uint32_t>(total, 1u << 12);
    std::vector<std::pair<size_t, uint32_t>> work;
    for (size_t p = 0; p < catalog.reps.size(); ++p)
        for (uint32_t v0 = 0; v0 < total; v0 += block) work.emplace_back(p, v0);

    std::vector<std::map<Key, Origin>> partial(threads);
    std::atomic<size_t> next{0};
    auto worker = [&](int tid) {
        Scanner sc = proto;
        auto& out = partial[tid];
        size_t last_parent = (size_t)-1;
        std::vector<uint32_t> rows(n + 1);
        while (true) {
            size_t w = next.fetch_add(1);
            if (w >= work.size()) break;
            auto [p, v0] = work[w];
            const ChiralityMatrix& parent = catalog.reps[p];
            if (p != last_parent) {
                for (int i = 0; i < n; ++i) rows[i] = parent.row_mask(i);
                sc.prepare(rows.data());
                last_parent = p;
            }
            std::vector<uint32_t> cand(n + 1);
            for (uint32_t v = v0; v < v0 + block && v < total; ++v) {
                for (int i = 0; i < n; ++i) cand[i] = rows[i] | (v >> i & 1u) << n;
                cand[n] = v;
                if (!sc.passes(cand.data(), v)) continue;
                Key key = char_poly_modular(from_row_masks(cand)).coeffs;
                auto it = out.find(key);
                Origin o{p, v};
                if (it == out.end())
                    out.emplace(std::move(key), o);
                else if (o < it->second)
                    it->second = o;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker, t);
    worker(0);
    for (auto& th : pool) th.join();

    std::map<Key, Origin> merged;
    for (auto& part : partial)
        for (auto& [key, o] : part) {
            auto it = merged.find(key);
            if (it == merged.end())
                merged.emplace(key, o);
            else if (o < it->second)
                it->second = o;
        }
    std::map<Key, std::pair<Origin, ChiralityMatrix>> found;
    for (auto& [key, o] : merged) {
        const ChiralityMatrix& parent = catalog.reps[o.first];
        std::vector<uint32_t> cand(n + 1);
        for (int i = 0; i < n; ++i) cand[i] = parent.row_mask(i) | (o.second >> i & 1u) << n;
        cand[n] = o.second;
        found.emplace(key, std::make_pair(o, from_row_masks(cand)));
    }
    return assemble(n + 1, std::move(found), filters);
}

bool audit(const ClassCatalog& catalog, FilterSet filters) {
    for (const auto& m : catalog.reps) {
        if (filters.k5 && contains_k5(m)) return false;
        if (filters.p250 && contains_p250(m)) return false;
    }
    return true;
}

std::vector<Int128> determinant_spectrum(const ClassCatalog& catalog) {
    std::vector<Int128> out;
    for (const auto& m : catalog.reps) {
        Int128 d = determinant(m);
        out.push_back(d < 0 ? -d : d);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

CharPoly conference_poly(int c, int k) {
    // (x^2 - c)^k = sum_j C(k,j) (-c)^(k-j) x^(2j)
    CharPoly p;
    p.coeffs.assign(2 * k + 1, 0);
    Int128 binom = 1;
    for (int j = 0; j <= k; ++j) {
        Int128 pw = 1;
        for (int e = 0; e < k - j; ++e) pw *= -c;
        p.coeffs[2 * j] = binom * pw;
        binom = binom * (k - j) / (j + 1);
    }
    return p;
}

const std::vector<std::pair<int, size_t>>& theorem1_expected_counts() {
    static const std::vector<std::pair<int, size_t>> v = {{6, 16},  {7, 22},  {8, 51},  {9, 105}, {10, 172},
                                                          {11, 142}, {12, 61}, {13, 8},  {14, 5},  {15, 2},
                                                          {16, 1},  {17, 1},  {18, 1},  {19, 0}};
    return v;
}

namespace {

double since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

TheoremReport run_theorem1(int threads) {
    auto t0 = std::chrono::steady_clock::now();
    TheoremReport rep;
    rep.filters = FilterSet{true, false};
    rep.expected_poly = conference_poly(17, 9);
    ClassCatalog cat = enumerate_base(6);
    rep.counts.emplace_back(6, cat.size());
    while (cat.size() > 0 && cat.n < kMaxDim) {
        ClassCatalog next = extend(cat, rep.filters, threads);
        rep.counts.emplace_back(next.n, next.size());
        if (next.size() == 0) {
            rep.empty_at = next.n;
            rep.extremal_n = cat.n;
            rep.extremal = cat.reps;
            rep.extremal_polys = cat.keys;
        }
        cat = std::move(next);
    }
    rep.seconds = since(t0);
    std::string bad;
    if (rep.counts != theorem1_expected_counts()) bad += "class counts differ; ";
    if (rep.empty_at != 19) bad += "first empty size " + std::to_string(rep.empty_at) + "; ";
    if (rep.extremal.size() != 1 || rep.extremal_polys[0] != rep.expected_poly) bad += "extremal class mismatch; ";
    if (!bad.empty()) throw Error("CountMismatch", bad);
    return rep;
}

TheoremReport run_theorem2(int threads) {
    auto t0 = std::chrono::steady_clock::now();
    TheoremReport rep;
    rep.filters = FilterSet{true, true};
    rep.expected_poly = conference_poly(13, 7);
    ClassCatalog cat = extend(enumerate_base(6), rep.filters, threads);
    rep.counts.emplace_back(7, cat.size());
    while (cat.size() > 0 && cat.n < kMaxDim) {
        ClassCatalog next = extend(cat, rep.filters, threads);
        rep.counts.emplace_back(next.n, next.size());
        if (next.size() == 0) {
            rep.empty_at = next.n;
            rep.extremal_n = cat.n;
            rep.extremal = cat.reps;
            rep.extremal_polys = cat.keys;
        }
        cat = std::move(next);
    }
    rep.seconds = since(t0);
    std::string bad;
    if (rep.empty_at != 15) bad += "first empty size " + std::to_string(rep.empty_at) + "; ";
    if (rep.extremal_n != 14 || rep.extremal.size() != 1 || rep.extremal_polys[0] != rep.expected_poly)
        bad += "extremal class mismatch; ";
    if (!bad.empty()) throw Error("CountMismatch", bad);
    return rep;
}

}  // namespace tangle
