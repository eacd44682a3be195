#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "oracles.hpp"
#include "tangle/enumeration.hpp"
#include "tangle/error.hpp"
#include "tangle/forbidden.hpp"

using namespace tangle;

namespace {

bool k5_oracle(const ChiralityMatrix& p) {
    int n = p.n();
    for (int mask = 0; mask < (1 << n); ++mask) {
        if (__builtin_popcount(mask) != 5) continue;
        std::vector<int> v;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1) v.push_back(i);
        oracle::Rows sub(5, std::vector<int>(5));
        for (int x = 0; x < 5; ++x)
            for (int y = 0; y < 5; ++y) sub[x][y] = p(v[x], v[y]);
        mpz_class d = oracle::laplace_det(sub);
        if (d == 4 || d == -4) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("5x5 determinant table matches cofactor expansion") {
    for (uint32_t b = 0; b < 1024; ++b) {
        int d = detail::det5_from_bits(b);
        oracle::Rows a(5, std::vector<int>(5, 0));
        int pos = 0;
        for (int i = 0; i < 5; ++i)
            for (int k = i + 1; k < 5; ++k) a[i][k] = a[k][i] = (b >> pos++ & 1) ? -1 : 1;
        CHECK(mpz_class(d) == oracle::laplace_det(a));
    }
}

TEST_CASE("32 switch forms of K5") {
    auto forms = k5_switch_forms();
    CHECK(forms.size() == 32);
    for (auto& f : forms) CHECK(std::abs((long long)determinant(f)) == 4);
}

TEST_CASE("K5 witness") {
    auto w = contains_k5(k5_matrix());
    REQUIRE(w);
    CHECK(w->to_string() == "K5 0 1 2 3 4 det=4");
    auto m = contains_k5(mirror(k5_matrix()));
    REQUIRE(m);
    CHECK(m->det == -4);
}

TEST_CASE("K5 detection agrees with oracles on random matrices") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 300; ++t) {
        int n = 5 + (int)(rng() % 5);
        auto p = oracle::random_matrix(n, rng);
        bool fast = contains_k5(p).has_value();
        CHECK(fast == contains_k5_by_forms(p).has_value());
        CHECK(fast == k5_oracle(p));
        if (fast) {
            auto w = contains_k5(p);
            CHECK(w->indices.size() == 5);
            CHECK(std::is_sorted(w->indices.begin(), w->indices.end()));
        }
    }
}

TEST_CASE("restricted K5 scan only reports subsets through the index") {
    std::mt19937_64 rng(32);
    for (int t = 0; t < 100; ++t) {
        auto p = oracle::random_matrix(8, rng);
        int v = (int)(rng() % 8);
        auto w = contains_k5(p, v);
        if (w) CHECK(std::find(w->indices.begin(), w->indices.end(), v) != w->indices.end());
    }
    CHECK_THROWS_AS(contains_k5(k5_matrix(), 5), Error);
}

TEST_CASE("P250 representative") {
    auto p = p250_representative();
    CHECK(p.n() == 7);
    CHECK(determinant(p) == 250);
    CHECK(!contains_k5(p));
    CHECK(ee_pairs(p).size() == 1);
    auto w = contains_p250(p);
    REQUIRE(w);
    CHECK(w->det == 250);
    CHECK(w->to_string() == "P250 0 1 2 3 4 5 6 det=250");
    // switching and relabeling keep it detectable, as does the mirror
    CHECK(contains_p250(flip_orientation(permute(p, {3, 1, 6, 0, 5, 2, 4}), 2)));
    CHECK(contains_p250(mirror(p)));
    CHECK(!contains_p250(k5_matrix()));
}

TEST_CASE("P250 found inside larger matrices") {
    auto p = p250_representative();
    std::mt19937_64 rng(33);
    for (int t = 0; t < 20; ++t) {
        int n = 8 + (int)(rng() % 3);
        auto big = oracle::random_matrix(n, rng);
        MatrixBuilder b(big);
        for (int i = 0; i < 7; ++i)
            for (int k = i + 1; k < 7; ++k) b.set(i + 1, k + 1, p(i, k));
        auto m = b.build();
        auto w = contains_p250(m);
        REQUIRE(w);
        CHECK(std::abs(w->det) == 250);
    }
}

TEST_CASE("EE switch property") {
    auto p = p250_representative();
    auto rep = ee_switch_property(p);
    CHECK(rep.det_before == 250);
    CHECK(rep.rows.size() == 1);
    CHECK(!rep.any_k5());
    std::mt19937_64 rng(35);
    auto q = oracle::random_matrix(7, rng);
    while (!ee_pairs(q).empty()) q = oracle::random_matrix(7, rng);
    CHECK_THROWS_AS(ee_switch_property(q), Error);
}

TEST_CASE("radii determinant") {
    auto k5 = k5_matrix();
    std::vector<mpq_class> ones(5, mpq_class(1));
    // equal radii give 2^n det P
    CHECK(radii_determinant(k5, ones) == 32 * 4);
    CHECK_THROWS_AS(radii_determinant(k5, std::vector<mpq_class>(4, 1)), Error);
    std::vector<mpq_class> neg = ones;
    neg[2] = -1;
    try {
        radii_determinant(k5, neg);
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(e.kind() == "NegativeRadius");
        CHECK(e.indices() == std::vector<int>{2});
    }
    std::mt19937_64 rng(34);
    for (int t = 0; t < 30; ++t) {
        auto p = oracle::random_matrix(6, rng);
        std::vector<mpq_class> r;
        for (int i = 0; i < 6; ++i) r.emplace_back((long)(rng() % 9), (unsigned long)(1 + rng() % 5));
        for (auto& q : r) q.canonicalize();
        // compare against the rational determinant of the scaled matrix
        mpq_class want;
        {
            std::vector<std::vector<mpq_class>> a(6, std::vector<mpq_class>(6));
            for (int i = 0; i < 6; ++i)
                for (int k = 0; k < 6; ++k) a[i][k] = i == k ? mpq_class(0) : mpq_class(p(i, k) * (r[i] + r[k]));
            // Laplace over rationals, 6! terms
            std::vector<int> perm(6);
            std::iota(perm.begin(), perm.end(), 0);
            want = 0;
            do {
                int inv = 0;
                for (int x = 0; x < 6; ++x)
                    for (int y = x + 1; y < 6; ++y) inv += perm[x] > perm[y];
                mpq_class term = inv % 2 ? -1 : 1;
                for (int x = 0; x < 6; ++x) term *= a[x][perm[x]];
                want += term;
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        CHECK(radii_determinant(p, r) == want);
    }
}

TEST_CASE("K5 oracle count on n = 7") {
    auto c7 = extend(enumerate_base(6), FilterSet{});
    size_t free = 0;
    for (auto& m : c7.reps) {
        bool a = contains_k5(m).has_value();
        CHECK(a == k5_oracle(m));
        free += !a;
    }
    CHECK(free == 22);
}
