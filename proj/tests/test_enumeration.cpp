#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "oracles.hpp"
#include "tangle/enumeration.hpp"
#include "tangle/error.hpp"
#include "tangle/forbidden.hpp"

using namespace tangle;

TEST_CASE("filter names") {
    CHECK(FilterSet::parse("k5") == FilterSet{true, false});
    CHECK(FilterSet::parse("k5,p250") == FilterSet{true, true});
    CHECK(FilterSet::parse("none") == FilterSet{});
    CHECK(FilterSet{true, true}.name() == "k5,p250");
    CHECK_THROWS_AS(FilterSet::parse("k6"), Error);
}

TEST_CASE("base counts match orbit flooding") {
    size_t want[] = {0, 0, 1, 2, 3, 7, 16};
    for (int n = 2; n <= 6; ++n) {
        auto c = enumerate_base(n);
        CHECK(c.size() == want[n]);
        CHECK(oracle::switching_classes(n, false).classes == want[n]);
    }
    CHECK_THROWS_AS(enumerate_base(7), Error);
    CHECK_THROWS_AS(enumerate_base(1), Error);
}

TEST_CASE("n = 7 classes match orbit flooding") {
    auto all = oracle::switching_classes(7, false);
    auto free = oracle::switching_classes(7, true);
    auto c = extend(enumerate_base(6), FilterSet{});
    auto k = extend(enumerate_base(6), FilterSet{true, false});
    CHECK(c.size() == all.classes);
    CHECK(k.size() == free.classes);
    CHECK(c.size() == 54);
    CHECK(k.size() == 22);
    auto spec = determinant_spectrum(c);
    std::vector<long long> got(spec.begin(), spec.end());
    CHECK(got == all.abs_dets);
    auto kspec = determinant_spectrum(k);
    std::vector<long long> kgot(kspec.begin(), kspec.end());
    CHECK(kgot == free.abs_dets);
}

TEST_CASE("n = 2 spectrum") {
    auto s = determinant_spectrum(enumerate_base(2));
    CHECK(s == std::vector<Int128>{1});
}

TEST_CASE("catalog keys are sorted and distinct") {
    auto c = extend(enumerate_base(6), FilterSet{true, false});
    c = extend(c, FilterSet{true, false});
    CHECK(c.size() == 51);
    for (size_t i = 0; i + 1 < c.size(); ++i) CHECK(c.keys[i] < c.keys[i + 1]);
    for (size_t i = 0; i < c.size(); ++i) CHECK(char_poly(c.reps[i]) == c.keys[i]);
    CHECK(audit(c, FilterSet{true, false}));
}

TEST_CASE("extension is deterministic across thread counts") {
    auto base = extend(enumerate_base(6), FilterSet{true, false});
    auto a = extend(base, FilterSet{true, false}, 1);
    auto b = extend(base, FilterSet{true, false}, 4);
    CHECK(a.reps == b.reps);
    CHECK(a.keys == b.keys);
}

TEST_CASE("representatives are pairwise dissimilar under random transforms") {
    auto c = extend(enumerate_base(6), FilterSet{});
    std::mt19937_64 rng(41);
    for (int t = 0; t < 10000; ++t) {
        size_t i = rng() % c.size();
        auto q = c.reps[i];
        std::vector<int> perm(7);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        q = permute(q, perm);
        for (int v = 0; v < 7; ++v)
            if (rng() & 1) q = flip_orientation(q, v);
        for (size_t j = 0; j < c.size(); ++j)
            if (j != i) CHECK_FALSE(q == c.reps[j]);
    }
}

TEST_CASE("audit detects an unfiltered catalog") {
    auto c = extend(enumerate_base(6), FilterSet{});
    CHECK_FALSE(audit(c, FilterSet{true, false}));
}

TEST_CASE("conference polynomial") {
    auto p = conference_poly(13, 7);
    CHECK(p.coeffs.size() == 15);
    CHECK(p.coeffs[14] == 1);
    CHECK(p.coeffs[0] == -(Int128)62748517);
    CHECK(char_poly(read_matrix(std::string(TANGLE_DATA_DIR) + "/prototypes/p14.mat")) == p);
    CHECK(char_poly(read_matrix(std::string(TANGLE_DATA_DIR) + "/prototypes/p18.mat")) == conference_poly(17, 9));
}

TEST_CASE("determinant parity of small catalogs") {
    auto c7 = extend(enumerate_base(6), FilterSet{});
    for (auto& m : c7.reps) CHECK(((long long)determinant(m) % 4 + 4) % 4 == 2);
    auto k8 = extend(extend(enumerate_base(6), FilterSet{true, false}), FilterSet{true, false});
    for (auto& m : k8.reps) CHECK(((long long)determinant(m) % 2 + 2) % 2 == 1);
}
