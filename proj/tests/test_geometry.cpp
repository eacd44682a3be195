#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "tangle/catalog.hpp"
#include "tangle/error.hpp"
#include "tangle/geometry.hpp"

using namespace tangle;

namespace {

const std::vector<CatalogEntry>& catalog() {
    static const auto c = ingest(std::string(TANGLE_DATA_DIR) + "/catalog/configs");
    return c;
}

const CatalogEntry& entry(const std::string& name) {
    for (auto& e : catalog())
        if (e.name == name) return e;
    throw std::runtime_error("missing " + name);
}

OrientedLine line(Vec3 p, Vec3 d) { return {p, d.normalized(), 1.0}; }

}  // namespace

TEST_CASE("distance between skew axes") {
    auto a = line({0, 0, 0}, {1, 0, 0});
    auto b = line({0, 0, 2}, {0, 1, 0});
    CHECK(pair_distance(a, b) == doctest::Approx(2.0));
    auto c = line({0, 5, 0}, {2, 0, 0});
    CHECK_THROWS_AS(pair_distance(a, c), Error);
}

TEST_CASE("two lines with sigma +1 give P01 = +1") {
    LineConfiguration cfg;
    cfg.lines.push_back({0.5, 0.3, 0.0, 1.0, 1});
    for (auto c : all_conventions()) {
        auto lines = realize(cfg, c);
        CHECK(verify_tangency(lines).pass);
        CHECK(chirality_from_geometry(lines)(0, 1) == 1);
    }
    cfg.lines[0].sigma = -1;
    CHECK(chirality_from_geometry(realize(cfg, AngleConvention::Polar))(0, 1) == -1);
}

TEST_CASE("direction along the pivot is rejected") {
    LineConfiguration cfg;
    cfg.lines.push_back({0.0, 0.0, 0.0, 1.0, 1});
    try {
        realize(cfg, AngleConvention::Polar);
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(e.kind() == "DirectionParallelToPivot");
        CHECK(e.indices() == std::vector<int>{1});
    }
}

TEST_CASE("calibration on a89") {
    CHECK(calibrate_convention(*entry("a89").config) == AngleConvention::Polar);
    CHECK(calibrate_convention(*entry("a0a").config) == AngleConvention::Polar);
    try {
        calibrate_convention(LineConfiguration{});
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(e.kind() == "Ambiguous");
    }
    // a single tilted line is tangent under every convention
    LineConfiguration one;
    one.lines.push_back({0.5, 0.3, 0.0, 1.0, 1});
    CHECK_THROWS_AS(calibrate_convention(one), Error);
}

TEST_CASE("no convention fits a perturbed configuration") {
    LineConfiguration cfg = *entry("a89").config;
    cfg.lines[2].z += 0.5;
    try {
        calibrate_convention(cfg);
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(e.kind() == "NoConventionFits");
    }
}

TEST_CASE("a89 geometry reproduces P and R") {
    const auto& e = entry("a89");
    auto lines = realize(*e.config, AngleConvention::Polar);
    auto t = verify_tangency(lines);
    CHECK(t.pass);
    CHECK(t.max_residual <= 1e-5);
    CHECK(t.pairs.size() == 21);
    CHECK(chirality_from_geometry(lines) == *e.expected_P);
    CHECK(ring_matrix_from_geometry(lines) == *e.expected_R);
}

TEST_CASE("shortest vectors point toward the other line") {
    const auto& e = entry("a89");
    auto lines = realize(*e.config, AngleConvention::Polar);
    for (int i = 0; i < 7; ++i) {
        auto r = shortest_unit_vectors(lines, i);
        CHECK(r.size() == 6);
        for (auto& [k, v] : r) {
            CHECK(v.norm() == doctest::Approx(1.0));
            CHECK(std::abs(v.dot(lines[i].direction)) < 1e-9);
            CHECK(std::abs(v.dot(lines[k].direction)) < 1e-9);
            CHECK((lines[k].point - lines[i].point).dot(v) > 0);
            // r_ki = -r_ik
            CHECK((shortest_unit_vectors(lines, k).at(i) + v).norm() < 1e-9);
        }
    }
}

TEST_CASE("encaging agrees with the half-plane oracle on every configuration") {
    size_t checked = 0;
    for (auto& e : catalog()) {
        if (!e.config) continue;
        auto lines = realize(*e.config, AngleConvention::Polar);
        int n = (int)lines.size();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int m = j + 1; m < n; ++m)
                    for (int s = m + 1; s < n; ++s) {
                        if (i == j || i == m || i == s) continue;
                        CHECK(encages(lines, i, j, m, s) == oracle::encages_half_plane(lines, i, j, m, s));
                        ++checked;
                    }
    }
    CHECK(checked > 10000);
}

TEST_CASE("encaging is symmetric in the triple and rejects bad indices") {
    const auto& e = entry("a89");
    auto lines = realize(*e.config, AngleConvention::Polar);
    CHECK(encages(lines, 0, 1, 2, 3) == encages(lines, 0, 3, 1, 2));
    CHECK(encages(lines, 0, 1, 2, 3) == encages(lines, 0, 2, 3, 1));
    CHECK_THROWS_AS(encages(lines, 0, 1, 2, 7), Error);
    CHECK_THROWS_AS(encages(lines, 0, 1, 1, 2), Error);
}

TEST_CASE("ring matrix rows are divisible by three on every configuration") {
    for (auto& e : catalog()) {
        if (!e.config) continue;
        auto r = ring_matrix_from_geometry(realize(*e.config, AngleConvention::Polar));
        CHECK_NOTHROW(ring_vector(r));
    }
}

TEST_CASE("parallel pair needs a fallback") {
    std::vector<OrientedLine> lines = {line({0, 0, 0}, {0, 0, 1}), line({2, 0, 0}, {0, 0, 1})};
    try {
        chirality_from_geometry(lines);
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(e.kind() == "ParallelPair");
        CHECK(e.indices() == std::vector<int>{0, 1});
    }
    auto fb = ChiralityMatrix::validate({{0, -1}, {-1, 0}});
    CHECK(chirality_from_geometry(lines, &fb) == fb);
    auto t = verify_tangency(lines);
    CHECK(t.pairs[0].parallel);
    CHECK(t.pass);
}
