#pragma once

#include <gmpxx.h>

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tangle/geometry.hpp"
#include "tangle/invariants.hpp"
#include "tangle/seidel.hpp"

namespace tangle {

struct CatalogEntry {
    std::string name;
    std::string source;
    std::string file;
    std::optional<LineConfiguration> config;
    std::vector<std::array<std::string, 4>> line_text;  // t, p, z, r exactly as written
    std::optional<long long> expected_det;
    std::optional<ChiralityMatrix> expected_P;
    std::optional<RingMatrix> expected_R;
    std::optional<std::string> expected_wp;
    std::optional<std::string> expected_wp_mirror;

    bool operator==(const CatalogEntry& o) const;
};

CatalogEntry parse_entry(const std::string& text, const std::string& origin);

// A directory (every *.json inside, by file name) or a single file.
// Throws ParseError(file, location) and DuplicateName.
std::vector<CatalogEntry> ingest(const std::string& path);

std::string write_entry(const CatalogEntry& e);

struct VerificationRow {
    std::string name;
    double tangency_max = 0;
    bool tangency_ok = false;
    std::optional<bool> p_match, r_match, det_match, wp_match, wp_mirror_match;
    std::string wp, wp_mirror;
    std::string error;  // non-empty when a geometry error stopped the entry
    bool pass() const;
};

struct VerificationReport {
    AngleConvention convention = AngleConvention::Polar;
    std::vector<VerificationRow> rows;
    bool pass() const;
    std::string to_text() const;
};

VerificationRow verify_entry(const CatalogEntry& entry, AngleConvention conv);

// Calibrates on a89 when present (else the first entry) and verifies every entry.
VerificationReport verify_catalog(const std::vector<CatalogEntry>& entries, int threads = 0);

struct InvariantRow {
    std::optional<long long> det;
    std::string name;
    std::string value;
    std::string mirror_name;
    std::string mirror_value;
};

// TSV with a header; recognised columns: det, name, wp, mirror, wp_mirror.
std::vector<InvariantRow> read_invariant_table(const std::string& path);

// Simplest rational consistent with a printed decimal read as either rounded or truncated:
// magnitude in [v - u/2, v + u), u = 10^-(digits after the point).
mpq_class reconstruct_decimal(const std::string& printed);

struct PairsCheckReport {
    std::vector<std::string> lines;
};

// Sums e9 and d9 to 40.4 and checks the declared equal groups; throws TableMismatch.
PairsCheckReport invariant_pairs_check(const std::vector<InvariantRow>& eight_knots);

const std::vector<std::vector<std::string>>& declared_equal_groups();

struct EqualRadiiReport {
    std::vector<std::string> equal;        // all radii equal within 1e-6
    std::vector<std::string> near_equal;   // all radii within 10% of the pivot, not equal
    std::vector<std::string> violations;   // equal radii together with EE pairs
    std::vector<std::string> near_with_ee;
};

EqualRadiiReport equal_radii_screen(const std::vector<CatalogEntry>& entries);

}  // namespace tangle
