#pragma once

#include <string>
#include <vector>

#include "tangle/seidel.hpp"

namespace tangle {

struct FilterSet {
    bool k5 = false;
    bool p250 = false;
    std::string name() const;  // "none", "k5", "k5,p250", "p250"
    static FilterSet parse(const std::string& s);
    bool operator==(const FilterSet&) const = default;
};

struct ClassCatalog {
    int n = 0;
    std::vector<ChiralityMatrix> reps;
    std::vector<CharPoly> keys;
    // filters every representative is known to pass on all subsets
    FilterSet verified;
    size_t size() const { return reps.size(); }
};

ClassCatalog enumerate_base(int n);

// threads = 0 uses the hardware concurrency
ClassCatalog extend(const ClassCatalog& catalog, FilterSet filters, int threads = 0);

// Full re-scan: every representative passes every filter on all subsets.
bool audit(const ClassCatalog& catalog, FilterSet filters);

std::vector<Int128> determinant_spectrum(const ClassCatalog& catalog);

struct TheoremReport {
    FilterSet filters;
    std::vector<std::pair<int, size_t>> counts;  // (n, classes)
    int empty_at = 0;                            // first n with no classes, 0 if never
    int extremal_n = 0;
    std::vector<ChiralityMatrix> extremal;       // representatives at extremal_n
    std::vector<CharPoly> extremal_polys;
    CharPoly expected_poly;
    double seconds = 0;
};

// K5 chain from n = 6 until empty; checks counts 16, 22, 51, ..., 0 and the (x^2-17)^9 class.
// Throws CountMismatch on any deviation.
TheoremReport run_theorem1(int threads = 0);

// K5 and P250 chain from n = 7; one class at n = 14 with (x^2-13)^7, none at n = 15.
TheoremReport run_theorem2(int threads = 0);

// (x^2 - c)^k expanded
CharPoly conference_poly(int c, int k);

const std::vector<std::pair<int, size_t>>& theorem1_expected_counts();

}  // namespace tangle
