#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tangle/seidel.hpp"

namespace tangle {

enum class WitnessKind { K5, P250 };

struct SubmatrixWitness {
    std::vector<int> indices;
    WitnessKind kind = WitnessKind::K5;
    long long det = 0;
    std::string to_string() const;  // "K5 0 2 5 8 11 det=-4"
};

ChiralityMatrix k5_matrix();
std::vector<ChiralityMatrix> k5_switch_forms();

std::optional<SubmatrixWitness> contains_k5(const ChiralityMatrix& p, std::optional<int> restrict_to = std::nullopt);
std::optional<SubmatrixWitness> contains_p250(const ChiralityMatrix& p, std::optional<int> restrict_to = std::nullopt);

// Oracle: a 5-subset is K5 iff its principal submatrix equals one of the 32 switch forms.
std::optional<SubmatrixWitness> contains_k5_by_forms(const ChiralityMatrix& p);

ChiralityMatrix p250_representative();

struct EESwitchRow {
    int i = 0, k = 0;
    long long det_after = 0;
    std::optional<SubmatrixWitness> k5_after;
};

struct EESwitchReport {
    long long det_before = 0;
    std::vector<EESwitchRow> rows;
    bool any_k5() const;
    bool all_k5() const;
};

EESwitchReport ee_switch_property(const ChiralityMatrix& p);

mpq_class radii_determinant(const ChiralityMatrix& p, const std::vector<mpq_class>& r);

// Low-level tables shared with the enumeration hot path.
namespace detail {
// 5x5 principal submatrix, 10 sign bits in pair order (0,1),(0,2),...,(3,4); bit set = -1.
int8_t det5_from_bits(uint32_t bits);
// 7x7 principal submatrix, 21 sign bits in pair order; true iff |det| = 250 and no K5 inside.
bool p250_from_bits(uint32_t bits);
// pair bits of the principal submatrix on `idx` built from row masks
uint32_t pair_bits(const uint32_t* rows, const int* idx, int k);
}  // namespace detail

}  // namespace tangle
