#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace tangle {

using Int128 = __int128;

std::string to_string(Int128 v);

constexpr int kMaxDim = 32;

// Symmetric matrix with zero diagonal and +-1 elsewhere.
class ChiralityMatrix {
public:
    ChiralityMatrix() = default;

    // Throws NonSymmetric, BadDiagonal, BadEntry(i,k); also DimensionTooSmall / DimensionTooLarge
    // outside 2..32.
    static ChiralityMatrix validate(const std::vector<std::vector<int>>& raw);

    int n() const { return n_; }
    int operator()(int i, int k) const { return a_[i * n_ + k]; }
    std::vector<std::vector<int>> rows() const;

    // bit k of row_mask(i) is set iff entry (i,k) is -1
    uint32_t row_mask(int i) const;

    auto operator<=>(const ChiralityMatrix&) const = default;

private:
    friend class MatrixBuilder;
    int n_ = 0;
    std::vector<int8_t> a_;
};

// Unchecked construction for internal code that maintains the invariants itself.
class MatrixBuilder {
public:
    explicit MatrixBuilder(int n);
    explicit MatrixBuilder(const ChiralityMatrix& p);
    void set(int i, int k, int v);  // sets both (i,k) and (k,i)
    int get(int i, int k) const { return m_.a_[i * m_.n_ + k]; }
    ChiralityMatrix build() const { return m_; }

private:
    ChiralityMatrix m_;
};

// Masks as produced by row_mask(); bits outside 0..n-1 ignored.
ChiralityMatrix from_row_masks(const std::vector<uint32_t>& masks);

ChiralityMatrix flip_orientation(const ChiralityMatrix& p, int i);
ChiralityMatrix permute(const ChiralityMatrix& p, const std::vector<int>& perm);
ChiralityMatrix mirror(const ChiralityMatrix& p);
ChiralityMatrix switch_entry(const ChiralityMatrix& p, int i, int k);

Int128 determinant(const ChiralityMatrix& p);

// det(xI - P), coeffs[k] is the coefficient of x^k, coeffs[n] = 1
struct CharPoly {
    std::vector<Int128> coeffs;
    auto operator<=>(const CharPoly&) const = default;
    Int128 eval(Int128 x) const;
    std::string to_string() const;  // "x^7 - 21x^5 + ..." highest power first
};

CharPoly char_poly(const ChiralityMatrix& p);

// Same polynomial, computed by Hessenberg reduction modulo two 61-bit primes.
CharPoly char_poly_modular(const ChiralityMatrix& p);

std::vector<std::pair<int, int>> ee_pairs(const ChiralityMatrix& p);

// Text format: n on the first line, then n rows of n integers.
std::vector<std::vector<int>> parse_int_matrix(std::istream& in, const std::string& origin);
std::vector<std::vector<int>> read_int_matrix(const std::string& path);
ChiralityMatrix read_matrix(const std::string& path);
std::string format_matrix(const std::vector<std::vector<int>>& m);

}  // namespace tangle
