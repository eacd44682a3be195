#pragma once

// Reference implementations used only by the tests. They share no code with the library
// beyond the matrix and line types.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tangle/geometry.hpp"
#include "tangle/seidel.hpp"

namespace oracle {

using Rows = std::vector<std::vector<int>>;

// cofactor expansion along the first row, fine up to n = 9
mpz_class laplace_det(const Rows& a);

// Gaussian elimination over the rationals
mpq_class rational_det(const Rows& a);

// det(xI - A) by Faddeev-LeVerrier over the rationals; coefficients low to high
std::vector<mpz_class> faddeev_leverrier(const Rows& a);

// The three shortest-distance directions from line i toward j, m, s, projected on the
// plane orthogonal to n_i, are not contained in any closed half-plane.
bool encages_half_plane(const std::vector<tangle::OrientedLine>& lines, int i, int j, int m, int s);

// Number of switching classes (permutation plus line reversal) of n x n chirality
// matrices, by orbit flooding over all 2^(n(n-1)/2) matrices. With k5_free, classes
// containing a 5 x 5 principal submatrix of |det| 4 are dropped.
struct OrbitCount {
    size_t classes = 0;
    std::vector<long long> abs_dets;  // sorted distinct |det| over classes
};
OrbitCount switching_classes(int n, bool k5_free);

tangle::ChiralityMatrix random_matrix(int n, std::mt19937_64& rng);

Rows rows_of(const tangle::ChiralityMatrix& p);

}  // namespace oracle
