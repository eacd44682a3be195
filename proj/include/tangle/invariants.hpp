#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "tangle/seidel.hpp"

namespace tangle {

// Square integer matrix stored row-major.
struct IntMatrix {
    int n = 0;
    std::vector<long long> a;

    IntMatrix() = default;
    explicit IntMatrix(int dim) : n(dim), a((size_t)dim * dim, 0) {}
    static IntMatrix from_rows(const std::vector<std::vector<int>>& rows);

    long long& operator()(int i, int k) { return a[(size_t)i * n + k]; }
    long long operator()(int i, int k) const { return a[(size_t)i * n + k]; }
    std::vector<std::vector<int>> rows() const;
    bool operator==(const IntMatrix&) const = default;
};

using QMatrix = IntMatrix;

class RingMatrix {
public:
    RingMatrix() = default;
    // Throws BadDiagonal, BadEntry (negative or above C(n-2,2)).
    static RingMatrix validate(const std::vector<std::vector<int>>& raw);
    static RingMatrix zero(int n);

    int n() const { return m_.n; }
    long long operator()(int i, int k) const { return m_(i, k); }
    const IntMatrix& matrix() const { return m_; }
    std::vector<std::vector<int>> rows() const { return m_.rows(); }
    int zero_rows() const;
    bool operator==(const RingMatrix&) const = default;

private:
    friend class RingBuilder;
    IntMatrix m_;
};

class RingBuilder {
public:
    explicit RingBuilder(int n) { r_.m_ = IntMatrix(n); }
    void add(int i, int k, long long v = 1) { r_.m_(i, k) += v; }
    const RingMatrix& build() const { return r_; }

private:
    RingMatrix r_;
};

using RingVector = std::vector<long long>;

QMatrix q_matrix(const ChiralityMatrix& p);
QMatrix q_matrix_closed_form(const ChiralityMatrix& p);

RingVector ring_vector(const RingMatrix& r);

mpq_class wp(const ChiralityMatrix& p, const RingMatrix& r);
mpq_class wp_ring(const ChiralityMatrix& p, const RingMatrix& r);

bool complement_identity_check(const ChiralityMatrix& p);

// Round half away from zero to `places` decimals, always printing exactly `places` digits.
std::string render_decimal(const mpq_class& q, int places = 10);

// Pads a printed decimal with zeros to `places` digits ("7.8" -> "7.8000000000").
std::string pad_decimal(const std::string& s, int places = 10);

}  // namespace tangle
