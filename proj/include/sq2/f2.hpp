#pragma once

// Exact linear algebra over the two-element field. Rows are packed into
// 64-bit words; every row operation is a word-wise XOR.

#include <cstdint>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace sq2 {

class F2Vector {
public:
    F2Vector() = default;
    explicit F2Vector(std::size_t length) : len_(length), words_((length + 63) / 64, 0) {}
    F2Vector(std::size_t length, std::initializer_list<int> bits);

    std::size_t size() const { return len_; }
    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool b) {
        std::uint64_t mask = std::uint64_t(1) << (i & 63);
        if (b) words_[i >> 6] |= mask; else words_[i >> 6] &= ~mask;
    }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

    F2Vector& operator^=(const F2Vector& other);
    friend F2Vector operator^(F2Vector a, const F2Vector& b) { a ^= b; return a; }

    bool any() const;
    bool is_zero() const { return !any(); }
    std::size_t popcount() const;
    // Index of the first set bit, or size() if none.
    std::size_t first_set() const;
    bool dot(const F2Vector& other) const;

    bool operator==(const F2Vector&) const = default;

    std::string to_string() const;

private:
    std::size_t len_ = 0;
    std::vector<std::uint64_t> words_;
    friend class F2Matrix;
};

struct RrefResult;

class F2Matrix {
public:
    F2Matrix() = default;
    F2Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows, F2Vector(cols)) {}
    F2Matrix(std::size_t rows, std::size_t cols, std::initializer_list<int> entries);

    static F2Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool get(std::size_t i, std::size_t j) const { return data_[i].get(j); }
    void set(std::size_t i, std::size_t j, bool b) { data_[i].set(j, b); }
    void flip(std::size_t i, std::size_t j) { data_[i].flip(j); }

    const F2Vector& row(std::size_t i) const { return data_[i]; }
    F2Vector& row(std::size_t i) { return data_[i]; }

    F2Vector mul(const F2Vector& v) const;
    F2Matrix mul(const F2Matrix& other) const;
    F2Matrix transpose() const;
    F2Matrix operator^(const F2Matrix& other) const;

    void append_row(const F2Vector& r);

    RrefResult rref() const;
    std::size_t rank() const;
    bool is_zero() const;
    bool is_invertible() const { return rows_ == cols_ && rank() == rows_; }

    // Independent vectors spanning {v : M v = 0}; count = cols - rank.
    std::vector<F2Vector> kernel_basis() const;

    // Some x with M x = b, or nullopt when the system is inconsistent.
    // Throws std::invalid_argument on a length mismatch.
    std::optional<F2Vector> solve(const F2Vector& b) const;

    bool operator==(const F2Matrix&) const = default;

    std::string to_string() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<F2Vector> data_;
};

struct RrefResult {
    F2Matrix mat;
    std::vector<std::size_t> pivots;
};

// Row space of `rows` as an rref basis; useful as an incremental span.
class F2Span {
public:
    explicit F2Span(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return rows_.size(); }

    // Reduce v against the current basis; the remainder is the normal form.
    F2Vector reduce(F2Vector v) const;
    bool contains(const F2Vector& v) const { return reduce(v).is_zero(); }

    // Insert v; returns true if it enlarged the span.
    bool insert(F2Vector v);

    // Coordinates of v in terms of the inserted generators (in insertion
    // order, only counting the ones that enlarged the span), or nullopt.
    std::optional<F2Vector> coordinates(const F2Vector& v) const;

private:
    std::size_t dim_;
    std::size_t ngen_ = 0;                     // generators that enlarged the span
    std::vector<F2Vector> rows_;               // echelon basis
    std::vector<std::size_t> pivot_of_;        // pivot column of rows_[i]
    std::vector<std::vector<bool>> combo_;     // rows_[i] as a combination of generators
};

}  // namespace sq2
