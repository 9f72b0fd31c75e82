#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace persistlab {

// Linear algebra over the two-element field. Every homological computation in
// the library reduces to rank, solve and kernel computations over F2.

class F2Vector {
public:
    F2Vector() = default;
    explicit F2Vector(std::size_t size);
    static F2Vector unit(std::size_t size, std::size_t index);
    static F2Vector from_bits(const std::vector<int>& bits);

    std::size_t size() const noexcept { return size_; }
    bool get(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool value = true) noexcept;
    void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    /// Grows (zero-filled) or truncates.
    void resize(std::size_t size);

    F2Vector& operator^=(const F2Vector& other);
    friend F2Vector operator^(F2Vector a, const F2Vector& b) { return a ^= b; }
    friend bool operator==(const F2Vector& a, const F2Vector& b) = default;

    bool is_zero() const noexcept;
    std::size_t count() const noexcept;
    /// Index of the lowest set bit, or size() when zero.
    std::size_t lowest() const noexcept;

    const std::vector<std::uint64_t>& words() const noexcept { return words_; }

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

class F2Matrix {
public:
    F2Matrix() = default;
    F2Matrix(std::size_t rows, std::size_t cols);

    static F2Matrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
    static F2Matrix identity(std::size_t n);
    /// Rows given as 0/1 integers; all rows must have equal length.
    static F2Matrix from_rows(const std::vector<std::vector<int>>& rows, std::size_t cols_if_empty = 0);
    static F2Matrix from_columns(const std::vector<F2Vector>& columns, std::size_t rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    bool get(std::size_t r, std::size_t c) const noexcept {
        return (data_[r * stride_ + (c >> 6)] >> (c & 63)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool value = true) noexcept;
    void flip(std::size_t r, std::size_t c) noexcept {
        data_[r * stride_ + (c >> 6)] ^= std::uint64_t{1} << (c & 63);
    }

    F2Vector row(std::size_t r) const;
    F2Vector column(std::size_t c) const;
    void set_column(std::size_t c, const F2Vector& v);
    /// rows[r] ^= rows[src]
    void add_row(std::size_t dst, std::size_t src) noexcept;
    void swap_rows(std::size_t a, std::size_t b) noexcept;

    F2Vector operator*(const F2Vector& x) const;
    F2Matrix operator*(const F2Matrix& other) const;
    F2Matrix& operator+=(const F2Matrix& other);
    friend F2Matrix operator+(F2Matrix a, const F2Matrix& b) { return a += b; }
    friend bool operator==(const F2Matrix& a, const F2Matrix& b) = default;

    F2Matrix transpose() const;
    F2Matrix select_columns(const std::vector<std::size_t>& cols) const;
    F2Matrix select_rows(const std::vector<std::size_t>& rows) const;
    /// [this | other]
    F2Matrix hstack(const F2Matrix& other) const;
    /// Block diagonal diag(this, other).
    F2Matrix direct_sum(const F2Matrix& other) const;

    bool is_zero() const noexcept;
    bool is_identity() const noexcept;

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t stride_ = 0;
    std::vector<std::uint64_t> data_;
};

/// Reduced row echelon form together with the pivot column of each nonzero row.
struct RowEchelon {
    F2Matrix reduced;
    std::vector<std::size_t> pivots;
};

RowEchelon row_echelon(F2Matrix a);

std::size_t rank(const F2Matrix& a);

/// Some x with a * x = b, or nullopt when the system is inconsistent.
/// Throws std::invalid_argument when b.size() != a.rows().
std::optional<F2Vector> solve(const F2Matrix& a, const F2Vector& b);

/// Columns span ker(a); cols() == a.cols() - rank(a).
F2Matrix kernel_basis(const F2Matrix& a);

/// Columns form a basis of the column space of a (a subset of a's columns).
F2Matrix column_space_basis(const F2Matrix& a);

std::optional<F2Matrix> inverse(const F2Matrix& a);

/// Incrementally grown basis of a subspace of F2^dim which remembers how each
/// reduced vector decomposes over the accepted generators.
class F2Span {
public:
    explicit F2Span(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const noexcept { return dim_; }
    /// Number of accepted (independent) generators.
    std::size_t size() const noexcept { return reduced_.size(); }

    /// Adds v when it is independent of the current span; returns whether it was accepted.
    bool insert(const F2Vector& v);
    bool contains(const F2Vector& v) const;
    /// Coefficients of v over the accepted generators (in acceptance order),
    /// or nullopt when v lies outside the span.
    std::optional<F2Vector> coordinates(const F2Vector& v) const;

private:
    std::size_t dim_;
    std::vector<F2Vector> reduced_;
    std::vector<std::size_t> pivots_;
    std::vector<F2Vector> combos_;
};

}  // namespace persistlab
