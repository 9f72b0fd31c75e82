#include "persistlab/f2_matrix.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace persistlab {

namespace {

constexpr std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

}  // namespace

// ---------------------------------------------------------------- F2Vector

F2Vector::F2Vector(std::size_t size) : size_(size), words_(words_for(size), 0) {}

F2Vector F2Vector::unit(std::size_t size, std::size_t index) {
    F2Vector v(size);
    v.set(index);
    return v;
}

F2Vector F2Vector::from_bits(const std::vector<int>& bits) {
    F2Vector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i] & 1) v.set(i);
    return v;
}

void F2Vector::set(std::size_t i, bool value) noexcept {
    const auto mask = std::uint64_t{1} << (i & 63);
    if (value)
        words_[i >> 6] |= mask;
    else
        words_[i >> 6] &= ~mask;
}

void F2Vector::resize(std::size_t size) {
    words_.resize(words_for(size), 0);
    size_ = size;
    if (size_ & 63) words_.back() &= (std::uint64_t{1} << (size_ & 63)) - 1;
}

F2Vector& F2Vector::operator^=(const F2Vector& other) {
    if (other.size_ != size_) throw std::invalid_argument("F2Vector: size mismatch in xor");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
}

bool F2Vector::is_zero() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::size_t F2Vector::count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

std::size_t F2Vector::lowest() const noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (words_[w]) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
    return size_;
}

// ---------------------------------------------------------------- F2Matrix

F2Matrix::F2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_(words_for(cols)), data_(rows * words_for(cols), 0) {}

F2Matrix F2Matrix::identity(std::size_t n) {
    F2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
}

F2Matrix F2Matrix::from_rows(const std::vector<std::vector<int>>& rows, std::size_t cols_if_empty) {
    const std::size_t cols = rows.empty() ? cols_if_empty : rows.front().size();
    F2Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("F2Matrix::from_rows: ragged rows");
        for (std::size_t c = 0; c < cols; ++c)
            if (rows[r][c] & 1) m.set(r, c);
    }
    return m;
}

F2Matrix F2Matrix::from_columns(const std::vector<F2Vector>& columns, std::size_t rows) {
    F2Matrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) m.set_column(c, columns[c]);
    return m;
}

void F2Matrix::set(std::size_t r, std::size_t c, bool value) noexcept {
    auto& word = data_[r * stride_ + (c >> 6)];
    const auto mask = std::uint64_t{1} << (c & 63);
    word = value ? (word | mask) : (word & ~mask);
}

F2Vector F2Matrix::row(std::size_t r) const {
    F2Vector v(cols_);
    for (std::size_t c = 0; c < cols_; ++c)
        if (get(r, c)) v.set(c);
    return v;
}

F2Vector F2Matrix::column(std::size_t c) const {
    F2Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        if (get(r, c)) v.set(r);
    return v;
}

void F2Matrix::set_column(std::size_t c, const F2Vector& v) {
    if (v.size() != rows_) throw std::invalid_argument("F2Matrix::set_column: size mismatch");
    for (std::size_t r = 0; r < rows_; ++r) set(r, c, v.get(r));
}

void F2Matrix::add_row(std::size_t dst, std::size_t src) noexcept {
    auto* d = data_.data() + dst * stride_;
    const auto* s = data_.data() + src * stride_;
    for (std::size_t w = 0; w < stride_; ++w) d[w] ^= s[w];
}

void F2Matrix::swap_rows(std::size_t a, std::size_t b) noexcept {
    if (a == b) return;
    std::swap_ranges(data_.begin() + static_cast<std::ptrdiff_t>(a * stride_),
                     data_.begin() + static_cast<std::ptrdiff_t>((a + 1) * stride_),
                     data_.begin() + static_cast<std::ptrdiff_t>(b * stride_));
}

F2Vector F2Matrix::operator*(const F2Vector& x) const {
    if (x.size() != cols_) throw std::invalid_argument("F2Matrix * F2Vector: dimension mismatch");
    F2Vector y(rows_);
    const auto& xw = x.words();
    for (std::size_t r = 0; r < rows_; ++r) {
        std::uint64_t acc = 0;
        const auto* rw = data_.data() + r * stride_;
        for (std::size_t w = 0; w < stride_; ++w) acc ^= rw[w] & xw[w];
        if (std::popcount(acc) & 1) y.set(r);
    }
    return y;
}

F2Matrix F2Matrix::operator*(const F2Matrix& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("F2Matrix * F2Matrix: dimension mismatch");
    F2Matrix out(rows_, other.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        auto* ow = out.data_.data() + r * out.stride_;
        for (std::size_t k = 0; k < cols_; ++k) {
            if (!get(r, k)) continue;
            const auto* bw = other.data_.data() + k * other.stride_;
            for (std::size_t w = 0; w < out.stride_; ++w) ow[w] ^= bw[w];
        }
    }
    return out;
}

F2Matrix& F2Matrix::operator+=(const F2Matrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("F2Matrix + F2Matrix: dimension mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] ^= other.data_[i];
    return *this;
}

F2Matrix F2Matrix::transpose() const {
    F2Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (get(r, c)) t.set(c, r);
    return t;
}

F2Matrix F2Matrix::select_columns(const std::vector<std::size_t>& cols) const {
    F2Matrix m(rows_, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t r = 0; r < rows_; ++r)
            if (get(r, cols[j])) m.set(r, j);
    return m;
}

F2Matrix F2Matrix::select_rows(const std::vector<std::size_t>& rows) const {
    F2Matrix m(rows.size(), cols_);
    for (std::size_t i = 0; i < rows.size(); ++i)
        std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(rows[i] * stride_), stride_,
                    m.data_.begin() + static_cast<std::ptrdiff_t>(i * stride_));
    return m;
}

F2Matrix F2Matrix::hstack(const F2Matrix& other) const {
    if (rows_ != other.rows_) throw std::invalid_argument("F2Matrix::hstack: row mismatch");
    F2Matrix m(rows_, cols_ + other.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c)
            if (get(r, c)) m.set(r, c);
        for (std::size_t c = 0; c < other.cols_; ++c)
            if (other.get(r, c)) m.set(r, cols_ + c);
    }
    return m;
}

F2Matrix F2Matrix::direct_sum(const F2Matrix& other) const {
    F2Matrix m(rows_ + other.rows_, cols_ + other.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (get(r, c)) m.set(r, c);
    for (std::size_t r = 0; r < other.rows_; ++r)
        for (std::size_t c = 0; c < other.cols_; ++c)
            if (other.get(r, c)) m.set(rows_ + r, cols_ + c);
    return m;
}

bool F2Matrix::is_zero() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](std::uint64_t w) { return w == 0; });
}

bool F2Matrix::is_identity() const noexcept {
    if (rows_ != cols_) return false;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (get(r, c) != (r == c)) return false;
    return true;
}

std::string F2Matrix::to_string() const {
    std::ostringstream os;
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) os << (get(r, c) ? '1' : '0');
        os << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------- algorithms

RowEchelon row_echelon(F2Matrix a) {
    RowEchelon out;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < a.cols() && rank < a.rows(); ++c) {
        std::size_t pivot = rank;
        while (pivot < a.rows() && !a.get(pivot, c)) ++pivot;
        if (pivot == a.rows()) continue;
        a.swap_rows(rank, pivot);
        for (std::size_t r = 0; r < a.rows(); ++r)
            if (r != rank && a.get(r, c)) a.add_row(r, rank);
        out.pivots.push_back(c);
        ++rank;
    }
    out.reduced = std::move(a);
    return out;
}

std::size_t rank(const F2Matrix& a) { return row_echelon(a).pivots.size(); }

std::optional<F2Vector> solve(const F2Matrix& a, const F2Vector& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve: rows(A) != length(b)");
    F2Matrix augmented = a.hstack(F2Matrix::from_columns({b}, a.rows()));
    const auto ech = row_echelon(std::move(augmented));
    F2Vector x(a.cols());
    for (std::size_t i = 0; i < ech.pivots.size(); ++i) {
        const auto p = ech.pivots[i];
        if (p == a.cols()) return std::nullopt;  // pivot in the b column: inconsistent
        if (ech.reduced.get(i, a.cols())) x.set(p);
    }
    return x;
}

F2Matrix kernel_basis(const F2Matrix& a) {
    const auto ech = row_echelon(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : ech.pivots) is_pivot[p] = true;
    std::vector<F2Vector> basis;
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) continue;
        F2Vector v(a.cols());
        v.set(free);
        for (std::size_t i = 0; i < ech.pivots.size(); ++i)
            if (ech.reduced.get(i, free)) v.set(ech.pivots[i]);
        basis.push_back(std::move(v));
    }
    return F2Matrix::from_columns(basis, a.cols());
}

F2Matrix column_space_basis(const F2Matrix& a) {
    return a.select_columns(row_echelon(a).pivots);
}

std::optional<F2Matrix> inverse(const F2Matrix& a) {
    if (a.rows() != a.cols()) return std::nullopt;
    const auto n = a.rows();
    const auto ech = row_echelon(a.hstack(F2Matrix::identity(n)));
    if (ech.pivots.size() < n || (n > 0 && ech.pivots[n - 1] != n - 1)) return std::nullopt;
    std::vector<std::size_t> right(n);
    for (std::size_t i = 0; i < n; ++i) right[i] = n + i;
    return ech.reduced.select_columns(right);
}

// ---------------------------------------------------------------- F2Span

bool F2Span::insert(const F2Vector& v) {
    if (v.size() != dim_) throw std::invalid_argument("F2Span::insert: dimension mismatch");
    const auto gen = reduced_.size();
    F2Vector r = v;
    F2Vector combo(gen + 1);
    for (std::size_t k = 0; k < reduced_.size(); ++k) {
        if (!r.get(pivots_[k])) continue;
        r ^= reduced_[k];
        F2Vector ck = combos_[k];
        ck.resize(gen + 1);
        combo ^= ck;
    }
    const auto p = r.lowest();
    if (p == dim_) return false;
    combo.set(gen);
    reduced_.push_back(std::move(r));
    pivots_.push_back(p);
    combos_.push_back(std::move(combo));
    return true;
}

bool F2Span::contains(const F2Vector& v) const { return coordinates(v).has_value(); }

std::optional<F2Vector> F2Span::coordinates(const F2Vector& v) const {
    if (v.size() != dim_) throw std::invalid_argument("F2Span::coordinates: dimension mismatch");
    const auto gens = reduced_.size();
    F2Vector r = v;
    F2Vector combo(gens);
    for (std::size_t k = 0; k < gens; ++k) {
        if (!r.get(pivots_[k])) continue;
        r ^= reduced_[k];
        F2Vector ck = combos_[k];
        ck.resize(gens);
        combo ^= ck;
    }
    if (!r.is_zero()) return std::nullopt;
    return combo;
}

}  // namespace persistlab
