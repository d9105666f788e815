#include "sq2/f2.hpp"

#include <bit>
#include <stdexcept>

namespace sq2 {

F2Vector::F2Vector(std::size_t length, std::initializer_list<int> bits) : F2Vector(length) {
    std::size_t i = 0;
    for (int b : bits) {
        if (i >= length) throw std::invalid_argument("too many bits");
        set(i++, b != 0);
    }
}

F2Vector& F2Vector::operator^=(const F2Vector& other) {
    if (len_ != other.len_) throw std::invalid_argument("F2Vector length mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
}

bool F2Vector::any() const {
    for (auto w : words_)
        if (w) return true;
    return false;
}

std::size_t F2Vector::popcount() const {
    std::size_t n = 0;
    for (auto w : words_) n += std::popcount(w);
    return n;
}

std::size_t F2Vector::first_set() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i]) return i * 64 + std::countr_zero(words_[i]);
    return len_;
}

bool F2Vector::dot(const F2Vector& other) const {
    if (len_ != other.len_) throw std::invalid_argument("F2Vector length mismatch");
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & other.words_[i];
    return std::popcount(acc) & 1;
}

std::string F2Vector::to_string() const {
    std::string s;
    s.reserve(len_);
    for (std::size_t i = 0; i < len_; ++i) s += get(i) ? '1' : '0';
    return s;
}

F2Matrix::F2Matrix(std::size_t rows, std::size_t cols, std::initializer_list<int> entries)
    : F2Matrix(rows, cols) {
    if (entries.size() != rows * cols) throw std::invalid_argument("entry count mismatch");
    std::size_t k = 0;
    for (int e : entries) {
        set(k / cols, k % cols, e != 0);
        ++k;
    }
}

F2Matrix F2Matrix::identity(std::size_t n) {
    F2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

F2Vector F2Matrix::mul(const F2Vector& v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix/vector size mismatch");
    F2Vector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        if (data_[i].dot(v)) out.set(i, true);
    return out;
}

F2Matrix F2Matrix::mul(const F2Matrix& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("matrix size mismatch");
    F2Matrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k)
            if (data_[i].get(k)) out.data_[i] ^= other.data_[k];
    return out;
}

F2Matrix F2Matrix::transpose() const {
    F2Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (get(i, j)) out.set(j, i, true);
    return out;
}

F2Matrix F2Matrix::operator^(const F2Matrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("matrix size mismatch");
    F2Matrix out = *this;
    for (std::size_t i = 0; i < rows_; ++i) out.data_[i] ^= other.data_[i];
    return out;
}

void F2Matrix::append_row(const F2Vector& r) {
    if (r.size() != cols_) throw std::invalid_argument("row length mismatch");
    data_.push_back(r);
    ++rows_;
}

RrefResult F2Matrix::rref() const {
    RrefResult res{*this, {}};
    auto& m = res.mat;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::size_t pivot = rows_;
        for (std::size_t i = r; i < rows_; ++i)
            if (m.data_[i].get(c)) { pivot = i; break; }
        if (pivot == rows_) continue;
        std::swap(m.data_[r], m.data_[pivot]);
        for (std::size_t i = 0; i < rows_; ++i)
            if (i != r && m.data_[i].get(c)) m.data_[i] ^= m.data_[r];
        res.pivots.push_back(c);
        ++r;
    }
    return res;
}

std::size_t F2Matrix::rank() const { return rref().pivots.size(); }

bool F2Matrix::is_zero() const {
    for (const auto& r : data_)
        if (r.any()) return false;
    return true;
}

std::vector<F2Vector> F2Matrix::kernel_basis() const {
    auto [m, pivots] = rref();
    std::vector<bool> is_pivot(cols_, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<F2Vector> basis;
    for (std::size_t c = 0; c < cols_; ++c) {
        if (is_pivot[c]) continue;
        F2Vector v(cols_);
        v.set(c, true);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            if (m.data_[r].get(c)) v.set(pivots[r], true);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<F2Vector> F2Matrix::solve(const F2Vector& b) const {
    if (b.size() != rows_) throw std::invalid_argument("rhs length mismatch");
    // Augment with b and reduce.
    F2Matrix aug(rows_, cols_ + 1);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) aug.set(i, j, get(i, j));
        aug.set(i, cols_, b.get(i));
    }
    auto [m, pivots] = aug.rref();
    F2Vector x(cols_);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == cols_) return std::nullopt;  // row (0 ... 0 | 1)
        x.set(pivots[r], m.data_[r].get(cols_));
    }
    return x;
}

std::string F2Matrix::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < rows_; ++i) {
        s += data_[i].to_string();
        s += '\n';
    }
    return s;
}

F2Vector F2Span::reduce(F2Vector v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (v.get(pivot_of_[i])) v ^= rows_[i];
    return v;
}

namespace {
void combo_xor(std::vector<bool>& a, const std::vector<bool>& b) {
    if (a.size() < b.size()) a.resize(b.size(), false);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = a[i] != b[i];
}
}  // namespace

bool F2Span::insert(F2Vector v) {
    std::vector<bool> combo;
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (v.get(pivot_of_[i])) {
            v ^= rows_[i];
            combo_xor(combo, combo_[i]);
        }
    if (v.is_zero()) return false;
    combo.resize(ngen_ + 1, false);
    combo[ngen_] = !combo[ngen_];
    ++ngen_;
    std::size_t p = v.first_set();
    // Keep full reduction (rref shape).
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (rows_[i].get(p)) {
            rows_[i] ^= v;
            combo_xor(combo_[i], combo);
        }
    rows_.push_back(std::move(v));
    pivot_of_.push_back(p);
    combo_.push_back(std::move(combo));
    return true;
}

std::optional<F2Vector> F2Span::coordinates(const F2Vector& v) const {
    F2Vector w = v;
    std::vector<bool> combo;
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (w.get(pivot_of_[i])) {
            w ^= rows_[i];
            combo_xor(combo, combo_[i]);
        }
    if (!w.is_zero()) return std::nullopt;
    F2Vector out(ngen_);
    for (std::size_t i = 0; i < combo.size() && i < ngen_; ++i) out.set(i, combo[i]);
    return out;
}

}  // namespace sq2
