#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include "modtrace/fp.hpp"

namespace modtrace {

/* Hard cap on materialized matrix dimensions; constructions beyond it refuse. */
inline constexpr int k_dim_cap = 4096;

/* Dense matrix over F_p, row-major. All arithmetic is exact mod p. */
class Mat {
public:
    Mat(Fp f, int rows, int cols) : f_(f), rows_(rows), cols_(cols) {
        if (rows < 0 || cols < 0) throw shape_error("negative matrix dimension");
        if (rows > k_dim_cap || cols > k_dim_cap)
            throw size_cap_error("matrix " + std::to_string(rows) + "x" + std::to_string(cols) +
                                 " exceeds the " + std::to_string(k_dim_cap) + " cap");
        e_.assign(static_cast<std::size_t>(rows) * cols, 0);
    }

    static Mat identity(Fp f, int n) {
        Mat m(f, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    /* Row-major fill, values reduced mod p. */
    static Mat from(Fp f, int rows, int cols, std::initializer_list<std::uint64_t> v) {
        Mat m(f, rows, cols);
        if (static_cast<int>(v.size()) != rows * cols)
            throw shape_error("from(): value count does not match shape");
        int i = 0;
        for (std::uint64_t x : v) m.e_[i++] = f.reduce(x);
        return m;
    }

    static Mat unit_vector(Fp f, int n, int i) {
        Mat m(f, n, 1);
        m.at(i, 0) = 1;
        return m;
    }

    const Fp& field() const { return f_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    std::uint64_t& at(int r, int c) {
        check_index(r, c);
        return e_[static_cast<std::size_t>(r) * cols_ + c];
    }
    std::uint64_t at(int r, int c) const {
        check_index(r, c);
        return e_[static_cast<std::size_t>(r) * cols_ + c];
    }

    Mat operator+(const Mat& o) const {
        check_same_shape(o);
        Mat r(f_, rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = f_.add(e_[i], o.e_[i]);
        return r;
    }

    Mat operator-(const Mat& o) const {
        check_same_shape(o);
        Mat r(f_, rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = f_.sub(e_[i], o.e_[i]);
        return r;
    }

    Mat operator*(const Mat& o) const {
        if (f_ != o.f_) throw shape_error("field mismatch in product");
        if (cols_ != o.rows_) throw shape_error("inner dimension mismatch in product");
        Mat r(f_, rows_, o.cols_);
        for (int i = 0; i < rows_; ++i) {
            for (int k = 0; k < cols_; ++k) {
                std::uint64_t a = at(i, k);
                if (a == 0) continue;
                const std::uint64_t* src = &o.e_[static_cast<std::size_t>(k) * o.cols_];
                std::uint64_t* dst = &r.e_[static_cast<std::size_t>(i) * o.cols_];
                for (int j = 0; j < o.cols_; ++j) dst[j] = (dst[j] + a * src[j]) % f_.p();
            }
        }
        return r;
    }

    Mat scaled(std::uint64_t c) const {
        c = f_.reduce(c);
        Mat r(f_, rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = f_.mul(e_[i], c);
        return r;
    }

    Mat transpose() const {
        Mat r(f_, cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    Mat row(int i) const {
        Mat r(f_, 1, cols_);
        for (int j = 0; j < cols_; ++j) r.at(0, j) = at(i, j);
        return r;
    }

    Mat col(int j) const {
        Mat r(f_, rows_, 1);
        for (int i = 0; i < rows_; ++i) r.at(i, 0) = at(i, j);
        return r;
    }

    /* Row-major flattening to a (rows*cols) x 1 column. */
    Mat flatten() const {
        Mat r(f_, rows_ * cols_ == 0 ? 0 : rows_ * cols_, 1);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i];
        return r;
    }

    static Mat unflatten(const Mat& v, int rows, int cols) {
        if (v.cols() != 1 || v.rows() != rows * cols)
            throw shape_error("unflatten(): shape mismatch");
        Mat r(v.field(), rows, cols);
        for (int i = 0; i < rows * cols; ++i) r.e_[i] = v.e_[i];
        return r;
    }

    bool is_zero() const {
        for (std::uint64_t x : e_)
            if (x != 0) return false;
        return true;
    }

    std::uint64_t trace_sum() const {
        if (rows_ != cols_) throw shape_error("trace of non-square matrix");
        std::uint64_t t = 0;
        for (int i = 0; i < rows_; ++i) t = f_.add(t, at(i, i));
        return t;
    }

    bool operator==(const Mat& o) const {
        return f_ == o.f_ && rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

private:
    void check_index(int r, int c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw shape_error("matrix index out of range");
    }
    void check_same_shape(const Mat& o) const {
        if (f_ != o.f_ || rows_ != o.rows_ || cols_ != o.cols_)
            throw shape_error("shape mismatch");
    }

    Fp f_;
    int rows_, cols_;
    std::vector<std::uint64_t> e_;
};

/* Kronecker product; basis pair (i, j) maps to index i * b.rows() + j
 * (resp. i * b.cols() + j on columns). */
inline Mat kron(const Mat& a, const Mat& b) {
    if (a.field() != b.field()) throw shape_error("field mismatch in kron");
    long long pr = 1LL * a.rows() * b.rows(), pc = 1LL * a.cols() * b.cols();
    if (pr > k_dim_cap || pc > k_dim_cap)
        throw size_cap_error("kron result " + std::to_string(pr) + "x" + std::to_string(pc) +
                             " exceeds the " + std::to_string(k_dim_cap) + " cap");
    Mat r(a.field(), static_cast<int>(pr), static_cast<int>(pc));
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            std::uint64_t c = a.at(i, j);
            if (c == 0) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    r.at(i * b.rows() + k, j * b.cols() + l) =
                        a.field().mul(c, b.at(k, l));
        }
    return r;
}

inline Mat hstack(const Mat& a, const Mat& b) {
    if (a.field() != b.field() || a.rows() != b.rows()) throw shape_error("hstack mismatch");
    Mat r(a.field(), a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
        for (int j = 0; j < b.cols(); ++j) r.at(i, a.cols() + j) = b.at(i, j);
    }
    return r;
}

inline Mat vstack(const Mat& a, const Mat& b) {
    if (a.field() != b.field() || a.cols() != b.cols()) throw shape_error("vstack mismatch");
    Mat r(a.field(), a.rows() + b.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r.at(a.rows() + i, j) = b.at(i, j);
    return r;
}

/* Incremental reduced row echelon accumulator. Rows are inserted one at a
 * time and the stored set stays in reduced echelon form with pivots in
 * increasing column order, so the result is the canonical RREF of the row
 * space regardless of insertion order. At most `cols` rows are ever held,
 * which lets relation systems with more than k_dim_cap generated rows be
 * reduced without materializing them. */
class EchelonAccumulator {
public:
    EchelonAccumulator(Fp f, int cols) : f_(f), cols_(cols) {
        if (cols < 0 || cols > k_dim_cap)
            throw size_cap_error("echelon accumulator width " + std::to_string(cols) +
                                 " exceeds the " + std::to_string(k_dim_cap) + " cap");
    }

    void add_row(std::vector<std::uint64_t> r) {
        if (static_cast<int>(r.size()) != cols_) throw shape_error("row width mismatch");
        /* reduce against existing pivots */
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            std::uint64_t c = r[pivots_[i]];
            if (c == 0) continue;
            const std::vector<std::uint64_t>& base = rows_[i];
            for (int j = pivots_[i]; j < cols_; ++j)
                r[j] = f_.sub(r[j], f_.mul(c, base[j]));
        }
        int lead = -1;
        for (int j = 0; j < cols_; ++j)
            if (r[j] != 0) { lead = j; break; }
        if (lead < 0) return;
        std::uint64_t inv = f_.inv(r[lead]);
        for (int j = lead; j < cols_; ++j) r[j] = f_.mul(r[j], inv);
        /* eliminate the new pivot column from existing rows */
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            std::uint64_t c = rows_[i][lead];
            if (c == 0) continue;
            for (int j = lead; j < cols_; ++j)
                rows_[i][j] = f_.sub(rows_[i][j], f_.mul(c, r[j]));
        }
        std::size_t pos = 0;
        while (pos < pivots_.size() && pivots_[pos] < lead) ++pos;
        pivots_.insert(pivots_.begin() + pos, lead);
        rows_.insert(rows_.begin() + pos, std::move(r));
    }

    void add_rows(const Mat& m) {
        if (m.cols() != cols_) throw shape_error("row width mismatch");
        for (int i = 0; i < m.rows(); ++i) {
            std::vector<std::uint64_t> r(cols_);
            for (int j = 0; j < cols_; ++j) r[j] = m.at(i, j);
            add_row(std::move(r));
        }
    }

    int rank() const { return static_cast<int>(rows_.size()); }
    const std::vector<int>& pivots() const { return pivots_; }
    int cols() const { return cols_; }
    const Fp& field() const { return f_; }

    Mat matrix() const {
        Mat m(f_, rank(), cols_);
        for (int i = 0; i < rank(); ++i)
            for (int j = 0; j < cols_; ++j) m.at(i, j) = rows_[i][j];
        return m;
    }

    /* Kernel of the accumulated row space seen as a linear system: columns
     * are the canonical basis vectors, one per non-pivot column in increasing
     * order, with a 1 at their free coordinate. */
    Mat kernel_basis() const {
        std::vector<int> free_cols;
        {
            std::size_t t = 0;
            for (int j = 0; j < cols_; ++j) {
                if (t < pivots_.size() && pivots_[t] == j) { ++t; continue; }
                free_cols.push_back(j);
            }
        }
        Mat k(f_, cols_, static_cast<int>(free_cols.size()));
        for (std::size_t v = 0; v < free_cols.size(); ++v) {
            int fcol = free_cols[v];
            k.at(fcol, static_cast<int>(v)) = 1;
            for (std::size_t i = 0; i < rows_.size(); ++i)
                k.at(pivots_[i], static_cast<int>(v)) = f_.neg(rows_[i][fcol]);
        }
        return k;
    }

private:
    Fp f_;
    int cols_;
    std::vector<std::vector<std::uint64_t>> rows_;
    std::vector<int> pivots_;
};

struct Echelon {
    Mat mat;                  /* canonical RREF of the row space */
    std::vector<int> pivots;  /* increasing pivot columns */
};

inline Echelon rref(const Mat& m) {
    EchelonAccumulator acc(m.field(), m.cols());
    acc.add_rows(m);
    return Echelon{acc.matrix(), acc.pivots()};
}

inline int rank(const Mat& m) {
    EchelonAccumulator acc(m.field(), m.cols());
    acc.add_rows(m);
    return acc.rank();
}

/* Kernel basis of A (columns), one vector per free column of rref(A),
 * in increasing free-column order. */
inline Mat kernel(const Mat& a) {
    EchelonAccumulator acc(a.field(), a.cols());
    acc.add_rows(a);
    return acc.kernel_basis();
}

struct LinSolve {
    Mat particular;  /* A * particular = b, free coordinates zero */
    Mat kernel;      /* columns span ker A */
};

/* Solves A x = b column-wise; nullopt when any right-hand column is
 * outside the column space of A. */
inline std::optional<LinSolve> solve(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) throw shape_error("solve(): row mismatch");
    Echelon aug = rref(hstack(a, b));
    for (int piv : aug.pivots)
        if (piv >= a.cols()) return std::nullopt;
    Mat x(a.field(), a.cols(), b.cols());
    for (std::size_t i = 0; i < aug.pivots.size(); ++i)
        for (int j = 0; j < b.cols(); ++j)
            x.at(aug.pivots[i], j) = aug.mat.at(static_cast<int>(i), a.cols() + j);
    return LinSolve{std::move(x), kernel(a)};
}

inline std::optional<Mat> try_inverse(const Mat& a) {
    if (a.rows() != a.cols()) return std::nullopt;
    auto s = solve(a, Mat::identity(a.field(), a.rows()));
    if (!s || s->kernel.cols() != 0) return std::nullopt;
    return s->particular;
}

inline Mat inverse(const Mat& a) {
    if (a.rows() != a.cols())
        throw not_invertible_error("inverse of non-square matrix");
    auto inv = try_inverse(a);
    if (!inv) throw not_invertible_error("singular matrix");
    return *inv;
}

}  // namespace modtrace
