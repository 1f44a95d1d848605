#pragma once

// Dense linear algebra over prime fields GF(p), p <= 31.
//
// Everything downstream (hom spaces, ideals, decompositions) reduces to rank,
// nullspace and solve calls on these matrices, so elimination is written with
// a delayed-reduction inner loop: entries of non-pivot rows are kept as raw
// uint32 accumulators and only reduced mod p when a row is promoted to pivot
// or at the end. With p <= 31 a row survives min(rows, cols) axpys of at most
// 30*30 each, which stays far below 2^32 for every size this project touches.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace greenrep {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

constexpr u32 kMaxPrime = 31;

inline bool is_prime_u32(u32 n) {
    if (n < 2) return false;
    for (u32 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline void check_prime(u32 p) {
    if (!is_prime_u32(p) || p > kMaxPrime)
        throw InputError("prime must be a prime <= " + std::to_string(kMaxPrime) +
                         ", got " + std::to_string(p));
}

// a^(p-2) mod p
inline u32 mod_inverse(u32 a, u32 p) {
    a %= p;
    if (a == 0) throw InputError("inverse of zero mod " + std::to_string(p));
    u32 result = 1, base = a, e = p - 2;
    while (e) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return result;
}

class Mat {
public:
    Mat() : rows_(0), cols_(0), p_(2) {}
    Mat(u32 rows, u32 cols, u32 p) : rows_(rows), cols_(cols), p_(p), a_(std::size_t(rows) * cols, 0) {
        check_prime(p);
    }

    static Mat zero(u32 rows, u32 cols, u32 p) { return Mat(rows, cols, p); }

    static Mat identity(u32 n, u32 p) {
        Mat m(n, n, p);
        for (u32 i = 0; i < n; ++i) m(i, i) = 1 % p;
        return m;
    }

    static Mat from_rows(const std::vector<std::vector<u32>>& rows, u32 p) {
        u32 r = static_cast<u32>(rows.size());
        u32 c = r ? static_cast<u32>(rows[0].size()) : 0;
        Mat m(r, c, p);
        for (u32 i = 0; i < r; ++i) {
            if (rows[i].size() != c) throw InputError("ragged row list");
            for (u32 j = 0; j < c; ++j) m(i, j) = rows[i][j] % p;
        }
        return m;
    }

    u32 rows() const { return rows_; }
    u32 cols() const { return cols_; }
    u32 prime() const { return p_; }

    u32& operator()(u32 i, u32 j) { return a_[std::size_t(i) * cols_ + j]; }
    u32 operator()(u32 i, u32 j) const { return a_[std::size_t(i) * cols_ + j]; }

    const u32* row(u32 i) const { return a_.data() + std::size_t(i) * cols_; }
    u32* row(u32 i) { return a_.data() + std::size_t(i) * cols_; }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_ && a_ == o.a_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    bool is_zero() const {
        for (u32 v : a_)
            if (v % p_ != 0) return false;
        return true;
    }

    bool is_identity() const {
        if (rows_ != cols_) return false;
        for (u32 i = 0; i < rows_; ++i)
            for (u32 j = 0; j < cols_; ++j)
                if ((*this)(i, j) != (i == j ? 1u % p_ : 0u)) return false;
        return true;
    }

    Mat mul(const Mat& b) const {
        require_same_prime(b);
        if (cols_ != b.rows_) throw InputError("mul: dimension mismatch");
        Mat c(rows_, b.cols_, p_);
        // i-k-j with u32 accumulation; products <= 30*30, sums bounded by
        // 900 * cols which stays below 2^32 at our sizes.
        for (u32 i = 0; i < rows_; ++i) {
            u32* ci = c.row(i);
            const u32* ai = row(i);
            for (u32 k = 0; k < cols_; ++k) {
                u32 aik = ai[k];
                if (!aik) continue;
                const u32* bk = b.row(k);
                for (u32 j = 0; j < b.cols_; ++j) ci[j] += aik * bk[j];
            }
            for (u32 j = 0; j < b.cols_; ++j) ci[j] %= p_;
        }
        return c;
    }

    Mat add(const Mat& b) const {
        require_same_shape(b);
        Mat c(rows_, cols_, p_);
        for (std::size_t i = 0; i < a_.size(); ++i) c.a_[i] = (a_[i] + b.a_[i]) % p_;
        return c;
    }

    Mat sub(const Mat& b) const {
        require_same_shape(b);
        Mat c(rows_, cols_, p_);
        for (std::size_t i = 0; i < a_.size(); ++i) c.a_[i] = (a_[i] + p_ - b.a_[i] % p_) % p_;
        return c;
    }

    Mat scale(u32 s) const {
        s %= p_;
        Mat c(rows_, cols_, p_);
        for (std::size_t i = 0; i < a_.size(); ++i) c.a_[i] = a_[i] * s % p_;
        return c;
    }

    Mat transpose() const {
        Mat t(cols_, rows_, p_);
        for (u32 i = 0; i < rows_; ++i)
            for (u32 j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Mat hstack(const Mat& b) const {
        require_same_prime(b);
        if (rows_ != b.rows_) throw InputError("hstack: row mismatch");
        Mat c(rows_, cols_ + b.cols_, p_);
        for (u32 i = 0; i < rows_; ++i) {
            for (u32 j = 0; j < cols_; ++j) c(i, j) = (*this)(i, j);
            for (u32 j = 0; j < b.cols_; ++j) c(i, cols_ + j) = b(i, j);
        }
        return c;
    }

    Mat vstack(const Mat& b) const {
        require_same_prime(b);
        if (cols_ != b.cols_) throw InputError("vstack: column mismatch");
        Mat c(rows_ + b.rows_, cols_, p_);
        for (u32 i = 0; i < rows_; ++i)
            for (u32 j = 0; j < cols_; ++j) c(i, j) = (*this)(i, j);
        for (u32 i = 0; i < b.rows_; ++i)
            for (u32 j = 0; j < cols_; ++j) c(rows_ + i, j) = b(i, j);
        return c;
    }

    // Columns as separate 1-column matrices.
    Mat col_vector(u32 j) const {
        Mat v(rows_, 1, p_);
        for (u32 i = 0; i < rows_; ++i) v(i, 0) = (*this)(i, j);
        return v;
    }

    // Flatten row-major into a 1 x (rows*cols) row vector.
    std::vector<u32> vec() const {
        std::vector<u32> v(a_);
        for (u32& x : v) x %= p_;
        return v;
    }

    static Mat kron(const Mat& a, const Mat& b) {
        a.require_same_prime(b);
        Mat c(a.rows_ * b.rows_, a.cols_ * b.cols_, a.p_);
        for (u32 i = 0; i < a.rows_; ++i)
            for (u32 j = 0; j < a.cols_; ++j) {
                u32 aij = a(i, j);
                if (!aij) continue;
                for (u32 k = 0; k < b.rows_; ++k)
                    for (u32 l = 0; l < b.cols_; ++l)
                        c(i * b.rows_ + k, j * b.cols_ + l) = aij * b(k, l) % a.p_;
            }
        return c;
    }

    void require_same_prime(const Mat& b) const {
        if (p_ != b.p_) throw InputError("prime mismatch");
    }

private:
    void require_same_shape(const Mat& b) const {
        require_same_prime(b);
        if (rows_ != b.rows_ || cols_ != b.cols_) throw InputError("shape mismatch");
    }

    u32 rows_, cols_, p_;
    std::vector<u32> a_;
};

// In-place reduced row echelon form with delayed reduction. Returns pivot
// column indices. Pivoting rule: first nonzero entry in column order.
inline std::vector<u32> rref_inplace(std::vector<u32>& a, std::size_t rows, std::size_t cols, u32 p) {
    std::vector<u32> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = rows;
        for (std::size_t i = r; i < rows; ++i) {
            if (a[i * cols + c] % p != 0) { sel = i; break; }
        }
        if (sel == rows) continue;
        if (sel != r) {
            for (std::size_t j = 0; j < cols; ++j)
                std::swap(a[r * cols + j], a[sel * cols + j]);
        }
        u32* pr = &a[r * cols];
        for (std::size_t j = 0; j < cols; ++j) pr[j] %= p;
        u32 inv = mod_inverse(pr[c], p);
        if (inv != 1)
            for (std::size_t j = c; j < cols; ++j) pr[j] = pr[j] * inv % p;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            u32* ri = &a[i * cols];
            u32 v = ri[c] % p;
            if (!v) continue;
            u32 m = p - v;
            for (std::size_t j = c; j < cols; ++j) ri[j] += m * pr[j];
        }
        pivots.push_back(static_cast<u32>(c));
        ++r;
    }
    for (auto& x : a) x %= p;
    return pivots;
}

struct RrefResult {
    Mat reduced;
    std::vector<u32> pivots;
};

inline RrefResult rref(const Mat& m) {
    std::vector<u32> a = m.vec();
    auto pivots = rref_inplace(a, m.rows(), m.cols(), m.prime());
    Mat red(m.rows(), m.cols(), m.prime());
    for (u32 i = 0; i < m.rows(); ++i)
        for (u32 j = 0; j < m.cols(); ++j) red(i, j) = a[std::size_t(i) * m.cols() + j];
    return {std::move(red), std::move(pivots)};
}

inline u32 rank(const Mat& m) {
    std::vector<u32> a = m.vec();
    return static_cast<u32>(rref_inplace(a, m.rows(), m.cols(), m.prime()).size());
}

// Basis of {v : m v = 0}, each vector a cols x 1 matrix. Standard back-fill
// from rref: one vector per free column.
inline std::vector<Mat> nullspace(const Mat& m) {
    std::vector<u32> a = m.vec();
    auto pivots = rref_inplace(a, m.rows(), m.cols(), m.prime());
    u32 p = m.prime(), cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (u32 c : pivots) is_pivot[c] = true;
    std::vector<Mat> basis;
    for (u32 f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        Mat v(cols, 1, p);
        v(f, 0) = 1 % p;
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            u32 entry = a[r * cols + f] % p;
            v(pivots[r], 0) = (p - entry) % p;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

// Some X with a X = b, or nullopt if the system is inconsistent.
inline std::optional<Mat> solve(const Mat& a, const Mat& b) {
    a.require_same_prime(b);
    if (a.rows() != b.rows()) throw InputError("solve: row mismatch");
    Mat aug = a.hstack(b);
    std::vector<u32> w = aug.vec();
    auto pivots = rref_inplace(w, aug.rows(), aug.cols(), a.prime());
    for (u32 c : pivots)
        if (c >= a.cols()) return std::nullopt;
    Mat x(a.cols(), b.cols(), a.prime());
    for (std::size_t r = 0; r < pivots.size(); ++r)
        for (u32 j = 0; j < b.cols(); ++j)
            x(pivots[r], j) = w[r * aug.cols() + a.cols() + j];
    return x;
}

inline std::optional<Mat> invert(const Mat& m) {
    if (m.rows() != m.cols()) throw InputError("invert: non-square matrix");
    auto x = solve(m, Mat::identity(m.rows(), m.prime()));
    if (!x) return std::nullopt;
    if (!x->mul(m).is_identity()) return std::nullopt; // rank-deficient m
    return x;
}

// A subspace of GF(p)^n held as an rref row basis. Row convention: vectors
// are rows here; column vectors from nullspace() get transposed on entry.
class Subspace {
public:
    Subspace(u32 ambient, u32 p) : ambient_(ambient), p_(p), basis_(0, ambient, p) {
        check_prime(p);
    }

    // Span of row vectors (each of length ambient).
    static Subspace span_rows(const Mat& rows_mat) {
        Subspace s(rows_mat.cols(), rows_mat.prime());
        auto red = rref(rows_mat);
        u32 dim = static_cast<u32>(red.pivots.size());
        Mat b(dim, rows_mat.cols(), rows_mat.prime());
        for (u32 i = 0; i < dim; ++i)
            for (u32 j = 0; j < rows_mat.cols(); ++j) b(i, j) = red.reduced(i, j);
        s.basis_ = std::move(b);
        return s;
    }

    static Subspace span(const std::vector<Mat>& column_vectors, u32 ambient, u32 p) {
        if (column_vectors.empty()) return Subspace(ambient, p);
        Mat rows_mat(static_cast<u32>(column_vectors.size()), ambient, p);
        for (u32 i = 0; i < column_vectors.size(); ++i) {
            const Mat& v = column_vectors[i];
            if (v.prime() != p || v.cols() != 1 || v.rows() != ambient)
                throw InputError("span: vector length or prime mismatch");
            for (u32 j = 0; j < ambient; ++j) rows_mat(i, j) = v(j, 0);
        }
        return span_rows(rows_mat);
    }

    u32 ambient() const { return ambient_; }
    u32 prime() const { return p_; }
    u32 dimension() const { return basis_.rows(); }
    const Mat& basis_rows() const { return basis_; }

    bool contains_row(const Mat& v) const {
        if (v.cols() != ambient_ || v.rows() != 1) throw InputError("contains: bad vector");
        if (basis_.rows() == 0) return v.is_zero();
        auto x = solve(basis_.transpose(), v.transpose());
        return x.has_value();
    }

    bool contains(const Subspace& other) const {
        for (u32 i = 0; i < other.basis_.rows(); ++i) {
            Mat v(1, ambient_, p_);
            for (u32 j = 0; j < ambient_; ++j) v(0, j) = other.basis_(i, j);
            if (!contains_row(v)) return false;
        }
        return true;
    }

    Subspace sum(const Subspace& other) const {
        require_compatible(other);
        if (basis_.rows() == 0) return other;
        if (other.basis_.rows() == 0) return *this;
        return span_rows(basis_.vstack(other.basis_));
    }

    // Zassenhaus-free intersection: x = u^T a = v^T b  <=>  (a,b) in
    // nullspace of [U^T | -V^T]; the U-part of each kernel vector gives x.
    Subspace intersect(const Subspace& other) const {
        require_compatible(other);
        u32 du = basis_.rows(), dv = other.basis_.rows();
        if (du == 0 || dv == 0) return Subspace(ambient_, p_);
        Mat ut = basis_.transpose();                       // ambient x du
        Mat vt_neg = other.basis_.transpose().scale(p_ - 1); // ambient x dv
        Mat sys = ut.hstack(vt_neg);
        auto ker = nullspace(sys);
        if (ker.empty()) return Subspace(ambient_, p_);
        Mat rows_mat(static_cast<u32>(ker.size()), ambient_, p_);
        for (u32 i = 0; i < ker.size(); ++i) {
            // coefficients of the U-part
            Mat coeff(1, du, p_);
            for (u32 k = 0; k < du; ++k) coeff(0, k) = ker[i](k, 0);
            Mat x = coeff.mul(basis_);
            for (u32 j = 0; j < ambient_; ++j) rows_mat(i, j) = x(0, j);
        }
        return span_rows(rows_mat);
    }

    // Rows extending this basis to the span of `inside`; together with our
    // basis they form a basis of `inside`. Unit-vector extension in index
    // order when `inside` is the full space.
    Mat complement_in(const Subspace& inside) const {
        require_compatible(inside);
        std::vector<std::vector<u32>> ext_rows;
        Subspace cur = *this;
        for (u32 i = 0; i < inside.basis_.rows(); ++i) {
            Mat v(1, ambient_, p_);
            for (u32 j = 0; j < ambient_; ++j) v(0, j) = inside.basis_(i, j);
            if (!cur.contains_row(v)) {
                ext_rows.push_back(std::vector<u32>(v.row(0), v.row(0) + ambient_));
                cur = cur.sum(span_rows(v));
            }
        }
        Mat out(static_cast<u32>(ext_rows.size()), ambient_, p_);
        for (u32 i = 0; i < ext_rows.size(); ++i)
            for (u32 j = 0; j < ambient_; ++j) out(i, j) = ext_rows[i][j];
        return out;
    }

    static Subspace full(u32 ambient, u32 p) {
        return span_rows(Mat::identity(ambient, p));
    }

private:
    void require_compatible(const Subspace& o) const {
        if (ambient_ != o.ambient_ || p_ != o.p_)
            throw InputError("subspace ambient/prime mismatch");
    }

    u32 ambient_, p_;
    Mat basis_;
};

} // namespace greenrep
