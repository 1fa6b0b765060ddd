#include "equitor/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace equitor {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    r_ = rows.size();
    c_ = r_ ? rows.begin()->size() : 0;
    a_.reserve(r_ * c_);
    for (auto& row : rows) {
        if (row.size() != c_) throw LinalgError("ragged matrix literal");
        for (long x : row) a_.emplace_back(x);
    }
}

IntMatrix IntMatrix::identity(size_t n) {
    IntMatrix I(n, n);
    for (size_t i = 0; i < n; ++i) I(i, i) = 1;
    return I;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows, size_t cols) {
    size_t c = rows.empty() ? cols : rows[0].size();
    IntMatrix M(rows.size(), c);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) throw LinalgError("ragged rows");
        for (size_t j = 0; j < c; ++j) M(i, j) = rows[i][j];
    }
    return M;
}

IntMatrix IntMatrix::from_longs(const std::vector<std::vector<long>>& rows) {
    size_t c = rows.empty() ? 0 : rows[0].size();
    IntMatrix M(rows.size(), c);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) throw LinalgError("ragged rows");
        for (size_t j = 0; j < c; ++j) M(i, j) = rows[i][j];
    }
    return M;
}

IntMatrix IntMatrix::hstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows()) throw LinalgError("hstack row mismatch");
    IntMatrix M(a.rows(), a.cols() + b.cols());
    M.set_block(0, 0, a);
    M.set_block(0, a.cols(), b);
    return M;
}

IntMatrix IntMatrix::vstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() == 0) return b;
    if (b.rows() == 0) return a;
    if (a.cols() != b.cols()) throw LinalgError("vstack col mismatch");
    IntMatrix M(a.rows() + b.rows(), a.cols());
    M.set_block(0, 0, a);
    M.set_block(a.rows(), 0, b);
    return M;
}

IntVec IntMatrix::row(size_t i) const { return IntVec(a_.begin() + i * c_, a_.begin() + (i + 1) * c_); }

IntVec IntMatrix::col(size_t j) const {
    IntVec v(r_);
    for (size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
}

void IntMatrix::set_row(size_t i, const IntVec& v) {
    if (v.size() != c_) throw LinalgError("set_row size");
    std::copy(v.begin(), v.end(), a_.begin() + i * c_);
}

void IntMatrix::append_row(const IntVec& v) {
    if (r_ == 0 && c_ == 0) c_ = v.size();
    if (v.size() != c_) throw LinalgError("append_row size");
    a_.insert(a_.end(), v.begin(), v.end());
    ++r_;
}

IntMatrix IntMatrix::block(size_t r0, size_t c0, size_t nr, size_t nc) const {
    IntMatrix B(nr, nc);
    for (size_t i = 0; i < nr; ++i)
        for (size_t j = 0; j < nc; ++j) B(i, j) = (*this)(r0 + i, c0 + j);
    return B;
}

void IntMatrix::set_block(size_t r0, size_t c0, const IntMatrix& b) {
    for (size_t i = 0; i < b.rows(); ++i)
        for (size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

IntMatrix IntMatrix::select_rows(const std::vector<size_t>& idx) const {
    IntMatrix B(idx.size(), c_);
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = 0; j < c_; ++j) B(i, j) = (*this)(idx[i], j);
    return B;
}

IntMatrix IntMatrix::select_cols(const std::vector<size_t>& idx) const {
    IntMatrix B(r_, idx.size());
    for (size_t i = 0; i < r_; ++i)
        for (size_t j = 0; j < idx.size(); ++j) B(i, j) = (*this)(i, idx[j]);
    return B;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix T(c_, r_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t j = 0; j < c_; ++j) T(j, i) = (*this)(i, j);
    return T;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (c_ != o.r_) throw LinalgError("matrix product dimension mismatch");
    IntMatrix P(r_, o.c_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t k = 0; k < c_; ++k) {
            const Int& x = (*this)(i, k);
            if (sgn(x) == 0) continue;
            for (size_t j = 0; j < o.c_; ++j) {
                const Int& y = o(k, j);
                if (sgn(y) != 0) mpz_addmul(P(i, j).get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
            }
        }
    return P;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
    IntMatrix S = *this;
    S += o;
    return S;
}

IntMatrix& IntMatrix::operator+=(const IntMatrix& o) {
    if (r_ != o.r_ || c_ != o.c_) throw LinalgError("matrix sum dimension mismatch");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw LinalgError("matrix difference dimension mismatch");
    IntMatrix S = *this;
    for (size_t k = 0; k < a_.size(); ++k) S.a_[k] -= o.a_[k];
    return S;
}

IntMatrix IntMatrix::operator-() const {
    IntMatrix S = *this;
    for (auto& x : S.a_) x = -x;
    return S;
}

IntMatrix IntMatrix::scaled(const Int& s) const {
    IntMatrix S = *this;
    for (auto& x : S.a_) x *= s;
    return S;
}

bool IntMatrix::operator<(const IntMatrix& o) const {
    if (r_ != o.r_) return r_ < o.r_;
    if (c_ != o.c_) return c_ < o.c_;
    for (size_t k = 0; k < a_.size(); ++k) {
        int c = cmp(a_[k], o.a_[k]);
        if (c) return c < 0;
    }
    return false;
}

IntVec IntMatrix::left_mul(const IntVec& x) const {
    if (x.size() != r_) throw LinalgError("left_mul size");
    IntVec y(c_);
    for (size_t i = 0; i < r_; ++i) {
        if (sgn(x[i]) == 0) continue;
        for (size_t j = 0; j < c_; ++j) {
            const Int& a = (*this)(i, j);
            if (sgn(a)) mpz_addmul(y[j].get_mpz_t(), x[i].get_mpz_t(), a.get_mpz_t());
        }
    }
    return y;
}

RatVec IntMatrix::left_mul(const RatVec& x) const {
    if (x.size() != r_) throw LinalgError("left_mul size");
    RatVec y(c_);
    for (size_t i = 0; i < r_; ++i) {
        if (sgn(x[i]) == 0) continue;
        for (size_t j = 0; j < c_; ++j) {
            const Int& a = (*this)(i, j);
            if (sgn(a)) y[j] += x[i] * a;
        }
    }
    return y;
}

IntVec IntMatrix::right_mul(const IntVec& x) const {
    if (x.size() != c_) throw LinalgError("right_mul size");
    IntVec y(r_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t j = 0; j < c_; ++j) {
            const Int& a = (*this)(i, j);
            if (sgn(a) && sgn(x[j])) mpz_addmul(y[i].get_mpz_t(), a.get_mpz_t(), x[j].get_mpz_t());
        }
    return y;
}

bool IntMatrix::is_zero() const {
    for (auto& x : a_)
        if (sgn(x)) return false;
    return true;
}

bool IntMatrix::is_identity() const {
    if (r_ != c_) return false;
    for (size_t i = 0; i < r_; ++i)
        for (size_t j = 0; j < c_; ++j)
            if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

size_t IntMatrix::nonzeros() const {
    size_t n = 0;
    for (auto& x : a_)
        if (sgn(x)) ++n;
    return n;
}

Int IntMatrix::det() const {
    if (r_ != c_) throw LinalgError("det of non-square matrix");
    size_t n = r_;
    if (n == 0) return 1;
    // Bareiss fraction-free elimination
    std::vector<Int> m = a_;
    auto at = [&](size_t i, size_t j) -> Int& { return m[i * n + j]; };
    Int prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (sgn(at(k, k)) == 0) {
            size_t p = k + 1;
            while (p < n && sgn(at(p, k)) == 0) ++p;
            if (p == n) return 0;
            for (size_t j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                at(i, j) = at(i, j) * at(k, k) - at(i, k) * at(k, j);
                mpz_divexact(at(i, j).get_mpz_t(), at(i, j).get_mpz_t(), prev.get_mpz_t());
            }
        prev = at(k, k);
    }
    return sign * at(n - 1, n - 1);
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < r_; ++i) {
        os << (i ? "," : "") << "[";
        for (size_t j = 0; j < c_; ++j) os << (j ? "," : "") << (*this)(i, j).get_str();
        os << "]";
    }
    os << "]";
    return os.str();
}

std::vector<std::vector<long>> IntMatrix::to_longs() const {
    std::vector<std::vector<long>> out(r_, std::vector<long>(c_));
    for (size_t i = 0; i < r_; ++i)
        for (size_t j = 0; j < c_; ++j) {
            if (!(*this)(i, j).fits_slong_p()) throw LinalgError("entry does not fit in long");
            out[i][j] = (*this)(i, j).get_si();
        }
    return out;
}

// ---------------------------------------------------------------------------
// row operations on vectors of Int

namespace {

inline int cmpabs(const Int& a, const Int& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

// a -= q*b, touching only positions from `from`
inline void axpy_neg(IntVec& a, const Int& q, const IntVec& b, size_t from = 0) {
    for (size_t j = from; j < a.size(); ++j)
        if (sgn(b[j])) mpz_submul(a[j].get_mpz_t(), q.get_mpz_t(), b[j].get_mpz_t());
}

inline void negate(IntVec& a) {
    for (auto& x : a) mpz_neg(x.get_mpz_t(), x.get_mpz_t());
}

// quotient rounded to nearest (ties toward floor), keeps entries small
Int round_div(const Int& a, const Int& b) {
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Int twice = 2 * r;
    if (sgn(b) > 0 ? twice > b : twice < b) q += 1;
    return q;
}

}  // namespace

HermiteResult hermite_form(const IntMatrix& A, bool with_transform) {
    size_t m = A.rows(), n = A.cols();
    std::vector<IntVec> H(m), U;
    for (size_t i = 0; i < m; ++i) H[i] = A.row(i);
    if (with_transform) {
        U.assign(m, IntVec(m));
        for (size_t i = 0; i < m; ++i) U[i][i] = 1;
    }
    HermiteResult res;
    size_t r = 0;
    for (size_t c = 0; c < n && r < m; ++c) {
        bool found = false;
        for (;;) {
            size_t p = m;
            for (size_t i = r; i < m; ++i) {
                if (sgn(H[i][c]) == 0) continue;
                if (p == m || cmpabs(H[i][c], H[p][c]) < 0) p = i;
            }
            if (p == m) break;
            found = true;
            if (p != r) {
                std::swap(H[p], H[r]);
                if (with_transform) std::swap(U[p], U[r]);
            }
            bool clean = true;
            for (size_t i = r + 1; i < m; ++i) {
                if (sgn(H[i][c]) == 0) continue;
                Int q = round_div(H[i][c], H[r][c]);
                axpy_neg(H[i], q, H[r], c);
                if (with_transform) axpy_neg(U[i], q, U[r]);
                if (sgn(H[i][c])) clean = false;
            }
            if (clean) break;
        }
        if (!found) continue;
        if (sgn(H[r][c]) < 0) {
            negate(H[r]);
            if (with_transform) negate(U[r]);
        }
        for (size_t i = 0; i < r; ++i) {
            if (sgn(H[i][c]) == 0) continue;
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), H[i][c].get_mpz_t(), H[r][c].get_mpz_t());
            if (sgn(q) == 0) continue;
            axpy_neg(H[i], q, H[r], c);
            if (with_transform) axpy_neg(U[i], q, U[r]);
        }
        res.pivots.push_back(c);
        ++r;
    }
    res.rank = r;
    res.H = IntMatrix::from_rows(H, n);
    if (m == 0) res.H = IntMatrix(0, n);
    if (with_transform) res.U = m ? IntMatrix::from_rows(U) : IntMatrix(0, 0);
    return res;
}

// ---------------------------------------------------------------------------
// Smith form

IntVec SmithDecomposition::diagonal() const {
    size_t k = std::min(S.rows(), S.cols());
    IntVec d(k);
    for (size_t i = 0; i < k; ++i) d[i] = S(i, i);
    return d;
}

namespace {

struct SmithWork {
    size_t m, n;
    std::vector<IntVec> a;      // rows
    std::vector<IntVec> U;      // m x m rows
    std::vector<IntVec> Vt;     // V stored transposed: n rows of length n
    bool track;

    void swap_rows(size_t i, size_t j) {
        std::swap(a[i], a[j]);
        if (track) std::swap(U[i], U[j]);
    }
    void swap_cols(size_t i, size_t j) {
        for (size_t r = 0; r < m; ++r) std::swap(a[r][i], a[r][j]);
        if (track) std::swap(Vt[i], Vt[j]);
    }
    void row_sub(size_t i, const Int& q, size_t k) {  // row i -= q*row k
        axpy_neg(a[i], q, a[k]);
        if (track) axpy_neg(U[i], q, U[k]);
    }
    void col_sub(size_t j, const Int& q, size_t k) {  // col j -= q*col k
        for (size_t r = 0; r < m; ++r)
            if (sgn(a[r][k])) mpz_submul(a[r][j].get_mpz_t(), q.get_mpz_t(), a[r][k].get_mpz_t());
        if (track) axpy_neg(Vt[j], q, Vt[k]);
    }
    void row_add(size_t i, size_t k) {  // row i += row k
        for (size_t j = 0; j < n; ++j) a[i][j] += a[k][j];
        if (track)
            for (size_t j = 0; j < m; ++j) U[i][j] += U[k][j];
    }
    void neg_row(size_t i) {
        negate(a[i]);
        if (track) negate(U[i]);
    }

    size_t run() {
        size_t t = 0;
        size_t lim = std::min(m, n);
        while (t < lim) {
            // minimal nonzero entry of the trailing block
            size_t bi = m, bj = n;
            for (size_t i = t; i < m; ++i)
                for (size_t j = t; j < n; ++j)
                    if (sgn(a[i][j]) && (bi == m || cmpabs(a[i][j], a[bi][bj]) < 0)) bi = i, bj = j;
            if (bi == m) break;
            if (bi != t) swap_rows(bi, t);
            if (bj != t) swap_cols(bj, t);
            for (;;) {
                bool dirty = false;
                for (size_t i = t + 1; i < m; ++i) {
                    if (sgn(a[i][t]) == 0) continue;
                    Int q = round_div(a[i][t], a[t][t]);
                    row_sub(i, q, t);
                    if (sgn(a[i][t])) dirty = true;
                }
                for (size_t j = t + 1; j < n; ++j) {
                    if (sgn(a[t][j]) == 0) continue;
                    Int q = round_div(a[t][j], a[t][t]);
                    col_sub(j, q, t);
                    if (sgn(a[t][j])) dirty = true;
                }
                if (dirty) {
                    // move smallest remainder in row/col t to the pivot
                    size_t bi2 = t, bj2 = t;
                    for (size_t i = t + 1; i < m; ++i)
                        if (sgn(a[i][t]) && cmpabs(a[i][t], a[bi2][bj2]) < 0) bi2 = i, bj2 = t;
                    for (size_t j = t + 1; j < n; ++j)
                        if (sgn(a[t][j]) && cmpabs(a[t][j], a[bi2][bj2]) < 0) bi2 = t, bj2 = j;
                    if (bi2 != t) swap_rows(bi2, t);
                    if (bj2 != t) swap_cols(bj2, t);
                    continue;
                }
                // divisibility of the trailing block
                size_t bad = m;
                for (size_t i = t + 1; i < m && bad == m; ++i)
                    for (size_t j = t + 1; j < n; ++j)
                        if (sgn(a[i][j]) && !mpz_divisible_p(a[i][j].get_mpz_t(), a[t][t].get_mpz_t())) {
                            bad = i;
                            break;
                        }
                if (bad == m) break;
                row_add(t, bad);
            }
            if (sgn(a[t][t]) < 0) neg_row(t);
            ++t;
        }
        return t;
    }
};

}  // namespace

SmithDecomposition smith_form(const IntMatrix& A) {
    SmithWork w;
    w.m = A.rows();
    w.n = A.cols();
    w.track = true;
    w.a.resize(w.m);
    for (size_t i = 0; i < w.m; ++i) w.a[i] = A.row(i);
    w.U.assign(w.m, IntVec(w.m));
    for (size_t i = 0; i < w.m; ++i) w.U[i][i] = 1;
    w.Vt.assign(w.n, IntVec(w.n));
    for (size_t i = 0; i < w.n; ++i) w.Vt[i][i] = 1;
    SmithDecomposition d;
    d.rank = w.run();
    d.S = w.m ? IntMatrix::from_rows(w.a, w.n) : IntMatrix(0, w.n);
    d.U = w.m ? IntMatrix::from_rows(w.U) : IntMatrix(0, 0);
    d.V = w.n ? IntMatrix::from_rows(w.Vt).transpose() : IntMatrix(0, 0);
    return d;
}

IntVec elementary_divisors(const IntMatrix& A) {
    // Hermite first (cheap on tall sparse input), then Smith on the square part
    HermiteResult h = hermite_form(A, false);
    IntMatrix B = h.H.block(0, 0, h.rank, A.cols());
    SmithWork w;
    w.m = B.rows();
    w.n = B.cols();
    w.track = false;
    w.a.resize(w.m);
    for (size_t i = 0; i < w.m; ++i) w.a[i] = B.row(i);
    size_t r = w.run();
    IntVec d(r);
    for (size_t i = 0; i < r; ++i) d[i] = w.a[i][i];
    return d;
}

// ---------------------------------------------------------------------------
// solving

std::optional<IntSolution> solve_integer(const IntMatrix& A, const IntVec& b) {
    if (b.size() != A.rows()) throw LinalgError("solve_integer dimension mismatch");
    SmithDecomposition d = smith_form(A);
    IntVec ub = d.U.rows() ? d.U.right_mul(b) : IntVec{};
    IntVec y(A.cols());
    for (size_t i = 0; i < A.rows(); ++i) {
        if (i < d.rank) {
            if (!mpz_divisible_p(ub[i].get_mpz_t(), d.S(i, i).get_mpz_t())) return std::nullopt;
            mpz_divexact(y[i].get_mpz_t(), ub[i].get_mpz_t(), d.S(i, i).get_mpz_t());
        } else if (sgn(ub[i])) {
            return std::nullopt;
        }
    }
    IntSolution s;
    s.x = A.cols() ? d.V.right_mul(y) : IntVec{};
    std::vector<size_t> kc;
    for (size_t j = d.rank; j < A.cols(); ++j) kc.push_back(j);
    s.kernel = d.V.select_cols(kc).transpose();
    if (kc.empty()) s.kernel = IntMatrix(0, A.cols());
    return s;
}

std::optional<IntVec> solve_row(const IntMatrix& A, const IntVec& b) { return RowSolver(A).solve(b); }

RowSolver::RowSolver(const IntMatrix& A) : rows_(A.rows()), cols_(A.cols()) {
    if (rows_) h_ = hermite_form(A, true);
}

std::optional<IntVec> RowSolver::solve(const IntVec& b) const {
    if (b.size() != cols_) throw LinalgError("solve_row dimension mismatch");
    if (rows_ == 0) {
        for (auto& x : b)
            if (sgn(x)) return std::nullopt;
        return IntVec{};
    }
    // Hermite form of A gives a fast triangular solve
    IntVec rem = b;
    IntVec y(rows_);
    for (size_t k = 0; k < h_.rank; ++k) {
        size_t c = h_.pivots[k];
        // entries left of the pivot must already vanish
        if (sgn(rem[c]) == 0) continue;
        if (!mpz_divisible_p(rem[c].get_mpz_t(), h_.H(k, c).get_mpz_t())) return std::nullopt;
        Int q;
        mpz_divexact(q.get_mpz_t(), rem[c].get_mpz_t(), h_.H(k, c).get_mpz_t());
        y[k] = q;
        axpy_neg(rem, q, h_.H.row(k), c);
    }
    for (auto& x : rem)
        if (sgn(x)) return std::nullopt;
    return h_.U.left_mul(y);
}

bool RowSolver::contains(const IntVec& b) const { return solve(b).has_value(); }

Rat rat(long num, long den) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

Rat frac(const Rat& q) {
    Int f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    Rat r = q - Rat(f);
    r.canonicalize();
    return r;
}

RatVec reduce_mod1(const RatVec& v) {
    RatVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = frac(v[i]);
    return r;
}

bool is_zero_mod1(const RatVec& v) {
    for (auto& x : v)
        if (x.get_den() != 1) return false;
    return true;
}

std::optional<RatVec> solve_mod1(const IntMatrix& A, const RatVec& v) {
    if (v.size() != A.rows()) throw LinalgError("solve_mod1 dimension mismatch");
    SmithDecomposition d = smith_form(A);
    RatVec uv(A.rows());
    for (size_t i = 0; i < A.rows(); ++i)
        for (size_t j = 0; j < A.rows(); ++j)
            if (sgn(d.U(i, j))) uv[i] += Rat(d.U(i, j)) * v[j];
    RatVec y(A.cols());
    for (size_t i = 0; i < A.rows(); ++i) {
        if (i < d.rank) {
            y[i] = frac(uv[i] / Rat(d.S(i, i)));
        } else if (frac(uv[i]) != 0) {
            return std::nullopt;
        }
    }
    RatVec u(A.cols());
    for (size_t i = 0; i < A.cols(); ++i)
        for (size_t j = 0; j < A.cols(); ++j)
            if (sgn(d.V(i, j))) u[i] += Rat(d.V(i, j)) * y[j];
    return reduce_mod1(u);
}

// ---------------------------------------------------------------------------
// lattices

IntMatrix left_kernel(const IntMatrix& A) {
    if (A.rows() == 0) return IntMatrix(0, 0);
    HermiteResult h = hermite_form(A, true);
    std::vector<size_t> idx;
    for (size_t i = h.rank; i < A.rows(); ++i) idx.push_back(i);
    if (idx.empty()) return IntMatrix(0, A.rows());
    IntMatrix K = h.U.select_rows(idx);
    HermiteResult hk = hermite_form(K, false);
    return hk.H.block(0, 0, hk.rank, A.rows());
}

IntMatrix right_kernel(const IntMatrix& A) {
    if (A.rows() == 0) return IntMatrix::identity(A.cols());
    return left_kernel(A.transpose());
}

IntMatrix row_basis(const IntMatrix& A) {
    if (A.rows() == 0) return IntMatrix(0, A.cols());
    HermiteResult h = hermite_form(A, false);
    return h.H.block(0, 0, h.rank, A.cols());
}

bool in_row_span(const IntMatrix& basis_hnf, const IntVec& v) {
    IntMatrix B = row_basis(basis_hnf);
    if (B.rows() == 0) {
        for (auto& x : v)
            if (sgn(x)) return false;
        return true;
    }
    return solve_row(B, v).has_value();
}

IntMatrix saturation(const IntMatrix& A) {
    IntMatrix K = right_kernel(A);
    if (K.rows() == 0) return IntMatrix::identity(A.cols());
    return left_kernel(K.transpose());
}

IntMatrix intersect_lattices(const IntMatrix& A, const IntMatrix& B) {
    size_t n = A.cols();
    if (A.rows() == 0 || B.rows() == 0) return IntMatrix(0, n);
    IntMatrix S = IntMatrix::vstack(A, -B);
    IntMatrix K = left_kernel(S);
    if (K.rows() == 0) return IntMatrix(0, n);
    IntMatrix Ka = K.block(0, 0, K.rows(), A.rows());
    return row_basis(Ka * A);
}

// RowLattice ---------------------------------------------------------------

bool RowLattice::contains(const IntVec& v0) const {
    IntVec v = v0;
    size_t k = 0;
    for (size_t j = 0; j < dim_; ++j) {
        if (sgn(v[j]) == 0) continue;
        while (k < piv_.size() && piv_[k] < j) ++k;
        if (k == piv_.size() || piv_[k] != j) return false;
        if (!mpz_divisible_p(v[j].get_mpz_t(), rows_[k][j].get_mpz_t())) return false;
        Int q;
        mpz_divexact(q.get_mpz_t(), v[j].get_mpz_t(), rows_[k][j].get_mpz_t());
        axpy_neg(v, q, rows_[k], j);
    }
    return true;
}

IntVec RowLattice::reduce(const IntVec& v0) const {
    IntVec v = v0;
    for (size_t k = 0; k < rows_.size(); ++k) {
        size_t j = piv_[k];
        if (sgn(v[j]) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), v[j].get_mpz_t(), rows_[k][j].get_mpz_t());
        axpy_neg(v, q, rows_[k], j);
    }
    return v;
}

bool RowLattice::add(const IntVec& v) {
    if (v.size() != dim_) throw LinalgError("RowLattice dimension mismatch");
    if (contains(v)) return false;
    insert(v);
    return true;
}

void RowLattice::insert(IntVec v) {
    for (size_t j = 0; j < dim_; ++j) {
        if (sgn(v[j]) == 0) continue;
        auto it = std::lower_bound(piv_.begin(), piv_.end(), j);
        size_t k = it - piv_.begin();
        if (it == piv_.end() || *it != j) {
            if (sgn(v[j]) < 0) negate(v);
            piv_.insert(it, j);
            rows_.insert(rows_.begin() + k, std::move(v));
            return;
        }
        IntVec& r = rows_[k];
        if (mpz_divisible_p(v[j].get_mpz_t(), r[j].get_mpz_t())) {
            Int q;
            mpz_divexact(q.get_mpz_t(), v[j].get_mpz_t(), r[j].get_mpz_t());
            axpy_neg(v, q, r, j);
            continue;
        }
        // gcd step: (r, v) -> (s r + t v, (-b/g) r + (a/g) v)
        Int g, s, t, a = r[j], b = v[j];
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        Int ag = a / g, bg = b / g;
        IntVec nr(dim_), nv(dim_);
        for (size_t c = j; c < dim_; ++c) {
            nr[c] = s * r[c] + t * v[c];
            nv[c] = ag * v[c] - bg * r[c];
        }
        if (sgn(nr[j]) < 0) negate(nr);
        r = std::move(nr);
        v = std::move(nv);
    }
}

IntMatrix RowLattice::basis() const { return IntMatrix::from_rows(rows_, dim_); }

// ---------------------------------------------------------------------------

size_t AbelianPresentation::free_rank() const {
    size_t k = 0;
    for (auto& x : invariants)
        if (sgn(x) == 0) ++k;
    return k;
}

std::string AbelianPresentation::str() const {
    if (invariants.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& x : invariants) {
        os << (first ? "" : " x ") << (sgn(x) == 0 ? std::string("Z") : "Z/" + x.get_str());
        first = false;
    }
    return os.str();
}

AbelianPresentation cokernel(const IntMatrix& A) {
    size_t n = A.cols();
    AbelianPresentation p;
    SmithDecomposition d = smith_form(A.rows() ? A : IntMatrix(0, n));
    std::vector<size_t> keep;
    for (size_t i = 0; i < d.rank; ++i)
        if (d.S(i, i) != 1) {
            keep.push_back(i);
            p.invariants.push_back(d.S(i, i));
        }
    for (size_t i = d.rank; i < n; ++i) {
        keep.push_back(i);
        p.invariants.push_back(0);
    }
    IntMatrix V = n ? d.V : IntMatrix(0, 0);
    p.projection = V.select_cols(keep);
    return p;
}

std::optional<std::vector<RatVec>> rational_inverse(const IntMatrix& A) {
    size_t n = A.rows();
    if (A.cols() != n) throw LinalgError("inverse of non-square matrix");
    std::vector<RatVec> m(n, RatVec(2 * n));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) m[i][j] = A(i, j);
        m[i][n + i] = 1;
    }
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && sgn(m[p][c]) == 0) ++p;
        if (p == n) return std::nullopt;
        std::swap(m[p], m[c]);
        Rat inv = 1 / m[c][c];
        for (auto& x : m[c]) x *= inv;
        for (size_t i = 0; i < n; ++i) {
            if (i == c || sgn(m[i][c]) == 0) continue;
            Rat f = m[i][c];
            for (size_t j = 0; j < 2 * n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    std::vector<RatVec> out(n, RatVec(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) out[i][j] = m[i][n + j];
    return out;
}

IntMatrix inverse_unimodular(const IntMatrix& A) {
    auto inv = rational_inverse(A);
    if (!inv) throw LinalgError("matrix is singular");
    size_t n = A.rows();
    IntMatrix B(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if ((*inv)[i][j].get_den() != 1) throw LinalgError("matrix is not unimodular");
            B(i, j) = (*inv)[i][j].get_num();
        }
    return B;
}

Int gcd_vec(const IntVec& v) {
    Int g = 0;
    for (auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

IntVec primitive(const IntVec& v) {
    Int g = gcd_vec(v);
    if (sgn(g) == 0) return v;
    IntVec w(v.size());
    for (size_t i = 0; i < v.size(); ++i) mpz_divexact(w[i].get_mpz_t(), v[i].get_mpz_t(), g.get_mpz_t());
    return w;
}

std::string vec_str(const IntVec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
    return s + ")";
}

std::string vec_str(const RatVec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
    return s + ")";
}


void lll_reduce(std::vector<IntVec>& b) {
    size_t k = b.size();
    if (k < 2) return;
    size_t n = b[0].size();
    std::vector<RatVec> bs;
    std::vector<RatVec> mu;
    std::vector<Rat> B;
    auto gram = [&]() {
        bs.assign(k, RatVec(n));
        mu.assign(k, RatVec(k));
        B.assign(k, Rat(0));
        for (size_t i = 0; i < k; ++i) {
            for (size_t t = 0; t < n; ++t) bs[i][t] = b[i][t];
            for (size_t j = 0; j < i; ++j) {
                Rat num = 0;
                for (size_t t = 0; t < n; ++t) num += Rat(b[i][t]) * bs[j][t];
                mu[i][j] = sgn(B[j]) ? num / B[j] : Rat(0);
                for (size_t t = 0; t < n; ++t) bs[i][t] -= mu[i][j] * bs[j][t];
            }
            B[i] = 0;
            for (size_t t = 0; t < n; ++t) B[i] += bs[i][t] * bs[i][t];
        }
    };
    gram();
    size_t i = 1;
    int guard = 0;
    while (i < k && guard++ < 100000) {
        for (size_t j = i; j-- > 0;) {
            Rat m = mu[i][j];
            Int q;
            Rat half = m + Rat(1, 2);
            mpz_fdiv_q(q.get_mpz_t(), half.get_num_mpz_t(), half.get_den_mpz_t());
            if (sgn(q)) {
                for (size_t t = 0; t < n; ++t) b[i][t] -= q * b[j][t];
                gram();
            }
        }
        if (B[i] >= (Rat(3, 4) - mu[i][i - 1] * mu[i][i - 1]) * B[i - 1]) {
            ++i;
        } else {
            std::swap(b[i], b[i - 1]);
            gram();
            i = std::max<size_t>(i - 1, 1);
        }
    }
}


}  // namespace equitor
