// Exact integer and Q/Z linear algebra on dense GMP matrices.
#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace equitor {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(size_t r, size_t c) : r_(r), c_(c), a_(r * c) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(size_t n);
    static IntMatrix from_rows(const std::vector<IntVec>& rows, size_t cols = 0);
    static IntMatrix from_longs(const std::vector<std::vector<long>>& rows);
    static IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
    static IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    bool empty() const { return r_ == 0 || c_ == 0; }

    Int& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
    const Int& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

    IntVec row(size_t i) const;
    IntVec col(size_t j) const;
    void set_row(size_t i, const IntVec& v);
    void append_row(const IntVec& v);
    IntMatrix block(size_t r0, size_t c0, size_t nr, size_t nc) const;
    void set_block(size_t r0, size_t c0, const IntMatrix& b);
    IntMatrix select_rows(const std::vector<size_t>& idx) const;
    IntMatrix select_cols(const std::vector<size_t>& idx) const;

    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    IntMatrix operator-() const;
    IntMatrix& operator+=(const IntMatrix& o);
    IntMatrix scaled(const Int& s) const;
    bool operator==(const IntMatrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
    bool operator!=(const IntMatrix& o) const { return !(*this == o); }
    bool operator<(const IntMatrix& o) const;

    IntVec left_mul(const IntVec& x) const;   // x * A
    IntVec right_mul(const IntVec& x) const;  // A * x
    RatVec left_mul(const RatVec& x) const;

    bool is_zero() const;
    bool is_identity() const;
    Int det() const;
    size_t nonzeros() const;
    std::string str() const;
    std::vector<std::vector<long>> to_longs() const;

private:
    size_t r_ = 0, c_ = 0;
    std::vector<Int> a_;
};

// Row Hermite form: U*A = H, U unimodular. Pivots positive, entries above a
// pivot reduced into [0, pivot). Zero rows are moved to the bottom.
struct HermiteResult {
    IntMatrix H, U;
    size_t rank = 0;
    std::vector<size_t> pivots;  // pivot column of each nonzero row
};
HermiteResult hermite_form(const IntMatrix& A, bool with_transform = true);

struct SmithDecomposition {
    IntMatrix U, S, V;  // U*A*V = S
    size_t rank = 0;
    IntVec diagonal() const;
};
SmithDecomposition smith_form(const IntMatrix& A);

// Nonzero elementary divisors of A without transforms, in divisibility order.
IntVec elementary_divisors(const IntMatrix& A);

struct IntSolution {
    IntVec x;
    IntMatrix kernel;  // rows: basis of {y : A*y = 0}
};
// A*x = b over Z.
std::optional<IntSolution> solve_integer(const IntMatrix& A, const IntVec& b);
// x*A = b over Z (row form).
std::optional<IntVec> solve_row(const IntMatrix& A, const IntVec& b);
// solve_row with the Hermite form of A computed once
class RowSolver {
public:
    explicit RowSolver(const IntMatrix& A);
    std::optional<IntVec> solve(const IntVec& b) const;
    bool contains(const IntVec& b) const;
    size_t rank() const { return h_.rank; }

private:
    size_t rows_, cols_;
    HermiteResult h_;
};

// Canonical fraction num/den (mpq_class(num, den) alone is not reduced).
Rat rat(long num, long den);

// Q/Z helpers. Entries normalised into [0,1).
Rat frac(const Rat& q);
RatVec reduce_mod1(const RatVec& v);
bool is_zero_mod1(const RatVec& v);
std::optional<RatVec> solve_mod1(const IntMatrix& A, const RatVec& v);

// Lattice helpers on row vectors.
IntMatrix left_kernel(const IntMatrix& A);   // rows x with x*A = 0
IntMatrix right_kernel(const IntMatrix& A);  // rows y with A*y = 0
IntMatrix row_basis(const IntMatrix& A);     // nonzero HNF rows
bool in_row_span(const IntMatrix& basis_hnf, const IntVec& v);
IntMatrix saturation(const IntMatrix& A);    // (rowspan A tensor Q) cap Z^n
IntMatrix intersect_lattices(const IntMatrix& A, const IntMatrix& B);

// Incremental row lattice in Hermite form; cheap membership and insertion.
class RowLattice {
public:
    explicit RowLattice(size_t dim) : dim_(dim) {}
    size_t dim() const { return dim_; }
    size_t rank() const { return rows_.size(); }
    bool contains(const IntVec& v) const;
    // returns true if the lattice grew
    bool add(const IntVec& v);
    IntMatrix basis() const;
    IntVec reduce(const IntVec& v) const;

private:
    size_t dim_;
    std::vector<IntVec> rows_;   // echelon rows, sorted by pivot
    std::vector<size_t> piv_;
    void insert(IntVec v);
};

struct AbelianPresentation {
    IntVec invariants;   // >1 torsion factors then 0 for free summands
    IntMatrix projection;  // ambient coordinates -> generator coordinates (x*P)
    size_t free_rank() const;
    std::string str() const;
};
// Z^n / rowspan(A), A with n columns.
AbelianPresentation cokernel(const IntMatrix& A);

IntMatrix inverse_unimodular(const IntMatrix& A);
std::optional<std::vector<RatVec>> rational_inverse(const IntMatrix& A);

// LLL reduction (delta = 3/4) of linearly independent integer rows, in place.
void lll_reduce(std::vector<IntVec>& basis);

Int gcd_vec(const IntVec& v);
IntVec primitive(const IntVec& v);
std::string vec_str(const IntVec& v);
std::string vec_str(const RatVec& v);

struct LinalgError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace equitor
