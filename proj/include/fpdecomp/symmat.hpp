#pragma once

// Symmetric matrices over F_p with congruence (simultaneous row/column)
// transformations: diagonalization, canonical-form normalization, and the
// 2x2 rescaling maps that move a diagonal entry between square classes.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "fpdecomp/fp.hpp"

namespace fpdecomp {

/// Dense matrix over F_p.  Entries are canonical representatives in [0, p).
class Matrix {
public:
    Matrix(int rows, int cols, PrimeModulus m);

    static Matrix identity(int n, PrimeModulus m);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    PrimeModulus modulus() const { return m_; }

    std::uint64_t at(int i, int j) const { return a_[idx(i, j)]; }
    void set(int i, int j, std::uint64_t v) { a_[idx(i, j)] = v % m_.p(); }

    Matrix operator*(const Matrix& o) const;
    Matrix transposed() const;

    /// Exact determinant via Gaussian elimination, pivoting on the first
    /// nonzero entry in each column.
    Scalar determinant() const;

    /// Gauss-Jordan inverse; nullopt when singular.
    std::optional<Matrix> inverse() const;

    bool is_invertible() const { return !determinant().is_zero(); }

    // Elementary operations (used to accumulate congruence transforms).
    void swap_rows(int a, int b);
    void swap_cols(int a, int b);
    void add_row(int dst, int src, std::uint64_t c);  // row dst += c * row src
    void add_col(int dst, int src, std::uint64_t c);
    void scale_row(int i, std::uint64_t c);
    void scale_col(int j, std::uint64_t c);

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    int idx(int i, int j) const;

    int rows_, cols_;
    PrimeModulus m_;
    std::vector<std::uint64_t> a_;
};

/// Symmetric square matrix; set() writes both mirror entries.
class SymMatrix {
public:
    SymMatrix(int n, PrimeModulus m) : mat_(n, n, m) {}

    /// Throws std::invalid_argument when the input is not symmetric.
    static SymMatrix from_matrix(const Matrix& m);

    int size() const { return mat_.rows(); }
    PrimeModulus modulus() const { return mat_.modulus(); }
    std::uint64_t at(int i, int j) const { return mat_.at(i, j); }

    void set(int i, int j, std::uint64_t v) {
        mat_.set(i, j, v);
        mat_.set(j, i, v);
    }

    const Matrix& mat() const { return mat_; }
    Scalar determinant() const { return mat_.determinant(); }

    friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

private:
    Matrix mat_;
};

/// An invertible R together with the endpoints it connects:
/// R^t * source * R = target, exactly.
struct CongruenceMap {
    Matrix r;
    SymMatrix source;
    SymMatrix target;

    /// Re-checks invertibility and the congruence identity entrywise.
    bool check() const;
};

CongruenceMap identity_map(const SymMatrix& a);

/// compose(a: X->Y, b: Y->Z) = (a.r * b.r): X->Z.  Endpoints must agree
/// entrywise; throws std::invalid_argument otherwise.
CongruenceMap compose(const CongruenceMap& a, const CongruenceMap& b);

/// Reverses a map: (R^-1): target -> source.
CongruenceMap invert(const CongruenceMap& m);

/// Canonical congruence class of a symmetric matrix over odd p:
/// diagonal (1, ..., 1 [, t], 0, ..., 0) with t the smallest nonresidue.
struct CanonicalForm {
    enum class Tail { Empty, AllOnes, OnesThenT };

    int n = 0;
    int rank = 0;
    Tail tail = Tail::Empty;
    std::uint64_t t = 0;  // meaningful for OnesThenT
    ResidueClass cls = ResidueClass::Zero;  // Zero iff rank = 0

    std::vector<std::uint64_t> diagonal() const;
    SymMatrix to_matrix(PrimeModulus m) const;

    friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

/// Symmetric elimination over odd p.  Returns (R, diag) with R invertible and
/// R^t A R = diag(d_0..d_{r-1}, 0..0); zero rows accumulate at the end.
///
/// Pivot order: scan the working block for a nonzero diagonal entry first and
/// swap it in; if the whole working diagonal is zero, take the first nonzero
/// off-diagonal a_ij (row-major) and add half of row/column j onto row/column
/// i, which makes the (i,i) entry a_ij (2 and a_ij are invertible, so this is
/// always possible in odd characteristic).  First-found order throughout.
std::pair<CongruenceMap, std::vector<Scalar>>
congruence_diagonalize(const SymMatrix& a);

/// The 2x2 map M with M^t I M = x I.  For residues M = sqrt(x) I; for
/// nonresidues, with x = a + b a sum of two residues,
/// M = [[sqrt a, sqrt b], [-sqrt b, sqrt a]].
CongruenceMap pair_rescale(const Scalar& x);

/// Full normalization: diagonalize, rescale each residue entry to 1 and each
/// nonresidue entry to t, collapse (t, t) pairs to (1, 1), and move the
/// surviving t (if any) to the last nonzero position.  The composed transform
/// is verified against the canonical diagonal before returning.
std::pair<CongruenceMap, CanonicalForm> normalize(const SymMatrix& a);

} // namespace fpdecomp
