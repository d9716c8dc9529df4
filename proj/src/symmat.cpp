#include "fpdecomp/symmat.hpp"

#include <stdexcept>
#include <string>

namespace fpdecomp {

namespace {

std::uint64_t neg_mod(std::uint64_t v, std::uint64_t p) {
    return v == 0 ? 0 : p - v;
}

} // namespace

Matrix::Matrix(int rows, int cols, PrimeModulus m)
    : rows_(rows), cols_(cols), m_(m), a_(static_cast<std::size_t>(rows) * cols, 0) {
    if (rows < 0 || cols < 0) {
        throw std::invalid_argument("Matrix: negative dimension");
    }
}

int Matrix::idx(int i, int j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_) {
        throw std::out_of_range("Matrix: index (" + std::to_string(i) + ", " +
                                std::to_string(j) + ") outside " +
                                std::to_string(rows_) + "x" + std::to_string(cols_));
    }
    return i * cols_ + j;
}

Matrix Matrix::identity(int n, PrimeModulus m) {
    Matrix r(n, n, m);
    for (int i = 0; i < n; ++i) r.set(i, i, 1);
    return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (!(m_ == o.m_)) {
        throw std::invalid_argument("Matrix: mixed moduli in product");
    }
    if (cols_ != o.rows_) {
        throw std::invalid_argument("Matrix: inner dimensions disagree");
    }
    Matrix out(rows_, o.cols_, m_);
    const std::uint64_t p = m_.p();
    for (int i = 0; i < rows_; ++i) {
        for (int k = 0; k < cols_; ++k) {
            const std::uint64_t aik = at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < o.cols_; ++j) {
                const std::uint64_t term = detail::mul_mod(aik, o.at(k, j), p);
                out.set(i, j, (out.at(i, j) + term) % p);
            }
        }
    }
    return out;
}

Matrix Matrix::transposed() const {
    Matrix out(cols_, rows_, m_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.set(j, i, at(i, j));
    return out;
}

Scalar Matrix::determinant() const {
    if (rows_ != cols_) {
        throw std::invalid_argument("Matrix: determinant of a non-square matrix");
    }
    Matrix w = *this;
    const std::uint64_t p = m_.p();
    std::uint64_t det = 1;
    for (int k = 0; k < rows_; ++k) {
        int pivot = -1;
        for (int i = k; i < rows_; ++i) {
            if (w.at(i, k) != 0) { pivot = i; break; }
        }
        if (pivot < 0) return Scalar(0, m_);
        if (pivot != k) {
            w.swap_rows(pivot, k);
            det = neg_mod(det, p);
        }
        const std::uint64_t pv = w.at(k, k);
        det = detail::mul_mod(det, pv, p);
        const std::uint64_t pv_inv = inv(Scalar(pv, m_)).value();
        for (int i = k + 1; i < rows_; ++i) {
            const std::uint64_t f = w.at(i, k);
            if (f == 0) continue;
            const std::uint64_t c = neg_mod(detail::mul_mod(f, pv_inv, p), p);
            w.add_row(i, k, c);
        }
    }
    return Scalar(det, m_);
}

std::optional<Matrix> Matrix::inverse() const {
    if (rows_ != cols_) {
        throw std::invalid_argument("Matrix: inverse of a non-square matrix");
    }
    const int n = rows_;
    const std::uint64_t p = m_.p();
    Matrix w = *this;
    Matrix out = identity(n, m_);
    for (int k = 0; k < n; ++k) {
        int pivot = -1;
        for (int i = k; i < n; ++i) {
            if (w.at(i, k) != 0) { pivot = i; break; }
        }
        if (pivot < 0) return std::nullopt;
        if (pivot != k) {
            w.swap_rows(pivot, k);
            out.swap_rows(pivot, k);
        }
        const std::uint64_t pv_inv = inv(Scalar(w.at(k, k), m_)).value();
        w.scale_row(k, pv_inv);
        out.scale_row(k, pv_inv);
        for (int i = 0; i < n; ++i) {
            if (i == k) continue;
            const std::uint64_t f = w.at(i, k);
            if (f == 0) continue;
            const std::uint64_t c = neg_mod(f, p);
            w.add_row(i, k, c);
            out.add_row(i, k, c);
        }
    }
    return out;
}

void Matrix::swap_rows(int a, int b) {
    if (a == b) return;
    for (int j = 0; j < cols_; ++j) {
        const std::uint64_t t = at(a, j);
        set(a, j, at(b, j));
        set(b, j, t);
    }
}

void Matrix::swap_cols(int a, int b) {
    if (a == b) return;
    for (int i = 0; i < rows_; ++i) {
        const std::uint64_t t = at(i, a);
        set(i, a, at(i, b));
        set(i, b, t);
    }
}

void Matrix::add_row(int dst, int src, std::uint64_t c) {
    const std::uint64_t p = m_.p();
    c %= p;
    for (int j = 0; j < cols_; ++j) {
        const std::uint64_t term = detail::mul_mod(c, at(src, j), p);
        set(dst, j, (at(dst, j) + term) % p);
    }
}

void Matrix::add_col(int dst, int src, std::uint64_t c) {
    const std::uint64_t p = m_.p();
    c %= p;
    for (int i = 0; i < rows_; ++i) {
        const std::uint64_t term = detail::mul_mod(c, at(i, src), p);
        set(i, dst, (at(i, dst) + term) % p);
    }
}

void Matrix::scale_row(int i, std::uint64_t c) {
    const std::uint64_t p = m_.p();
    c %= p;
    for (int j = 0; j < cols_; ++j) set(i, j, detail::mul_mod(c, at(i, j), p));
}

void Matrix::scale_col(int j, std::uint64_t c) {
    const std::uint64_t p = m_.p();
    c %= p;
    for (int i = 0; i < rows_; ++i) set(i, j, detail::mul_mod(c, at(i, j), p));
}

SymMatrix SymMatrix::from_matrix(const Matrix& m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("SymMatrix: input is not square");
    }
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = i + 1; j < m.cols(); ++j) {
            if (m.at(i, j) != m.at(j, i)) {
                throw std::invalid_argument(
                    "SymMatrix: entries (" + std::to_string(i) + ", " + std::to_string(j) +
                    ") and (" + std::to_string(j) + ", " + std::to_string(i) + ") differ");
            }
        }
    }
    SymMatrix s(m.rows(), m.modulus());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = i; j < m.cols(); ++j) s.set(i, j, m.at(i, j));
    return s;
}

bool CongruenceMap::check() const {
    if (r.rows() != r.cols() || r.rows() != source.size() || r.rows() != target.size()) {
        return false;
    }
    if (!(r.modulus() == source.modulus()) || !(r.modulus() == target.modulus())) {
        return false;
    }
    if (!r.is_invertible()) return false;
    const Matrix lhs = r.transposed() * source.mat() * r;
    return lhs == target.mat();
}

CongruenceMap identity_map(const SymMatrix& a) {
    return CongruenceMap{Matrix::identity(a.size(), a.modulus()), a, a};
}

CongruenceMap compose(const CongruenceMap& a, const CongruenceMap& b) {
    if (!(a.target == b.source)) {
        throw std::invalid_argument("compose: endpoint matrices disagree");
    }
    return CongruenceMap{a.r * b.r, a.source, b.target};
}

CongruenceMap invert(const CongruenceMap& m) {
    auto r_inv = m.r.inverse();
    if (!r_inv) {
        throw std::invalid_argument("invert: transform is singular");
    }
    return CongruenceMap{*r_inv, m.target, m.source};
}

std::vector<std::uint64_t> CanonicalForm::diagonal() const {
    std::vector<std::uint64_t> d(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < rank; ++i) d[static_cast<std::size_t>(i)] = 1;
    if (tail == Tail::OnesThenT && rank > 0) {
        d[static_cast<std::size_t>(rank - 1)] = t;
    }
    return d;
}

SymMatrix CanonicalForm::to_matrix(PrimeModulus m) const {
    SymMatrix s(n, m);
    const auto d = diagonal();
    for (int i = 0; i < n; ++i) s.set(i, i, d[static_cast<std::size_t>(i)]);
    return s;
}

std::pair<CongruenceMap, std::vector<Scalar>>
congruence_diagonalize(const SymMatrix& a) {
    const PrimeModulus m = a.modulus();
    m.require_odd("congruence_diagonalize");
    const int n = a.size();
    const std::uint64_t p = m.p();
    const std::uint64_t half = inv(Scalar(2, m)).value();

    SymMatrix w = a;
    Matrix r = Matrix::identity(n, m);

    // Paired operations: the column step applied to W and R, plus the mirror
    // row step on W, so that W stays equal to R^t A R throughout.
    auto swap_pair = [&](int i, int j) {
        Matrix wm = w.mat();
        wm.swap_cols(i, j);
        wm.swap_rows(i, j);
        w = SymMatrix::from_matrix(wm);
        r.swap_cols(i, j);
    };
    auto add_pair = [&](int dst, int src, std::uint64_t c) {
        Matrix wm = w.mat();
        wm.add_col(dst, src, c);
        wm.add_row(dst, src, c);
        w = SymMatrix::from_matrix(wm);
        r.add_col(dst, src, c);
    };

    for (int k = 0; k < n; ++k) {
        int pivot = -1;
        for (int i = k; i < n; ++i) {
            if (w.at(i, i) != 0) { pivot = i; break; }
        }
        if (pivot < 0) {
            // Whole working diagonal is zero; make one entry nonzero from the
            // first off-diagonal value.  With a_ii = a_jj = 0 the half-row
            // update turns a_ii into exactly a_ij.
            int fi = -1, fj = -1;
            for (int i = k; i < n && fi < 0; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    if (w.at(i, j) != 0) { fi = i; fj = j; break; }
                }
            }
            if (fi < 0) break;  // working block is entirely zero
            add_pair(fi, fj, half);
            pivot = fi;
        }
        if (pivot != k) swap_pair(pivot, k);
        const std::uint64_t pv_inv = inv(Scalar(w.at(k, k), m)).value();
        for (int i = k + 1; i < n; ++i) {
            const std::uint64_t f = w.at(i, k);
            if (f == 0) continue;
            add_pair(i, k, neg_mod(detail::mul_mod(f, pv_inv, p), p));
        }
    }

    std::vector<Scalar> diag;
    diag.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) diag.emplace_back(w.at(i, i), m);
    return {CongruenceMap{r, a, w}, std::move(diag)};
}

CongruenceMap pair_rescale(const Scalar& x) {
    const PrimeModulus m = x.modulus();
    m.require_odd("pair_rescale");
    if (x.is_zero()) {
        throw std::invalid_argument("pair_rescale: x must be nonzero");
    }
    Matrix r(2, 2, m);
    if (residue_class(x) == ResidueClass::Residue) {
        const std::uint64_t s = sqrt(x).value();
        r.set(0, 0, s);
        r.set(1, 1, s);
    } else {
        const auto [a, b] = two_square_split(x);
        const std::uint64_t sa = sqrt(a).value();
        const std::uint64_t sb = sqrt(b).value();
        r.set(0, 0, sa);
        r.set(0, 1, sb);
        r.set(1, 0, neg_mod(sb, m.p()));
        r.set(1, 1, sa);
    }
    SymMatrix eye(2, m);
    eye.set(0, 0, 1);
    eye.set(1, 1, 1);
    SymMatrix xx(2, m);
    xx.set(0, 0, x.value());
    xx.set(1, 1, x.value());
    return CongruenceMap{r, eye, xx};
}

std::pair<CongruenceMap, CanonicalForm> normalize(const SymMatrix& a) {
    const PrimeModulus m = a.modulus();
    m.require_odd("normalize");
    const int n = a.size();
    const std::uint64_t p = m.p();

    auto [dmap, diag] = congruence_diagonalize(a);
    Matrix r = dmap.r;

    int rank = 0;
    while (rank < n && !diag[static_cast<std::size_t>(rank)].is_zero()) ++rank;

    const Scalar t = rank > 0 ? smallest_nonresidue(m) : Scalar(0, m);

    // Rescale each nonzero entry to 1 (residue) or t (nonresidue).
    std::vector<bool> is_t(static_cast<std::size_t>(n), false);
    for (int i = 0; i < rank; ++i) {
        Scalar d = diag[static_cast<std::size_t>(i)];
        std::uint64_t u;
        if (residue_class(d) == ResidueClass::Residue) {
            u = sqrt(d).value();
        } else {
            u = sqrt(d * inv(t)).value();
            is_t[static_cast<std::size_t>(i)] = true;
        }
        r.scale_col(i, inv(Scalar(u, m)).value());
    }

    // Collapse (t, t) pairs into (1, 1) using the inverse of the 2x2 map
    // whose congruence sends the identity to t * I.
    std::vector<int> t_positions;
    for (int i = 0; i < rank; ++i) {
        if (is_t[static_cast<std::size_t>(i)]) t_positions.push_back(i);
    }
    if (t_positions.size() >= 2) {
        const Matrix w = *pair_rescale(t).r.inverse();
        for (std::size_t q = 0; q + 1 < t_positions.size(); q += 2) {
            const int i = t_positions[q];
            const int j = t_positions[q + 1];
            Matrix embed = Matrix::identity(n, m);
            embed.set(i, i, w.at(0, 0));
            embed.set(i, j, w.at(0, 1));
            embed.set(j, i, w.at(1, 0));
            embed.set(j, j, w.at(1, 1));
            r = r * embed;
            is_t[static_cast<std::size_t>(i)] = false;
            is_t[static_cast<std::size_t>(j)] = false;
        }
    }

    // At most one t survives; move it to the last nonzero position.
    int t_at = -1;
    for (int i = 0; i < rank; ++i) {
        if (is_t[static_cast<std::size_t>(i)]) { t_at = i; break; }
    }
    if (t_at >= 0 && t_at != rank - 1) {
        r.swap_cols(t_at, rank - 1);
        t_at = rank - 1;
    }

    CanonicalForm form;
    form.n = n;
    form.rank = rank;
    if (rank == 0) {
        form.tail = CanonicalForm::Tail::Empty;
        form.cls = ResidueClass::Zero;
    } else if (t_at >= 0) {
        form.tail = CanonicalForm::Tail::OnesThenT;
        form.t = t.value();
        form.cls = ResidueClass::NonResidue;
    } else {
        form.tail = CanonicalForm::Tail::AllOnes;
        form.cls = ResidueClass::Residue;
    }

    CongruenceMap out{r, a, form.to_matrix(m)};
    if (!out.check()) {
        throw std::logic_error("normalize: transform failed verification (p=" +
                               std::to_string(p) + ", n=" + std::to_string(n) + ")");
    }
    return {out, form};
}

} // namespace fpdecomp
