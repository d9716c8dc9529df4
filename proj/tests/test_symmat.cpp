#include <doctest.h>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include <fpdecomp/symmat.hpp>

using namespace fpdecomp;

namespace {

SymMatrix sym_from(const std::vector<std::vector<std::uint64_t>>& rows,
                   PrimeModulus m) {
    const int n = static_cast<int>(rows.size());
    SymMatrix s(n, m);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) s.set(i, j, rows[i][j]);
    return s;
}

// Row-echelon rank, independent of the congruence machinery.
int gauss_rank(const Matrix& a) {
    const PrimeModulus m = a.modulus();
    std::vector<std::vector<Scalar>> w;
    for (int i = 0; i < a.rows(); ++i) {
        std::vector<Scalar> row;
        for (int j = 0; j < a.cols(); ++j) row.emplace_back(a.at(i, j), m);
        w.push_back(std::move(row));
    }
    int rank = 0;
    for (int col = 0; col < a.cols() && rank < a.rows(); ++col) {
        int pivot = -1;
        for (int i = rank; i < a.rows(); ++i) {
            if (!w[i][col].is_zero()) { pivot = i; break; }
        }
        if (pivot < 0) continue;
        std::swap(w[pivot], w[rank]);
        const Scalar pv = inv(w[rank][col]);
        for (int i = rank + 1; i < a.rows(); ++i) {
            const Scalar f = w[i][col] * pv;
            for (int j = col; j < a.cols(); ++j)
                w[i][j] = w[i][j] - f * w[rank][j];
        }
        ++rank;
    }
    return rank;
}

} // namespace

TEST_CASE("matrix basics") {
    PrimeModulus m(7);
    Matrix a(2, 2, m);
    a.set(0, 0, 1);
    a.set(0, 1, 2);
    a.set(1, 0, 3);
    a.set(1, 1, 4);

    CHECK(a.determinant().value() == 5);
    CHECK(a.is_invertible());
    CHECK(a.transposed().at(0, 1) == 3);

    auto ainv = a.inverse();
    REQUIRE(ainv.has_value());
    CHECK(a * *ainv == Matrix::identity(2, m));
    CHECK(*ainv * a == Matrix::identity(2, m));

    Matrix sing(2, 2, m);
    sing.set(0, 0, 1);
    sing.set(0, 1, 2);
    sing.set(1, 0, 2);
    sing.set(1, 1, 4);
    CHECK(sing.determinant().is_zero());
    CHECK_FALSE(sing.inverse().has_value());
    CHECK_FALSE(sing.is_invertible());
}

TEST_CASE("elementary operations") {
    PrimeModulus m(7);
    Matrix a = Matrix::identity(2, m);
    a.add_row(0, 1, 2);  // row 0 += 2 * row 1
    CHECK(a.at(0, 0) == 1);
    CHECK(a.at(0, 1) == 2);

    Matrix b = Matrix::identity(2, m);
    b.add_col(0, 1, 2);  // col 0 += 2 * col 1
    CHECK(b.at(0, 0) == 1);
    CHECK(b.at(1, 0) == 2);

    Matrix c = Matrix::identity(3, m);
    c.swap_rows(0, 2);
    c.swap_cols(0, 2);
    CHECK(c == Matrix::identity(3, m));

    Matrix d = Matrix::identity(2, m);
    d.scale_row(0, 3);
    d.scale_col(1, 5);
    CHECK(d.at(0, 0) == 3);
    CHECK(d.at(1, 1) == 5);
}

TEST_CASE("symmetric wrapper") {
    PrimeModulus m(5);
    SymMatrix s(3, m);
    s.set(0, 2, 4);
    CHECK(s.at(2, 0) == 4);
    CHECK(s.at(0, 2) == 4);

    Matrix asym(2, 2, m);
    asym.set(0, 1, 1);
    CHECK_THROWS_AS(SymMatrix::from_matrix(asym), std::invalid_argument);

    Matrix ok(2, 2, m);
    ok.set(0, 1, 3);
    ok.set(1, 0, 3);
    CHECK(SymMatrix::from_matrix(ok).at(1, 0) == 3);
}

TEST_CASE("diagonalization golden values") {
    PrimeModulus m(5);
    // The 2x2 all-off-diagonal form: zero diagonal repaired with the
    // half-row update, then one elimination step.
    SymMatrix k2 = sym_from({{0, 1}, {1, 0}}, m);
    auto [map, diag] = congruence_diagonalize(k2);
    CHECK(map.check());
    REQUIRE(diag.size() == 2);
    CHECK(diag[0].value() == 1);
    CHECK(diag[1].value() == 4);

    // Interleaved zero diagonal entries are pushed to the end.
    SymMatrix d3 = sym_from({{1, 0, 0}, {0, 0, 0}, {0, 0, 2}}, m);
    auto [map3, diag3] = congruence_diagonalize(d3);
    CHECK(map3.check());
    CHECK(diag3[0].value() == 1);
    CHECK(diag3[1].value() == 2);
    CHECK(diag3[2].value() == 0);

    SymMatrix zero(3, m);
    auto [mapz, diagz] = congruence_diagonalize(zero);
    CHECK(mapz.check());
    for (const Scalar& d : diagz) CHECK(d.is_zero());

    CHECK_THROWS_AS(congruence_diagonalize(SymMatrix(2, PrimeModulus(2))),
                    std::domain_error);
}

TEST_CASE("pair rescale golden values") {
    // Residue argument: plain scalar matrix.
    CongruenceMap r7 = pair_rescale(Scalar(2, PrimeModulus(7)));
    CHECK(r7.check());
    CHECK(r7.r.at(0, 0) == 3);
    CHECK(r7.r.at(0, 1) == 0);
    CHECK(r7.r.at(1, 1) == 3);

    // Nonresidue argument: the rotation-like map built from a two-square
    // split.  2 = 1 + 1 mod 5.
    CongruenceMap r5 = pair_rescale(Scalar(2, PrimeModulus(5)));
    CHECK(r5.check());
    CHECK(r5.r.at(0, 0) == 1);
    CHECK(r5.r.at(0, 1) == 1);
    CHECK(r5.r.at(1, 0) == 4);
    CHECK(r5.r.at(1, 1) == 1);

    // 3 = 1 + 2 mod 7, sqrt(2) = 3.
    CongruenceMap n7 = pair_rescale(Scalar(3, PrimeModulus(7)));
    CHECK(n7.check());
    CHECK(n7.r.at(0, 0) == 1);
    CHECK(n7.r.at(0, 1) == 3);
    CHECK(n7.r.at(1, 0) == 4);
    CHECK(n7.r.at(1, 1) == 1);
}

TEST_CASE("pair rescale identity for every unit") {
    for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull}) {
        PrimeModulus m(p);
        for (std::uint64_t x = 1; x < p; ++x) {
            CongruenceMap map = pair_rescale(Scalar(x, m));
            CHECK(map.check());
            Matrix prod = map.r.transposed() * map.r;
            CHECK(prod.at(0, 0) == x);
            CHECK(prod.at(0, 1) == 0);
            CHECK(prod.at(1, 0) == 0);
            CHECK(prod.at(1, 1) == x);
        }
    }
    CHECK_THROWS_AS(pair_rescale(Scalar(0, PrimeModulus(5))), std::invalid_argument);
}

TEST_CASE("composition and inversion") {
    PrimeModulus m(7);
    CongruenceMap a = pair_rescale(Scalar(3, m));

    CongruenceMap back = invert(a);
    CHECK(back.check());
    CongruenceMap round = compose(a, back);
    CHECK(round.check());
    CHECK(round.r == Matrix::identity(2, m));
    CHECK(round.source == a.source);
    CHECK(round.target == a.source);

    // Scaling by x then by x^-1 lands back on the identity form.
    CongruenceMap shrink = pair_rescale(inv(Scalar(3, m)));
    CongruenceMap lifted{shrink.r, a.target, a.source};
    CHECK(lifted.check());
    CongruenceMap unit = compose(a, lifted);
    CHECK(unit.check());
    CHECK(unit.source == a.source);
    CHECK(unit.target == a.source);

    // Endpoints must agree.
    CHECK_THROWS_AS(compose(a, a), std::invalid_argument);

    // A doctored target must fail the entrywise check.
    SymMatrix wrong(2, m);
    wrong.set(0, 0, 5);
    CongruenceMap bad{a.r, a.source, wrong};
    CHECK_FALSE(bad.check());

    Matrix sing(2, 2, m);
    CongruenceMap notinv{sing, a.source, a.target};
    CHECK_FALSE(notinv.check());
}

TEST_CASE("normalize golden values") {
    PrimeModulus m5(5);

    SymMatrix k2 = sym_from({{0, 1}, {1, 0}}, m5);
    auto [map2, form2] = normalize(k2);
    CHECK(map2.check());
    CHECK(form2.rank == 2);
    CHECK(form2.tail == CanonicalForm::Tail::AllOnes);
    CHECK(form2.cls == ResidueClass::Residue);
    CHECK(form2.diagonal() == std::vector<std::uint64_t>{1, 1});

    SymMatrix k3 = sym_from({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}, m5);
    auto [map3, form3] = normalize(k3);
    CHECK(map3.check());
    CHECK(form3.rank == 3);
    CHECK(form3.tail == CanonicalForm::Tail::OnesThenT);
    CHECK(form3.t == 2);
    CHECK(form3.cls == ResidueClass::NonResidue);
    CHECK(form3.diagonal() == std::vector<std::uint64_t>{1, 1, 2});

    auto [mapz, formz] = normalize(SymMatrix(3, m5));
    CHECK(formz.rank == 0);
    CHECK(formz.tail == CanonicalForm::Tail::Empty);
    CHECK(formz.cls == ResidueClass::Zero);
    CHECK(formz.diagonal() == std::vector<std::uint64_t>{0, 0, 0});

    auto [mapt, formt] = normalize(sym_from({{2}}, m5));
    CHECK(formt.rank == 1);
    CHECK(formt.tail == CanonicalForm::Tail::OnesThenT);
    CHECK(formt.diagonal() == std::vector<std::uint64_t>{2});

    auto [mapr, formr] = normalize(sym_from({{4}}, m5));
    CHECK(formr.tail == CanonicalForm::Tail::AllOnes);
    CHECK(formr.diagonal() == std::vector<std::uint64_t>{1});

    CHECK_THROWS_AS(normalize(SymMatrix(2, PrimeModulus(2))), std::domain_error);
}

TEST_CASE("normalize on every small zero-diagonal 0/1 matrix") {
    for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull, 13ull}) {
        PrimeModulus m(p);
        for (int n = 1; n <= 5; ++n) {
            const int bits = n * (n - 1) / 2;
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits);
                 ++mask) {
                SymMatrix a(n, m);
                int b = 0;
                for (int i = 0; i < n; ++i)
                    for (int j = i + 1; j < n; ++j, ++b)
                        if ((mask >> b) & 1) a.set(i, j, 1);

                auto [map, form] = normalize(a);
                CHECK(map.check());
                CHECK(form.n == n);
                CHECK(form.rank == gauss_rank(a.mat()));
                // Zero diagonal forces even-dimensional nondegenerate pieces
                // at the top, so rank 1 is impossible.
                CHECK(form.rank != 1);
                if (form.rank == n)
                    CHECK(form.cls == residue_class(a.determinant()));
                CHECK(form.to_matrix(m).at(0, 0) == (form.rank > 0 ? 1 : 0));
            }
        }
    }
}

TEST_CASE("normalize on random symmetric matrices") {
    std::mt19937_64 rng(20240817);
    for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull, 13ull, 17ull}) {
        PrimeModulus m(p);
        for (int trial = 0; trial < 200; ++trial) {
            const int n = 1 + static_cast<int>(rng() % 6);
            SymMatrix a(n, m);
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) a.set(i, j, rng() % p);

            auto [map, form] = normalize(a);
            CHECK(map.check());
            CHECK(form.rank == gauss_rank(a.mat()));
            if (form.rank == n)
                CHECK(form.cls == residue_class(a.determinant()));
        }
    }
}
