#include "fpdecomp/decomp.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

#include "fpdecomp/errors.hpp"

namespace fpdecomp {

const char* to_string(CaseTag tag) {
    switch (tag) {
        case CaseTag::CharTwo: return "CharTwo";
        case CaseTag::Case1: return "Case1";
        case CaseTag::Case2: return "Case2";
        case CaseTag::Case3: return "Case3";
        case CaseTag::Case4: return "Case4";
        case CaseTag::OnlyTwoInT: return "OnlyTwoInT";
        case CaseTag::AllInS: return "AllInS";
    }
    return "?";
}

const char* to_string(X6Choice choice) {
    switch (choice) {
        case X6Choice::K6: return "K6";
        case X6Choice::D: return "D";
        case X6Choice::NotRequired: return "NotRequired";
    }
    return "?";
}

namespace {

InvariantReport memoized_invariants(PrimeModulus p, int cap, int workers) {
    static std::mutex mutex;
    static std::map<std::pair<std::uint64_t, int>, InvariantReport> memo;
    std::lock_guard<std::mutex> lock(mutex);
    const auto key = std::make_pair(p.p(), cap);
    auto it = memo.find(key);
    if (it == memo.end()) {
        it = memo.emplace(key, compute_invariants(p, cap, workers)).first;
    }
    return it->second;
}

} // namespace

CaseId classify_prime(PrimeModulus p, int cap, int workers) {
    using RC = ResidueClass;
    if (p.is_two()) return CaseId{CaseTag::CharTwo, X6Choice::NotRequired, std::nullopt};
    if (p.p() == 3) return CaseId{CaseTag::Case4, X6Choice::NotRequired, std::nullopt};

    const RC c_m1 = residue_class(-Scalar(1, p));
    const RC c_2 = residue_class(Scalar(2, p));
    const RC c_3 = residue_class(Scalar(3, p));

    if (c_m1 == RC::Residue) {
        if (c_2 == RC::Residue && c_3 == RC::Residue) {
            CaseId id{CaseTag::AllInS, X6Choice::NotRequired, std::nullopt};
            id.invariants = memoized_invariants(p, cap, workers);
            return id;
        }
        if (c_2 == RC::Residue) return CaseId{CaseTag::Case1, X6Choice::NotRequired, std::nullopt};
        if (c_3 == RC::NonResidue) return CaseId{CaseTag::Case2, X6Choice::NotRequired, std::nullopt};
        // -1, 3 residues; 2 nonresidue
        X6Choice x6 = X6Choice::NotRequired;
        if (residue_class(Scalar(5, p)) == RC::NonResidue) {
            x6 = X6Choice::K6;
        } else if (residue_class(Scalar(7, p)) == RC::NonResidue) {
            x6 = X6Choice::D;
        }
        return CaseId{CaseTag::OnlyTwoInT, x6, std::nullopt};
    }
    if (c_3 == RC::Residue) return CaseId{CaseTag::Case3, X6Choice::NotRequired, std::nullopt};
    return CaseId{CaseTag::Case4, X6Choice::NotRequired, std::nullopt};
}

namespace {

BasisItem make_item(CatalogId id, Graph g, PrimeModulus p) {
    const int size = g.n();
    const ResidueClass cls = residue_class(Scalar::from_int(int_determinant(g), p));
    if (cls == ResidueClass::Zero) {
        throw std::logic_error(std::string("case_basis: determinant of ") + to_string(id) +
                               " vanishes mod " + std::to_string(p.p()));
    }
    return BasisItem{id, std::move(g), size, cls};
}

} // namespace

std::vector<BasisItem> case_basis(const CaseId& c, PrimeModulus p) {
    p.require_odd("case_basis");
    std::vector<BasisItem> out;
    const auto add = [&](CatalogId id) { out.push_back(make_item(id, catalog_graph(id), p)); };
    switch (c.tag) {
        case CaseTag::CharTwo:
            break;  // unreachable: require_odd above
        case CaseTag::Case1:
            add(CatalogId::K2); add(CatalogId::K3); add(CatalogId::K4);
            break;
        case CaseTag::Case2:
            add(CatalogId::K2); add(CatalogId::K3); add(CatalogId::K4); add(CatalogId::B);
            break;
        case CaseTag::Case3:
            add(CatalogId::K2); add(CatalogId::K3); add(CatalogId::K4); add(CatalogId::C5);
            break;
        case CaseTag::Case4:
            add(CatalogId::K2); add(CatalogId::K3); add(CatalogId::C5);
            break;
        case CaseTag::OnlyTwoInT:
            add(CatalogId::K2); add(CatalogId::K3);
            if (c.x6 == X6Choice::K6) add(CatalogId::K6);
            add(CatalogId::B);
            if (c.x6 == X6Choice::D) add(CatalogId::D);
            break;
        case CaseTag::AllInS: {
            if (!c.invariants) {
                throw std::invalid_argument("case_basis: AllInS id without invariant report");
            }
            add(CatalogId::K2); add(CatalogId::K3);
            out.push_back(make_item(CatalogId::X4, c.invariants->x4, p));
            out.push_back(make_item(CatalogId::X5, c.invariants->x5, p));
            break;
        }
    }
    return out;
}

namespace {

struct PartialSolution {
    int count = 0;
    std::vector<int> item_indices;  // indices into the basis
    std::vector<int> sizes_desc;    // block sizes, descending
};

// Fewer blocks wins; among equal counts the lexicographically larger
// descending size sequence wins.
bool better(const PartialSolution& a, const PartialSolution& b) {
    if (a.count != b.count) return a.count < b.count;
    return a.sizes_desc > b.sizes_desc;
}

} // namespace

std::vector<BasisItem> solve_blocks(int r, ResidueClass d,
                                    const std::vector<BasisItem>& basis) {
    if (r < 0) throw std::invalid_argument("solve_blocks: negative size");
    if (r == 0) return {};
    if (d == ResidueClass::Zero) {
        throw std::invalid_argument("solve_blocks: size >= 1 needs class Residue or NonResidue");
    }
    const int want_parity = d == ResidueClass::NonResidue ? 1 : 0;

    std::vector<std::array<std::optional<PartialSolution>, 2>> best(
        static_cast<std::size_t>(r) + 1);
    best[0][0] = PartialSolution{};
    for (int s = 1; s <= r; ++s) {
        for (int q = 0; q < 2; ++q) {
            for (int i = 0; i < static_cast<int>(basis.size()); ++i) {
                const int sz = basis[static_cast<std::size_t>(i)].size;
                if (sz > s) continue;
                const int tq =
                    basis[static_cast<std::size_t>(i)].cls == ResidueClass::NonResidue ? 1 : 0;
                const auto& sub = best[static_cast<std::size_t>(s - sz)][q ^ tq];
                if (!sub) continue;
                PartialSolution cand = *sub;
                ++cand.count;
                cand.item_indices.push_back(i);
                cand.sizes_desc.insert(
                    std::upper_bound(cand.sizes_desc.begin(), cand.sizes_desc.end(), sz,
                                     std::greater<int>()),
                    sz);
                auto& slot = best[static_cast<std::size_t>(s)][q];
                if (!slot || better(cand, *slot)) slot = std::move(cand);
            }
        }
    }

    const auto& sol = best[static_cast<std::size_t>(r)][want_parity];
    if (!sol) {
        std::string sizes;
        for (const auto& b : basis) {
            if (!sizes.empty()) sizes += ", ";
            sizes += std::to_string(b.size);
            sizes += b.cls == ResidueClass::NonResidue ? "n" : "r";
        }
        throw InfeasibleError("solve_blocks: no multiset over {" + sizes + "} has total size " +
                              std::to_string(r) + " with " +
                              (want_parity ? "an odd" : "an even") + " nonresidue count");
    }
    std::vector<int> indices = sol->item_indices;
    std::sort(indices.begin(), indices.end());  // basis is in catalog order
    std::vector<BasisItem> out;
    out.reserve(indices.size());
    for (int i : indices) out.push_back(basis[static_cast<std::size_t>(i)]);
    return out;
}

Graph decomposition_graph(const Decomposition& dec) {
    std::vector<Graph> parts;
    parts.reserve(dec.blocks.size() + static_cast<std::size_t>(dec.k1_count));
    for (const auto& b : dec.blocks) parts.push_back(b.graph);
    for (int i = 0; i < dec.k1_count; ++i) parts.push_back(Graph(1));
    return direct_sum(parts);
}

namespace {

Decomposition decompose_char_two(const Graph& x) {
    const PrimeModulus p(2);
    const int n = x.n();
    const SymMatrix a = adjacency(x, p);
    Matrix w = a.mat();
    Matrix r = Matrix::identity(n, p);

    const auto swap_pair = [&](int i, int j) {
        if (i == j) return;
        w.swap_cols(i, j);
        w.swap_rows(i, j);
        r.swap_cols(i, j);
    };
    const auto add_pair = [&](int dst, int src) {
        w.add_col(dst, src, 1);
        w.add_row(dst, src, 1);
        r.add_col(dst, src, 1);
    };

    int pos = 0;
    while (true) {
        int fi = -1, fj = -1;
        for (int i = pos; i < n && fi < 0; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (w.at(i, j) != 0) { fi = i; fj = j; break; }
            }
        }
        if (fi < 0) break;
        // fj > fi >= pos, so moving fi to pos leaves fj in place.
        swap_pair(fi, pos);
        swap_pair(fj, pos + 1);
        for (int k = pos + 2; k < n; ++k) {
            if (w.at(pos, k) != 0) add_pair(k, pos + 1);
            if (w.at(pos + 1, k) != 0) add_pair(k, pos);
        }
        pos += 2;
    }

    const int k2_count = pos / 2;
    std::vector<BasisItem> blocks;
    blocks.reserve(static_cast<std::size_t>(k2_count));
    const Graph k2 = complete_graph(2);
    for (int i = 0; i < k2_count; ++i) {
        blocks.push_back(BasisItem{CatalogId::K2, k2, 2, ResidueClass::Residue});
    }
    Decomposition dec{n - pos, std::move(blocks),
                      CongruenceMap{r, a, SymMatrix(0, p)}};
    dec.transform.target = adjacency(decomposition_graph(dec), p);
    if (!dec.transform.check()) {
        throw std::logic_error("decompose: F_2 congruence verification failed (n=" +
                               std::to_string(n) + ")");
    }
    return dec;
}

Decomposition decompose_odd(const Graph& x, PrimeModulus p, int cap, int workers) {
    const SymMatrix a = adjacency(x, p);
    auto [m1, form] = normalize(a);
    const int r = form.rank;
    const int k1_count = x.n() - r;

    std::vector<BasisItem> blocks;
    if (r > 0) {
        const CaseId cid = classify_prime(p, cap, workers);
        blocks = solve_blocks(r, form.cls, case_basis(cid, p));
    }

    Decomposition dec{k1_count, std::move(blocks),
                      CongruenceMap{Matrix::identity(x.n(), p), a, a}};
    const SymMatrix m = adjacency(decomposition_graph(dec), p);
    auto [m2, form2] = normalize(m);
    if (!(form2 == form)) {
        throw std::logic_error("decompose: direct sum normalizes to a different canonical form");
    }
    dec.transform = compose(m1, invert(m2));
    if (!dec.transform.check()) {
        throw std::logic_error("decompose: congruence verification failed (p=" +
                               std::to_string(p.p()) + ", n=" + std::to_string(x.n()) + ")");
    }
    return dec;
}

} // namespace

Decomposition decompose(const Graph& x, PrimeModulus p, int cap, int workers) {
    if (p.is_two()) return decompose_char_two(x);
    return decompose_odd(x, p, cap, workers);
}

VerifyReport verify(const Graph& x, const Decomposition& dec, PrimeModulus p) {
    const int n = x.n();
    const Matrix& r = dec.transform.r;
    if (!(r.modulus() == p)) {
        return {false, "transform modulus " + std::to_string(r.modulus().p()) +
                           " differs from p = " + std::to_string(p.p())};
    }
    if (r.rows() != n || r.cols() != n) {
        return {false, "transform is " + std::to_string(r.rows()) + "x" +
                           std::to_string(r.cols()) + ", expected " + std::to_string(n) + "x" +
                           std::to_string(n)};
    }
    const Graph sum = decomposition_graph(dec);
    if (sum.n() != n) {
        return {false, "blocks plus K1s cover " + std::to_string(sum.n()) +
                           " vertices, expected " + std::to_string(n)};
    }
    if (!r.is_invertible()) {
        return {false, "transform is singular"};
    }
    const SymMatrix a = adjacency(x, p);
    const SymMatrix m = adjacency(sum, p);
    const Matrix lhs = r.transposed() * a.mat() * r;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (lhs.at(i, j) != m.at(i, j)) {
                return {false, "entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                   "): transformed value " + std::to_string(lhs.at(i, j)) +
                                   ", direct sum has " + std::to_string(m.at(i, j))};
            }
        }
    }
    return {true, ""};
}

} // namespace fpdecomp
