#include "fpdecomp/oracle.hpp"

#include <algorithm>
#include <exception>
#include <optional>
#include <stdexcept>
#include <thread>

#include "fpdecomp/decomp.hpp"
#include "fpdecomp/errors.hpp"

namespace fpdecomp {

namespace detail {

void parallel_chunks(std::uint64_t size, int workers,
                     const std::function<void(int, std::uint64_t, std::uint64_t)>& fn) {
    if (workers < 1) workers = 1;
    if (size == 0) return;
    const int w = static_cast<int>(
        std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), size));
    if (w == 1) {
        fn(0, 0, size);
        return;
    }
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(w));
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(w));
    const std::uint64_t chunk = size / static_cast<std::uint64_t>(w);
    const std::uint64_t extra = size % static_cast<std::uint64_t>(w);
    std::uint64_t begin = 0;
    for (int i = 0; i < w; ++i) {
        const std::uint64_t len = chunk + (static_cast<std::uint64_t>(i) < extra ? 1 : 0);
        const std::uint64_t end = begin + len;
        threads.emplace_back([&fn, &errors, i, begin, end] {
            try {
                fn(i, begin, end);
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        });
        begin = end;
    }
    for (auto& t : threads) t.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

} // namespace detail

namespace {

constexpr int kMaskMaxVertices = 11;  // n(n-1)/2 bits must fit 64

int mask_bits(int n) { return n * (n - 1) / 2; }

void require_mask_n(int n) {
    if (n < 0 || n > kMaskMaxVertices) {
        throw std::invalid_argument("mask enumeration: n = " + std::to_string(n) +
                                    " outside 0.." + std::to_string(kMaskMaxVertices));
    }
}

// pairs[b] = (i, j) for bit b, row-major upper triangle.
std::vector<std::pair<int, int>> bit_pairs(int n) {
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(mask_bits(n)));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    return pairs;
}

std::int64_t mask_det_with_pairs(int n, std::uint64_t mask,
                                 const std::vector<std::pair<int, int>>& pairs,
                                 std::int64_t* scratch) {
    std::fill(scratch, scratch + static_cast<std::size_t>(n) * n, 0);
    for (std::size_t b = 0; b < pairs.size(); ++b) {
        if (mask >> b & 1) {
            const auto [i, j] = pairs[b];
            scratch[static_cast<std::size_t>(i) * n + j] = 1;
            scratch[static_cast<std::size_t>(j) * n + i] = 1;
        }
    }
    return detail::bareiss_inplace(n, scratch);
}

} // namespace

Graph mask_to_graph(int n, std::uint64_t mask) {
    require_mask_n(n);
    std::vector<std::pair<int, int>> edges;
    int b = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j, ++b) {
            if (mask >> b & 1) edges.emplace_back(i, j);
        }
    }
    if (mask >> mask_bits(n) != 0) {
        throw std::invalid_argument("mask enumeration: mask has bits beyond the upper triangle");
    }
    return Graph(n, std::move(edges));
}

std::uint64_t graph_to_mask(const Graph& g) {
    require_mask_n(g.n());
    const int n = g.n();
    std::uint64_t mask = 0;
    for (const auto& [i, j] : g.edges()) {
        const int b = i * (2 * n - i - 1) / 2 + (j - i - 1);
        mask |= std::uint64_t{1} << b;
    }
    return mask;
}

std::int64_t mask_determinant(int n, std::uint64_t mask) {
    require_mask_n(n);
    const auto pairs = bit_pairs(n);
    std::int64_t scratch[kMaskMaxVertices * kMaskMaxVertices];
    return mask_det_with_pairs(n, mask, pairs, scratch);
}

std::set<std::int64_t> det_spectrum(int n, int workers, bool allow_n8) {
    if (n < 2) throw std::invalid_argument("det_spectrum: n must be at least 2");
    if (n > kEnumMaxVertices) {
        throw CapExceededError("det_spectrum: n = " + std::to_string(n) +
                                   " exceeds the enumeration bound",
                               kEnumMaxVertices);
    }
    if (n == 8 && !allow_n8) {
        throw CapExceededError(
            "det_spectrum: n = 8 enumerates 2^28 graphs and must be requested explicitly", 7);
    }
    const std::uint64_t total = std::uint64_t{1} << mask_bits(n);
    const auto pairs = bit_pairs(n);
    const int slots = std::max(workers, 1);
    std::vector<std::set<std::int64_t>> locals(static_cast<std::size_t>(slots));
    detail::parallel_chunks(total, workers, [&](int w, std::uint64_t b, std::uint64_t e) {
        auto& local = locals[static_cast<std::size_t>(w)];
        std::int64_t scratch[kMaskMaxVertices * kMaskMaxVertices];
        for (std::uint64_t mask = b; mask < e; ++mask) {
            const std::int64_t d = mask_det_with_pairs(n, mask, pairs, scratch);
            if (d != 0) local.insert(d);
        }
    });
    std::set<std::int64_t> out;
    for (auto& local : locals) out.merge(local);
    return out;
}

namespace {

// Smallest mask on n vertices whose determinant is a nonresidue mod p.
// Each worker owns an ascending range and stops at its first hit; the
// global minimum over workers is range-independent.
std::optional<std::uint64_t> level_min_witness(int n, PrimeModulus p, int workers) {
    const std::uint64_t total = std::uint64_t{1} << mask_bits(n);
    const auto pairs = bit_pairs(n);
    const int slots = std::max(workers, 1);
    std::vector<std::optional<std::uint64_t>> hits(static_cast<std::size_t>(slots));
    detail::parallel_chunks(total, workers, [&](int w, std::uint64_t b, std::uint64_t e) {
        std::int64_t scratch[kMaskMaxVertices * kMaskMaxVertices];
        for (std::uint64_t mask = b; mask < e; ++mask) {
            const std::int64_t d = mask_det_with_pairs(n, mask, pairs, scratch);
            if (d == 0) continue;
            if (residue_class(Scalar::from_int(d, p)) == ResidueClass::NonResidue) {
                hits[static_cast<std::size_t>(w)] = mask;
                return;
            }
        }
    });
    std::optional<std::uint64_t> best;
    for (const auto& h : hits) {
        if (h && (!best || *h < *best)) best = h;
    }
    return best;
}

} // namespace

InvariantReport compute_invariants(PrimeModulus p, int cap, int workers) {
    p.require_odd("compute_invariants");
    for (std::uint64_t v : {p.p() - 1, std::uint64_t{2}, std::uint64_t{3}}) {
        if (residue_class(Scalar(v, p)) != ResidueClass::Residue) {
            throw std::domain_error("compute_invariants: requires -1, 2, 3 all residues mod p; " +
                                    std::to_string(v % p.p()) + " is not one mod " +
                                    std::to_string(p.p()));
        }
    }
    if (cap < 2) throw std::invalid_argument("compute_invariants: cap must be at least 2");
    if (cap > kEnumMaxVertices) {
        throw std::invalid_argument("compute_invariants: cap above " +
                                    std::to_string(kEnumMaxVertices) +
                                    " would enumerate more than 2^28 graphs per level");
    }

    int n_min = 0, n_next = 0;
    std::uint64_t mask_min = 0, mask_next = 0;
    for (int n = 2; n <= cap; ++n) {
        const auto hit = level_min_witness(n, p, workers);
        if (!hit) continue;
        if (n_min == 0) {
            n_min = n;
            mask_min = *hit;
        } else {
            n_next = n;
            mask_next = *hit;
            break;
        }
    }
    if (n_next == 0) {
        CapExceededError err(
            "compute_invariants: no " + std::string(n_min == 0 ? "first" : "second") +
                " nonresidue-determinant witness on up to " + std::to_string(cap) +
                " vertices (p = " + std::to_string(p.p()) + ")",
            cap);
        if (n_min != 0) {
            err.partial_n = n_min;
            err.partial_mask = mask_min;
        }
        throw err;
    }
    return InvariantReport{p.p(),  n_min, mask_to_graph(n_min, mask_min),
                           n_next, mask_to_graph(n_next, mask_next), cap};
}

ExhaustiveReport exhaustive_verify(PrimeModulus p, int n_max, int workers) {
    if (n_max < 1) throw std::invalid_argument("exhaustive_verify: n_max must be at least 1");
    if (n_max > 7) {
        throw CapExceededError("exhaustive_verify: n_max = " + std::to_string(n_max) +
                                   " exceeds the 2^21-graph bound at n = 7",
                               7);
    }
    ExhaustiveReport rep;
    rep.p = p.p();
    rep.n_max = n_max;

    const int slots = std::max(workers, 1);
    for (int n = 1; n <= n_max; ++n) {
        const std::uint64_t total = std::uint64_t{1} << mask_bits(n);
        rep.graphs_checked += total;
        std::vector<std::vector<VerifyFailure>> fails(static_cast<std::size_t>(slots));
        std::vector<std::map<CatalogId, std::uint64_t>> hists(static_cast<std::size_t>(slots));
        detail::parallel_chunks(total, workers, [&](int w, std::uint64_t b, std::uint64_t e) {
            auto& fail = fails[static_cast<std::size_t>(w)];
            auto& hist = hists[static_cast<std::size_t>(w)];
            for (std::uint64_t mask = b; mask < e; ++mask) {
                const Graph g = mask_to_graph(n, mask);
                try {
                    const Decomposition dec = decompose(g, p);
                    const VerifyReport vr = verify(g, dec, p);
                    if (!vr.ok) {
                        fail.push_back({n, mask, vr.message});
                        continue;
                    }
                    hist[CatalogId::K1] += static_cast<std::uint64_t>(dec.k1_count);
                    for (const auto& blk : dec.blocks) ++hist[blk.id];
                } catch (const std::exception& ex) {
                    fail.push_back({n, mask, ex.what()});
                }
            }
        });
        for (int w = 0; w < slots; ++w) {
            auto& fail = fails[static_cast<std::size_t>(w)];
            rep.failures.insert(rep.failures.end(), fail.begin(), fail.end());
            for (const auto& [id, count] : hists[static_cast<std::size_t>(w)]) {
                rep.block_histogram[id] += count;
            }
        }
    }
    return rep;
}

bool LemmaReport::all_ok() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const LemmaCheck& c) { return c.ok(); });
}

namespace {

std::int64_t int_pow(std::int64_t base, int exp) {
    std::int64_t out = 1;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

} // namespace

LemmaReport lemma_checks() {
    LemmaReport rep;
    for (int n = 2; n <= 8; ++n) {
        const std::int64_t expected = (n % 2 == 0) ? n : -n;
        rep.checks.push_back({"det(K" + std::to_string(n + 1) + ")", expected,
                              int_determinant(complete_graph(n + 1))});
    }
    const std::pair<CatalogId, int> samples[] = {{CatalogId::K2, 3},
                                                 {CatalogId::K2, 5},
                                                 {CatalogId::K3, 3},
                                                 {CatalogId::K4, 3}};
    for (const auto& [id, copies] : samples) {
        const Graph g = catalog_graph(id);
        const std::vector<Graph> parts(static_cast<std::size_t>(copies), g);
        rep.checks.push_back({"det(" + std::to_string(copies) + "*" + to_string(id) + ")",
                              int_pow(int_determinant(g), copies),
                              int_determinant(direct_sum(parts))});
    }
    return rep;
}

} // namespace fpdecomp
