#pragma once

// Brute-force ground truth over labeled graphs: determinant spectra,
// minimal nonresidue-determinant witnesses, and exhaustive verification
// drivers.  Mask ranges can be partitioned across worker threads; every
// merge is order-insensitive, so results are identical for any worker count.

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fpdecomp/graph.hpp"

namespace fpdecomp {

/// Position in the enumeration of labeled graphs on n vertices.  Bit b of
/// mask is edge (i, j) where b runs over the upper triangle row by row:
/// (0,1), (0,2), ..., (0,n-1), (1,2), ...  Ascending mask is the canonical
/// iteration order everywhere.
struct EnumerationCursor {
    int n = 0;
    std::uint64_t mask = 0;
};

Graph mask_to_graph(int n, std::uint64_t mask);
std::uint64_t graph_to_mask(const Graph& g);

/// Integer determinant of the graph encoded by (n, mask); n <= 12.
std::int64_t mask_determinant(int n, std::uint64_t mask);

/// All nonzero integer determinants attained by labeled graphs on n
/// vertices.  n runs 2..7 by default; n = 8 costs 2^28 determinants and
/// must be enabled explicitly.
std::set<std::int64_t> det_spectrum(int n, int workers = 1, bool allow_n8 = false);

/// Smallest and second-smallest vertex counts admitting a graph whose
/// determinant is a nonresidue mod p, with the first such graph (in
/// ascending mask order) at each count.
struct InvariantReport {
    std::uint64_t p = 0;
    int n_min = 0;       // smallest vertex count with a nonresidue determinant
    Graph x4{0};         // first witness on n_min vertices
    int n_next = 0;      // next vertex count with a witness
    Graph x5{0};         // first witness on n_next vertices
    int cap = 0;         // scan bound that was in effect
};

constexpr int kEnumMaxVertices = 8;

/// Scans n = 2, 3, ... <= cap in ascending mask order.  Requires -1, 2, 3
/// all residues mod p (elsewhere one of them is already a small witness and
/// no search is needed).  Throws CapExceededError when the cap is reached
/// first; if only the first witness was found it is attached to the error
/// as a partial result.
InvariantReport compute_invariants(PrimeModulus p, int cap, int workers = 1);

struct VerifyFailure {
    int n = 0;
    std::uint64_t mask = 0;
    std::string message;
};

struct ExhaustiveReport {
    std::uint64_t p = 0;
    int n_max = 0;
    std::uint64_t graphs_checked = 0;
    std::vector<VerifyFailure> failures;              // expected empty
    std::map<CatalogId, std::uint64_t> block_histogram;  // includes K1
};

/// Runs decompose + verify on every labeled graph with 1..n_max vertices
/// (n_max <= 7).  Failures are collected, never swallowed.
ExhaustiveReport exhaustive_verify(PrimeModulus p, int n_max, int workers = 1);

struct LemmaCheck {
    std::string name;
    std::int64_t expected = 0;
    std::int64_t actual = 0;
    bool ok() const { return expected == actual; }
};

struct LemmaReport {
    std::vector<LemmaCheck> checks;
    bool all_ok() const;
};

/// Complete-graph determinant formula det K_{n+1} = (-1)^n n for n = 2..8,
/// and the odd-multiplicity direct-sum identity det((2m+1) G) = (det G)^(2m+1)
/// on catalog samples.
LemmaReport lemma_checks();

namespace detail {
/// Splits [0, size) into one contiguous chunk per worker; fn(worker, begin,
/// end) runs on its own thread.  workers < 1 is treated as 1.
void parallel_chunks(std::uint64_t size, int workers,
                     const std::function<void(int, std::uint64_t, std::uint64_t)>& fn);
} // namespace detail

} // namespace fpdecomp
