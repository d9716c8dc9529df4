#pragma once

// The main engine: classify p by the residue classes of -1, 2, 3 (and 5, 7),
// pick the matching basis catalog, and produce an explicit congruence from a
// graph's adjacency matrix to a direct sum of basis adjacency matrices.

#include <optional>
#include <string>
#include <vector>

#include "fpdecomp/graph.hpp"
#include "fpdecomp/oracle.hpp"

namespace fpdecomp {

enum class CaseTag { CharTwo, Case1, Case2, Case3, Case4, OnlyTwoInT, AllInS };
const char* to_string(CaseTag tag);

enum class X6Choice { K6, D, NotRequired };
const char* to_string(X6Choice choice);

/// Residue case of a prime.  The seven tags partition all primes:
///   CharTwo:    p = 2
///   Case1:      -1, 2 residues; 3 nonresidue
///   Case2:      -1 residue; 2, 3 nonresidues
///   Case3:      3 residue, -1 nonresidue (p >= 5)
///   Case4:      -1 and 3 nonresidues (p >= 5), or p = 3
///   OnlyTwoInT: -1, 3 residues; 2 nonresidue
///   AllInS:     -1, 2, 3 all residues
struct CaseId {
    CaseTag tag = CaseTag::CharTwo;
    /// For OnlyTwoInT: the size-6 basis member.  K6 when 5 is a nonresidue,
    /// else D when 7 is a nonresidue, else no size-6 member is needed.
    X6Choice x6 = X6Choice::NotRequired;
    /// Populated for AllInS: the nonresidue-determinant witnesses.
    std::optional<InvariantReport> invariants;
};

/// Vertex bound for the AllInS witness search (overridable per call and via
/// the CLI; the environment variable FPDECOMP_ENUM_CAP changes the default
/// at the CLI level).
constexpr int kDefaultEnumCap = 8;

/// Residue-class classification; for AllInS primes this triggers (and
/// memoizes, keyed by (p, cap)) the witness search, so the first call may
/// enumerate graphs.  Throws CapExceededError if the search hits the cap.
CaseId classify_prime(PrimeModulus p, int cap = kDefaultEnumCap, int workers = 1);

/// A basis catalog member at a specific prime.  K1 never appears here; zero
/// rows are tracked separately as a k1 count.
struct BasisItem {
    CatalogId id;
    Graph graph;
    int size;           // vertex count
    ResidueClass cls;   // residue class of the determinant mod p
};

/// The case's basis in catalog order (K2, K3, K4, K6, C5, B, D, X4, X5).
/// Odd p only.
std::vector<BasisItem> case_basis(const CaseId& c, PrimeModulus p);

/// Picks a multiset of basis items with total size r whose count of
/// nonresidue-class members is odd iff d is NonResidue.  Among feasible
/// multisets: fewest blocks, then lexicographically largest size sequence
/// in descending order.  Throws InfeasibleError when no multiset exists
/// (never for inputs arising from actual adjacency matrices).
std::vector<BasisItem> solve_blocks(int r, ResidueClass d,
                                    const std::vector<BasisItem>& basis);

struct Decomposition {
    int k1_count = 0;
    std::vector<BasisItem> blocks;  // catalog order, multiplicities expanded
    CongruenceMap transform;        // source: A(X); target: the direct sum
};

/// The blocks' disjoint union with k1_count isolated vertices appended.
Graph decomposition_graph(const Decomposition& dec);

/// Decomposes A(X) over F_p.  Odd p: normalize, solve for blocks matching
/// (rank, class), normalize the target direct sum, glue the two transforms,
/// and verify the congruence entrywise before returning.  p = 2: pair rows
/// sharing a nonzero entry into K2 blocks (alternating-form elimination),
/// yielding m K2 + z K1; over F_2 every unit is a square, so K2 blocks are
/// recorded with class Residue.
Decomposition decompose(const Graph& x, PrimeModulus p,
                        int cap = kDefaultEnumCap, int workers = 1);

struct VerifyReport {
    bool ok = false;
    std::string message;  // first mismatch, or why the transform is rejected
};

/// True iff the transform is invertible and transform^t A(X) transform
/// equals the reconstructed direct-sum adjacency entrywise.
VerifyReport verify(const Graph& x, const Decomposition& dec, PrimeModulus p);

} // namespace fpdecomp
