#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fpdecomp/decomp.hpp"
#include "fpdecomp/errors.hpp"

namespace py = pybind11;

namespace {

using namespace fpdecomp;

CatalogId catalog_id_from_name(const std::string& name) {
    for (CatalogId id : {CatalogId::K1, CatalogId::K2, CatalogId::K3, CatalogId::K4,
                         CatalogId::K6, CatalogId::C5, CatalogId::B, CatalogId::D,
                         CatalogId::X4, CatalogId::X5}) {
        if (name == to_string(id)) return id;
    }
    throw std::invalid_argument("unknown catalog id '" + name + "'");
}

std::vector<std::vector<std::uint64_t>> matrix_rows(const Matrix& m) {
    std::vector<std::vector<std::uint64_t>> rows;
    rows.reserve(static_cast<std::size_t>(m.rows()));
    for (int i = 0; i < m.rows(); ++i) {
        std::vector<std::uint64_t> row;
        row.reserve(static_cast<std::size_t>(m.cols()));
        for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

py::dict invariants_dict(const InvariantReport& rep) {
    py::dict d;
    d["p"] = rep.p;
    d["cap"] = rep.cap;
    d["N"] = rep.n_min;
    d["X4"] = rep.x4;
    d["N_prime"] = rep.n_next;
    d["X5"] = rep.x5;
    return d;
}

py::dict classify_dict(const CaseId& cid, PrimeModulus p) {
    py::dict d;
    d["p"] = p.p();
    d["case"] = to_string(cid.tag);
    if (cid.tag == CaseTag::OnlyTwoInT) d["x6"] = to_string(cid.x6);
    if (cid.invariants) d["invariants"] = invariants_dict(*cid.invariants);
    return d;
}

py::dict decompose_dict(const Graph& g, const Decomposition& dec, PrimeModulus p) {
    py::dict d;
    d["p"] = p.p();
    d["n"] = g.n();
    d["k1_count"] = dec.k1_count;
    py::list blocks;
    for (const auto& blk : dec.blocks) {
        py::dict b;
        b["id"] = to_string(blk.id);
        b["graph"] = blk.graph;
        blocks.append(std::move(b));
    }
    d["blocks"] = std::move(blocks);
    d["transform"] = matrix_rows(dec.transform.r);
    return d;
}

Decomposition decomposition_from_dict(const Graph& g, const py::dict& d, PrimeModulus p) {
    std::vector<BasisItem> blocks;
    for (const auto& item : d["blocks"].cast<py::list>()) {
        const py::dict b = item.cast<py::dict>();
        Graph bg = b["graph"].cast<Graph>();
        const int size = bg.n();
        blocks.push_back(BasisItem{catalog_id_from_name(b["id"].cast<std::string>()),
                                   std::move(bg), size, ResidueClass::Residue});
    }
    const auto rows = d["transform"].cast<std::vector<std::vector<std::int64_t>>>();
    const int n = g.n();
    if (static_cast<int>(rows.size()) != n) {
        throw std::invalid_argument("transform must have one row per vertex");
    }
    Matrix r(n, n, p);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n) {
            throw std::invalid_argument("transform row " + std::to_string(i) + " has wrong length");
        }
        for (int j = 0; j < n; ++j) {
            r.set(i, j,
                  Scalar::from_int(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                                   p)
                      .value());
        }
    }
    Decomposition dec{d["k1_count"].cast<int>(), std::move(blocks),
                      CongruenceMap{r, adjacency(g, p), SymMatrix(0, p)}};
    dec.transform.target = adjacency(decomposition_graph(dec), p);
    return dec;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Decomposes graph adjacency matrices over F_p into direct sums of "
              "catalog blocks via explicit congruence transforms";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_RuntimeError);
    py::register_exception<CapExceededError>(m, "CapExceededError", PyExc_RuntimeError);

    py::class_<Graph>(m, "Graph")
        .def(py::init<int, std::vector<std::pair<int, int>>>(), py::arg("n"),
             py::arg("edges") = std::vector<std::pair<int, int>>{})
        .def_static(
            "from_graph6", [](const std::string& s) { return parse_graph6(s); }, py::arg("text"))
        .def_static(
            "from_edge_list", [](const std::string& s) { return parse_edge_list(s); },
            py::arg("text"))
        .def_property_readonly("n", &Graph::n)
        .def_property_readonly("edges", [](const Graph& g) { return g.edges(); })
        .def("graph6", [](const Graph& g) { return emit_graph6(g); })
        .def("int_determinant", [](const Graph& g) { return int_determinant(g); })
        .def("adjacency",
             [](const Graph& g, std::uint64_t p) {
                 return matrix_rows(adjacency(g, PrimeModulus(p)).mat());
             },
             py::arg("p"))
        .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
        .def("__repr__", [](const Graph& g) {
            return "Graph(n=" + std::to_string(g.n()) + ", edges=" +
                   std::to_string(g.edge_count()) + ", graph6='" + emit_graph6(g) + "')";
        });

    m.def(
        "catalog_graph",
        [](const std::string& name) { return catalog_graph(catalog_id_from_name(name)); },
        py::arg("name"), "Fixed catalog member by name (K1..K6, C5, B, D)");
    m.def("complete_graph", &complete_graph, py::arg("n"));
    m.def("direct_sum", &direct_sum, py::arg("parts"));

    m.def(
        "residue_class",
        [](std::int64_t x, std::uint64_t p) {
            return std::string(to_string(residue_class(Scalar::from_int(x, PrimeModulus(p)))));
        },
        py::arg("x"), py::arg("p"), "'Zero', 'Residue', or 'NonResidue'");
    m.def(
        "smallest_nonresidue",
        [](std::uint64_t p) { return smallest_nonresidue(PrimeModulus(p)).value(); }, py::arg("p"));
    m.def(
        "sqrt_mod",
        [](std::int64_t x, std::uint64_t p) {
            return sqrt(Scalar::from_int(x, PrimeModulus(p))).value();
        },
        py::arg("x"), py::arg("p"), "Smaller square root of a residue");
    m.def(
        "two_square_split",
        [](std::int64_t x, std::uint64_t p) {
            const auto [a, b] = two_square_split(Scalar::from_int(x, PrimeModulus(p)));
            return std::make_pair(a.value(), b.value());
        },
        py::arg("x"), py::arg("p"), "Nonresidue as a sum of two residues");

    m.def(
        "classify",
        [](std::uint64_t p, int cap, int workers) {
            const PrimeModulus pm(p);
            return classify_dict(classify_prime(pm, cap, workers), pm);
        },
        py::arg("p"), py::arg("cap") = kDefaultEnumCap, py::arg("workers") = 1);

    m.def(
        "decompose",
        [](const Graph& g, std::uint64_t p, int cap, int workers) {
            const PrimeModulus pm(p);
            return decompose_dict(g, decompose(g, pm, cap, workers), pm);
        },
        py::arg("graph"), py::arg("p"), py::arg("cap") = kDefaultEnumCap, py::arg("workers") = 1);

    m.def(
        "verify",
        [](const Graph& g, const py::dict& result) {
            const PrimeModulus pm(result["p"].cast<std::uint64_t>());
            const Decomposition dec = decomposition_from_dict(g, result, pm);
            const VerifyReport vr = verify(g, dec, pm);
            return std::make_pair(vr.ok, vr.message);
        },
        py::arg("graph"), py::arg("result"),
        "Re-checks a decompose() result; returns (ok, message)");

    m.def(
        "det_spectrum",
        [](int n, int workers, bool allow_n8) {
            const auto s = det_spectrum(n, workers, allow_n8);
            return std::vector<std::int64_t>(s.begin(), s.end());
        },
        py::arg("n"), py::arg("workers") = 1, py::arg("allow_n8") = false,
        "Sorted nonzero integer determinants over all labeled graphs on n vertices");

    m.def(
        "invariants",
        [](std::uint64_t p, int cap, int workers) {
            return invariants_dict(compute_invariants(PrimeModulus(p), cap, workers));
        },
        py::arg("p"), py::arg("cap") = kDefaultEnumCap, py::arg("workers") = 1);
}
