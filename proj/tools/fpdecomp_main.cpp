// fpdecomp: decompose graph adjacency matrices over F_p into direct sums of
// catalog blocks via explicit congruence transformations.
//
// Structured JSON goes to stdout, a human summary to stderr.  Exit codes:
// 0 success, 1 check failure, 2 input error, 3 infeasible, 4 cap exceeded.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fpdecomp/decomp.hpp"
#include "fpdecomp/errors.hpp"

namespace {

using nlohmann::ordered_json;
using namespace fpdecomp;

constexpr const char* kSchemaVersion = "1";
constexpr const char* kVersion = "fpdecomp 0.1.0";

void emit_result(const std::string& command, ordered_json result) {
    ordered_json envelope;
    envelope["schema_version"] = kSchemaVersion;
    envelope["command"] = command;
    envelope["result"] = std::move(result);
    std::cout << envelope.dump() << "\n";
}

int emit_error(const std::string& command, int code, const std::string& type,
               const std::string& message, ordered_json partial = ordered_json()) {
    ordered_json error;
    error["type"] = type;
    error["message"] = message;
    if (!partial.is_null()) error["partial"] = std::move(partial);
    ordered_json envelope;
    envelope["schema_version"] = kSchemaVersion;
    envelope["command"] = command;
    envelope["error"] = std::move(error);
    std::cout << envelope.dump() << "\n";
    std::cerr << "error: " << message << "\n";
    return code;
}

int run_guarded(const std::string& command, const std::function<int()>& body) {
    try {
        return body();
    } catch (const ParseError& e) {
        return emit_error(command, 2, "parse_error", e.what());
    } catch (const nlohmann::json::exception& e) {
        return emit_error(command, 2, "parse_error", e.what());
    } catch (const InfeasibleError& e) {
        return emit_error(command, 3, "infeasible", e.what());
    } catch (const CapExceededError& e) {
        ordered_json partial;
        if (e.partial_n && e.partial_mask) {
            const Graph g = mask_to_graph(*e.partial_n, *e.partial_mask);
            partial["N"] = *e.partial_n;
            partial["X4"] = emit_graph6(g);
        }
        return emit_error(command, 4, "cap_exceeded", e.what(), std::move(partial));
    } catch (const std::domain_error& e) {
        return emit_error(command, 2, "input_error", e.what());
    } catch (const std::invalid_argument& e) {
        return emit_error(command, 2, "input_error", e.what());
    } catch (const std::exception& e) {
        return emit_error(command, 1, "internal_error", e.what());
    }
}

int env_default_cap() {
    const char* raw = std::getenv("FPDECOMP_ENUM_CAP");
    if (raw == nullptr || *raw == '\0') return kDefaultEnumCap;
    char* end = nullptr;
    const long v = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || v < 2 || v > kEnumMaxVertices) {
        throw ParseError(std::string("FPDECOMP_ENUM_CAP='") + raw + "' is not an integer in 2.." +
                         std::to_string(kEnumMaxVertices));
    }
    return static_cast<int>(v);
}

Graph load_graph(const std::string& spec) {
    std::string text = spec;
    if (text.size() > 1 && text.front() == '@') {
        const std::string path = text.substr(1);
        std::ifstream in(path, std::ios::binary);
        if (!in) throw ParseError("cannot read graph file '" + path + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ')) {
        text.pop_back();
    }
    while (!text.empty() && text.front() == ' ') text.erase(text.begin());
    if (text.find('=') != std::string::npos) return parse_edge_list(text);
    return parse_graph6(text);
}

std::optional<CatalogId> catalog_id_from_name(const std::string& name) {
    for (CatalogId id : {CatalogId::K1, CatalogId::K2, CatalogId::K3, CatalogId::K4,
                         CatalogId::K6, CatalogId::C5, CatalogId::B, CatalogId::D,
                         CatalogId::X4, CatalogId::X5}) {
        if (name == to_string(id)) return id;
    }
    return std::nullopt;
}

ordered_json graph_json(const Graph& g) {
    ordered_json j;
    j["graph6"] = emit_graph6(g);
    j["n"] = g.n();
    j["edges"] = g.edge_count();
    return j;
}

ordered_json basis_item_json(const BasisItem& item) {
    ordered_json j;
    j["id"] = to_string(item.id);
    j["size"] = item.size;
    j["class"] = to_string(item.cls);
    j["graph6"] = emit_graph6(item.graph);
    return j;
}

ordered_json matrix_json(const Matrix& m) {
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

ordered_json invariants_json(const InvariantReport& rep) {
    ordered_json j;
    j["p"] = rep.p;
    j["cap"] = rep.cap;
    j["N"] = rep.n_min;
    j["X4"] = graph_json(rep.x4);
    j["X4"]["det"] = int_determinant(rep.x4);
    j["N_prime"] = rep.n_next;
    j["X5"] = graph_json(rep.x5);
    j["X5"]["det"] = int_determinant(rep.x5);
    return j;
}

std::string spectrum_line(int n, const std::set<std::int64_t>& values) {
    std::string out = "G_" + std::to_string(n) + " = {";
    bool first = true;
    for (const auto v : values) {
        if (!first) out += ",";
        out += std::to_string(v);
        first = false;
    }
    out += "}";
    return out;
}

int cmd_classify(std::uint64_t p_raw, int cap, int workers) {
    const PrimeModulus p(p_raw);
    const CaseId cid = classify_prime(p, cap, workers);
    ordered_json res;
    res["p"] = p.p();
    res["case"] = to_string(cid.tag);
    if (p.is_two()) {
        res["residues"] = nullptr;
        ordered_json basis = ordered_json::array();
        ordered_json k2;
        k2["id"] = "K2";
        k2["size"] = 2;
        k2["graph6"] = emit_graph6(complete_graph(2));
        basis.push_back(std::move(k2));
        res["basis"] = std::move(basis);
        emit_result("classify", std::move(res));
        std::cerr << "p = 2: CharTwo; every graph splits into K2 and K1 blocks\n";
        return 0;
    }
    ordered_json residues;
    residues["-1"] = to_string(residue_class(-Scalar(1, p)));
    for (const std::uint64_t v : {2, 3, 5, 7}) {
        residues[std::to_string(v)] = to_string(residue_class(Scalar(v, p)));
    }
    res["residues"] = std::move(residues);
    if (cid.tag == CaseTag::OnlyTwoInT) res["x6"] = to_string(cid.x6);
    if (cid.invariants) res["invariants"] = invariants_json(*cid.invariants);
    const auto basis = case_basis(cid, p);
    ordered_json basis_j = ordered_json::array();
    std::string names;
    for (const auto& item : basis) {
        basis_j.push_back(basis_item_json(item));
        if (!names.empty()) names += ", ";
        names += to_string(item.id);
    }
    res["basis"] = std::move(basis_j);
    emit_result("classify", std::move(res));
    std::cerr << "p = " << p.p() << ": " << to_string(cid.tag) << "; basis " << names << "\n";
    return 0;
}

int cmd_decompose(std::uint64_t p_raw, const std::string& graph_spec, int cap, int workers) {
    const PrimeModulus p(p_raw);
    const Graph g = load_graph(graph_spec);
    const Decomposition dec = decompose(g, p, cap, workers);
    const VerifyReport vr = verify(g, dec, p);
    if (!vr.ok) {
        throw std::logic_error("decomposition failed re-verification: " + vr.message);
    }
    ordered_json res;
    res["p"] = p.p();
    res["graph"] = graph_json(g);
    res["case"] = to_string(classify_prime(p, cap, workers).tag);
    res["k1_count"] = dec.k1_count;
    ordered_json mult;
    for (const auto& blk : dec.blocks) {
        const std::string name = to_string(blk.id);
        mult[name] = (mult.contains(name) ? mult[name].get<int>() : 0) + 1;
    }
    res["block_multiplicities"] = std::move(mult);
    ordered_json blocks = ordered_json::array();
    for (const auto& blk : dec.blocks) blocks.push_back(basis_item_json(blk));
    res["blocks"] = std::move(blocks);
    res["transform"] = matrix_json(dec.transform.r);
    res["verified"] = true;
    emit_result("decompose", std::move(res));

    std::string summary;
    for (const auto& blk : dec.blocks) {
        if (!summary.empty()) summary += " + ";
        summary += to_string(blk.id);
    }
    if (dec.k1_count > 0) {
        if (!summary.empty()) summary += " + ";
        summary += std::to_string(dec.k1_count) + "*K1";
    }
    if (summary.empty()) summary = "(empty)";
    std::cerr << g.n() << " vertices over F_" << p.p() << ": " << summary << "; verified\n";
    return 0;
}

int cmd_verify(const std::string& input) {
    std::string text;
    if (input == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
    } else {
        std::ifstream in(input, std::ios::binary);
        if (!in) throw ParseError("cannot read '" + input + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    const ordered_json envelope = ordered_json::parse(text);
    if (envelope.value("command", "") != "decompose") {
        throw ParseError("verify: input is not a decompose envelope");
    }
    const auto& res = envelope.at("result");
    const PrimeModulus p(res.at("p").get<std::uint64_t>());
    const Graph g = parse_graph6(res.at("graph").at("graph6").get<std::string>());

    std::vector<BasisItem> blocks;
    for (const auto& blk : res.at("blocks")) {
        const std::string name = blk.at("id").get<std::string>();
        const auto id = catalog_id_from_name(name);
        if (!id) throw ParseError("verify: unknown block id '" + name + "'");
        Graph bg = parse_graph6(blk.at("graph6").get<std::string>());
        const int size = bg.n();
        const ResidueClass cls =
            p.is_two() ? ResidueClass::Residue
                       : residue_class(Scalar::from_int(int_determinant(bg), p));
        blocks.push_back(BasisItem{*id, std::move(bg), size, cls});
    }

    const auto& tj = res.at("transform");
    const int n = g.n();
    if (static_cast<int>(tj.size()) != n) {
        throw ParseError("verify: transform has " + std::to_string(tj.size()) +
                         " rows, expected " + std::to_string(n));
    }
    Matrix r(n, n, p);
    for (int i = 0; i < n; ++i) {
        const auto& row = tj.at(static_cast<std::size_t>(i));
        if (static_cast<int>(row.size()) != n) {
            throw ParseError("verify: transform row " + std::to_string(i) + " has " +
                             std::to_string(row.size()) + " entries, expected " +
                             std::to_string(n));
        }
        for (int j = 0; j < n; ++j) {
            const auto v = row.at(static_cast<std::size_t>(j)).get<std::uint64_t>();
            if (v >= p.p()) {
                throw ParseError("verify: transform entry (" + std::to_string(i) + ", " +
                                 std::to_string(j) + ") = " + std::to_string(v) +
                                 " is not reduced mod " + std::to_string(p.p()));
            }
            r.set(i, j, v);
        }
    }

    Decomposition dec{res.at("k1_count").get<int>(), std::move(blocks),
                      CongruenceMap{r, adjacency(g, p), SymMatrix(0, p)}};
    dec.transform.target = adjacency(decomposition_graph(dec), p);
    const VerifyReport vr = verify(g, dec, p);

    ordered_json out;
    out["p"] = p.p();
    out["graph"] = graph_json(g);
    out["verified"] = vr.ok;
    out["message"] = vr.message;
    emit_result("verify", std::move(out));
    if (vr.ok) {
        std::cerr << "verified\n";
    } else {
        std::cerr << "verification failed: " << vr.message << "\n";
    }
    return vr.ok ? 0 : 1;
}

int cmd_atlas(int max_n, int workers, bool include_n8) {
    ordered_json spectra;
    std::vector<std::string> lines;
    for (int n = 2; n <= max_n; ++n) {
        const auto values = det_spectrum(n, workers, include_n8);
        ordered_json arr = ordered_json::array();
        for (const auto v : values) arr.push_back(v);
        spectra[std::to_string(n)] = std::move(arr);
        lines.push_back(spectrum_line(n, values));
    }
    ordered_json res;
    res["max_n"] = max_n;
    res["spectra"] = std::move(spectra);
    emit_result("atlas", std::move(res));
    for (const auto& line : lines) std::cerr << line << "\n";
    return 0;
}

int cmd_invariants(std::uint64_t p_raw, int cap, int workers) {
    const PrimeModulus p(p_raw);
    const InvariantReport rep = compute_invariants(p, cap, workers);
    emit_result("invariants", invariants_json(rep));
    std::cerr << "p = " << p.p() << ": N = " << rep.n_min << " (X4 = " << emit_graph6(rep.x4)
              << "), N' = " << rep.n_next << " (X5 = " << emit_graph6(rep.x5) << ")\n";
    return 0;
}

int cmd_selftest(const std::string& primes_csv, int max_n, int workers) {
    std::vector<std::uint64_t> primes;
    std::stringstream ss(primes_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        char* end = nullptr;
        const unsigned long long v = std::strtoull(tok.c_str(), &end, 10);
        if (end == tok.c_str() || *end != '\0') {
            throw ParseError("selftest: bad prime '" + tok + "'");
        }
        primes.push_back(v);
    }
    if (primes.empty()) throw ParseError("selftest: no primes given");

    bool all_passed = true;
    ordered_json reports = ordered_json::array();
    for (const auto p_raw : primes) {
        const PrimeModulus p(p_raw);
        const ExhaustiveReport rep = exhaustive_verify(p, max_n, workers);
        ordered_json rj;
        rj["p"] = rep.p;
        rj["graphs_checked"] = rep.graphs_checked;
        rj["failure_count"] = rep.failures.size();
        ordered_json fails = ordered_json::array();
        for (std::size_t i = 0; i < rep.failures.size() && i < 10; ++i) {
            const auto& f = rep.failures[i];
            ordered_json fj;
            fj["n"] = f.n;
            fj["mask"] = f.mask;
            fj["graph6"] = emit_graph6(mask_to_graph(f.n, f.mask));
            fj["message"] = f.message;
            fails.push_back(std::move(fj));
        }
        rj["failures"] = std::move(fails);
        ordered_json hist;
        for (const auto& [id, count] : rep.block_histogram) hist[to_string(id)] = count;
        rj["blocks"] = std::move(hist);
        reports.push_back(std::move(rj));
        if (!rep.failures.empty()) all_passed = false;
        std::cerr << "p = " << rep.p << ": " << rep.graphs_checked << " graphs, "
                  << rep.failures.size() << " failures\n";
    }

    const LemmaReport lemmas = lemma_checks();
    ordered_json lj;
    lj["all_ok"] = lemmas.all_ok();
    ordered_json checks = ordered_json::array();
    for (const auto& c : lemmas.checks) {
        ordered_json cj;
        cj["name"] = c.name;
        cj["expected"] = c.expected;
        cj["actual"] = c.actual;
        cj["ok"] = c.ok();
        checks.push_back(std::move(cj));
    }
    lj["checks"] = std::move(checks);
    if (!lemmas.all_ok()) all_passed = false;

    ordered_json res;
    res["primes"] = primes;
    res["max_n"] = max_n;
    res["reports"] = std::move(reports);
    res["lemma_checks"] = std::move(lj);
    res["all_passed"] = all_passed;
    emit_result("selftest", std::move(res));
    std::cerr << (all_passed ? "selftest passed\n" : "selftest FAILED\n");
    return all_passed ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graph adjacency decomposition over prime fields"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    int cap = kDefaultEnumCap;
    try {
        cap = env_default_cap();
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    std::uint64_t prime = 0;
    std::string graph_spec, input = "-", primes_csv = "2,3,5,7,11,13";
    int max_n_atlas = 6, max_n_selftest = 5, workers = 4;
    bool include_n8 = false;

    auto* classify = app.add_subcommand("classify", "Residue case of a prime and its basis");
    classify->add_option("-p,--prime", prime, "prime modulus")->required();
    classify->add_option("--cap", cap, "witness search vertex bound");
    classify->add_option("--workers", workers, "worker threads");

    auto* decompose_cmd = app.add_subcommand("decompose", "Decompose a graph over F_p");
    decompose_cmd->add_option("-p,--prime", prime, "prime modulus")->required();
    decompose_cmd
        ->add_option("-g,--graph", graph_spec, "graph6 string, @file, or edge list 'n=3; 0-1'")
        ->required();
    decompose_cmd->add_option("--cap", cap, "witness search vertex bound");
    decompose_cmd->add_option("--workers", workers, "worker threads");

    auto* verify_cmd = app.add_subcommand("verify", "Re-verify a decompose envelope");
    verify_cmd->add_option("-i,--input", input, "envelope file, or - for stdin");

    auto* atlas = app.add_subcommand("atlas", "Determinant spectra G_2..G_k");
    atlas->add_option("--max-n", max_n_atlas, "largest vertex count");
    atlas->add_option("--workers", workers, "worker threads");
    atlas->add_flag("--include-n8", include_n8, "allow the 2^28-graph level n = 8");

    auto* invariants = app.add_subcommand("invariants", "Nonresidue-determinant witnesses");
    invariants->add_option("-p,--prime", prime, "prime with -1, 2, 3 all residues")->required();
    invariants->add_option("--cap", cap, "vertex scan bound");
    invariants->add_option("--workers", workers, "worker threads");

    auto* selftest = app.add_subcommand("selftest", "Exhaustive decompose+verify sweep");
    selftest->add_option("--primes", primes_csv, "comma-separated primes");
    selftest->add_option("--max-n", max_n_selftest, "largest vertex count (<= 7)");
    selftest->add_option("--workers", workers, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    if (classify->parsed()) {
        return run_guarded("classify", [&] { return cmd_classify(prime, cap, workers); });
    }
    if (decompose_cmd->parsed()) {
        return run_guarded("decompose",
                           [&] { return cmd_decompose(prime, graph_spec, cap, workers); });
    }
    if (verify_cmd->parsed()) {
        return run_guarded("verify", [&] { return cmd_verify(input); });
    }
    if (atlas->parsed()) {
        return run_guarded("atlas", [&] { return cmd_atlas(max_n_atlas, workers, include_n8); });
    }
    if (invariants->parsed()) {
        return run_guarded("invariants", [&] { return cmd_invariants(prime, cap, workers); });
    }
    if (selftest->parsed()) {
        return run_guarded("selftest",
                           [&] { return cmd_selftest(primes_csv, max_n_selftest, workers); });
    }
    return 2;
}
