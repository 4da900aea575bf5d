// Command line front end: evaluate size formulas, build the named families,
// apply shifts and closures, run the exact searches, and replay the
// reproduction suites.
//
// Exit codes: 0 success, 1 verification failure, 2 invalid input.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include <mpfam/mpfam.hpp>

namespace {

using namespace mpfam;

std::vector<int> parse_csv_ints(const std::string& text, const char* what) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw BadParametersError(std::string(what) + ": bad integer '" + tok + "'");
        }
    }
    if (out.empty()) throw BadParametersError(std::string(what) + ": empty list");
    return out;
}

// Witness elements as part:value tokens, e.g. "1:1,2:1,3:1".
std::vector<Element> parse_elements(const std::string& text) {
    std::vector<Element> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const auto colon = tok.find(':');
        if (colon == std::string::npos)
            throw BadParametersError("element '" + tok + "' is not part:value");
        try {
            out.push_back(Element{std::stoi(tok.substr(0, colon)), std::stoi(tok.substr(colon + 1))});
        } catch (const std::exception&) {
            throw BadParametersError("element '" + tok + "' is not part:value");
        }
    }
    return out;
}

std::uint64_t env_cap(const char* name, std::uint64_t fallback) {
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    try {
        std::size_t used = 0;
        const unsigned long long x = std::stoull(v, &used);
        if (used != std::string(v).size() || x == 0) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw BadParametersError(std::string(name) + ": bad cap '" + v + "'");
    }
}

std::string set_to_text(const PartStructure& ps, const MultiPartSet& f) {
    std::ostringstream out;
    out << "{";
    const auto vals = f.values(ps);
    for (int s = 1; s <= ps.parts(); ++s) {
        if (s > 1) out << " | ";
        const auto& part = vals[static_cast<std::size_t>(s - 1)];
        for (std::size_t i = 0; i < part.size(); ++i) {
            if (i) out << ",";
            out << part[i];
        }
    }
    out << "}";
    return out.str();
}

std::string structure_to_text(const PartStructure& ps) {
    std::ostringstream out;
    out << "n=";
    for (int s = 1; s <= ps.parts(); ++s) out << (s > 1 ? "," : "") << ps.n(s);
    out << " k=";
    for (int s = 1; s <= ps.parts(); ++s) out << (s > 1 ? "," : "") << ps.k(s);
    return out.str();
}

void print_family_human(const Family& fam) {
    const PartStructure& ps = fam.structure();
    std::cout << "structure: " << structure_to_text(ps) << "\n";
    std::cout << "size: " << fam.size() << "\n";
    std::cout << "classification: " << to_string(classify(fam)) << "\n";
    for (const auto& f : fam.members()) std::cout << "  " << set_to_text(ps, f) << "\n";
}

// Shared tail of every family-producing subcommand: canonical bytes to the
// output file and/or stdout, a readable summary otherwise.
void emit_family(const Family& fam, bool json, const std::string& out_path) {
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw BadParametersError("cannot open for writing: " + out_path);
        out << canonical_bytes(fam);
    }
    if (json)
        std::cout << canonical_bytes(fam);
    else
        print_family_human(fam);
}

struct InstanceArgs {
    std::string n_text;
    std::string k_text;

    PartStructure parse() const {
        return PartStructure(parse_csv_ints(n_text, "--n"), parse_csv_ints(k_text, "--k"));
    }
};

void add_instance_options(CLI::App* cmd, InstanceArgs& args) {
    cmd->add_option("--n", args.n_text, "part sizes, comma separated, e.g. 5,5")->required();
    cmd->add_option("--k", args.k_text, "uniformities, comma separated, e.g. 2,2")->required();
}

int run_formula(const InstanceArgs& inst, int t, const std::string& s_text,
                const std::string& ell_text, bool json) {
    const PartStructure ps = inst.parse();
    if (!ell_text.empty()) {
        if (t == 0) throw BadParametersError("--ell needs --t");
        const std::vector<int> ell = parse_csv_ints(ell_text, "--ell");
        ell_view(ps, t, ell);  // admissibility check, the view itself is discarded
        const BigCount value = ell_size(ps, t, ell);
        if (json) {
            Json out;
            out["instance"] = structure_to_json(ps);
            out["t"] = t;
            out["ell"] = ell;
            out["size"] = count_to_json(value);
            std::cout << out.dump(2) << "\n";
        } else {
            std::cout << "layered candidate size: " << value << "\n";
        }
        return 0;
    }
    if (t != 0) {
        std::vector<int> S;
        if (!s_text.empty()) S = parse_csv_ints(s_text, "--S");
        const TSPair ts{t, S};
        const BigCount value = hm_ts_size(ps, ts);
        if (json) {
            Json out;
            out["instance"] = structure_to_json(ps);
            out["t"] = t;
            out["S"] = S;
            out["size"] = count_to_json(value);
            std::cout << out.dump(2) << "\n";
        } else {
            std::cout << "exchange candidate size: " << value << "\n";
        }
        return 0;
    }

    // no (t, S, ell): the full table for the instance
    const BigCount layer = layer_size(ps);
    const BigCount frankl = frankl_bound(ps);
    std::optional<MaxCandidate> mc;
    try {
        mc = max_hm_size(ps);
    } catch (const NoAdmissiblePairError&) {
    }
    std::optional<BigCount> k1;
    if (ps.parts() >= 3) {
        bool uniform = true;
        for (int s = 1; s <= ps.parts(); ++s)
            if (ps.k(s) != 1 || ps.n(s) != ps.n(1)) uniform = false;
        if (uniform) k1 = k1_bound(ps.n(1), ps.parts());
    }
    if (json) {
        Json out;
        out["instance"] = structure_to_json(ps);
        out["layer"] = count_to_json(layer);
        out["ekr_regime"] = ps.ekr_regime();
        out["frankl_bound"] = count_to_json(frankl);
        Json stars = Json::array();
        for (int part = 1; part <= ps.parts(); ++part) {
            BigCount star = binomial(ps.n(part) - 1, ps.k(part) - 1);
            for (int s = 1; s <= ps.parts(); ++s)
                if (s != part) star *= binomial(ps.n(s), ps.k(s));
            stars.push_back(count_to_json(star));
        }
        out["stars"] = std::move(stars);
        Json cands = Json::array();
        for (const TSPair& ts : admissible_pairs(ps)) {
            Json c;
            c["t"] = ts.t;
            c["S"] = ts.S;
            c["size"] = count_to_json(hm_ts_size(ps, ts));
            cands.push_back(std::move(c));
        }
        out["candidates"] = std::move(cands);
        out["m_max"] = mc ? count_to_json(mc->value) : Json(nullptr);
        out["k1_bound"] = k1 ? count_to_json(*k1) : Json(nullptr);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "instance: " << structure_to_text(ps) << "\n";
        std::cout << "layer size: " << layer << "\n";
        std::cout << "ekr regime: " << (ps.ekr_regime() ? "yes" : "no") << "\n";
        std::cout << "frankl bound: " << frankl << "\n";
        for (int part = 1; part <= ps.parts(); ++part) {
            BigCount star = binomial(ps.n(part) - 1, ps.k(part) - 1);
            for (int s = 1; s <= ps.parts(); ++s)
                if (s != part) star *= binomial(ps.n(s), ps.k(s));
            std::cout << "star through part " << part << ": " << star << "\n";
        }
        if (mc) {
            for (const TSPair& ts : admissible_pairs(ps)) {
                std::cout << "candidate t=" << ts.t << " S={";
                for (std::size_t i = 0; i < ts.S.size(); ++i)
                    std::cout << (i ? "," : "") << ts.S[i];
                std::cout << "}: " << hm_ts_size(ps, ts) << "\n";
            }
            std::cout << "best candidate: " << mc->value << "\n";
        } else {
            std::cout << "best candidate: none (no admissible pair)\n";
        }
        if (k1) std::cout << "k=1 closed form: " << *k1 << "\n";
    }
    return 0;
}

int run_construct(const InstanceArgs& inst, int star_t, int t, const std::string& s_text,
                  const std::string& ell_text, const std::string& triangle_text,
                  bool allow_trivial, bool json, const std::string& out_path,
                  std::uint64_t layer_cap) {
    const PartStructure ps = inst.parse();
    const int chosen = (star_t != 0) + (t != 0) + (!triangle_text.empty());
    if (chosen != 1)
        throw BadParametersError("pick exactly one of --star, --t, --triangle");
    Family fam = [&] {
        if (star_t != 0) return frankl_product(ps, star_t, layer_cap);
        if (!triangle_text.empty()) {
            const auto w = parse_elements(triangle_text);
            if (w.size() != 3) throw BadParametersError("--triangle needs three part:value elements");
            return triangle_family(ps, w[0], w[1], w[2], layer_cap);
        }
        if (!ell_text.empty())
            return ell_family(ps, t, parse_csv_ints(ell_text, "--ell"), layer_cap);
        std::vector<int> S;
        if (!s_text.empty()) S = parse_csv_ints(s_text, "--S");
        return hm_ts_family(ps, TSPair{t, S}, allow_trivial, layer_cap);
    }();
    emit_family(fam, json, out_path);
    return 0;
}

int run_verify(const std::string& path, bool json) {
    const Family fam = read_family_file(path);
    const FamilyClass cls = classify(fam);
    const bool shifted = is_shifted(fam);
    const bool proj = projections_intersect(fam);
    if (json) {
        Json out;
        out["structure"] = structure_to_json(fam.structure());
        out["size"] = fam.size();
        out["classification"] = to_string(cls);
        out["shifted"] = shifted;
        out["projections_intersect"] = proj;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "structure: " << structure_to_text(fam.structure()) << "\n";
        std::cout << "size: " << fam.size() << "\n";
        std::cout << "classification: " << to_string(cls) << "\n";
        std::cout << "shifted: " << (shifted ? "true" : "false") << "\n";
        std::cout << "projections intersect: " << (proj ? "true" : "false") << "\n";
    }
    return 0;
}

int run_shift(const std::string& path, int t, int i, int j, bool json,
              const std::string& out_path) {
    const Family fam = read_family_file(path);
    const ShiftIndex ix{t, i, j};
    validate(fam.structure(), ix);
    const Family shifted = shift_family(fam, ix);
    if (!json) {
        std::cout << "size: " << fam.size() << " -> " << shifted.size() << "\n";
        std::cout << "changed: " << (shifted == fam ? "no" : "yes") << "\n";
    }
    emit_family(shifted, json, out_path);
    return 0;
}

int run_closure(const std::string& path, bool json, const std::string& out_path) {
    const Family fam = read_family_file(path);
    const Family closed = shifted_closure(fam);
    if (!json) {
        std::cout << "order: " << family_order(fam) << " -> " << family_order(closed) << "\n";
        std::cout << "shifted: " << (is_shifted(closed) ? "true" : "false") << "\n";
    }
    emit_family(closed, json, out_path);
    return 0;
}

int run_search(const InstanceArgs& inst, const std::string& mode_text,
               const std::string& engine, bool json, const std::string& witness_path,
               std::size_t vertex_cap) {
    const PartStructure ps = inst.parse();
    SearchMode mode;
    if (mode_text == "intersecting")
        mode = SearchMode::intersecting;
    else if (mode_text == "nontrivial")
        mode = SearchMode::nontrivial;
    else
        throw BadParametersError("--mode must be intersecting or nontrivial");

    SearchResult res;
    if (engine == "primary") {
        res = max_family(ps, mode, vertex_cap);
    } else if (engine == "oracle") {
        res = oracle_max(ps, mode);
    } else if (engine == "star-cover") {
        if (mode != SearchMode::nontrivial)
            throw BadParametersError("--engine star-cover only searches nontrivial families");
        IntersectionGraph g(ps, vertex_cap);
        res = max_nontrivial_star_cover(g);
    } else {
        throw BadParametersError("--engine must be primary, oracle, or star-cover");
    }

    std::optional<bool> matches;
    if (mode == SearchMode::nontrivial && res.status == SearchStatus::optimal) {
        try {
            matches = BigCount(res.size) == max_hm_size(ps).value;
        } catch (const NoAdmissiblePairError&) {
        }
    }
    if (!witness_path.empty() && res.witness) {
        std::ofstream out(witness_path, std::ios::binary);
        if (!out) throw BadParametersError("cannot open for writing: " + witness_path);
        out << canonical_bytes(*res.witness);
    }
    if (json) {
        std::cout << report_to_json(ps, mode, res, matches).dump(2) << "\n";
    } else {
        std::cout << "instance: " << structure_to_text(ps) << "\n";
        std::cout << "mode: " << to_string(mode) << "\n";
        std::cout << "status: " << to_string(res.status) << "\n";
        std::cout << "size: " << res.size << "\n";
        if (res.witness)
            std::cout << "witness classification: " << to_string(classify(*res.witness)) << "\n";
        if (matches)
            std::cout << "matches best candidate: " << (*matches ? "true" : "false") << "\n";
        std::cout << "nodes: " << res.nodes << "\n";
        std::cout << "ms: " << res.ms << "\n";
    }
    return 0;
}

int run_reproduce(const std::string& suite, int p, int n_max, bool json) {
    const std::vector<ReproductionReport> reps = reproduce_suites(suite, p, n_max);
    bool ok = true;
    if (json) {
        Json out = Json::array();
        for (const auto& rep : reps) {
            out.push_back(reproduction_to_json(rep));
            ok = ok && rep.passed();
        }
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& rep : reps) {
            std::cout << reproduction_to_text(rep);
            ok = ok && rep.passed();
        }
        std::cout << (ok ? "all suites pass" : "FAILURES present") << "\n";
    }
    return ok ? 0 : 1;
}

int run_selftest() {
    int failures = 0;
    const auto check = [&failures](const char* name, bool ok) {
        std::cout << (ok ? "[ok]   " : "[FAIL] ") << name << "\n";
        if (!ok) ++failures;
    };

    bool reproduce_ok = true;
    for (const auto& rep : reproduce_suites("all")) reproduce_ok = reproduce_ok && rep.passed();
    check("reproduction suites", reproduce_ok);

    {
        bool ok = true;
        const std::vector<std::pair<std::vector<int>, std::vector<int>>> insts = {
            {{5, 5}, {2, 2}}, {{3, 3, 3}, {1, 1, 1}}, {{2, 2}, {1, 1}}, {{5}, {2}}};
        for (const auto& [n, k] : insts) {
            const PartStructure ps(n, k);
            for (const SearchMode mode : {SearchMode::intersecting, SearchMode::nontrivial}) {
                const SearchResult a = max_family(ps, mode);
                const SearchResult b = oracle_max(ps, mode);
                ok = ok && a.status == b.status && a.size == b.size;
                if (a.witness) ok = ok && classify(*a.witness) != FamilyClass::not_intersecting;
            }
        }
        check("engine agreement on the fixed instances", ok);
    }

    {
        const PartStructure ps({5, 5}, {2, 2});
        IntersectionGraph g(ps);
        const SearchResult sc = max_nontrivial_star_cover(g);
        check("star-cover cross-check at n=(5,5), k=(2,2)", sc.size == 35);
    }

    {
        const PartStructure ps({5, 5}, {2, 2});
        const Family fam = hm_ts_family(ps, TSPair{1, {2}});
        const std::string bytes = canonical_bytes(fam);
        const Family back = family_from_text(bytes);
        check("canonical byte round-trip", back == fam && canonical_bytes(back) == bytes);

        const Family closed = shifted_closure(fam);
        check("closure is shifted and size-preserving",
              is_shifted(closed) && closed.size() == fam.size() && projections_intersect(closed));
    }

    std::cout << (failures == 0 ? "selftest pass" : "selftest FAIL") << "\n";
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-part intersecting family toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    bool json = false;
    app.add_flag("--json", json, "machine-readable output");

    InstanceArgs formula_inst;
    int formula_t = 0;
    std::string formula_s, formula_ell;
    CLI::App* cmd_formula = app.add_subcommand("formula", "evaluate the size formulas");
    add_instance_options(cmd_formula, formula_inst);
    cmd_formula->add_option("--t", formula_t, "distinguished part");
    cmd_formula->add_option("--S", formula_s, "part subset, comma separated");
    cmd_formula->add_option("--ell", formula_ell, "pinned-count vector, comma separated");

    InstanceArgs construct_inst;
    int construct_star = 0, construct_t = 0;
    std::string construct_s, construct_ell, construct_triangle, construct_out;
    bool construct_allow_trivial = false;
    CLI::App* cmd_construct = app.add_subcommand("construct", "build one of the named families");
    add_instance_options(cmd_construct, construct_inst);
    cmd_construct->add_option("--star", construct_star, "full star through the given part");
    cmd_construct->add_option("--t", construct_t, "distinguished part of the exchange family");
    cmd_construct->add_option("--S", construct_s, "part subset, comma separated");
    cmd_construct->add_option("--ell", construct_ell, "pinned-count vector, comma separated");
    cmd_construct->add_option("--triangle", construct_triangle,
                              "three witness elements part:value, comma separated");
    cmd_construct->add_flag("--allow-trivial", construct_allow_trivial,
                            "permit excluded (t, S) pairs");
    cmd_construct->add_option("--out", construct_out, "write canonical JSON to this file");

    std::string verify_path;
    CLI::App* cmd_verify = app.add_subcommand("verify", "classify a family file");
    cmd_verify->add_option("file", verify_path, "family JSON file")->required();

    std::string shift_path, shift_out;
    int shift_t = 0, shift_i = 0, shift_j = 0;
    CLI::App* cmd_shift = app.add_subcommand("shift", "apply one compression");
    cmd_shift->add_option("file", shift_path, "family JSON file")->required();
    cmd_shift->add_option("--t", shift_t, "part")->required();
    cmd_shift->add_option("--i", shift_i, "target value")->required();
    cmd_shift->add_option("--j", shift_j, "source value")->required();
    cmd_shift->add_option("--out", shift_out, "write canonical JSON to this file");

    std::string closure_path, closure_out;
    CLI::App* cmd_closure = app.add_subcommand("closure", "apply compressions to the fixpoint");
    cmd_closure->add_option("file", closure_path, "family JSON file")->required();
    cmd_closure->add_option("--out", closure_out, "write canonical JSON to this file");

    InstanceArgs search_inst;
    std::string search_mode = "intersecting", search_engine = "primary", search_witness;
    CLI::App* cmd_search = app.add_subcommand("search", "exact maximum family search");
    add_instance_options(cmd_search, search_inst);
    cmd_search->add_option("--mode", search_mode, "intersecting or nontrivial");
    cmd_search->add_option("--engine", search_engine, "primary, oracle, or star-cover");
    cmd_search->add_option("--witness", search_witness, "write an optimal family to this file");

    std::string repro_suite;
    int repro_p = 3, repro_n_max = 4;
    CLI::App* cmd_repro = app.add_subcommand("reproduce", "replay a reproduction suite");
    cmd_repro
        ->add_option("suite", repro_suite,
                     "counterexample, k1-table, hm-table, identities, or all")
        ->required();
    cmd_repro->add_option("--p", repro_p, "k1-table: number of parts");
    cmd_repro->add_option("--n-max", repro_n_max, "k1-table: largest part size");

    CLI::App* cmd_selftest = app.add_subcommand("selftest", "quick internal consistency run");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const std::uint64_t layer_cap = env_cap("MPFAM_LAYER_CAP", default_layer_cap);
        const std::size_t vertex_cap =
            static_cast<std::size_t>(env_cap("MPFAM_VERTEX_CAP", default_vertex_cap));
        if (*cmd_formula)
            return run_formula(formula_inst, formula_t, formula_s, formula_ell, json);
        if (*cmd_construct)
            return run_construct(construct_inst, construct_star, construct_t, construct_s,
                                 construct_ell, construct_triangle, construct_allow_trivial, json,
                                 construct_out, layer_cap);
        if (*cmd_verify) return run_verify(verify_path, json);
        if (*cmd_shift) return run_shift(shift_path, shift_t, shift_i, shift_j, json, shift_out);
        if (*cmd_closure) return run_closure(closure_path, json, closure_out);
        if (*cmd_search)
            return run_search(search_inst, search_mode, search_engine, json, search_witness,
                              vertex_cap);
        if (*cmd_repro) return run_reproduce(repro_suite, repro_p, repro_n_max, json);
        if (*cmd_selftest) return run_selftest();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
