// Command-line front door: validate instances, run decompositions, liftings,
// heights and conjecture reports, and generate fixtures. JSON in, JSON out.
// Every subcommand is a thin adapter over the library; no computation beyond
// serialization lives here.

#include "lefkit/json_io.hpp"
#include "lefkit/errors.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

using namespace lefkit;

namespace {

Json load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        const char* dir = std::getenv("LEFKIT_FIXTURES");
        if (dir) {
            std::ifstream alt(std::string(dir) + "/" + path);
            if (alt) {
                try {
                    return Json::parse(alt);
                } catch (const Json::exception& e) {
                    throw ContractError(std::string("malformed JSON: ") + e.what());
                }
            }
        }
        throw ContractError("cannot open input file '" + path + "'");
    }
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw ContractError(std::string("malformed JSON: ") + e.what());
    }
}

Json signature_to_json(const Signature& s) {
    Json o = Json::object();
    o["plus"] = s.plus;
    o["minus"] = s.minus;
    o["zero"] = s.zero;
    return o;
}

Json column_to_json(const RatMatrix& col) {
    Json a = Json::array();
    for (int i = 0; i < col.rows(); ++i) a.push_back(rat_to_json(col.at(i, 0)));
    return a;
}

Cycle parse_cycle(const std::string& arg, const std::map<std::string, Cycle>& named) {
    if (!arg.empty() && arg[0] == '{') {
        try {
            return cycle_from_json(Json::parse(arg));
        } catch (const Json::exception& e) {
            throw ContractError(std::string("malformed cycle literal: ") + e.what());
        }
    }
    auto it = named.find(arg);
    if (it == named.end()) throw ContractError("unknown cycle name '" + arg + "'");
    return it->second;
}

GradedPairing pairing_field(const Json& doc) {
    if (!doc.contains("pairing")) throw ContractError("document has no 'pairing' field");
    return pairing_from_json(doc.at("pairing"));
}

LefschetzModule module_field(const Json& doc) {
    if (doc.contains("module")) return module_from_json(doc.at("module"));
    return module_from_json(doc);
}

struct Cli {
    std::string file;
    std::string cycle, zname, wname;
    std::string out;
    std::uint64_t seed = 1;
    int n = 2;
    std::string matrix, degrees, horizontal, nt, fibers;
    std::string dk = "2", lsq = "6";
    int max_prim = 2, max_n = 3;
    bool flip = false, break_pairing = false;
};

RatMatrix parse_matrix_arg(const std::string& s, const std::string& what) {
    try {
        return matrix_from_json(Json::parse(s));
    } catch (const Json::exception& e) {
        throw ContractError("malformed " + what + ": " + e.what());
    }
}

Json run_validate(const Cli& a) {
    const Json doc = load_document(a.file);
    const std::string t = document_type(doc);
    if (t == "lefschetz_module") module_from_json(doc);
    else if (t == "exact_sequence") validate_exact_sequence(exact_sequence_from_json(doc));
    else if (t == "filtered_module" || t == "paired_filtered" || t == "twist_instance")
        filtered_from_json(doc);
    else if (t == "paired_module") module_field(doc);
    else if (t == "special_fiber") special_fiber_from_json(doc);
    else if (t == "local_model") local_model_from_json(doc);
    else if (t == "arakelov") arakelov_from_json(doc);
    else throw ContractError("unknown document type '" + t + "'");
    Json payload = Json::object();
    payload["type"] = t;
    payload["valid"] = true;
    return payload;
}

Json run_lefschetz(const std::string& op, const Cli& a) {
    const Json doc = load_document(a.file);
    document_type(doc); // schema tag is required on every document
    const LefschetzModule m = module_field(doc);
    Json payload = Json::object();
    if (op == "check") {
        const auto rep = check_hard_lefschetz(m);
        payload["holds"] = rep.holds;
        payload["failures"] = rep.failures;
    } else if (op == "primitive") {
        const auto pd = primitive_parts(m);
        Json dims = Json::object(), bases = Json::object();
        for (auto& [i, sub] : pd.primitive) {
            dims[std::to_string(i)] = sub.dim();
            bases[std::to_string(i)] = matrix_to_json(sub.basis());
        }
        payload["primitive_dims"] = dims;
        payload["primitive"] = bases;
    } else { // lambda
        payload["Lambda"] = map_to_json(lambda_operator(m));
    }
    return payload;
}

Json run_split(const std::string& op, const Cli& a) {
    const Json doc = load_document(a.file);
    document_type(doc); // schema tag is required on every document
    Json payload = Json::object();
    if (op == "two-step") {
        const auto seq = exact_sequence_from_json(doc);
        payload["sigma"] = map_to_json(two_step_lift(seq));
    } else if (op == "lambda") {
        const auto seq = exact_sequence_from_json(doc);
        const auto ls = lambda_equivariant_split(seq);
        payload["alpha"] = map_to_json(ls.alpha);
        payload["beta"] = map_to_json(ls.beta);
    } else { // three-step
        const auto f = filtered_from_json(doc);
        const auto s = three_step_split(f);
        payload["alpha0"] = map_to_json(s.alpha0);
        payload["alpha1"] = map_to_json(s.alpha1);
        payload["alpha2"] = map_to_json(s.alpha2);
        payload["beta"] = map_to_json(s.beta);
        payload["verify_block_form"] = verify_block_form(f, s);
    }
    return payload;
}

Json run_pairing(const std::string& op, const Cli& a) {
    const Json doc = load_document(a.file);
    document_type(doc); // schema tag is required on every document
    Json payload = Json::object();
    if (op == "adjoint") {
        const LefschetzModule m = module_field(doc);
        payload["adjoint"] = check_adjoint(pairing_field(doc), m.L, m.space);
    } else if (op == "hodge") {
        const LefschetzModule m = module_field(doc);
        const auto rep = hodge_index_check(m, pairing_field(doc));
        payload["verdict"] = rep.verdict;
        Json sigs = Json::object();
        for (auto& [i, s] : rep.primitive_signatures) sigs[std::to_string(i)] = signature_to_json(s);
        payload["signatures"] = sigs;
    } else if (op == "blockform") {
        const auto f = filtered_from_json(doc);
        const auto p = pairing_field(doc);
        const auto s = three_step_split(f);
        payload["verify_block_form"] = verify_block_form(f, s);
        payload["block_form_check"] = block_form_check(f, p, s);
        const auto eq = hodge_equivalence_check(f, p, s);
        payload["hodge_v_side"] = eq.v_side;
        payload["hodge_g_side"] = eq.g_side;
        payload["hodge_agree"] = eq.agree;
    } else { // twist
        const auto f = filtered_from_json(doc);
        const auto p = pairing_field(doc);
        if (!doc.contains("eps_op")) throw ContractError("twist instance needs an 'eps_op' field");
        const GradedMap eps = map_from_json(doc.at("eps_op"), 1);
        const auto s = three_step_split(f);
        payload["c"] = rat_to_json(find_polarization_twist(f, p, s, eps));
    }
    return payload;
}

Json run_local(const std::string& op, const Cli& a) {
    const Json doc = load_document(a.file);
    Json payload = Json::object();
    const std::string t = document_type(doc);
    if (op == "vanishing" || op == "harmonic" || op == "report") {
        const SpecialFiberData f = (t == "local_model")
                                       ? local_model_from_json(doc).fiber
                                       : special_fiber_from_json(doc);
        if (op == "vanishing") {
            const auto vn = vanishing_nearby(f);
            payload["phi_dims"] = dims_to_json(vn.phi_mod.mod.space);
            payload["psi_dims"] = dims_to_json(vn.psi.mod.space);
            payload["phi"] = subspace_family_to_json(vn.phi);
            payload["psi_low"] = subspace_family_to_json(vn.psi_low);
            payload["phi_low_harmonic"] = subspace_family_to_json(vn.phi_low_harmonic);
        } else if (op == "harmonic") {
            const auto h = harmonic_split(f);
            payload["harmonic"] = subspace_family_to_json(h.harmonic);
            payload["phi_low"] = subspace_family_to_json(h.phi_low);
        } else {
            const auto rep = conjecture_report(f);
            payload["nd"] = rep.nd;
            payload["lef_phi"] = rep.lef_phi;
            payload["lef_psi"] = rep.lef_psi;
            payload["hod_phi"] = rep.hod_phi;
            payload["hod_psi"] = rep.hod_psi;
            payload["all"] = rep.all();
        }
        return payload;
    }
    const LocalModel m = local_model_from_json(doc);
    if (op == "lift" || op == "bblift") {
        if (a.cycle.empty()) throw ContractError("--cycle is required");
        const Cycle z = parse_cycle(a.cycle, m.cycles);
        const LiftResult r = (op == "lift") ? arakelov_lift(m, z) : bb_lift(m, z);
        payload["cycle"] = cycle_to_json(r.cycle);
        payload["g"] = column_to_json(r.g);
    } else { // height
        if (a.zname.empty() || a.wname.empty()) throw ContractError("--z and --w are required");
        const Cycle z = parse_cycle(a.zname, m.cycles);
        const Cycle w = parse_cycle(a.wname, m.cycles);
        payload["value"] = rat_to_json(local_height(m, z, w));
    }
    return payload;
}

Json run_global(const std::string& op, const Cli& a) {
    const Json doc = load_document(a.file);
    document_type(doc); // schema tag is required on every document
    const ArakelovData d = arakelov_from_json(doc);
    Json payload = Json::object();
    if (op == "decompose") {
        const auto s = decompose(d);
        payload["h_L"] = rat_to_json(s.h_L);
        payload["beta_XK"] = s.h_L.str() + "*X_eps";
        payload["fund"] = column_to_json(s.fund);
        payload["eps_class"] = column_to_json(s.eps_class);
        payload["c1_L0"] = column_to_json(s.c1_L0);
    } else if (op == "llift") {
        if (a.cycle.empty()) throw ContractError("--cycle is required");
        const auto s = decompose(d);
        const Cycle z = parse_cycle(a.cycle, d.cycles);
        payload["p"] = z.p;
        payload["lift"] = column_to_json(l_lift(d, s, z));
    } else if (op == "lpair") {
        if (a.zname.empty() || a.wname.empty()) throw ContractError("--z and --w are required");
        const auto s = decompose(d);
        const Cycle z1 = parse_cycle(a.zname, d.cycles);
        const Cycle z2 = parse_cycle(a.wname, d.cycles);
        payload["value"] = rat_to_json(l_pairing(d, s, z1, z2));
    } else if (op == "equiv") {
        const auto rep = gs_beilinson_equivalence(d);
        payload["gs"] = rep.gs;
        payload["beilinson"] = rep.beilinson;
        payload["agree"] = rep.agree;
        payload["adm_standard"] = rep.adm_standard;
        payload["internals_available"] = rep.internals_available;
        if (rep.internals_available) {
            Json internals = Json::object();
            internals["C"] = subspace_family_to_json(rep.C);
            internals["D"] = subspace_family_to_json(rep.D);
            internals["c_stable"] = rep.c_stable;
            internals["c_standard"] = rep.c_standard;
            internals["lambdaB_iso_A"] = rep.lambdaB_iso_A;
            internals["f1_eq_B_plus_D"] = rep.f1_eq_B_plus_D;
            internals["g1_iso_D"] = rep.g1_iso_D;
            payload["internals"] = internals;
        }
    } else if (op == "divisors") {
        const auto dd = divisor_decomposition(d);
        payload["h_L"] = rat_to_json(dd.h_L);
        payload["alpha0"] = matrix_to_json(dd.alpha0);
        payload["alpha1"] = matrix_to_json(dd.alpha1);
        payload["alpha2"] = matrix_to_json(dd.alpha2);
        if (!a.cycle.empty()) {
            const Cycle z = parse_cycle(a.cycle, d.cycles);
            payload["lift"] = column_to_json(divisor_l_lift(d, dd, z.coords));
        }
    } else { // zerocycles
        const auto dd = divisor_decomposition(d);
        const auto zd = zero_cycle_decomposition(d);
        payload["c_top_dim"] = zd.c_top_dim;
        payload["bc_dim"] = zd.bc_dim;
        payload["c1_zero"] = zd.c1_zero;
        payload["l_injective"] = zd.l_injective;
        payload["direct_sum"] = zd.direct_sum;
        payload["alpha0"] = matrix_to_json(zd.alpha0);
        payload["alpha1"] = matrix_to_json(zd.alpha1);
        payload["alpha2"] = matrix_to_json(zd.alpha2);
        if (!a.cycle.empty()) {
            const Cycle z = parse_cycle(a.cycle, d.cycles);
            payload["lift"] = column_to_json(zero_cycle_l_lift(d, dd, zd, z.coords));
        }
    }
    return payload;
}

Json run_gen(const std::string& op, const Cli& a) {
    if (op == "pn") {
        const auto pn = projective_space_module(a.n);
        Json body = Json::object();
        body["module"] = module_to_json(pn.module);
        body["pairing"] = pairing_to_json(pn.pairing);
        return make_document("paired_module", std::move(body));
    }
    if (op == "graph") {
        ReductionGraph g;
        g.intersection = parse_matrix_arg(a.matrix, "--matrix");
        g.components = g.intersection.rows();
        const RatMatrix degs = parse_matrix_arg("[[" + a.degrees + "]]", "--degrees");
        for (int j = 0; j < degs.cols(); ++j) g.l_degrees.push_back(degs.at(0, j));
        if (!a.horizontal.empty()) g.horizontal = parse_matrix_arg(a.horizontal, "--horizontal");
        return local_model_to_json(reduction_graph_model(g).model);
    }
    if (op == "toy") {
        std::vector<ReductionGraph> fibers;
        if (!a.fibers.empty()) {
            // --fibers '[[[-2,2],[2,-2]], ...]': list of intersection matrices
            Json spec;
            try {
                spec = Json::parse(a.fibers);
            } catch (const Json::exception& e) {
                throw ContractError(std::string("malformed --fibers: ") + e.what());
            }
            for (const auto& mj : spec) {
                ReductionGraph g;
                g.intersection = matrix_from_json(mj);
                g.components = g.intersection.rows();
                for (int i = 0; i < g.components; ++i) g.l_degrees.push_back(Rat(1));
                fibers.push_back(std::move(g));
            }
        }
        const RatMatrix nt = a.nt.empty() ? RatMatrix(0, 0) : parse_matrix_arg(a.nt, "--nt");
        return arakelov_to_json(
            arithmetic_surface_toy(Rat::parse(a.dk), Rat::parse(a.lsq), nt, fibers));
    }
    // random
    RandomFilteredOptions opt;
    opt.bounds.max_prim_dim = a.max_prim;
    opt.bounds.max_n = a.max_n;
    opt.plant_hodge_flip = a.flip;
    opt.break_pairing = a.break_pairing;
    const auto rf = random_filtered_instance(a.seed, opt);
    Json body = Json::object();
    const Json fdoc = filtered_to_json(rf.filtered);
    body["filtered"] = fdoc;
    body["pairing"] = pairing_to_json(rf.pairing);
    body["V"] = fdoc.at("V");
    body["F1"] = fdoc.at("F1");
    body["F2"] = fdoc.at("F2");
    return make_document("paired_filtered", std::move(body));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic toolkit for Lefschetz-type splittings, harmonic "
                 "decompositions and height pairings"};
    app.require_subcommand(1);
    Cli a;

    auto add_file = [&](CLI::App* cmd) { cmd->add_option("file", a.file, "input JSON document")->required(); };
    auto add_out = [&](CLI::App* cmd) { cmd->add_option("--out", a.out, "also write the payload to a file"); };

    CLI::App* validate = app.add_subcommand("validate", "validate a document");
    add_file(validate);
    add_out(validate);

    CLI::App* lef = app.add_subcommand("lefschetz", "hard Lefschetz, primitive parts, Lambda");
    std::string lef_op;
    lef->add_option("op", lef_op, "check|primitive|lambda")
        ->required()
        ->check(CLI::IsMember({"check", "primitive", "lambda"}));
    add_file(lef);
    add_out(lef);

    CLI::App* split = app.add_subcommand("split", "splitting operations");
    std::string split_op;
    split->add_option("op", split_op, "two-step|lambda|three-step")
        ->required()
        ->check(CLI::IsMember({"two-step", "lambda", "three-step"}));
    add_file(split);
    add_out(split);

    CLI::App* pairing = app.add_subcommand("pairing", "pairing and positivity operations");
    std::string pairing_op;
    pairing->add_option("op", pairing_op, "adjoint|blockform|hodge|twist")
        ->required()
        ->check(CLI::IsMember({"adjoint", "blockform", "hodge", "twist"}));
    add_file(pairing);
    add_out(pairing);

    CLI::App* local = app.add_subcommand("local", "special-fiber operations");
    std::string local_op;
    local->add_option("op", local_op, "vanishing|harmonic|report|lift|height|bblift")
        ->required()
        ->check(CLI::IsMember({"vanishing", "harmonic", "report", "lift", "height", "bblift"}));
    add_file(local);
    local->add_option("--cycle", a.cycle, "cycle name or JSON literal");
    local->add_option("--z", a.zname, "first cycle");
    local->add_option("--w", a.wname, "second cycle");
    add_out(local);

    CLI::App* global = app.add_subcommand("global", "global decomposition operations");
    std::string global_op;
    global->add_option("op", global_op, "decompose|llift|lpair|equiv|divisors|zerocycles")
        ->required()
        ->check(CLI::IsMember({"decompose", "llift", "lpair", "equiv", "divisors", "zerocycles"}));
    add_file(global);
    global->add_option("--cycle", a.cycle, "cycle name or JSON literal");
    global->add_option("--z", a.zname, "first cycle");
    global->add_option("--w", a.wname, "second cycle");
    add_out(global);

    CLI::App* gen = app.add_subcommand("gen", "generate fixture documents");
    std::string gen_op;
    gen->add_option("op", gen_op, "pn|graph|toy|random")
        ->required()
        ->check(CLI::IsMember({"pn", "graph", "toy", "random"}));
    gen->add_option("--n", a.n, "projective dimension for pn");
    gen->add_option("--matrix", a.matrix, "intersection matrix for graph");
    gen->add_option("--degrees", a.degrees, "component degrees for graph, e.g. 1,1");
    gen->add_option("--horizontal", a.horizontal, "horizontal intersections for graph");
    gen->add_option("--dk", a.dk, "generic degree for toy");
    gen->add_option("--lsq", a.lsq, "polarization self-intersection for toy");
    gen->add_option("--nt", a.nt, "height Gram for toy, e.g. [[-1]]");
    gen->add_option("--fibers", a.fibers, "list of fiber intersection matrices for toy");
    gen->add_option("--seed", a.seed, "seed for random");
    gen->add_option("--max-prim", a.max_prim, "primitive multiplicity bound for random");
    gen->add_option("--max-n", a.max_n, "center bound for random");
    gen->add_flag("--flip", a.flip, "plant a Hodge sign flip");
    gen->add_flag("--break-pairing", a.break_pairing, "damage the pairing orthogonality");
    add_out(gen);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        Json result = Json::object();
        result["status"] = "contract_error";
        result["diagnostics"] = Json::array({std::string("usage: ") + e.what()});
        std::cout << result.dump(2) << "\n";
        return 3;
    }

    Json result = Json::object();
    int code = 0;
    try {
        Json payload;
        if (validate->parsed()) payload = run_validate(a);
        else if (lef->parsed()) payload = run_lefschetz(lef_op, a);
        else if (split->parsed()) payload = run_split(split_op, a);
        else if (pairing->parsed()) payload = run_pairing(pairing_op, a);
        else if (local->parsed()) payload = run_local(local_op, a);
        else if (global->parsed()) payload = run_global(global_op, a);
        else payload = run_gen(gen_op, a);
        result["status"] = "ok";
        result["payload"] = payload;
        result["diagnostics"] = Json::array();
        if (!a.out.empty()) {
            std::ofstream of(a.out);
            if (!of) throw ContractError("cannot open output file '" + a.out + "'");
            of << payload.dump(2) << "\n";
        }
    } catch (const HypothesisError& e) {
        result["status"] = "hypothesis_violation";
        result["diagnostics"] = Json::array({e.what()});
        code = 2;
    } catch (const ContractError& e) {
        result["status"] = "contract_error";
        result["diagnostics"] = Json::array({e.what()});
        code = 3;
    } catch (const std::exception& e) {
        result["status"] = "contract_error";
        result["diagnostics"] = Json::array({std::string("internal: ") + e.what()});
        code = 3;
    }
    std::cout << result.dump(2) << "\n";
    return code;
}
