#include "lefkit/json_io.hpp"

#include "lefkit/errors.hpp"

namespace lefkit {

namespace {

int int_key(const std::string& s) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size()) throw ContractError("json: bad integer key '" + s + "'");
        return v;
    } catch (const std::exception&) {
        throw ContractError("json: bad integer key '" + s + "'");
    }
}

const Json& field(const Json& j, const std::string& name) {
    if (!j.is_object() || !j.contains(name))
        throw ContractError("json: missing field '" + name + "'");
    return j.at(name);
}

int int_field(const Json& j, const std::string& name) {
    const Json& v = field(j, name);
    if (!v.is_number_integer()) throw ContractError("json: field '" + name + "' must be an integer");
    return v.get<int>();
}

} // namespace

Json rat_to_json(const Rat& r) { return r.str(); }

Rat rat_from_json(const Json& j) {
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return Rat::parse(j.get<std::string>());
    throw ContractError("json: rationals must be strings like \"a/b\" or integers");
}

Json matrix_to_json(const RatMatrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(rat_to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

RatMatrix matrix_from_json(const Json& j) {
    if (!j.is_array()) throw ContractError("json: matrix must be an array of rows");
    std::vector<std::vector<Rat>> rows;
    for (const auto& r : j) {
        if (!r.is_array()) throw ContractError("json: matrix row must be an array");
        std::vector<Rat> row;
        for (const auto& e : r) row.push_back(rat_from_json(e));
        rows.push_back(std::move(row));
    }
    return RatMatrix::from_rows(rows);
}

Json dims_to_json(const GradedSpace& s) {
    Json o = Json::object();
    for (auto& [d, n] : s.dims) o[std::to_string(d)] = n;
    return o;
}

GradedSpace dims_from_json(const Json& j) {
    if (!j.is_object()) throw ContractError("json: dims must be an object");
    GradedSpace s;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!it.value().is_number_integer())
            throw ContractError("json: dimension must be an integer");
        s.set(int_key(it.key()), it.value().get<int>());
    }
    return s;
}

Json blocks_to_json(const std::map<int, RatMatrix>& blocks) {
    Json o = Json::object();
    for (auto& [d, m] : blocks) o[std::to_string(d)] = matrix_to_json(m);
    return o;
}

std::map<int, RatMatrix> blocks_from_json(const Json& j) {
    if (!j.is_object()) throw ContractError("json: blocks must be an object");
    std::map<int, RatMatrix> out;
    for (auto it = j.begin(); it != j.end(); ++it) {
        RatMatrix m = matrix_from_json(it.value());
        if (!m.empty()) out.emplace(int_key(it.key()), std::move(m));
    }
    return out;
}

Json map_to_json(const GradedMap& f) { return blocks_to_json(f.blocks); }

GradedMap map_from_json(const Json& j, int shift) {
    GradedMap f;
    f.shift = shift;
    f.blocks = blocks_from_json(j);
    return f;
}

Json pairing_to_json(const GradedPairing& p) {
    Json o = Json::object();
    o["total"] = p.total;
    o["blocks"] = blocks_to_json(p.blocks);
    return o;
}

GradedPairing pairing_from_json(const Json& j) {
    GradedPairing p;
    p.total = int_field(j, "total");
    p.blocks = blocks_from_json(field(j, "blocks"));
    return p;
}

Json family_to_json(const std::map<int, Subspace>& fam) {
    Json o = Json::object();
    for (auto& [d, s] : fam) o[std::to_string(d)] = matrix_to_json(s.basis());
    return o;
}

std::map<int, Subspace> family_from_json(const Json& j, const GradedSpace& ambient) {
    if (!j.is_object()) throw ContractError("json: subspace family must be an object");
    std::map<int, Subspace> fam;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const int d = int_key(it.key());
        RatMatrix rows = matrix_from_json(it.value());
        if (rows.rows() == 0) continue;
        fam.emplace(d, Subspace::span_rows(ambient.dim(d), rows));
    }
    return fam;
}

Json cycle_to_json(const Cycle& z) {
    Json o = Json::object();
    o["p"] = z.p;
    Json coords = Json::array();
    for (int i = 0; i < z.coords.rows(); ++i) coords.push_back(rat_to_json(z.coords.at(i, 0)));
    o["coords"] = coords;
    return o;
}

Cycle cycle_from_json(const Json& j) {
    Cycle z;
    z.p = int_field(j, "p");
    const Json& c = field(j, "coords");
    if (!c.is_array()) throw ContractError("json: cycle coords must be an array");
    std::vector<Rat> v;
    for (const auto& e : c) v.push_back(rat_from_json(e));
    z.coords = RatMatrix::column(v);
    return z;
}

Json make_document(const std::string& type, Json body) {
    body["lefkit_schema"] = 1;
    body["type"] = type;
    return body;
}

std::string document_type(const Json& j) {
    if (!j.is_object()) throw ContractError("json: document must be an object");
    if (!j.contains("lefkit_schema") || !j.at("lefkit_schema").is_number_integer() ||
        j.at("lefkit_schema").get<int>() != 1)
        throw ContractError("json: missing or unsupported lefkit_schema (expected 1)");
    if (!j.contains("type") || !j.at("type").is_string())
        throw ContractError("json: missing document type");
    return j.at("type").get<std::string>();
}

namespace {

Json module_body(const LefschetzModule& m) {
    Json o = Json::object();
    o["n"] = m.n;
    o["dims"] = dims_to_json(m.space);
    o["L"] = map_to_json(m.L);
    return o;
}

LefschetzModule module_from_body(const Json& j) {
    LefschetzModule m;
    m.n = int_field(j, "n");
    m.space = dims_from_json(field(j, "dims"));
    m.L = map_from_json(field(j, "L"), 1);
    validate_module(m);
    return m;
}

} // namespace

Json module_to_json(const LefschetzModule& m) {
    return make_document("lefschetz_module", module_body(m));
}

Json subspace_family_to_json(const std::map<int, Subspace>& fam) { return family_to_json(fam); }

LefschetzModule module_from_json(const Json& j) { return module_from_body(j); }

Json exact_sequence_to_json(const ExactSequence& s) {
    Json o = Json::object();
    o["U"] = module_body(s.U);
    o["V"] = module_body(s.V);
    o["W"] = module_body(s.W);
    o["eps"] = map_to_json(s.eps);
    o["eta"] = map_to_json(s.eta);
    return make_document("exact_sequence", std::move(o));
}

ExactSequence exact_sequence_from_json(const Json& j) {
    ExactSequence s;
    s.U = module_from_body(field(j, "U"));
    s.V = module_from_body(field(j, "V"));
    s.W = module_from_body(field(j, "W"));
    s.eps = map_from_json(field(j, "eps"), 0);
    s.eta = map_from_json(field(j, "eta"), 0);
    return s;
}

Json filtered_to_json(const FilteredLefschetzModule& f) {
    Json o = Json::object();
    o["V"] = module_body(f.V);
    o["F1"] = family_to_json(f.F1);
    o["F2"] = family_to_json(f.F2);
    return make_document("filtered_module", std::move(o));
}

FilteredLefschetzModule filtered_from_json(const Json& j) {
    FilteredLefschetzModule f;
    const Json& body = j.contains("filtered") ? j.at("filtered") : j;
    f.V = module_from_body(field(body, "V"));
    f.F1 = family_from_json(field(body, "F1"), f.V.space);
    f.F2 = family_from_json(field(body, "F2"), f.V.space);
    validate_filtered(f);
    return f;
}

Json special_fiber_to_json(const SpecialFiberData& f) {
    Json o = Json::object();
    o["n"] = f.n;
    o["A_high"] = dims_to_json(f.A_high);
    o["A_low"] = dims_to_json(f.A_low);
    o["conn"] = map_to_json(f.conn);
    o["L_high"] = map_to_json(f.L_high);
    o["L_low"] = map_to_json(f.L_low);
    o["pair"] = blocks_to_json(f.pair);
    o["cap_pair"] = pairing_to_json(f.cap_pair);
    return make_document("special_fiber", std::move(o));
}

namespace {

SpecialFiberData special_fiber_from_body(const Json& j) {
    SpecialFiberData f;
    f.n = int_field(j, "n");
    f.A_high = dims_from_json(field(j, "A_high"));
    f.A_low = dims_from_json(field(j, "A_low"));
    f.conn = map_from_json(field(j, "conn"), 0);
    f.L_high = map_from_json(field(j, "L_high"), 1);
    f.L_low = map_from_json(field(j, "L_low"), -1);
    f.pair = blocks_from_json(field(j, "pair"));
    f.cap_pair = pairing_from_json(field(j, "cap_pair"));
    validate_special_fiber(f);
    return f;
}

} // namespace

SpecialFiberData special_fiber_from_json(const Json& j) { return special_fiber_from_body(j); }

Json local_model_to_json(const LocalModel& m) {
    Json o = Json::object();
    o["fiber"] = special_fiber_to_json(m.fiber);
    o["Zhat"] = dims_to_json(m.Zhat);
    o["i_star"] = map_to_json(m.i_star);
    o["omega"] = map_to_json(m.omega);
    o["Zeta"] = dims_to_json(m.Zeta);
    o["eta_restrict"] = map_to_json(m.eta_restrict);
    o["zpair"] = blocks_to_json(m.zpair);
    Json cycles = Json::object();
    for (auto& [name, z] : m.cycles) cycles[name] = cycle_to_json(z);
    o["cycles"] = cycles;
    return make_document("local_model", std::move(o));
}

LocalModel local_model_from_json(const Json& j) {
    LocalModel m;
    m.fiber = special_fiber_from_body(field(j, "fiber"));
    m.Zhat = dims_from_json(field(j, "Zhat"));
    m.i_star = map_from_json(field(j, "i_star"), 0);
    m.omega = map_from_json(field(j, "omega"), 0);
    m.Zeta = dims_from_json(field(j, "Zeta"));
    m.eta_restrict = map_from_json(field(j, "eta_restrict"), 0);
    m.zpair = blocks_from_json(field(j, "zpair"));
    if (j.contains("cycles"))
        for (auto it = j.at("cycles").begin(); it != j.at("cycles").end(); ++it)
            m.cycles[it.key()] = cycle_from_json(it.value());
    validate_local_model(m);
    return m;
}

Json arakelov_to_json(const ArakelovData& d) {
    Json o = Json::object();
    o["n"] = d.n;
    o["chbar"] = module_body(d.chbar);
    o["pair"] = pairing_to_json(d.pair);
    o["F1"] = family_to_json(d.F1);
    o["B"] = family_to_json(d.F2);
    o["eps_op"] = map_to_json(d.eps_op);
    o["chk"] = module_body(d.K.chk);
    o["ak"] = module_body(d.K.ak);
    o["gen_proj"] = map_to_json(d.K.gen_proj);
    o["cls"] = map_to_json(d.K.cls);
    Json slices = Json::array();
    for (const auto& s : d.slices) slices.push_back(special_fiber_to_json(s));
    o["slices"] = slices;
    Json cycles = Json::object();
    for (auto& [name, z] : d.cycles) cycles[name] = cycle_to_json(z);
    o["cycles"] = cycles;
    return make_document("arakelov", std::move(o));
}

ArakelovData arakelov_from_json(const Json& j) {
    ArakelovData d;
    d.n = int_field(j, "n");
    d.chbar = module_from_body(field(j, "chbar"));
    d.pair = pairing_from_json(field(j, "pair"));
    d.F1 = family_from_json(field(j, "F1"), d.chbar.space);
    d.F2 = family_from_json(field(j, "B"), d.chbar.space);
    d.eps_op = map_from_json(field(j, "eps_op"), 1);
    d.K.chk = module_from_body(field(j, "chk"));
    d.K.ak = module_from_body(field(j, "ak"));
    d.K.gen_proj = map_from_json(field(j, "gen_proj"), 0);
    d.K.cls = map_from_json(field(j, "cls"), 0);
    if (j.contains("slices"))
        for (const auto& s : j.at("slices")) d.slices.push_back(special_fiber_from_body(s));
    if (j.contains("cycles"))
        for (auto it = j.at("cycles").begin(); it != j.at("cycles").end(); ++it)
            d.cycles[it.key()] = cycle_from_json(it.value());
    validate_arakelov(d);
    return d;
}

} // namespace lefkit
