#include <doctest.h>

#include "lefkit/json_io.hpp"
#include "lefkit/models.hpp"
#include "lefkit/errors.hpp"

#include <cstdio>
#include <fstream>
#include <vector>

using namespace lefkit;

namespace {

std::string fixture(const std::string& name) {
    return std::string(LEFKIT_FIXTURES_DIR) + "/" + name;
}

struct CliResult {
    int code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(LEFKIT_CLI_PATH) + " " + args + " 2>/dev/null";
    CliResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (std::size_t got = fread(buf, 1, sizeof buf, pipe)) res.out.append(buf, got);
    const int status = pclose(pipe);
    res.code = WEXITSTATUS(status);
    return res;
}

} // namespace

TEST_CASE("json round trips are byte-stable") {
    const auto toy = arithmetic_surface_toy(Rat(2), Rat(6), RatMatrix::from_rows({{Rat(-1)}}), {});
    const Json j1 = arakelov_to_json(toy);
    const Json j2 = arakelov_to_json(arakelov_from_json(j1));
    CHECK(j1.dump() == j2.dump());

    ReductionGraph g;
    g.components = 2;
    g.intersection = RatMatrix::from_rows({{Rat(-2), Rat(2)}, {Rat(2), Rat(-2)}});
    g.l_degrees = {Rat(1), Rat(1)};
    const auto gm = reduction_graph_model(g);
    const Json m1 = local_model_to_json(gm.model);
    CHECK(m1.dump() == local_model_to_json(local_model_from_json(m1)).dump());

    RandomFilteredOptions opt;
    const auto rf = random_filtered_instance(3, opt);
    const Json f1 = filtered_to_json(rf.filtered);
    CHECK(f1.dump() == filtered_to_json(filtered_from_json(f1)).dump());
}

TEST_CASE("json parsing rejects malformed content with contract errors") {
    CHECK_THROWS_AS(rat_from_json(Json("1.5x")), ContractError);
    CHECK_THROWS_AS(matrix_from_json(Json::parse("[[\"1\"],[\"1\",\"2\"]]")), ContractError);
    Json bad = Json::object();
    bad["type"] = "lefschetz_module";
    CHECK_THROWS_AS(document_type(bad), ContractError);
    Json noschema = Json::parse(R"({"lefkit_schema": 2, "type": "x"})");
    CHECK_THROWS_AS(document_type(noschema), ContractError);
}

TEST_CASE("cli: ok path and exit codes") {
    const auto ok = run_cli("validate " + fixture("empty.json"));
    CHECK(ok.code == 0);
    CHECK(ok.out.find("\"status\": \"ok\"") != std::string::npos);

    // hypothesis violation: three-step split on a module whose pieces cannot
    // satisfy the center hypotheses
    {
        std::ofstream f("/tmp/lefkit_bad_filtered.json");
        f << R"({"lefkit_schema":1,"type":"filtered_module",
                 "V":{"n":1,"dims":{"0":1},"L":{}},"F1":{},"F2":{}})";
    }
    const auto hyp = run_cli("split three-step /tmp/lefkit_bad_filtered.json");
    CHECK(hyp.code == 2);
    CHECK(hyp.out.find("hypothesis_violation") != std::string::npos);

    // contract error: malformed JSON, diagnostics carry the parser message
    {
        std::ofstream f("/tmp/lefkit_broken.json");
        f << "{ not json";
    }
    const auto con = run_cli("validate /tmp/lefkit_broken.json");
    CHECK(con.code == 3);
    CHECK(con.out.find("contract_error") != std::string::npos);
    CHECK(con.out.find("malformed JSON") != std::string::npos);

    // unknown cycle name
    const auto unk = run_cli("local height " + fixture("cyc2.json") + " --z nope --w comp2");
    CHECK(unk.code == 3);
}

TEST_CASE("cli: heights and decompose agree with the library (thin adapter)") {
    const auto h = run_cli("local height " + fixture("cyc2.json") + " --z comp1 --w comp2");
    CHECK(h.code == 0);
    CHECK(h.out.find("\"value\": \"-1/8\"") != std::string::npos);

    const auto d = run_cli("global decompose " + fixture("toy.json"));
    CHECK(d.code == 0);
    CHECK(d.out.find("\"h_L\": \"3/2\"") != std::string::npos);
    CHECK(d.out.find("\"beta_XK\": \"3/2*X_eps\"") != std::string::npos);

    // direct library computation for the same fixture file
    std::ifstream in(fixture("toy.json"));
    REQUIRE(in.good());
    const ArakelovData toy = arakelov_from_json(Json::parse(in));
    const auto s = decompose(toy);
    CHECK(s.h_L == Rat(3, 2));
    const Json parsed = Json::parse(d.out);
    CHECK(parsed.at("payload").at("h_L").get<std::string>() == s.h_L.str());
    CHECK(parsed.at("payload").at("c1_L0").at(1).get<std::string>() == s.c1_L0.at(1, 0).str());
}

TEST_CASE("cli: byte-identical across repeated runs") {
    const std::vector<std::string> cmds = {
        "global decompose " + fixture("toy.json"),
        "local report " + fixture("cyc2.json"),
        "gen random --seed 5",
    };
    for (const std::string& cmd : cmds) {
        const auto a = run_cli(cmd);
        const auto b = run_cli(cmd);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("cli: every shipped instance fixture validates") {
    const std::vector<std::string> files = {"empty.json", "ext.json",  "blockdiag.json",
                                            "twist.json", "pn2.json",  "cyc2.json",
                                            "chain3.json", "toy.json", "random_seed1.json"};
    for (const auto& f : files) {
        const auto r = run_cli("validate " + fixture(f));
        CHECK(r.code == 0);
    }
}

TEST_CASE("cli: fixtures directory env fallback resolves bare names") {
    const std::string cmd = "LEFKIT_FIXTURES=" + std::string(LEFKIT_FIXTURES_DIR) + " " +
                            std::string(LEFKIT_CLI_PATH) + " validate empty.json 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::string out;
    while (std::size_t got = fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
    const int code = WEXITSTATUS(pclose(pipe));
    CHECK(code == 0);
    CHECK(out.find("\"status\": \"ok\"") != std::string::npos);
}

TEST_CASE("cli: cycle literals are accepted") {
    const auto r = run_cli("local lift " + fixture("cyc2.json") +
                           " --cycle '{\"p\":1,\"coords\":[\"1\",\"0\",\"0\",\"0\"]}'");
    CHECK(r.code == 0);
    CHECK(r.out.find("\"g\"") != std::string::npos);
}
