#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <string>

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    std::string stdout_text;
};

RunResult run_cli_env(const std::string& env_prefix, const std::string& args) {
    std::string cmd = env_prefix + " " + std::string(INTEGRAX_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

RunResult run_cli(const std::string& args) { return run_cli_env("", args); }

const char* kMixedCellMatrix =
    R"([["1","0","0","0"],["0","1","0","0"],["0","0","-1","1"],["0","0","0","-1"]])";
const char* kMixedCellSpec = R"([{"eigenvalue":"1","cells":[1,1]},{"eigenvalue":"-1","cells":[2]}])";

}  // namespace

TEST_CASE("analyze a matrix") {
    auto r = run_cli(std::string("analyze -i '") + kMixedCellMatrix + "'");
    REQUIRE(r.exit_code == 0);
    json doc = json::parse(r.stdout_text);
    CHECK(doc["input"] == "matrix");
    CHECK(doc["integrable"] == true);
    CHECK(doc["integral"].is_null());
    CHECK(doc["char_poly"] == json({"1", "0", "-2", "0", "1"}));
    CHECK(doc["locus"] == json({"-1", "1"}));
}

TEST_CASE("analyze a Jordan spec constructs and verifies an integral") {
    auto r = run_cli(std::string("analyze -i '") + kMixedCellSpec + "'");
    REQUIRE(r.exit_code == 0);
    json doc = json::parse(r.stdout_text);
    CHECK(doc["input"] == "jordan_spec");
    CHECK(doc["integrable"] == true);
    CHECK(doc["verification"] == true);
    CHECK(doc["integral"]["b"] == "0");
    CHECK(doc["integral"]["v"] == json({"0", "0", "1", "0"}));
}

TEST_CASE("analyze emits the exact obstruction for non-integrable input") {
    auto r = run_cli(
        R"(analyze -i '[["1","0","0","0"],["0","1","0","0"],["0","0","-1","0"],["0","0","0","-1"]]')");
    REQUIRE(r.exit_code == 0);
    json doc = json::parse(r.stdout_text);
    CHECK(doc["integrable"] == false);
    CHECK(doc["obstruction"]["gap"] == "16/15");
}

TEST_CASE("analyze accepts files and writes files") {
    std::string in = "/tmp/integrax_cli_in.json", out = "/tmp/integrax_cli_out.json";
    { std::ofstream(in) << kMixedCellMatrix; }
    auto r = run_cli("analyze -i " + in + " -o " + out);
    REQUIRE(r.exit_code == 0);
    CHECK(r.stdout_text.empty());
    std::ifstream f(out);
    json doc = json::parse(f);
    CHECK(doc["integrable"] == true);
}

TEST_CASE("sfull") {
    auto r = run_cli(
        R"(sfull -i '{"factored":{"leading":"1","roots":[{"root":"1","mult":2}]},"S":["1"]}')");
    REQUIRE(r.exit_code == 0);
    json doc = json::parse(r.stdout_text);
    CHECK(doc["exists"] == true);
    CHECK(doc["F"] == json({"-1/3", "1", "-1", "1/3"}));

    r = run_cli(
        R"(sfull -i '{"factored":{"leading":"1","roots":[{"root":"1","mult":2},{"root":"-1","mult":2}]},"S":["1","-1"]}')");
    REQUIRE(r.exit_code == 0);
    doc = json::parse(r.stdout_text);
    CHECK(doc["exists"] == false);
    CHECK(doc["F"].is_null());

    // S outside the multiple zeros is an input error
    r = run_cli(R"(sfull -i '{"factored":{"leading":"1","roots":[{"root":"1","mult":1}]},"S":["1"]}')");
    CHECK(r.exit_code == 2);
}

TEST_CASE("classify") {
    auto r = run_cli(R"(classify -i '{"alphas":[2,2],"betas":[1,1]}')");
    REQUIRE(r.exit_code == 0);
    json doc = json::parse(r.stdout_text);
    CHECK(doc["verdict"] == "Mixed");
    CHECK(doc["n"] == 6);
    CHECK(doc["M"] == 4);

    r = run_cli(R"(classify -i '{"alphas":[],"betas":[1,1,1]}')");
    CHECK(json::parse(r.stdout_text)["verdict"] == "AllIntegrable");
    r = run_cli(R"(classify -i '{"alphas":[2,2],"betas":[]}')");
    CHECK(json::parse(r.stdout_text)["verdict"] == "NoneIntegrable");
}

TEST_CASE("witness exit codes and payloads") {
    auto r = run_cli(R"(witness -i '{"alphas":[2,2],"betas":[1,1]}' --kind integrable)");
    REQUIRE(r.exit_code == 0);
    json doc = json::parse(r.stdout_text);
    CHECK(doc["check_sfull"] == true);
    CHECK(doc["residual"].get<double>() < 1e-9);
    CHECK(doc["tree"].is_string());

    r = run_cli(R"(witness -i '{"alphas":[2,2],"betas":[1,1]}' --kind nonintegrable)");
    REQUIRE(r.exit_code == 0);
    doc = json::parse(r.stdout_text);
    CHECK(doc["check_sfull"] == false);

    // regime violation
    r = run_cli(R"(witness -i '{"alphas":[2,2,2],"betas":[]}' --kind integrable)");
    CHECK(r.exit_code == 3);
    // malformed signature
    r = run_cli(R"(witness -i '{"alphas":[1],"betas":[]}' --kind integrable)");
    CHECK(r.exit_code == 2);
    // unreachable tolerance exhausts the restart budget
    r = run_cli(R"(witness -i '{"alphas":[2,2],"betas":[1,1]}' --kind integrable --tol 1e-30)");
    CHECK(r.exit_code == 4);
}

TEST_CASE("witness seed: flag wins, INTEGRAX_SEED overrides the default") {
    std::string base = R"(witness -i '{"alphas":[2,2],"betas":[1,1]}' --kind integrable)";
    auto with_flag = run_cli(base + " --seed 9");
    REQUIRE(with_flag.exit_code == 0);
    CHECK(json::parse(with_flag.stdout_text)["seed"] == 9);

    auto with_env = run_cli_env("INTEGRAX_SEED=5", base);
    REQUIRE(with_env.exit_code == 0);
    CHECK(json::parse(with_env.stdout_text)["seed"] == 5);

    auto both = run_cli_env("INTEGRAX_SEED=5", base + " --seed 9");
    REQUIRE(both.exit_code == 0);
    CHECK(json::parse(both.stdout_text)["seed"] == 9);
}

TEST_CASE("tree") {
    auto r = run_cli(R"(tree -i '{"gamma":[3,1,1,1]}')");
    REQUIRE(r.exit_code == 0);
    json doc = json::parse(r.stdout_text);
    CHECK(doc["encoding"] == "w(b,b,b)");
    CHECK(doc["edges"] == 3);
    CHECK(doc["children"][0] == json::array({3, 2, 1}));  // unwind order of the gluing induction

    r = run_cli(R"(tree -i '{"gamma":[3,2,2,1,1,1]}' --l 2)");
    REQUIRE(r.exit_code == 0);
    doc = json::parse(r.stdout_text);
    CHECK(doc["white_valencies"][0] == 3);
    CHECK(doc["white_valencies"][1] == 2);

    r = run_cli(R"(tree -i '{"gamma":[2,2]}')");
    CHECK(r.exit_code == 2);
}

TEST_CASE("solve-tree") {
    auto r = run_cli(R"x(solve-tree -i '{"tree":"w(b(w(b)))"}' --shabat)x");
    REQUIRE(r.exit_code == 0);
    json doc = json::parse(r.stdout_text);
    CHECK(doc["type"] == "shabat");
    CHECK(doc["residual"].get<double>() < 1e-10);

    r = run_cli(R"x(solve-tree -i '{"tree":"w(b)"}' --conservative)x");
    REQUIRE(r.exit_code == 0);
    doc = json::parse(r.stdout_text);
    CHECK(doc["type"] == "conservative");
    // C = x^2
    CHECK(doc["C"][2][0].get<double>() == doctest::Approx(1.0).epsilon(1e-9));

    r = run_cli(R"x(solve-tree -i '{"tree":"w(b"}' --shabat)x");
    CHECK(r.exit_code == 2);
    r = run_cli(R"x(solve-tree -i '{"tree":"w(b)"}')x");
    CHECK(r.exit_code == 2);
}

TEST_CASE("analyze verdict agrees between a Jordan spec and its matrix") {
    const char* spec = R"([{"eigenvalue":"0","cells":[1,1]},{"eigenvalue":"2","cells":[2]}])";
    auto from_spec = run_cli(std::string("analyze -i '") + spec + "'");
    REQUIRE(from_spec.exit_code == 0);
    json spec_doc = json::parse(from_spec.stdout_text);

    const char* mat = R"([["0","0","0","0"],["0","0","0","0"],["0","0","2","1"],["0","0","0","2"]])";
    auto from_mat = run_cli(std::string("analyze -i '") + mat + "'");
    REQUIRE(from_mat.exit_code == 0);
    json mat_doc = json::parse(from_mat.stdout_text);

    CHECK(spec_doc["integrable"] == mat_doc["integrable"]);
    CHECK(spec_doc["char_poly"] == mat_doc["char_poly"]);
    CHECK(spec_doc["min_poly"] == mat_doc["min_poly"]);
}

TEST_CASE("malformed input exits 2") {
    CHECK(run_cli("analyze -i 'not json'").exit_code == 2);
    CHECK(run_cli(R"(analyze -i '[["1","2"]]')").exit_code == 2);
    CHECK(run_cli(R"(analyze -i '{}')").exit_code == 2);
}
