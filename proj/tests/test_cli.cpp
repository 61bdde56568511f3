#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <json.hpp>

using json = nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const char* bin = std::getenv("QCOMBINAT_CLI");
    REQUIRE(bin != nullptr);
    const std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    while (size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_CASE("validate exit codes") {
    CHECK(run_cli("validate --type A2 --xi 0,1").exit_code == 0);
    CHECK(run_cli("validate --type A3 --sigma \"(1 3)\" --xi 1,0,1").exit_code == 1);
    CHECK(run_cli("validate --type A2 --xi 0").exit_code == 2);
    CHECK(run_cli("validate --type Z9 --xi 0").exit_code == 2);
    auto r = run_cli("validate --type A3 --sigma \"(1 3)\" --xi 1,0,1 --format json");
    auto j = json::parse(r.out);
    CHECK(j["valid"] == false);
    CHECK(j["violations"].size() == 1);
    CHECK(j["violations"][0]["axiom"] == "axiom-ii");
}

TEST_CASE("datum file input") {
    const std::string path = "cli_test_datum.json";
    {
        FILE* f = fopen(path.c_str(), "w");
        REQUIRE(f);
        fputs("{\"type\": \"A\", \"rank\": 3, \"sigma\": [[1,3]], \"xi\": [1,0,-1]}", f);
        fclose(f);
    }
    CHECK(run_cli("validate --datum " + path).exit_code == 0);
    std::remove(path.c_str());
}

TEST_CASE("omega table of the A2 datum") {
    auto r = run_cli("table --type A2 --xi 0,1 --format json");
    REQUIRE(r.exit_code == 0);
    auto j = json::parse(r.out);
    REQUIRE(j["rows"].size() == 3);
    CHECK(j["word"] == json::array({2, 1, 2}));
    CHECK(j["rows"][0]["root"] == json::array({0, 1}));
    CHECK(j["rows"][0]["vertex"] == 2);
    CHECK(j["rows"][0]["p"] == 1);
    CHECK(j["rows"][1]["root"] == json::array({1, 1}));
    CHECK(j["rows"][1]["p"] == 0);
    CHECK(j["rows"][2]["root"] == json::array({1, 0}));
    CHECK(j["rows"][2]["p"] == -1);
    // csv carries the same rows
    auto csv = run_cli("table --type A2 --xi 0,1 --format csv");
    CHECK(csv.out.find("k,root,vertex,p") == 0);
    CHECK(csv.out.find("3,\"1 0\",2,-1") != std::string::npos);
}

TEST_CASE("inverse Cartan emission") {
    auto r = run_cli("inverse-cartan --type B2 --cutoff 20 --format json");
    REQUIRE(r.exit_code == 0);
    auto j = json::parse(r.out);
    CHECK(j["type"] == "B2");
    REQUIRE(!j["rows"].empty());
    for (auto& row : j["rows"])
        if (row["i"] == 1 && row["j"] == 1 && row["u"] == 2) CHECK(row["coeff"] == 1);
    // A2 frozen values
    auto a = run_cli("inverse-cartan --type A2 --cutoff 8 --format csv");
    CHECK(a.out.find("1,1,1,1\n") != std::string::npos);
    CHECK(a.out.find("1,1,5,-1\n") != std::string::npos);
    CHECK(a.out.find("1,2,2,1\n") != std::string::npos);
    CHECK(a.out.find("1,2,4,-1\n") != std::string::npos);
}

TEST_CASE("kp emission") {
    auto r = run_cli("kp --type A2 --xi 0,1 --beta 1,1 --format json");
    REQUIRE(r.exit_code == 0);
    auto j = json::parse(r.out);
    REQUIRE(j["partitions"].size() == 2);
    CHECK(j["partitions"][0]["m"] == json::array({0, 1, 0}));
    CHECK(j["partitions"][0]["rho"] == json::array({0, 1, 1}));
    CHECK(j["partitions"][1]["m"] == json::array({1, 0, 1}));
    CHECK(j["partitions"][1]["rho"] == json::array({1, 1, 1}));
    REQUIRE(j["hasse"].size() == 1);
    CHECK(j["hasse"][0] == json::array({0, 1}));
}

TEST_CASE("poset-check") {
    auto r = run_cli("poset-check --type A3 --sigma \"(1 3)\" --xi 1,0,-1 --beta 1,1,1 --format text");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("PASS") == 0);
}

TEST_CASE("verify-all") {
    auto good = run_cli("verify-all --type A2 --xi 0,1 --format text");
    CHECK(good.exit_code == 0);
    CHECK(good.out.find("FAIL") == std::string::npos);
    CHECK(good.out.find("PASS image-formula") != std::string::npos);

    // corrupted height function: axioms FAIL, downstream suites are skipped
    auto bad = run_cli("verify-all --type A3 --sigma \"(1 3)\" --xi 1,0,1 --format text");
    CHECK(bad.exit_code == 1);
    CHECK(bad.out.find("FAIL axioms") != std::string::npos);
    CHECK(bad.out.find("SKIP") != std::string::npos);
}

TEST_CASE("kp serializes the image l-weights") {
    auto r = run_cli("kp --type A2 --xi 0,1 --beta 1,1 --format json");
    REQUIRE(r.exit_code == 0);
    auto j = json::parse(r.out);
    // Omega(0,1,0) = varpi_{1,0}
    REQUIRE(j["partitions"][0]["pi"].size() == 1);
    CHECK(j["partitions"][0]["pi"][0]["i"] == 1);
    CHECK(j["partitions"][0]["pi"][0]["p"] == 0);
    CHECK(j["partitions"][0]["pi"][0]["coeff"] == 1);
    CHECK(j["partitions"][1]["pi"].size() == 2);
}

TEST_CASE("blocks subcommand") {
    const std::string path = "cli_test_weights.json";
    {
        FILE* f = fopen(path.c_str(), "w");
        REQUIRE(f);
        // varpi_{1,0} and varpi_{2,1} + varpi_{2,-1}: one block with beta = (1,1)
        fputs("[[{\"i\":1,\"p\":0,\"coeff\":1}],"
              "[{\"i\":2,\"p\":1,\"coeff\":1},{\"i\":2,\"p\":-1,\"coeff\":1}]]",
              f);
        fclose(f);
    }
    auto r = run_cli("blocks --type A2 --xi 0,1 --weights " + path + " --format json");
    REQUIRE(r.exit_code == 0);
    auto j = json::parse(r.out);
    REQUIRE(j["blocks"].size() == 1);
    CHECK(j["blocks"][0]["beta"] == json::array({1, 1}));
    CHECK(j["blocks"][0]["members"].size() == 2);
    std::remove(path.c_str());
    // weight outside P_Q is an error, not a silent grouping
    {
        FILE* f = fopen(path.c_str(), "w");
        REQUIRE(f);
        fputs("[[{\"i\":1,\"p\":4,\"coeff\":1}]]", f);
        fclose(f);
    }
    CHECK(run_cli("blocks --type A2 --xi 0,1 --weights " + path).exit_code == 1);
    std::remove(path.c_str());
}

TEST_CASE("verify-all budget exhaustion is flagged INCOMPLETE") {
    auto r = run_cli("verify-all --type A2 --xi 0,1 --budget 1 --format text");
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("INCOMPLETE") != std::string::npos);
}

TEST_CASE("determinism: identical config, identical bytes") {
    const std::string cmd = "verify-all --type A3 --sigma \"(1 3)\" --xi 1,0,-1 --seed 5 --format json";
    auto a = run_cli(cmd);
    auto b = run_cli(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    auto c = run_cli("kp --type A2 --xi 0,1 --beta 2,2 --format json");
    auto d = run_cli("kp --type A2 --xi 0,1 --beta 2,2 --format json");
    CHECK(c.out == d.out);
}
