#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

using json = nlohmann::json;

struct Run {
    int code = -1;
    std::string out;
};

static Run run(const std::string& args) {
    std::string cmd = std::string(EQUITOR_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    char buf[4096];
    size_t k;
    while ((k = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, k);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

static std::string data(const std::string& f) { return std::string(EQUITOR_DATA_DIR) + "/" + f; }

static std::string temp_file(const std::string& name, const std::string& content) {
    auto path = std::filesystem::temp_directory_path() / ("equitor_cli_" + name);
    std::ofstream(path) << content;
    return path.string();
}

TEST_CASE("catalog K9 prints the two matrices") {
    Run r = run("catalog --name K9");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["name"] == "K9");
    REQUIRE(j["generators"].size() == 2);
    CHECK(j["generators"][0]["matrix"] == json::parse("[[0,1,-1],[1,0,-1],[0,0,-1]]"));
    CHECK(j["generators"][1]["matrix"] == json::parse("[[-1,0,0],[-1,0,1],[-1,1,0]]"));
    CHECK(run("catalog --name nosuch").code == 2);
}

TEST_CASE("reproduce-section6 Q 4") {
    Run r = run("reproduce-section6 --family Q --n 4");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["beta"] == json::parse("[-1,0,1,0,0,0,-1,0,0,1,0]"));
    CHECK(j["verdict"] == "NonVanishing");
    CHECK(j["order"] == 16);
    CHECK(run("reproduce-section6 --family X --n 4").code == 2);
    CHECK(run("reproduce-section6 --family Q --n 1").code == 2);
}

TEST_CASE("classify the dihedral example") {
    Run r = run("classify --group " + data("example62.json"));
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["A"] == true);
    CHECK(j["U"] == false);
    CHECK(j["SL"] == false);
    CHECK(j["beta_vanishes"] == false);
    // deterministic output
    CHECK(run("classify --group " + data("example62.json")).out == r.out);
}

TEST_CASE("beta and condition-a on a chosen model") {
    json b = json::parse(run("beta --group " + data("example62.json")).out);
    CHECK(b["model"] == "S");
    CHECK(b["verdict"] == "NonVanishing");
    json a = json::parse(run("condition-a --group " + data("example62.json") + " --model S").out);
    CHECK(a["A"] == true);
    CHECK(a["witness"].empty());
    json f = json::parse(run("fixed-points --group " + data("example62.json")).out);
    CHECK(f["fixed_point"] == false);
    // the fan of P3 is not invariant under this group
    CHECK(run("beta --group " + data("example62.json") + " --model P3").code == 2);
    // catalogue names are accepted in place of files
    json s = json::parse(run("beta --group sylow_C --model C").out);
    CHECK(s["verdict"] == "Vanishes");
}

TEST_CASE("model-build round trip through model-check") {
    for (std::string m : {"S", "P", "C", "D4cone", "P1xP1", "dP6"}) {
        INFO(m);
        Run built = run("model-build --model " + m);
        REQUIRE(built.code == 0);
        json j = json::parse(built.out);
        std::string jf = temp_file(m + ".json", built.out);
        std::string ff = temp_file(m + ".fan", j["fan_text"].get<std::string>());
        std::string group = j["n"] == 3 ? "K9" : "s_iota1";
        Run direct = run("model-check --model " + m + " --group " + group);
        Run via_json = run("model-check --model " + jf + " --group " + group);
        Run via_fan = run("model-check --model " + ff + " --group " + group);
        REQUIRE(direct.code == 0);
        CHECK(via_json.out == direct.out);
        json a = json::parse(direct.out), c = json::parse(via_fan.out);
        a.erase("name");
        c.erase("name");
        CHECK(a == c);
        CHECK(a["smooth"] == true);
        CHECK(a["complete"] == true);
    }
}

TEST_CASE("group-info") {
    json j = json::parse(run("group-info --group " + data("example62.json")).out);
    CHECK(j["order"] == 8);
    CHECK(j["torus_order"] == 2);
    CHECK(j["image_order"] == 4);
    CHECK(j["conjugate_to_matrix_group"] == false);
}

TEST_CASE("sweep formats") {
    Run csv = run("sweep --classes iota1 --denominators 2 --format csv --jobs 2");
    REQUIRE(csv.code == 0);
    CHECK(csv.out.rfind("class,group_hash,order", 0) == 0);
    Run js = run("sweep --classes iota1 --denominators 2 --format json --jobs 1");
    REQUIRE(js.code == 0);
    json j = json::parse(js.out);
    size_t lines = 0;
    for (char c : csv.out) lines += c == '\n';
    CHECK(j["rows"].size() + 1 == lines);
    CHECK(j["disagreements"] == 0);
    CHECK(run("sweep --classes iota1 --format xml").code == 2);
    CHECK(run("sweep --classes nosuch").code == 2);
}

TEST_CASE("bad input and caps") {
    CHECK(run("").code == 2);
    CHECK(run("classify").code == 2);
    CHECK(run("classify --group /nonexistent/file.json").code == 2);
    std::string bad = temp_file("bad.json", R"({"n":3,"generators":[{"torus":["1/2"],"matrix":[[1,0,0],[0,1,0],[0,0,1]]}]})");
    CHECK(run("classify --group " + bad).code == 2);
    std::string sing = temp_file("sing.json", R"({"n":2,"generators":[{"torus":["0","0"],"matrix":[[2,0],[0,1]]}]})");
    CHECK(run("group-info --group " + sing).code == 2);
    std::string junk = temp_file("junk.json", "{not json");
    CHECK(run("classify --group " + junk).code == 2);
    CHECK(run("classify --group " + data("example62.json") + " --max-order 4").code == 3);
    CHECK(run("selftest --criterion 99").code != 0);
}

TEST_CASE("selftest runs a criterion") {
    Run r = run("selftest --criterion 3");
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    REQUIRE(j.size() == 1);
    CHECK(j[0]["passed"] == true);
}

TEST_CASE("beta resource caps") {
    std::string g = data("example62.json");
    CHECK(run("beta --group " + g + " --max-nonzeros 5").code == 3);
    CHECK(run("beta --group " + g + " --beta-max 4").code == 3);
    CHECK(run("beta --group " + g + " --max-nonzeros 1000000 --time-budget 600").code == 0);
}
