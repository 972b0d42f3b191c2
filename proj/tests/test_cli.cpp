#include "doctest.h"

#include "fmlab/cli.hpp"
#include "fmlab/report.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace {
struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "fmlab");
    std::ostringstream out, err;
    const int code = fmlab::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
}
}  // namespace

TEST_CASE("doubling subcommand") {
    auto r = run({"doubling", "--weight", "exp:c=1", "--p", "2", "--tau", "2", "--R", "4,8,16"});
    CHECK(r.code == 0);
    auto l = lines(r.out);
    REQUIRE(l.size() == 5);
    CHECK(l[0] == "schema=1");
    CHECK(l[1].rfind("R,inf_ratio,", 0) == 0);
    // every row carries the provenance columns
    for (std::size_t i = 2; i < l.size(); ++i) CHECK(l[i].find("exp:c=1") != std::string::npos);
    std::vector<double> inf;
    for (std::size_t i = 2; i < l.size(); ++i) inf.push_back(std::stod(l[i].substr(l[i].find(',') + 1)));
    CHECK(inf[1] > inf[0]);
    CHECK(inf[2] > inf[1]);
}

TEST_CASE("ap subcommand on the constant weight") {
    auto r = run({"ap", "--weight", "const:c=1", "--p", "2", "--format", "json", "--K", "6"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"value\": 1.0") != std::string::npos);
}

TEST_CASE("identical argv gives byte-identical output") {
    const std::vector<std::vector<std::string>> cmds{
        {"scenario", "superexp", "--format", "json"},
        {"probe", "--symbol", "lorentz", "--weight", "power:alpha=0.2", "--L", "16", "--N", "512", "--eta", "0,1"},
        {"young", "--weight", "exp:c=1", "--L", "16", "--N", "1024", "--seed", "7"},
        {"witness", "--weight", "subexp:c=1,beta=0.5"},
        {"lebesgue", "--symbol", "lorentz", "--eta", "0"},
    };
    for (const auto& c : cmds) {
        auto a = run(c), b = run(c);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        CHECK_FALSE(a.out.empty());
    }
}

TEST_CASE("--out writes the report file") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "fmlab_cli_test";
    fs::create_directories(dir);
    const auto path = (dir / "sx.json").string();
    auto r = run({"scenario", "superexp", "--format", "json", "--out", path});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    auto rep = fmlab::report_from_json(ss.str());
    CHECK(rep.name == "superexp");
    CHECK(rep.overall_pass());
    fs::remove_all(dir);
}

TEST_CASE("usage errors exit 1") {
    CHECK(run({}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    auto bad = run({"doubling", "--weight", "exp:c="});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("byte 6") != std::string::npos);
    CHECK(run({"doubling", "--tau", "0.5"}).code == 1);
    CHECK(run({"mnorm", "--N", "1000"}).code == 1);
    CHECK(run({"scenario", "nosuch"}).code == 1);
    CHECK(run({"ap", "--p", "1"}).code == 1);
}

TEST_CASE("numerical failures exit 2") {
    // e^{100 x} leaves the double range on the probe support
    auto r = run({"probe", "--symbol", "lorentz", "--weight", "exp:c=100", "--eta", "0"});
    CHECK(r.code == 2);
    CHECK(r.err.find("numerical failure") != std::string::npos);
}

TEST_CASE("help lists defaults") {
    for (const char* sub : {"doubling", "witness", "ap", "mnorm", "probe", "kernelbound", "lebesgue", "young", "scenario"}) {
        auto r = run({sub, "--help"});
        CHECK(r.code == 0);
        CHECK(r.out.find("[2048]") != std::string::npos);
        CHECK(r.out.find("[1]") != std::string::npos);
    }
}
