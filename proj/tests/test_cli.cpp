#include "nfs/cli.hpp"
#include "nfs/dataset.hpp"
#include "nfs/serialization.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "nfs");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = nfs::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& f) const { return (path / f).string(); }
};

const fs::path kFixtures(NFS_FIXTURE_DIR);

}  // namespace

TEST_CASE("generate, train, describe, eval pipeline", "[cli]") {
    TempDir tmp("nfs_cli_pipeline");
    REQUIRE(run({"generate", "--grid-n", "21", "--out", tmp / "fg.csv"}).code == 0);
    CHECK(nfs::load_csv(tmp / "fg.csv") == nfs::four_gausses(10, 2, 21));

    const auto tr = run({"train", "--data", tmp / "fg.csv", "--kind", "tsk", "--rules", "4", "--epochs", "10",
                         "--seed", "1", "--model-out", tmp / "m.json", "--report-out", tmp / "report.csv"});
    REQUIRE(tr.code == 0);
    CHECK(tr.out.find("epoch 10 rmse ") != std::string::npos);
    CHECK(nfs::load_rulebase(tmp / "m.json").rules().size() == 4);
    CHECK(slurp(tmp / "report.csv").rfind("epoch,rmse\n0,", 0) == 0);

    const auto desc = run({"describe", "--model", tmp / "m.json", "--data", tmp / "fg.csv"});
    REQUIRE(desc.code == 0);
    for (const char* head : {"RULE 1\nIF     input 1 is ", "RULE 4\n", "constant term is "})
        CHECK(desc.out.find(head) != std::string::npos);

    const auto js = run({"describe", "--model", tmp / "m.json", "--data", tmp / "fg.csv", "--format", "json"});
    REQUIRE(js.code == 0);
    CHECK(nlohmann::json::parse(js.out)["rules"].size() == 4);

    const auto ev = run({"eval", "--model", tmp / "m.json", "--data", tmp / "fg.csv"});
    REQUIRE(ev.code == 0);
    REQUIRE(ev.out.rfind("rmse ", 0) == 0);
    const double r = std::stod(ev.out.substr(5));
    CHECK(std::isfinite(r));
    CHECK(r >= 0.0);

    const auto cv = run({"curves", "--model", tmp / "m.json", "--attr", "input 2", "--n-points", "11", "--data",
                         tmp / "fg.csv", "--out", tmp / "curves.csv"});
    REQUIRE(cv.code == 0);
    const auto curves = slurp(tmp / "curves.csv");
    CHECK(curves.rfind("x,rule 1,rule 2,rule 3,rule 4\n", 0) == 0);
}

TEST_CASE("describe reproduces the golden listings", "[cli][golden]") {
    for (const std::string name : {"triangular", "sigmoidal"}) {
        const auto r = run({"describe", "--model", (kFixtures / ("handcrafted_" + name + ".json")).string(), "--data",
                            (kFixtures / "four_gausses_21.csv").string()});
        REQUIRE(r.code == 0);
        CHECK(r.out == slurp(kFixtures / ("golden_" + name + ".txt")));
    }
}

TEST_CASE("identical invocations give identical bytes", "[cli]") {
    TempDir tmp("nfs_cli_repro");
    auto pipeline = [&](const std::string& tag) {
        run({"generate", "--grid-n", "11", "--out", tmp / (tag + ".csv")});
        const auto tr = run({"train", "--data", tmp / (tag + ".csv"), "--kind", "ma", "--rules", "3", "--epochs", "5",
                             "--seed", "7", "--model-out", tmp / (tag + ".json")});
        const auto ds = run({"describe", "--model", tmp / (tag + ".json"), "--data", tmp / (tag + ".csv")});
        return tr.out + ds.out + slurp(tmp / (tag + ".csv")) + slurp(tmp / (tag + ".json"));
    };
    CHECK(pipeline("a") == pipeline("b"));
}

TEST_CASE("config file values sit under command-line flags", "[cli]") {
    TempDir tmp("nfs_cli_config");
    run({"generate", "--grid-n", "6", "--out", tmp / "d.csv"});
    std::ofstream(tmp / "cfg.json") << R"({"kind": "annbfis", "rules": 2, "epochs": 3, "learning_rate": 0.05})";
    const auto a = run({"train", "--data", tmp / "d.csv", "--config", tmp / "cfg.json", "--model-out", tmp / "a.json"});
    REQUIRE(a.code == 0);
    const auto ma = nfs::load_rulebase(tmp / "a.json");
    CHECK(ma.kind() == nfs::SystemKind::Annbfis);
    CHECK(ma.rules().size() == 2);
    CHECK(a.out.find("epoch 3 rmse") != std::string::npos);
    const auto b = run({"train", "--data", tmp / "d.csv", "--config", tmp / "cfg.json", "--epochs", "1", "--model-out",
                        tmp / "b.json"});
    CHECK(b.out.find("epoch 2 rmse") == std::string::npos);
}

TEST_CASE("usage errors exit with 1", "[cli][errors]") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {},
             {"frobnicate"},
             {"train", "--bogus"},
             {"train", "--data", "x.csv", "--kind", "xyz", "--model-out", "m.json"},
             {"generate", "--grid-n", "many", "--out", "f.csv"},
         }) {
        const auto r = run(args);
        CHECK(r.code == nfs::cli::kExitUsage);
        CHECK(r.err.rfind("error: usage: ", 0) == 0);
    }
}

TEST_CASE("data errors exit with 2", "[cli][errors]") {
    TempDir tmp("nfs_cli_errors");
    std::ofstream(tmp / "bad.csv") << "x,y,z\n1,oops,3\n";
    std::ofstream(tmp / "bad.json") << R"({"kind": "FOO", "inputs": ["a"], "rules": []})";
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"train", "--data", tmp / "missing.csv", "--model-out", tmp / "m.json"},
             {"train", "--data", tmp / "bad.csv", "--model-out", tmp / "m.json"},
             {"eval", "--model", tmp / "bad.json", "--data", tmp / "bad.csv"},
             {"describe", "--model", tmp / "bad.json", "--data", (kFixtures / "four_gausses_21.csv").string()},
             {"generate", "--sigma", "0", "--out", tmp / "g.csv"},
         }) {
        const auto r = run(args);
        INFO(r.err);
        CHECK(r.code == nfs::cli::kExitData);
        CHECK(r.err.rfind("error: data: ", 0) == 0);
        CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
    }
    const auto bad_csv = run({"train", "--data", tmp / "bad.csv", "--model-out", tmp / "m.json"});
    CHECK(bad_csv.err.find("line 2, column 2") != std::string::npos);
    const auto bad_json = run({"describe", "--model", tmp / "bad.json", "--data", (kFixtures / "four_gausses_21.csv").string()});
    CHECK(bad_json.err.find("/kind") != std::string::npos);
}
