#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "pgcycles/certificate.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

// Runs the installed CLI binary and captures stdout+stderr.
RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(PGC_CLI_BIN) + " " + args + " 2>&1";
    RunResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (std::size_t got = fread(buf, 1, sizeof buf, pipe)) res.output.append(buf, got);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

fs::path temp_dir() {
    const fs::path dir = fs::temp_directory_path() / "pgcycles_cli_test";
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("info reports the counting formulas and rejects non prime powers") {
    const RunResult ok = run_cli("info --n 3 --q 2");
    CHECK(ok.exit_code == 0);
    CHECK(ok.output.find("15") != std::string::npos);
    CHECK(ok.output.find("35") != std::string::npos);

    CHECK(run_cli("info --n 2 --q 4").output.find("21") != std::string::npos);
    CHECK(run_cli("info --n 3 --q 6").exit_code == 2);
    CHECK(run_cli("info --n 1 --q 2").exit_code == 2);
}

TEST_CASE("embed writes a certificate that verify accepts in a fresh process") {
    const fs::path cert = temp_dir() / "pg32_k15.json";
    const RunResult emb = run_cli("embed --n 3 --q 2 --k 15 --out " + cert.string());
    CHECK(emb.exit_code == 0);
    const RunResult ver = run_cli("verify " + cert.string());
    CHECK(ver.exit_code == 0);
    CHECK(ver.output.find("valid") != std::string::npos);
}

TEST_CASE("embed rejects lengths beyond the point count") {
    CHECK(run_cli("embed --n 3 --q 2 --k 16 --out /dev/null").exit_code == 2);
    CHECK(run_cli("embed --n 3 --q 2 --k 2 --out /dev/null").exit_code == 2);
}

TEST_CASE("the Fano plane Hamiltonian certificate has 7 vertices") {
    const fs::path cert = temp_dir() / "fano.json";
    REQUIRE(run_cli("embed --n 2 --q 2 --k 7 --out " + cert.string()).exit_code == 0);
    const pgc::Certificate parsed =
        pgc::certificate_from_json(pgc::read_file(cert.string()));
    CHECK(parsed.k == 7);
    CHECK(parsed.vertices.size() == 7);
    CHECK(parsed.edges.size() == 7);
}

TEST_CASE("verification soundness through the file surface") {
    const fs::path cert = temp_dir() / "mutate.json";
    REQUIRE(run_cli("embed --n 2 --q 3 --k 9 --out " + cert.string()).exit_code == 0);

    // Corrupt one vertex coordinate digit.
    std::string text = pgc::read_file(cert.string());
    pgc::Certificate parsed = pgc::certificate_from_json(text);
    parsed.vertices[2][0] = (parsed.vertices[2][0] + 1) % 3;
    const fs::path corrupted = temp_dir() / "corrupted.json";
    pgc::write_file_atomic(corrupted.string(), pgc::certificate_to_json(parsed));
    CHECK(run_cli("verify " + corrupted.string()).exit_code == 1);

    // Truncate the JSON.
    const fs::path truncated = temp_dir() / "truncated.json";
    {
        std::ofstream out(truncated);
        out << text.substr(0, text.size() / 2);
    }
    CHECK(run_cli("verify " + truncated.string()).exit_code == 2);
    CHECK(run_cli("verify " + (temp_dir() / "missing.json").string()).exit_code == 2);
}

TEST_CASE("sweep succeeds and writes a machine-readable summary") {
    const fs::path report = temp_dir() / "sweep_22.json";
    const RunResult res = run_cli("sweep --n 2 --q 2 --out " + report.string());
    CHECK(res.exit_code == 0);
    const std::string text = pgc::read_file(report.string());
    CHECK(text.find("\"all_verified\": true") != std::string::npos);
    CHECK(run_cli("sweep --n 3 --q 6").exit_code == 2);

    const RunResult pg32 = run_cli("sweep --n 3 --q 2");
    CHECK(pg32.exit_code == 0);
    CHECK(pg32.output.find("13/13") != std::string::npos);
    const RunResult pg23 = run_cli("sweep --n 2 --q 3");
    CHECK(pg23.exit_code == 0);
    CHECK(pg23.output.find("11/11") != std::string::npos);
}

TEST_CASE("count prints the brute-force value and honors the budget") {
    CHECK(run_cli("count --n 2 --q 2 --k 3").output.find("28") == 0);
    CHECK(run_cli("count --n 2 --q 2 --k 2").output.find("0") == 0);
    CHECK(run_cli("count --n 3 --q 3 --k 5").exit_code == 2);
}

TEST_CASE("equal (n,q,k,seed) yields byte-identical certificates") {
    const fs::path a = temp_dir() / "det_a.json";
    const fs::path b = temp_dir() / "det_b.json";
    REQUIRE(run_cli("embed --n 3 --q 3 --k 21 --seed 5 --out " + a.string()).exit_code == 0);
    REQUIRE(run_cli("embed --n 3 --q 3 --k 21 --seed 5 --out " + b.string()).exit_code == 0);
    CHECK(pgc::read_file(a.string()) == pgc::read_file(b.string()));
}
