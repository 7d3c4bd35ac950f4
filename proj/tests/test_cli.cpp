#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

struct RunResult {
    int status;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(CONICFIB_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf;
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("analyze output is byte-identical across runs") {
    auto a = run_cli("analyze --family builtin:redei");
    auto b = run_cli("analyze --family builtin:redei");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("|Alt| = 8") != std::string::npos);
    CHECK(a.out.find("Delta = 9/4") != std::string::npos);
}

TEST_CASE("constant emits exact rationals as strings") {
    auto r = run_cli("constant --family builtin:redei --primes-bound 1000");
    CHECK(r.status == 0);
    CHECK(r.out.find("\"log_exponent\": \"9/4\"") != std::string::npos);
    CHECK(r.out.find("\"1/4\"") != std::string::npos);
}

TEST_CASE("count JSON schema and --no-timing determinism") {
    auto a = run_cli(
        "count --family builtin:planar --bound 10 --threads 2 --no-timing --primes-bound 500");
    auto b = run_cli(
        "count --family builtin:planar --bound 10 --threads 1 --no-timing --primes-bound 500");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    for (const char* key :
         {"family_digest", "mode", "bound", "total", "skipped_degenerate", "predicted", "ratio"})
        CHECK(a.out.find(key) != std::string::npos);
    CHECK(a.out.find("wall_time_ms") == std::string::npos);
}

TEST_CASE("count sweep CSV") {
    std::string path = "/tmp/conicfib_sweep_test.csv";
    auto r = run_cli("count --family builtin:planar --bound 10 --sweep 5,10 --primes-bound 500 --out " +
                     path);
    CHECK(r.status == 0);
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "bound,observed,predicted,ratio");
    int rows = 0;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 2);
    std::remove(path.c_str());
}

TEST_CASE("family files parse from disk") {
    std::string path = "/tmp/conicfib_family_test.txt";
    {
        std::ofstream out(path);
        out << "# planar diagonal conics\nvars = 3\nconic = t1 | t2 | t3\nmode = projective\n";
    }
    auto r = run_cli("analyze --family " + path);
    CHECK(r.status == 0);
    CHECK(r.out.find("Delta = 3/2") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run_cli("count --family builtin:planar").status == 2);           // missing --bound
    CHECK(run_cli("analyze --family builtin:unknown").status == 2);        // unknown builtin
    CHECK(run_cli("verify --suite bogus").status == 2);                    // unknown suite
    CHECK(run_cli("frobnicate").status == 2);                              // unknown verb
}

TEST_CASE("redei subcommand") {
    auto r = run_cli("redei --bound 5 --no-timing --primes-bound 500");
    CHECK(r.status == 0);
    CHECK(r.out.find("\"total\"") != std::string::npos);
}
