#include <doctest.h>

#include "cli.hpp"
#include "sfint/parse.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace sfint;

namespace {

int run_cli(const std::vector<std::string>& args, std::string* out_text = nullptr,
            std::string* err_text = nullptr) {
    std::vector<const char*> argv{"sfint"};
    for (auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return code;
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& contents) {
        path = std::string("cli_test_") + std::to_string(rand()) + ".tmp";
        std::ofstream f(path);
        f << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli({}) == 2);
    CHECK(run_cli({"sfunction"}) == 2);                               // no ODE
    CHECK(run_cli({"sfunction", "z' = x", "--sn", "7"}) == 2);        // bad sn
    CHECK(run_cli({"sfunction", "z' = x", "--M", "x"}) == 2);         // two sources
    CHECK(run_cli({"nonsense"}) == 2);
    CHECK(run_cli({"verify", "z' = x"}) == 2);                        // missing --integral
}

TEST_CASE("help exits cleanly") {
    std::string out;
    CHECK(run_cli({"--help"}, &out) == 0);
    CHECK(out.find("sfunction") != std::string::npos);
}

TEST_CASE("dx applies the total derivative") {
    std::string out;
    int code = run_cli({"dx", "z' = x", "--expr", "z - x^2/2"}, &out);
    CHECK(code == 0);
    CHECK(out.find("= 0") != std::string::npos);
}

TEST_CASE("sfunction prints the found S and its parity with M/N input") {
    std::string out1, out2;
    std::string m = "x^5*z - x^4*z^2 - 3*z*x^4 + 4*x^3*z^2 - x*y + x*z + y*z - z^2 - y";
    CHECK(run_cli({"sfunction", "z' = (" + m + ")/(x^5 - y)"}, &out1) == 0);
    CHECK(run_cli({"sfunction", "--M", m, "--N", "x^5 - y"}, &out2) == 0);
    CHECK(out1.find("S1 = ") != std::string::npos);
    CHECK(out1.find("(-x + z)/(x^5 - y)") != std::string::npos);
    // same S either way
    CHECK(out2.find("(-x + z)/(x^5 - y)") != std::string::npos);
}

TEST_CASE("ode text can come from a file") {
    TempFile f("z' = (z - x^2)/1\n");
    std::string out;
    CHECK(run_cli({"dx", f.path, "--expr", "y"}, &out) == 0);
    CHECK(out.find("= z") != std::string::npos);
}

TEST_CASE("json reports round trip and are stable under a fixed seed") {
    std::string a, b;
    std::string m = "x^5*z - x^4*z^2 - 3*z*x^4 + 4*x^3*z^2 - x*y + x*z + y*z - z^2 - y";
    CHECK(run_cli({"invade", "--M", m, "--N", "x^5 - y", "--output", "json"}, &a) == 0);
    CHECK(run_cli({"invade", "--M", m, "--N", "x^5 - y", "--output", "json"}, &b) == 0);
    Report ra = Report::from_json(a);
    Report rb = Report::from_json(b);
    CHECK(ra.without_timing() == rb.without_timing());
    CHECK(Report::from_json(ra.to_json()) == ra);
    CHECK(ra.exit_code == 0);
}

TEST_CASE("verify accepts a true first integral and rejects a wrong one") {
    CHECK(run_cli({"verify", "z' = x", "--integral", "z - x^2/2"}) == 0);
    CHECK(run_cli({"verify", "z' = x", "--integral", "z - x^3"}) == 1);
}

TEST_CASE("empty corpus passes vacuously") {
    TempFile f("\n");
    std::string out;
    CHECK(run_cli({"corpus", f.path}, &out) == 0);
    CHECK(out.find("0/0") != std::string::npos);
}

TEST_CASE("corrupted corpus expectations fail the entry") {
    TempFile f("{\"id\": \"bad\", \"M\": \"z\", \"N\": \"1\", "
               "\"expected_s1\": \"x^9 + 42\"}\n");
    std::string out;
    CHECK(run_cli({"corpus", f.path}, &out) == 1);
    CHECK(out.find("FAIL") != std::string::npos);
}

TEST_CASE("shipped corpus passes in full") {
    std::string out;
    int code = run_cli({"corpus", std::string(SFINT_DATA_DIR) + "/corpus.jsonl"}, &out);
    INFO(out);
    CHECK(code == 0);
    CHECK(out.find("15/15") != std::string::npos);
}
