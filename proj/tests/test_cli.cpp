// End-to-end checks of the command-line tool via subprocesses.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "liouville/sieve.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    const std::string cmd = env_prefix + std::string(LIOUVILLE_CLI_PATH) + " " + args +
                            " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    char buffer[4096];
    std::size_t n = 0;
    while ((n = fread(buffer, 1, sizeof(buffer), pipe)) > 0) result.out.append(buffer, n);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::size_t count_lines_with(const std::string& text, const std::string& needle) {
    std::size_t count = 0, pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

}  // namespace

TEST_CASE("report reproduces the x = 10^5 table") {
    const RunResult text = run_cli("report --x 100000 --t 1");
    CHECK(text.exit_code == 0);
    CHECK(text.out.find("24873") != std::string::npos);
    CHECK(text.out.find("24983") != std::string::npos);
    CHECK(text.out.find("25161") != std::string::npos);
    CHECK(text.out.find("autocorrelation 68") != std::string::npos);
    CHECK(text.out.find("25000 (100000/4)") != std::string::npos);

    const RunResult json = run_cli("report --x 100000 --t 1 --format json");
    CHECK(json.exit_code == 0);
    const auto doc = nlohmann::json::parse(json.out);
    CHECK(doc["counts"]["++"] == 24873);
    CHECK(doc["counts"]["+-"] == 24983);
    CHECK(doc["counts"]["-+"] == 24983);
    CHECK(doc["counts"]["--"] == 25161);
    CHECK(doc["autocorrelation"] == 68);
    CHECK(doc["expected"]["quotient"] == 25000);
    CHECK(doc["expected"]["remainder"] == 0);
    CHECK(doc["densities"]["++"] == "0.24873");
}

TEST_CASE("report table is internally consistent") {
    const RunResult json = run_cli("report --x 12345 --t 2 --format json");
    CHECK(json.exit_code == 0);
    const auto doc = nlohmann::json::parse(json.out);
    const std::int64_t pp = doc["counts"]["++"];
    const std::int64_t pm = doc["counts"]["+-"];
    const std::int64_t mp = doc["counts"]["-+"];
    const std::int64_t mm = doc["counts"]["--"];
    CHECK(pp + pm + mp + mm == 12345);
    CHECK(pp + mm - pm - mp == doc["autocorrelation"].get<std::int64_t>());
    CHECK(doc["expected"]["quotient"] == 3086);
    CHECK(doc["expected"]["remainder"] == 1);
}

TEST_CASE("constant emits the 38-digit value") {
    const RunResult result = run_cli("constant --digits 38");
    CHECK(result.exit_code == 0);
    CHECK(result.out == "1.16232463762392978595979733583622409170\n");
    const RunResult one = run_cli("constant --digits 1");
    CHECK(one.out == "1.1\n");
}

TEST_CASE("autocorr prints the bare value in text mode") {
    const RunResult zero_shift = run_cli("autocorr --t 0 --x 1000");
    CHECK(zero_shift.exit_code == 0);
    CHECK(zero_shift.out == "1000\n");
    const RunResult paper = run_cli("autocorr --t 1 --x 100000");
    CHECK(paper.out == "68\n");
}

TEST_CASE("patterns counts a k-sign pattern") {
    const RunResult result =
        run_cli("patterns --x 100 --offsets 0,1,2 --signs +,+,+ --format json");
    CHECK(result.exit_code == 0);
    const auto doc = nlohmann::json::parse(result.out);
    CHECK(doc["count"] == 13);
    CHECK(doc["density"] == "0.13");
}

TEST_CASE("patterns double-sign JSON matches the schema") {
    const RunResult result = run_cli("patterns --x 20 --t 1 --format json");
    CHECK(result.exit_code == 0);
    const auto doc = nlohmann::json::parse(result.out);
    CHECK(doc["x"] == 20);
    CHECK(doc["t"] == 1);
    CHECK(doc["counts"]["++"] == 3);
    CHECK(doc["counts"]["--"] == 7);
    CHECK(doc["autocorrelation"] == 0);
    CHECK(doc["densities"]["--"] == "0.35");
}

TEST_CASE("sums emits the requested columns") {
    const RunResult result = run_cli(
        "sums --checkpoints 100,1000 --mertens --log-avg --autocorr-log-t 1 "
        "--curve zeta-half-sqrt --curve lil-normalizer --format csv");
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("x,L,M,log_avg,autocorr_log_t1,zeta-half-sqrt,lil-normalizer\n") == 0);
    CHECK(result.out.find("\n100,-2,1,") != std::string::npos);
    CHECK(result.out.find("\n1000,-14,2,") != std::string::npos);
}

TEST_CASE("sums scan-sign-flip reports absence quickly") {
    const RunResult result = run_cli("sums --scan-sign-flip --limit 100000 --format json");
    CHECK(result.exit_code == 0);
    const auto doc = nlohmann::json::parse(result.out);
    CHECK(doc["found"] == false);
}

TEST_CASE("twisted sup over the two-point grid") {
    const RunResult result = run_cli("twisted --x 4 --sup --grid 2 --format json");
    CHECK(result.exit_code == 0);
    const auto doc = nlohmann::json::parse(result.out);
    CHECK(doc["alpha_max"] == 0.0);
    CHECK(doc["magnitude"].get<double>() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("normality reports pass at x = 10^5") {
    const RunResult result = run_cli("normality --x 100000 --format json");
    CHECK(result.exit_code == 0);
    const auto doc = nlohmann::json::parse(result.out);
    REQUIRE(doc["entries"].size() == 4);
    for (const auto& entry : doc["entries"]) CHECK(entry["pass"] == true);
}

TEST_CASE("normality dumps digit streams") {
    const std::string path = "liouville_cli_digits.raw";
    const RunResult result = run_cli("normality --dump-digits " + path +
                                     " --digit-base 4 --digit-mode overlapping --digit-count 8");
    CHECK(result.exit_code == 0);
    std::ifstream in(path, std::ios::binary);
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(data.size() == 8);
    CHECK(static_cast<int>(data[0]) == 2);  // first overlapping base-4 digit
    std::remove(path.c_str());
}

TEST_CASE("sieve dump round-trips through the library loader") {
    const std::string path = "liouville_cli_table.bin";
    const RunResult result = run_cli("sieve --hi 1000 --dump " + path + " --format json");
    CHECK(result.exit_code == 0);
    const auto doc = nlohmann::json::parse(result.out);
    CHECK(doc["lo"] == 1);
    CHECK(doc["hi"] == 1000);
    CHECK(doc["summatory"] == -14);
    const liouville::SignTable loaded = liouville::load_sign_table(path);
    const liouville::SignTable direct = liouville::sieve_liouville(1, 1000);
    CHECK(loaded.words() == direct.words());
    std::remove(path.c_str());
}

TEST_CASE("selftest passes cleanly and fails under fault injection") {
    const RunResult clean = run_cli("selftest");
    CHECK(clean.exit_code == 0);
    CHECK(count_lines_with(clean.out, "PASS ") >= 6);
    CHECK(clean.out.find("FAIL") == std::string::npos);
    CHECK(clean.out.find("sieve-vs-point-lambda") != std::string::npos);

    const RunResult faulty = run_cli("selftest --inject-fault");
    CHECK(faulty.exit_code == 1);
    CHECK(faulty.out.find("FAIL sieve-vs-point-lambda") != std::string::npos);
}

TEST_CASE("usage errors exit with status 2") {
    CHECK(run_cli("definitely-not-a-subcommand").exit_code == 2);
    CHECK(run_cli("report").exit_code == 2);             // missing --x
    CHECK(run_cli("report --x 10 --format yaml").exit_code == 2);
    CHECK(run_cli("twisted --x 10 --sup --grid 1").exit_code == 2);
}

TEST_CASE("runtime failures exit with status 1") {
    const RunResult capped =
        run_cli("sieve --hi 10000000", "LIOUVILLE_MEMORY_CAP=1000 ");
    CHECK(capped.exit_code == 1);
}

TEST_CASE("outputs are byte-identical across worker counts") {
    const std::string commands[] = {
        "report --x 100000 --t 1 --format json",
        "report --x 100000 --t 1",
        "constant --digits 38",
        "sums --checkpoints 100,1000,10000 --mertens --format csv",
        "normality --x 20000 --format json",
    };
    for (const auto& command : commands) {
        const RunResult w1 = run_cli(command + " --workers 1");
        const RunResult w4 = run_cli(command + " --workers 4");
        const RunResult w8 = run_cli(command + " --workers 8");
        REQUIRE(w1.exit_code == 0);
        CHECK(w1.out == w4.out);
        CHECK(w1.out == w8.out);
    }
}
