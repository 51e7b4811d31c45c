#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "ncrl/io.hpp"
#include "ncrl/random_ops.hpp"
#include "ncrl/rng.hpp"
#include "ncrl/tomo_case2.hpp"

using namespace ncrl;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

// Runs the installed binary through the shell; stderr is discarded so usage
// noise does not leak into assertions.
RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    const std::string cmd =
        env_prefix + "'" + std::string(NCRL_BIN_PATH) + "' " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int status = pclose(pipe);
    RunResult result;
    if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
    result.output = out;
    return result;
}

nlohmann::json parse_report(const RunResult& run) {
    REQUIRE_FALSE(run.output.empty());
    return nlohmann::json::parse(run.output);
}

bool check_passed(const nlohmann::json& report, const std::string& name) {
    for (const auto& check : report.at("checks"))
        if (check.at("name") == name) return check.at("pass").get<bool>();
    FAIL("no check named ", name);
    return false;
}

double check_residual(const nlohmann::json& report, const std::string& name) {
    for (const auto& check : report.at("checks"))
        if (check.at("name") == name) return check.at("residual").get<double>();
    FAIL("no check named ", name);
    return 0.0;
}

struct TempFile {
    std::string path;
    explicit TempFile(std::string p) : path(std::move(p)) {}
    ~TempFile() { std::remove(path.c_str()); }
};

const double kPi = 3.14159265358979323846;

} // namespace

TEST_CASE("selftest passes, echoes the seed, and repeats byte for byte") {
    const RunResult first = run_cli("selftest --seed 7");
    const RunResult second = run_cli("selftest --seed 7");
    CHECK(first.exit_code == 0);
    CHECK(first.output == second.output);

    const nlohmann::json report = parse_report(first);
    CHECK(report.at("seed") == 7);
    CHECK(report.at("verdict") == "pass");
    CHECK(report.at("checks").size() >= 10);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("no-such-subcommand").exit_code == 2);
    CHECK(run_cli("selftest --bogus-flag").exit_code == 2);
    CHECK(run_cli("bloch-solve --a 1,0,0 --b 0,1,0 --c 0,0,1 --pa 0.7 --pb 0.5").exit_code == 2);
}

TEST_CASE("version flag prints and exits cleanly") {
    const RunResult run = run_cli("--version");
    CHECK(run.exit_code == 0);
    CHECK_FALSE(run.output.empty());
}

TEST_CASE("bloch-solve classifies an orthonormal-axis density") {
    const RunResult run =
        run_cli("bloch-solve --a 1,0,0 --b 0,1,0 --c 0,0,1 --pa 0.7 --pb 0.5 --pc 0.1");
    CHECK(run.exit_code == 0);
    const nlohmann::json report = parse_report(run);
    CHECK(report.at("verdict") == "QuantumDensity");
    const auto s = report.at("payload").at("state_vector");
    CHECK(s[0].get<double>() == doctest::Approx(0.2).epsilon(1e-9));
    CHECK(s[1].get<double>() == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
    CHECK(s[2].get<double>() == doctest::Approx(-0.4).epsilon(1e-9));
    CHECK(check_passed(report, "solve-fit-equivalence"));
    CHECK(check_passed(report, "born-residual"));
    CHECK(check_passed(report, "classifier-psd-consistency"));
}

TEST_CASE("bloch-solve flags the tilted-axis point with no density model") {
    // b = (0, cos 60deg, -sin 60deg); equal outcome probabilities 0.9.
    const RunResult run = run_cli(
        "bloch-solve --a 1,0,0 --b 0,0.5,-0.86602540378443865 --c 0,0,1 "
        "--pa 0.9 --pb 0.9 --pc 0.9");
    CHECK(run.exit_code == 0);
    const nlohmann::json report = parse_report(run);
    CHECK(report.at("verdict") == "NoncommutativeOnly");
    const auto s = report.at("payload").at("state_vector");
    CHECK(s[0].get<double>() == doctest::Approx(0.4).epsilon(1e-9));
    CHECK(s[1].get<double>() == doctest::Approx(1.4928203230275509).epsilon(1e-9));
    CHECK(s[2].get<double>() == doctest::Approx(0.4).epsilon(1e-9));
    CHECK(report.at("payload").at("state_norm").get<double>() ==
          doctest::Approx(1.5964061).epsilon(1e-6));
    CHECK(report.at("payload").at("min_eigenvalue").get<double>() < 0.0);
    // the classifier and the eigenvalue test agree, so the check still passes
    CHECK(check_passed(report, "classifier-psd-consistency"));
}

TEST_CASE("bloch-solve rejects invalid inputs with the numeric exit code") {
    // non-unit direction
    CHECK(run_cli("bloch-solve --a 2,0,0 --b 0,1,0 --c 0,0,1 --pa .5 --pb .5 --pc .5")
              .exit_code == 3);
    // probability out of range
    CHECK(run_cli("bloch-solve --a 1,0,0 --b 0,1,0 --c 0,0,1 --pa 1.5 --pb .5 --pc .5")
              .exit_code == 3);
    // coplanar axes have no unique solution
    CHECK(run_cli("bloch-solve --a 1,0,0 --b 0,1,0 "
                  "--c 0.70710678118654752,0.70710678118654752,0 --pa .5 --pb .5 --pc .5")
              .exit_code == 3);
    // malformed triple is a usage error
    CHECK(run_cli("bloch-solve --a 1,0 --b 0,1,0 --c 0,0,1 --pa .5 --pb .5 --pc .5")
              .exit_code == 2);
}

TEST_CASE("bloch-scan streams the csv grid to stdout") {
    char args[256];
    std::snprintf(args, sizeof args,
                  "bloch-scan --phi-min %.17g --phi-max %.17g --p-min 0.76 --p-max 1 --steps 50",
                  kPi / 3, kPi / 2 - 0.01);
    const RunResult run = run_cli(args);
    CHECK(run.exit_code == 0);
    CHECK(run.output.rfind("p,phi,s_norm,is_density\n", 0) == 0);
    // every grid point lies outside the density ball
    CHECK(run.output.find(",true") == std::string::npos);
    int lines = 0;
    for (char c : run.output)
        if (c == '\n') ++lines;
    CHECK(lines == 2501);
}

TEST_CASE("bloch-scan with --out writes the csv and reports a summary") {
    TempFile csv("tmp_cli_scan.csv");
    char args[256];
    std::snprintf(args, sizeof args,
                  "bloch-scan --phi-min %.17g --phi-max %.17g --p-min 0.76 --p-max 1 "
                  "--steps 10 --out %s",
                  kPi / 3, kPi / 2 - 0.01, csv.path.c_str());
    const RunResult run = run_cli(args);
    CHECK(run.exit_code == 0);

    const nlohmann::json report = parse_report(run);
    CHECK(report.at("payload").at("points") == 100);
    CHECK(report.at("payload").at("density_points") == 0);
    CHECK(report.at("payload").at("min_state_norm").get<double>() > 1.0);

    const std::string bytes = read_text_file(csv.path);
    CHECK(bytes.rfind("p,phi,s_norm,is_density\n", 0) == 0);
    CHECK(report.at("payload").at("csv_hash") == content_hash(bytes));
}

TEST_CASE("bloch-scan rejects a degenerate angle range") {
    CHECK(run_cli("bloch-scan --phi-min 0 --phi-max 1 --p-min 0 --p-max 1 --steps 5")
              .exit_code == 3);
}

TEST_CASE("tomo-reconstruct round trips a generated table") {
    TempFile frame_file("tmp_cli_frame.json");
    TempFile table_file("tmp_cli_table.csv");

    SplitMix64 rng(2024);
    const MeasurementFrame frame = random_frame(31, 2, 3);
    const HermitianOperator rho = random_density(rng, 2);
    save_frame(frame, frame_file.path);
    save_table(born_table(rho, frame), table_file.path);

    const RunResult run = run_cli("tomo-reconstruct --frame " + frame_file.path + " --table " +
                                  table_file.path);
    CHECK(run.exit_code == 0);
    const nlohmann::json report = parse_report(run);
    CHECK(report.at("verdict") == "QuantumDensity");
    CHECK(check_passed(report, "reconstruction-residual"));
    CHECK(check_residual(report, "reconstruction-residual") <= 1e-9);
    CHECK(check_passed(report, "unit-trace"));
    // the inputs are pinned into the report by content hash
    CHECK(report.at("params").at("frame_hash") ==
          content_hash(read_text_file(frame_file.path)));
}

TEST_CASE("tomo-reconstruct input failures use the numeric exit code") {
    CHECK(run_cli("tomo-reconstruct --frame missing.json --table missing.csv").exit_code == 3);

    TempFile frame_file("tmp_cli_frame2.json");
    TempFile table_file("tmp_cli_table2.csv");
    save_frame(random_frame(31, 2, 3), frame_file.path);
    write_text_file(table_file.path, "0.5,0.6\n0.5,0.5\n0.5,0.5\n");
    CHECK(run_cli("tomo-reconstruct --frame " + frame_file.path + " --table " + table_file.path)
              .exit_code == 3);
}

TEST_CASE("tomo-counterexample finds a certified witness") {
    for (const char* n : {"2", "3"}) {
        const RunResult run = run_cli(std::string("tomo-counterexample --n ") + n + " --seed 11");
        CHECK(run.exit_code == 0);
        const nlohmann::json report = parse_report(run);
        CHECK(report.at("verdict") == "NoncommutativeOnly");
        CHECK(check_passed(report, "witness-found"));
        CHECK(check_passed(report, "non-psd"));
        CHECK(check_passed(report, "dual-cone-membership"));
        CHECK(check_passed(report, "born-validity"));
        CHECK(report.at("payload").at("min_eigenvalue").get<double>() < -1e-8);
    }
}

TEST_CASE("belt-verify certifies the band representation") {
    const RunResult run = run_cli("belt-verify --r 2 --samples 2000");
    CHECK(run.exit_code == 0);
    const nlohmann::json report = parse_report(run);
    CHECK(check_passed(report, "belt-born-max-error"));
    CHECK(check_residual(report, "belt-born-max-error") <= 1e-12);
    CHECK(check_passed(report, "image-containment"));

    // the band map needs r > 1
    CHECK(run_cli("belt-verify --r 1.0").exit_code == 3);
}

TEST_CASE("belt-falsify exhibits a direction the band map cannot serve") {
    const RunResult run = run_cli("belt-falsify --r 2 --seed 3");
    CHECK(run.exit_code == 0);
    const nlohmann::json report = parse_report(run);
    CHECK(report.at("verdict") == "violation-found");
    CHECK(check_residual(report, "violation-found") > 1e-6);
}

TEST_CASE("map certifiers pass genuine maps and reject the band pair") {
    CHECK(run_cli("lemma1-verify --map rotation --seed 5").exit_code == 0);

    const RunResult belt = run_cli("lemma1-verify --map belt --r 2 --seed 5");
    CHECK(belt.exit_code == 1);
    const nlohmann::json report = parse_report(belt);
    CHECK(report.at("verdict") == "fail");
    CHECK_FALSE(check_passed(report, "biorthogonality"));

    CHECK(run_cli("lemma1-verify --map projection").exit_code == 2);

    CHECK(run_cli("lemma2-verify --map unitary --n 2 --seed 5").exit_code == 0);
    CHECK(run_cli("lemma2-verify --map unitary --n 3 --seed 5").exit_code == 0);
    CHECK(run_cli("lemma2-verify --map transpose --n 2 --seed 5").exit_code == 0);
}

TEST_CASE("tolerance overrides validate names and values") {
    CHECK(run_cli("selftest --set-tol no-such-knob=1").exit_code == 2);
    CHECK(run_cli("selftest --set-tol equivalence=abc").exit_code == 2);

    const RunResult run = run_cli(
        "bloch-solve --a 1,0,0 --b 0,1,0 --c 0,0,1 --pa 0.7 --pb 0.5 --pc 0.1 "
        "--set-tol born-residual=0.001");
    CHECK(run.exit_code == 0);
    const nlohmann::json report = parse_report(run);
    CHECK(report.at("params").at("tolerances").at("born-residual").get<double>() == 0.001);
}

TEST_CASE("environment seed is honored and validated") {
    const RunResult env_run = run_cli("selftest", "NCRL_SEED=123 ");
    CHECK(env_run.exit_code == 0);
    CHECK(parse_report(env_run).at("seed") == 123);

    // an explicit flag beats the environment
    const RunResult flag_run = run_cli("selftest --seed 4", "NCRL_SEED=123 ");
    CHECK(parse_report(flag_run).at("seed") == 4);

    CHECK(run_cli("selftest", "NCRL_SEED=abc ").exit_code == 2);
}

TEST_CASE("reports written to --out match stdout byte for byte") {
    TempFile out("tmp_cli_report.json");
    const RunResult run = run_cli(
        "bloch-solve --a 1,0,0 --b 0,1,0 --c 0,0,1 --pa 0.7 --pb 0.5 --pc 0.1 --out " + out.path);
    CHECK(run.exit_code == 0);
    CHECK(read_text_file(out.path) == run.output);
}

TEST_CASE("repeat runs with one seed are byte identical") {
    const std::string cmd = "tomo-counterexample --n 2 --seed 5";
    const RunResult first = run_cli(cmd);
    const RunResult second = run_cli(cmd);
    CHECK(first.exit_code == 0);
    CHECK(first.output == second.output);
}
