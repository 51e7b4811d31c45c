#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncrl/bloch_case1.hpp"
#include "ncrl/complex_matrix.hpp"
#include "ncrl/errors.hpp"
#include "ncrl/io.hpp"
#include "ncrl/random_ops.hpp"
#include "ncrl/report.hpp"
#include "ncrl/rng.hpp"
#include "ncrl/tomo_case2.hpp"

using namespace ncrl;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(std::string p) : path(std::move(p)) {}
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("matrix json round trips exactly") {
    SplitMix64 rng(71);
    for (int n : {2, 3, 5}) {
        const ComplexMatrix m = random_complex_gaussian(rng, n);
        const ComplexMatrix back = matrix_from_json(matrix_to_json(m));
        CHECK(max_abs_diff(m, back) == 0.0);
    }

    CHECK_THROWS_AS(matrix_from_json(nlohmann::json{{"dim", 2}}), SchemaError);
    nlohmann::json short_entries = {{"dim", 2}, {"entries", nlohmann::json::array({{1.0, 0.0}})}};
    CHECK_THROWS_AS(matrix_from_json(short_entries), SchemaError);
}

TEST_CASE("frame files serialize canonically") {
    const MeasurementFrame frame = random_frame(5, 2, 3);
    TempFile file("tmp_frame_roundtrip.json");
    save_frame(frame, file.path);

    const MeasurementFrame loaded = load_frame(file.path);
    CHECK(loaded.n() == frame.n());
    CHECK(loaded.k() == frame.k());
    for (int i = 0; i < frame.k(); ++i)
        for (int j = 0; j < frame.n(); ++j)
            CHECK(max_abs_diff(loaded.projection(i, j).matrix(),
                               frame.projection(i, j).matrix()) == 0.0);

    // serialize(load(file)) is byte-identical to the file
    const std::string bytes = read_text_file(file.path);
    const std::string again = frame_to_json(loaded).dump(2) + "\n";
    CHECK(bytes == again);
}

TEST_CASE("frame loading reports schema violations") {
    TempFile file("tmp_frame_bad.json");
    write_text_file(file.path, "{\"n\": 2, \"k\": 1}");
    CHECK_THROWS_AS(load_frame(file.path), SchemaError);

    write_text_file(file.path, "not json at all");
    CHECK_THROWS_AS(load_frame(file.path), SchemaError);

    // a non-projection matrix in a frame slot is rejected on load
    nlohmann::json j;
    j["n"] = 2;
    j["k"] = 1;
    ComplexMatrix half = ComplexMatrix::identity(2);
    half *= Complex(0.5, 0.0);
    j["measurements"] = nlohmann::json::array();
    j["measurements"].push_back(
        nlohmann::json::array({matrix_to_json(half), matrix_to_json(half)}));
    write_text_file(file.path, j.dump(2) + "\n");
    CHECK_THROWS_AS(load_frame(file.path), SchemaError);

    CHECK_THROWS_AS(load_frame("no_such_file_anywhere.json"), SchemaError);
}

TEST_CASE("probability tables survive the csv round trip") {
    const ProbabilityTable table({{0.25, 0.75}, {0.125, 0.875}, {1.0, 0.0}});
    const std::string csv = table_to_csv(table);
    const ProbabilityTable back = table_from_csv(csv);
    REQUIRE(back.k() == 3);
    REQUIRE(back.n() == 2);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 2; ++j) CHECK(back.at(i, j) == table.at(i, j));
    // canonical form is idempotent
    CHECK(table_to_csv(back) == csv);

    TempFile file("tmp_table_roundtrip.csv");
    save_table(table, file.path);
    const ProbabilityTable from_disk = load_table(file.path);
    CHECK(from_disk.at(2, 0) == 1.0);
}

TEST_CASE("csv parsing reports the offending row") {
    // rows must sum to one
    try {
        table_from_csv("0.5,0.6\n");
        FAIL("expected a parse failure");
    } catch (const std::exception& e) {
        CHECK(std::string(e.what()).find("row") != std::string::npos);
    }
    // malformed number
    CHECK_THROWS(table_from_csv("0.5,abc\n"));
    // negative entries beyond tolerance
    CHECK_THROWS(table_from_csv("1.2,-0.2\n"));
    // ragged rows
    CHECK_THROWS(table_from_csv("0.5,0.5\n1.0\n"));
}

TEST_CASE("scan csv has the documented header and flags") {
    const RegionScanResult scan = scan_region(1.1, 1.4, 0.76, 1.0, 3);
    const std::string csv = scan_to_csv(scan);
    CHECK(csv.rfind("p,phi,s_norm,is_density\n", 0) == 0);
    CHECK(csv.find("false") != std::string::npos);
    // 3x3 grid: header + 9 rows
    int lines = 0;
    for (char c : csv)
        if (c == '\n') ++lines;
    CHECK(lines == 10);
    // deterministic bytes
    CHECK(scan_to_csv(scan) == csv);
}

TEST_CASE("reports serialize deterministically with provenance") {
    Report report;
    report.verdict = "pass";
    report.seed = 42;
    report.params["zeta"] = 1.0;
    report.params["alpha"] = 2.0;
    report.add_check("first", true, 1.25e-11);
    report.add_check("second", false, 0.5);
    report.payload["value"] = round_sig12(0.1234567890123456789);

    const std::string bytes = serialize_report(report);
    CHECK(serialize_report(report) == bytes);
    CHECK(bytes.back() == '\n');

    const nlohmann::json j = nlohmann::json::parse(bytes);
    CHECK(j.at("verdict") == "pass");
    CHECK(j.at("seed") == 42);
    CHECK(j.at("provenance").contains("version"));
    CHECK(j.at("checks").size() == 2);
    CHECK(j.at("checks")[0].at("name") == "first");
    CHECK(j.at("checks")[1].at("pass") == false);
    CHECK_FALSE(report.all_passed());
}

TEST_CASE("twelve digit rounding is idempotent and shortest form") {
    CHECK(round_sig12(0.0) == 0.0);
    CHECK(round_sig12(1.0) == 1.0);
    const double x = 0.1234567890123456789;
    const double r = round_sig12(x);
    CHECK(r == doctest::Approx(x).epsilon(1e-11));
    CHECK(round_sig12(r) == r);
    CHECK(format_sig12(1.5) == "1.5");
    CHECK(format_sig12(r) == format_sig12(round_sig12(r)));
}

TEST_CASE("content hashing matches the reference values") {
    CHECK(content_hash("") == 14695981039346656037ull);
    CHECK(content_hash("a") == 12638187200555641996ull);
    CHECK(content_hash("abc") != content_hash("abd"));
}
