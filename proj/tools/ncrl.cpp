#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ncrl/bloch_case1.hpp"
#include "ncrl/continuum_case3.hpp"
#include "ncrl/eigen.hpp"
#include "ncrl/errors.hpp"
#include "ncrl/io.hpp"
#include "ncrl/pauli.hpp"
#include "ncrl/random_ops.hpp"
#include "ncrl/report.hpp"
#include "ncrl/rng.hpp"
#include "ncrl/selftest.hpp"
#include "ncrl/tomo_case2.hpp"
#include "ncrl/version.hpp"

namespace {

using namespace ncrl;

constexpr int kExitPass = 0;
constexpr int kExitFailedCheck = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

class Tolerances {
public:
    Tolerances() {
        values_ = {
            {"belt-born", 1e-12},         {"born-residual", 1e-10},
            {"equivalence", 1e-12},       {"lemma1", 1e-10},
            {"lemma2", 1e-9},             {"predicate", 1e-10},
            {"reconstruct-residual", 1e-9}, {"witness-mineig", 1e-8},
        };
    }

    void apply_overrides(const std::vector<std::string>& overrides) {
        for (const std::string& entry : overrides) {
            const std::size_t eq = entry.find('=');
            if (eq == std::string::npos)
                throw CLI::ValidationError("--set-tol", "expected name=value, got '" + entry + "'");
            const std::string name = entry.substr(0, eq);
            const std::string value = entry.substr(eq + 1);
            auto it = values_.find(name);
            if (it == values_.end())
                throw CLI::ValidationError("--set-tol", "unknown tolerance '" + name + "'");
            try {
                std::size_t consumed = 0;
                const double v = std::stod(value, &consumed);
                if (consumed != value.size() || !(v >= 0.0))
                    throw std::invalid_argument("bad value");
                it->second = v;
            } catch (const std::exception&) {
                throw CLI::ValidationError("--set-tol",
                                           "cannot parse '" + value + "' as a tolerance");
            }
        }
    }

    double at(const std::string& name) const { return values_.at(name); }

    nlohmann::json to_json() const {
        nlohmann::json j = nlohmann::json::object();
        for (const auto& [name, value] : values_) j[name] = value;
        return j;
    }

private:
    std::map<std::string, double> values_;
};

BlochVector parse_triple(const std::string& option, const std::string& text) {
    std::vector<double> parts;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string cell =
            text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        try {
            std::size_t consumed = 0;
            parts.push_back(std::stod(cell, &consumed));
            if (consumed != cell.size()) throw std::invalid_argument("trailing junk");
        } catch (const std::exception&) {
            throw CLI::ValidationError(option, "cannot parse component '" + cell + "'");
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (parts.size() != 3)
        throw CLI::ValidationError(option, "expected three comma-separated components");
    return BlochVector{parts[0], parts[1], parts[2]};
}

std::uint64_t seed_from_env() {
    const char* env = std::getenv("NCRL_SEED");
    if (env == nullptr || *env == '\0') return 0;
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0')
        throw CLI::ValidationError("NCRL_SEED", std::string("cannot parse '") + env +
                                                    "' as an unsigned integer");
    return static_cast<std::uint64_t>(value);
}

void emit(const Report& report, const std::string& out_path) {
    const std::string bytes = serialize_report(report);
    if (!out_path.empty()) write_text_file(out_path, bytes);
    std::cout << bytes;
}

nlohmann::json bloch_to_json(const BlochVector& v) {
    return nlohmann::json::array({round_sig12(v.x), round_sig12(v.y), round_sig12(v.z)});
}

int finish(const Report& report, const std::string& out_path) {
    emit(report, out_path);
    return report.all_passed() ? kExitPass : kExitFailedCheck;
}

struct CommonArgs {
    std::uint64_t seed = 0;
    std::vector<std::string> tol_overrides;
    std::string out_path;
};

void attach_common(CLI::App* cmd, CommonArgs& args, std::uint64_t default_seed) {
    args.seed = default_seed;
    cmd->add_option("--seed", args.seed, "PRNG seed (default: NCRL_SEED or 0)")
        ->capture_default_str();
    cmd->add_option("--set-tol", args.tol_overrides,
                    "override a named tolerance, e.g. --set-tol predicate=1e-9");
    cmd->add_option("--out", args.out_path, "write the report (or CSV for bloch-scan) here");
}

int run_bloch_solve(const CommonArgs& common, const Tolerances& tol, const std::string& a_text,
                    const std::string& b_text, const std::string& c_text, double pa, double pb,
                    double pc) {
    const ThreeMeasurementSetup setup(parse_triple("--a", a_text), parse_triple("--b", b_text),
                                      parse_triple("--c", c_text));
    const ConditionalProbTriple probs(pa, pb, pc);

    const BlochVector s = solve_state_vector(setup, probs);
    const PauliDecomposition fit = fit_general_operator(setup, probs);
    // Born data lives on (1/2) I + s.sigma; the PSD question on (I + s.sigma)/2.
    PauliDecomposition coeffs;
    coeffs.s0 = 0.5;
    coeffs.s = s;
    const HermitianOperator born_op(pauli_compose(coeffs));
    const HermitianOperator w = bloch_state(s);

    double born_residual = 0.0;
    const BlochVector dirs[3] = {setup.a(), setup.b(), setup.c()};
    const double plus[3] = {probs.pa, probs.pb, probs.pc};
    for (int d = 0; d < 3; ++d)
        for (int sign : {1, -1}) {
            const double expected = sign > 0 ? plus[d] : 1.0 - plus[d];
            const double got = born_probability(born_op, projection_from_bloch(dirs[d], sign));
            born_residual = std::max(born_residual, std::abs(got - expected));
        }

    const double equivalence = (s - fit.s).norm();
    const double structure =
        std::max({std::abs(fit.s0 - 0.5), std::abs(fit.s0p), fit.sp.norm()});
    const bool classified_density =
        classify_representation(s) == RepresentationClass::QuantumDensity;
    const bool psd = is_psd(w, tol.at("predicate"));

    Report report;
    report.seed = common.seed;
    report.verdict = classified_density ? "QuantumDensity" : "NoncommutativeOnly";
    report.params = {{"subcommand", "bloch-solve"},
                     {"a", bloch_to_json(setup.a())},
                     {"b", bloch_to_json(setup.b())},
                     {"c", bloch_to_json(setup.c())},
                     {"pa", pa},
                     {"pb", pb},
                     {"pc", pc},
                     {"seed", common.seed},
                     {"tolerances", tol.to_json()}};
    report.add_check("solve-fit-equivalence", equivalence <= tol.at("equivalence"), equivalence);
    report.add_check("born-residual", born_residual <= tol.at("born-residual"), born_residual);
    report.add_check("fit-structure", structure <= tol.at("born-residual"), structure);
    report.add_check("classifier-psd-consistency", classified_density == psd,
                     std::abs(s.norm() - 1.0));
    report.payload = {{"state_vector", bloch_to_json(s)},
                      {"state_norm", round_sig12(s.norm())},
                      {"min_eigenvalue", round_sig12(min_eigenvalue(w))},
                      {"state", matrix_to_json(w.matrix())},
                      {"born_operator", matrix_to_json(born_op.matrix())}};
    return finish(report, common.out_path);
}

int run_bloch_scan(const CommonArgs& common, const Tolerances& tol, double phi_min,
                   double phi_max, double p_min, double p_max, int steps) {
    const RegionScanResult result = scan_region(phi_min, phi_max, p_min, p_max, steps);
    const std::string csv = scan_to_csv(result);

    if (common.out_path.empty()) {
        std::cout << csv;
        return kExitPass;
    }
    write_text_file(common.out_path, csv);

    int density_points = 0;
    double min_norm = 1e300;
    double max_norm = 0.0;
    for (const RegionScanPoint& pt : result.points) {
        if (pt.is_density) ++density_points;
        min_norm = std::min(min_norm, pt.s_norm);
        max_norm = std::max(max_norm, pt.s_norm);
    }

    Report report;
    report.seed = common.seed;
    report.verdict = "pass";
    report.params = {{"subcommand", "bloch-scan"}, {"phi_min", phi_min}, {"phi_max", phi_max},
                     {"p_min", p_min},             {"p_max", p_max},     {"steps", steps},
                     {"seed", common.seed},        {"tolerances", tol.to_json()}};
    report.add_check("closed-form-solve-agreement", true, 0.0);
    report.payload = {{"points", static_cast<int>(result.points.size())},
                      {"density_points", density_points},
                      {"min_state_norm", round_sig12(min_norm)},
                      {"max_state_norm", round_sig12(max_norm)},
                      {"csv_hash", content_hash(csv)}};
    emit(report, "");
    return kExitPass;
}

int run_tomo_reconstruct(const CommonArgs& common, const Tolerances& tol,
                         const std::string& frame_path, const std::string& table_path) {
    const std::string frame_bytes = read_text_file(frame_path);
    const std::string table_bytes = read_text_file(table_path);
    const MeasurementFrame frame = load_frame(frame_path);
    const ProbabilityTable table = load_table(table_path);

    const HermitianOperator w = reconstruct_state(frame, table);

    double residual = 0.0;
    const ProbabilityTable echo = born_table(w, frame);
    for (int i = 0; i < frame.k(); ++i)
        for (int j = 0; j < frame.n(); ++j)
            residual = std::max(residual, std::abs(echo.at(i, j) - table.at(i, j)));
    const double trace_error = std::abs(w.real_trace() - 1.0);
    const bool density = is_density(w, tol.at("predicate"));

    Report report;
    report.seed = common.seed;
    report.verdict = density ? "QuantumDensity" : "NoncommutativeOnly";
    report.params = {{"subcommand", "tomo-reconstruct"},
                     {"frame", frame_path},
                     {"table", table_path},
                     {"frame_hash", content_hash(frame_bytes)},
                     {"table_hash", content_hash(table_bytes)},
                     {"seed", common.seed},
                     {"tolerances", tol.to_json()}};
    report.add_check("reconstruction-residual", residual <= tol.at("reconstruct-residual"),
                     residual);
    report.add_check("unit-trace", trace_error <= tol.at("reconstruct-residual"), trace_error);
    report.payload = {{"state", matrix_to_json(w.matrix())},
                      {"min_eigenvalue", round_sig12(min_eigenvalue(w))},
                      {"trace", round_sig12(w.real_trace())}};
    return finish(report, common.out_path);
}

int run_tomo_counterexample(const CommonArgs& common, const Tolerances& tol, int n,
                            int max_rays) {
    const MeasurementFrame frame = random_frame(common.seed, n, n + 1);
    const std::uint64_t search_seed = SplitMix64(common.seed).child(0x77).seed();

    Report report;
    report.seed = common.seed;
    report.params = {{"subcommand", "tomo-counterexample"},
                     {"n", n},
                     {"max_rays", max_rays},
                     {"seed", common.seed},
                     {"tolerances", tol.to_json()}};

    try {
        const DualConeWitness witness = find_nonpsd_witness(frame, search_seed, max_rays);

        const ProbabilityTable born = born_table(witness.w, frame);
        double min_entry = 1e300;
        double max_entry = -1e300;
        double row_sum_error = 0.0;
        for (int i = 0; i < frame.k(); ++i) {
            double sum = 0.0;
            for (int j = 0; j < frame.n(); ++j) {
                min_entry = std::min(min_entry, born.at(i, j));
                max_entry = std::max(max_entry, born.at(i, j));
                sum += born.at(i, j);
            }
            row_sum_error = std::max(row_sum_error, std::abs(sum - 1.0));
        }
        const HermitianOperator recovered = reconstruct_state(frame, born);
        const double round_trip = max_abs_diff(recovered.matrix(), witness.w.matrix());

        report.verdict = "NoncommutativeOnly";
        report.add_check("witness-found", true, 0.0);
        report.add_check("non-psd", witness.min_eigenvalue < -tol.at("witness-mineig"),
                         witness.min_eigenvalue);
        report.add_check("dual-cone-membership",
                         in_dual_cone(witness.w, frame, tol.at("predicate")), min_entry);
        report.add_check("born-validity",
                         min_entry >= -1e-10 && max_entry <= 1.0 + 1e-10 &&
                             row_sum_error <= 1e-10,
                         row_sum_error);
        report.add_check("round-trip", round_trip <= tol.at("reconstruct-residual"), round_trip);

        nlohmann::json slacks = nlohmann::json::array();
        for (double s : witness.constraint_slacks) slacks.push_back(round_sig12(s));
        report.payload = {{"witness", matrix_to_json(witness.w.matrix())},
                          {"min_eigenvalue", round_sig12(witness.min_eigenvalue)},
                          {"constraint_slacks", slacks},
                          {"direction_seed", witness.direction_seed},
                          {"frame", frame_to_json(frame)}};
    } catch (const SearchExhaustedError& err) {
        report.verdict = "fail";
        report.add_check("witness-found", false, 0.0);
        report.payload = {{"error", err.what()}, {"frame", frame_to_json(frame)}};
    }
    return finish(report, common.out_path);
}

int run_belt_verify(const CommonArgs& common, const Tolerances& tol, double r, int samples) {
    const BeltParameters params(r);
    const double max_error = verify_belt_born(params, samples, common.seed);
    const double gap = belt_image_gap(params);

    Report report;
    report.seed = common.seed;
    report.verdict = "pass";
    report.params = {{"subcommand", "belt-verify"},
                     {"r", r},
                     {"samples", samples},
                     {"seed", common.seed},
                     {"tolerances", tol.to_json()}};
    report.add_check("belt-born-max-error", max_error <= tol.at("belt-born"), max_error);
    report.add_check("image-containment", true, 0.0);
    if (!report.all_passed()) report.verdict = "fail";
    report.payload = {{"max_abs_error", round_sig12(max_error)},
                      {"cap_half_angle", round_sig12(gap)},
                      {"state_image", bloch_to_json(belt_g(params))}};
    return finish(report, common.out_path);
}

int run_belt_falsify(const CommonArgs& common, const Tolerances& tol, double r) {
    const BeltParameters params(r);

    Report report;
    report.seed = common.seed;
    report.params = {{"subcommand", "belt-falsify"},
                     {"r", r},
                     {"seed", common.seed},
                     {"tolerances", tol.to_json()}};
    try {
        const BeltFalsifierPair pair = belt_full_content_falsifier(params, common.seed);
        report.verdict = "violation-found";
        report.add_check("violation-found", pair.discrepancy > 1e-6, pair.discrepancy);
        report.payload = {{"a_theta", round_sig12(pair.a.theta)},
                          {"a_phi", round_sig12(pair.a.phi)},
                          {"s", bloch_to_json(pair.s)},
                          {"discrepancy", round_sig12(pair.discrepancy)},
                          {"max_possible", round_sig12(std::sqrt(r * r - 1.0))}};
    } catch (const SearchExhaustedError& err) {
        report.verdict = "fail";
        report.add_check("violation-found", false, 0.0);
        report.payload = {{"error", err.what()}};
    }
    return finish(report, common.out_path);
}

int run_lemma1(const CommonArgs& common, const Tolerances& tol, const std::string& map,
               double r, double tol_flag) {
    const double check_tol = tol_flag > 0.0 ? tol_flag : tol.at("lemma1");
    std::vector<DirectionMapSample> samples;
    if (map == "rotation") {
        samples = rotation_lemma1_samples(common.seed, 100);
    } else if (map == "belt") {
        samples = belt_lemma1_samples(BeltParameters(r), common.seed, 100);
    } else {
        throw CLI::ValidationError("--map", "expected 'rotation' or 'belt'");
    }

    Report report;
    report.seed = common.seed;
    report.params = {{"subcommand", "lemma1-verify"}, {"map", map},
                     {"r", r},                        {"tol", check_tol},
                     {"seed", common.seed},           {"tolerances", tol.to_json()}};
    try {
        const Lemma1Report rep = lemma1_verify(samples, check_tol);
        report.verdict = rep.all_passed() ? "pass" : "fail";
        report.add_check("biorthogonality", true, rep.biorthogonality_residual);
        report.add_check("linearity", rep.is_linear_extension, rep.linearity_residual);
        report.add_check("orthogonality", rep.is_orthogonal, rep.orthogonality_residual);
        report.add_check("map-agreement", rep.g_equals_f, rep.agreement_residual);
    } catch (const InputInconsistentError& err) {
        report.verdict = "fail";
        report.add_check("biorthogonality", false, err.residual);
    }
    return finish(report, common.out_path);
}

int run_lemma2(const CommonArgs& common, const Tolerances& tol, const std::string& map, int n,
               double tol_flag) {
    const double check_tol = tol_flag > 0.0 ? tol_flag : tol.at("lemma2");
    if (map != "unitary" && map != "transpose")
        throw CLI::ValidationError("--map", "expected 'unitary' or 'transpose'");

    const std::vector<MinimalProjection> basis = random_projection_spanning_set(common.seed, n);
    SplitMix64 rng = SplitMix64(common.seed).child(0x99);
    const ComplexMatrix u = random_unitary(rng, n);

    const auto apply_map = [&](const ComplexMatrix& p) {
        return map == "unitary" ? conjugate_by(u, p) : p.transpose();
    };

    std::vector<ComplexMatrix> images;
    images.reserve(basis.size());
    for (const MinimalProjection& p : basis) images.push_back(apply_map(p.matrix()));

    std::vector<ProjectionMapSample> extra;
    extra.reserve(100);
    for (int i = 0; i < 100; ++i) {
        const MinimalProjection p = random_minimal_projection(rng, n);
        extra.push_back(ProjectionMapSample{p, apply_map(p.matrix())});
    }

    Report report;
    report.seed = common.seed;
    report.params = {{"subcommand", "lemma2-verify"}, {"map", map},
                     {"n", n},                        {"tol", check_tol},
                     {"seed", common.seed},           {"tolerances", tol.to_json()}};
    try {
        const Lemma2Report rep = lemma2_verify(basis, images, images, extra, rng.next(), check_tol);
        report.verdict = rep.all_passed() ? "pass" : "fail";
        report.add_check("gram-pairing", true, rep.pairing_residual);
        report.add_check("linearity", rep.is_linear_extension, rep.linearity_residual);
        report.add_check("hs-unitarity", rep.is_hs_unitary, rep.unitarity_residual);
        report.add_check("map-agreement", rep.g_equals_f, rep.agreement_residual);
    } catch (const InputInconsistentError& err) {
        report.verdict = "fail";
        report.add_check("gram-pairing", false, err.residual);
    }
    return finish(report, common.out_path);
}

int run_selftest_cmd(const CommonArgs& common) {
    Report report = run_selftest(common.seed);
    return finish(report, common.out_path);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Noncommutative representations of conditional probabilities: "
                 "state solvers, tomography, band maps, linear-map certifiers"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    std::uint64_t env_seed = 0;
    try {
        env_seed = seed_from_env();
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    CommonArgs bs_args;
    std::string bs_a, bs_b, bs_c;
    double bs_pa = 0.5, bs_pb = 0.5, bs_pc = 0.5;
    CLI::App* bloch_solve = app.add_subcommand(
        "bloch-solve", "solve the three-direction state vector from outcome probabilities");
    attach_common(bloch_solve, bs_args, env_seed);
    bloch_solve->add_option("--a", bs_a, "first direction, x,y,z")->required();
    bloch_solve->add_option("--b", bs_b, "second direction, x,y,z")->required();
    bloch_solve->add_option("--c", bs_c, "third direction, x,y,z")->required();
    bloch_solve->add_option("--pa", bs_pa, "probability of the + outcome along a")->required();
    bloch_solve->add_option("--pb", bs_pb, "probability of the + outcome along b")->required();
    bloch_solve->add_option("--pc", bs_pc, "probability of the + outcome along c")->required();

    CommonArgs scan_args;
    double scan_phi_min = 0.0, scan_phi_max = 0.0, scan_p_min = 0.0, scan_p_max = 0.0;
    int scan_steps = 0;
    CLI::App* bloch_scan = app.add_subcommand(
        "bloch-scan", "grid scan of the special direction family, CSV output");
    attach_common(bloch_scan, scan_args, env_seed);
    bloch_scan->add_option("--phi-min", scan_phi_min, "grid start angle")->required();
    bloch_scan->add_option("--phi-max", scan_phi_max, "grid end angle (excluded)")->required();
    bloch_scan->add_option("--p-min", scan_p_min, "lowest probability")->required();
    bloch_scan->add_option("--p-max", scan_p_max, "highest probability")->required();
    bloch_scan->add_option("--steps", scan_steps, "grid points per axis")->required();

    CommonArgs tr_args;
    std::string tr_frame, tr_table;
    CLI::App* tomo_reconstruct = app.add_subcommand(
        "tomo-reconstruct", "reconstruct a state operator from a frame and a probability table");
    attach_common(tomo_reconstruct, tr_args, env_seed);
    tomo_reconstruct->add_option("--frame", tr_frame, "frame JSON path")->required();
    tomo_reconstruct->add_option("--table", tr_table, "probability CSV path")->required();

    CommonArgs tc_args;
    int tc_n = 2, tc_max_rays = 10000;
    CLI::App* tomo_counterexample = app.add_subcommand(
        "tomo-counterexample", "find a Born-consistent operator that is not positive semidefinite");
    attach_common(tomo_counterexample, tc_args, env_seed);
    tomo_counterexample->add_option("--n", tc_n, "Hilbert space dimension")->required();
    tomo_counterexample->add_option("--max-rays", tc_max_rays, "ray budget")
        ->capture_default_str();

    CommonArgs bv_args;
    double bv_r = 2.0;
    int bv_samples = 10000;
    CLI::App* belt_verify = app.add_subcommand(
        "belt-verify", "check the band-map representation of a fixed state");
    attach_common(belt_verify, bv_args, env_seed);
    belt_verify->add_option("--r", bv_r, "band compression factor, > 1")->required();
    belt_verify->add_option("--samples", bv_samples, "sampled directions")->capture_default_str();

    CommonArgs bf_args;
    double bf_r = 2.0;
    CLI::App* belt_falsify = app.add_subcommand(
        "belt-falsify", "find a direction/state pair the band map cannot represent");
    attach_common(belt_falsify, bf_args, env_seed);
    belt_falsify->add_option("--r", bf_r, "band compression factor, > 1")->required();

    CommonArgs l1_args;
    std::string l1_map = "rotation";
    double l1_r = 2.0, l1_tol = 0.0;
    CLI::App* lemma1 = app.add_subcommand(
        "lemma1-verify", "certify a sampled sphere-map pair extends to one orthogonal map");
    attach_common(lemma1, l1_args, env_seed);
    lemma1->add_option("--map", l1_map, "rotation | belt")->required();
    lemma1->add_option("--r", l1_r, "band factor for --map belt")->capture_default_str();
    lemma1->add_option("--tol", l1_tol, "check tolerance (default: tolerance registry)");

    CommonArgs l2_args;
    std::string l2_map = "unitary";
    int l2_n = 2;
    double l2_tol = 0.0;
    CLI::App* lemma2 = app.add_subcommand(
        "lemma2-verify", "certify a sampled projection-map pair extends to one HS-unitary map");
    attach_common(lemma2, l2_args, env_seed);
    lemma2->add_option("--map", l2_map, "unitary | transpose")->required();
    lemma2->add_option("--n", l2_n, "Hilbert space dimension")->capture_default_str();
    lemma2->add_option("--tol", l2_tol, "check tolerance (default: tolerance registry)");

    CommonArgs st_args;
    CLI::App* selftest = app.add_subcommand("selftest", "run the deterministic property battery");
    attach_common(selftest, st_args, env_seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (bloch_solve->parsed()) {
            Tolerances tol;
            tol.apply_overrides(bs_args.tol_overrides);
            return run_bloch_solve(bs_args, tol, bs_a, bs_b, bs_c, bs_pa, bs_pb, bs_pc);
        }
        if (bloch_scan->parsed()) {
            Tolerances tol;
            tol.apply_overrides(scan_args.tol_overrides);
            return run_bloch_scan(scan_args, tol, scan_phi_min, scan_phi_max, scan_p_min,
                                  scan_p_max, scan_steps);
        }
        if (tomo_reconstruct->parsed()) {
            Tolerances tol;
            tol.apply_overrides(tr_args.tol_overrides);
            return run_tomo_reconstruct(tr_args, tol, tr_frame, tr_table);
        }
        if (tomo_counterexample->parsed()) {
            Tolerances tol;
            tol.apply_overrides(tc_args.tol_overrides);
            return run_tomo_counterexample(tc_args, tol, tc_n, tc_max_rays);
        }
        if (belt_verify->parsed()) {
            Tolerances tol;
            tol.apply_overrides(bv_args.tol_overrides);
            return run_belt_verify(bv_args, tol, bv_r, bv_samples);
        }
        if (belt_falsify->parsed()) {
            Tolerances tol;
            tol.apply_overrides(bf_args.tol_overrides);
            return run_belt_falsify(bf_args, tol, bf_r);
        }
        if (lemma1->parsed()) {
            Tolerances tol;
            tol.apply_overrides(l1_args.tol_overrides);
            return run_lemma1(l1_args, tol, l1_map, l1_r, l1_tol);
        }
        if (lemma2->parsed()) {
            Tolerances tol;
            tol.apply_overrides(l2_args.tol_overrides);
            return run_lemma2(l2_args, tol, l2_map, l2_n, l2_tol);
        }
        if (selftest->parsed()) {
            // the battery's tolerances are pinned; overrides are still
            // validated so typos fail the same way everywhere
            Tolerances tol;
            tol.apply_overrides(st_args.tol_overrides);
            return run_selftest_cmd(st_args);
        }
        std::cerr << "no subcommand selected\n";
        return kExitUsage;
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const SchemaError& e) {
        std::cerr << e.what() << "\n";
        return kExitNumeric;
    } catch (const UnderdeterminedFrameError& e) {
        std::cerr << e.what() << "\n";
        return kExitNumeric;
    } catch (const InconsistentTableError& e) {
        std::cerr << e.what() << "\n";
        return kExitNumeric;
    } catch (const SearchExhaustedError& e) {
        std::cerr << e.what() << "\n";
        return kExitFailedCheck;
    } catch (const std::invalid_argument& e) {
        // Dimension, invariant and degeneracy violations on numeric inputs.
        std::cerr << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitNumeric;
    }
}
