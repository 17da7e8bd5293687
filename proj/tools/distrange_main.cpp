#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "distrange/errors.hpp"
#include "distrange/io.hpp"
#include "distrange/oracle.hpp"
#include "distrange/tree_decision.hpp"

namespace {

using namespace distrange;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path);
    out << text;
}

int run_decide(const std::string& input, const std::string& output, const std::string& strategy,
               bool emit_certificate) {
    IntervalFamily family = io::parse_instance(read_file(input));
    CandidateStrategy cs =
        strategy == "raw" ? CandidateStrategy::Raw : CandidateStrategy::Topology;
    if (family.variant() == Variant::GraphClosed) {
        GraphDecision decision = decide_graph(family);
        write_output(output, io::decide_result_json(family, decision, emit_certificate));
        return decision.feasible() ? 0 : 1;
    }
    TreeDecision decision = family.variant() == Variant::StarOpen
                                ? decide_star(family)
                                : decide_tree(family, cs);
    write_output(output, io::decide_result_json(family, decision, emit_certificate));
    return decision.feasible() ? 0 : 1;
}

int run_verify(const std::string& witness_path, const std::string& instance_path,
               const std::string& output) {
    IntervalFamily family = io::parse_instance(read_file(instance_path));
    io::Witness witness = io::parse_witness(read_file(witness_path));
    VerifyReport report = io::verify_witness(witness, family);
    write_output(output, io::verify_report_json(report));
    return report.ok ? 0 : 1;
}

// Seeded instances: even seeds plant a ground truth, odd seeds draw the
// bounds independently so infeasible cases appear as well.
IntervalFamily crosscheck_instance(int n, Variant variant, std::uint64_t seed) {
    if (seed % 2 == 0) {
        oracle::InstanceSpec spec;
        spec.n = n;
        spec.variant = variant;
        spec.seed = seed;
        const bool positive = variant_requires_positive(variant);
        spec.weight_lo = positive ? Rational(1, 4) : Rational(-3);
        spec.weight_hi = Rational(5);
        spec.half_width = Rational(1, 4);
        return oracle::random_instance(spec).family;
    }
    oracle::Rng rng(seed);
    const bool positive = variant_requires_positive(variant);
    const bool open = variant_is_open(variant);
    Rational lo_range = positive ? Rational(1, 16) : Rational(-4);
    Rational hi_range(8);
    PairTable<Interval> bounds(n);
    for (const PairIndex& p : all_pairs(n)) {
        Rational a = rng.rational_in(lo_range, hi_range);
        Rational b = rng.rational_in(lo_range, hi_range);
        while (open && a == b) b = rng.rational_in(lo_range, hi_range);
        bounds.at(p) = a < b ? Interval{a, b} : Interval{b, a};
    }
    return IntervalFamily(n, std::move(bounds), variant);
}

int run_crosscheck(int n, const std::string& variant_name_arg, int seeds,
                   const std::string& strategy, const std::string& output) {
    Variant variant = variant_from_name(variant_name_arg);
    if (n > 6) throw ParseError("crosscheck: oracle supports n <= 6");
    if (n < 2) throw ParseError("crosscheck: need n >= 2");
    CandidateStrategy cs =
        strategy == "raw" ? CandidateStrategy::Raw : CandidateStrategy::Topology;

    std::vector<std::uint64_t> disagreements;
    for (int s = 0; s < seeds; ++s) {
        std::uint64_t seed = static_cast<std::uint64_t>(s);
        IntervalFamily family = crosscheck_instance(n, variant, seed);
        bool engine_feasible, oracle_feasible;
        if (variant == Variant::GraphClosed) {
            GraphDecision d = decide_graph(family);
            engine_feasible = d.feasible();
            if (engine_feasible && !verify_graph(*d.witness, family).ok) {
                disagreements.push_back(seed);
                continue;
            }
            oracle_feasible = oracle::brute_force_graph_decide(family).feasible();
        } else if (variant == Variant::StarOpen) {
            throw ParseError("crosscheck: the brute-force oracle has no star mode");
        } else {
            TreeDecision d = decide_tree(family, cs);
            engine_feasible = d.feasible();
            if (engine_feasible && !verify_tree(d.witness->tree, family).ok) {
                disagreements.push_back(seed);
                continue;
            }
            oracle_feasible = oracle::brute_force_tree_decide(family).feasible();
        }
        if (engine_feasible != oracle_feasible) disagreements.push_back(seed);
    }
    std::ostringstream report;
    report << "{\n  \"checked\": " << seeds << ",\n  \"agreement\": "
           << (disagreements.empty() ? "true" : "false") << ",\n  \"disagreements\": [";
    for (std::size_t k = 0; k < disagreements.size(); ++k)
        report << (k ? ", " : "") << disagreements[k];
    report << "]\n}\n";
    write_output(output, report.str());
    return disagreements.empty() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Interval-constrained realization of pairwise distances by weighted "
                 "graphs and trees"};
    app.require_subcommand(1);

    std::string input, output, witness_path, instance_path;
    std::string strategy = "topology";
    bool emit_certificate = false;
    int n = 4, seeds = 50;
    std::string variant;

    CLI::App* decide = app.add_subcommand("decide", "decide an instance file and emit a result");
    decide->add_option("--input", input, "instance JSON file")->required();
    decide->add_option("--output", output, "result path (default: stdout)");
    decide->add_option("--strategy", strategy, "candidate enumeration: topology|raw")
        ->check(CLI::IsMember({"topology", "raw"}));
    decide->add_flag("--emit-certificate", emit_certificate,
                     "embed constraint systems with infeasibility certificates");

    CLI::App* verify = app.add_subcommand("verify", "re-check a witness against an instance");
    verify->add_option("witness", witness_path, "witness JSON file")->required();
    verify->add_option("instance", instance_path, "instance JSON file")->required();
    verify->add_option("--output", output, "report path (default: stdout)");

    CLI::App* crosscheck =
        app.add_subcommand("crosscheck", "compare the decision engine with the brute-force oracle");
    crosscheck->add_option("--n", n, "point count (oracle limit: 6)")->required();
    crosscheck->add_option("--variant", variant, "problem variant")->required();
    crosscheck->add_option("--seeds", seeds, "number of seeded instances");
    crosscheck->add_option("--strategy", strategy, "candidate enumeration: topology|raw")
        ->check(CLI::IsMember({"topology", "raw"}));
    crosscheck->add_option("--output", output, "report path (default: stdout)");

    try {
        app.parse(argc, argv);
        if (decide->parsed()) return run_decide(input, output, strategy, emit_certificate);
        if (verify->parsed()) return run_verify(witness_path, instance_path, output);
        return run_crosscheck(n, variant, seeds, strategy, output);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const distrange::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
