// splicesig: validate splice diagrams, report S(Gamma) and signature
// invariants, export the signature step function, check the average
// signature identity, generate random diagrams and run identity self-tests.
//
// Exit codes: 0 success, 1 semantic failure, 2 I/O or usage error.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "splice/splice.hpp"

namespace {

using splice::ordered_json;
using splice::Rational;

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw IoError("cannot write '" + path + "'");
}

splice::SpliceDiagram load(const std::string& path) {
    const std::string text = read_file(path);
    try {
        return splice::parse_diagram(text);
    } catch (const splice::DomainError& e) {
        // Constructor-level rejections (e.g. self-loops) are also malformed input.
        throw splice::ParseError(e.what());
    }
}

// Runs job(i) for i in [0, n) on at most `jobs` threads; results are stored
// by index by the caller, so output order never depends on scheduling.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& job) {
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (unsigned t = 0; t < jobs; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    job(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

ordered_json validation_json(const splice::ValidationReport& v) {
    ordered_json j;
    j["valid"] = v.valid();
    j["errors"] = v.structural_errors;
    j["bad_leaves"] = v.bad_leaves;
    j["almost_minimal"] = v.is_almost_minimal;
    j["link"] = v.is_link;
    j["nonzero_arrowheads"] = v.arrowhead_count_nonzero;
    return j;
}

ordered_json breakdown_json(const splice::SGammaBreakdown& b) {
    ordered_json j;
    j["linking"] = b.linking.str();
    j["nodes"] = b.nodes.str();
    j["leaves"] = b.leaves.str();
    j["edges"] = b.edges.str();
    j["arrowheads"] = b.arrowheads.str();
    j["total"] = b.total.str();
    return j;
}

ordered_json theorem_json(const splice::TheoremReport& r) {
    ordered_json j;
    if (r.is_skipped()) {
        j["status"] = "skipped";
        j["reason"] = std::string(splice::to_string(r.skipped));
    } else {
        j["status"] = r.holds ? "holds" : "fails";
        j["reason"] = nullptr;
        j["expected_average"] = (-r.breakdown->total / Rational(3)).str();
    }
    return j;
}

std::string step_csv(const splice::StepFunction& f, bool approx) {
    std::ostringstream os;
    os << "x_start,x_end,value" << (approx ? ",x_start_approx,x_end_approx" : "") << "\n";
    Rational left(0);
    for (std::size_t k = 0; k < f.values.size(); ++k) {
        const Rational right = k < f.breakpoints.size() ? f.breakpoints[k] : Rational(1);
        os << left.str() << "," << right.str() << "," << f.values[k].str();
        if (approx) os << "," << left.to_double() << "," << right.to_double();
        os << "\n";
        left = right;
    }
    return os.str();
}

std::string print_validation(const splice::ValidationReport& v) {
    std::ostringstream os;
    os << (v.valid() ? "valid" : "invalid") << "\n";
    for (const auto& e : v.structural_errors) os << "  error: " << e << "\n";
    for (const auto& l : v.bad_leaves) os << "  bad leaf: " << l << "\n";
    if (v.valid()) {
        os << "  almost minimal: " << (v.is_almost_minimal ? "yes" : "no") << "\n";
        os << "  link: " << (v.is_link ? "yes" : "no (multilink)") << "\n";
        os << "  arrowheads with non-zero multiplicity: " << v.arrowhead_count_nonzero << "\n";
    }
    return os.str();
}

// ---- commands ---------------------------------------------------------------

int cmd_validate(const std::string& path, bool json) {
    const auto d = load(path);
    const auto v = splice::validate(d);
    if (json) {
        ordered_json j;
        j["input"] = path;
        j["validation"] = validation_json(v);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << print_validation(v);
    }
    return v.valid() ? kOk : kFail;
}

struct InvariantOptions {
    bool json = false;
    std::string csv;
    bool approx = false;
    bool timing = false;
};

int cmd_invariants(const std::string& path, const InvariantOptions& opt) {
    const auto start = std::chrono::steady_clock::now();
    const auto d = load(path);
    const auto v = splice::validate(d);
    ordered_json j;
    j["input"] = path;
    j["validation"] = validation_json(v);
    if (!v.valid() || v.arrowhead_count_nonzero == 0) {
        if (v.valid()) j["error"] = "no arrowhead of non-zero multiplicity";
        if (opt.json)
            std::cout << j.dump(2) << "\n";
        else
            std::cerr << print_validation(v) << (v.valid() ? "no arrowhead of non-zero multiplicity\n" : "");
        return kFail;
    }

    const auto b = splice::s_gamma(d);
    const auto avg = splice::average_signature_both(d);
    const auto thm = splice::check_main_theorem(d);
    j["s_gamma"] = breakdown_json(b);
    j["average_signature"] = {{"integral", avg.by_integral.str()}, {"dedekind", avg.by_dedekind.str()}};
    if (opt.approx) j["average_signature"]["approx"] = avg.by_integral.to_double();
    j["breakpoints"] = avg.breakpoints;
    j["theorem"] = theorem_json(thm);
    if (!opt.csv.empty()) write_file(opt.csv, step_csv(splice::signature_function(d), opt.approx));
    if (opt.timing)
        j["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (opt.json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "S(Gamma) = " << b.total << "\n"
                  << "  linking    " << b.linking << "\n"
                  << "  nodes      " << b.nodes << "\n"
                  << "  leaves     " << b.leaves << "\n"
                  << "  edges      " << b.edges << "\n"
                  << "  arrowheads " << b.arrowheads << "\n"
                  << "average signature = " << avg.by_integral << " (integral), " << avg.by_dedekind
                  << " (Dedekind sums)\n"
                  << "breakpoints: " << avg.breakpoints << "\n"
                  << "theorem: " << j["theorem"]["status"].get<std::string>();
        if (thm.is_skipped()) std::cout << " (" << splice::to_string(thm.skipped) << ")";
        std::cout << "\n";
        if (opt.timing) std::cout << "wall time: " << j["wall_time_s"].get<double>() << " s\n";
    }
    return thm.failed() ? kFail : kOk;
}

int cmd_signature(const std::string& path, const std::string& csv, bool approx) {
    const auto d = load(path);
    const auto v = splice::validate(d);
    if (!v.valid() || v.arrowhead_count_nonzero == 0) {
        std::cerr << print_validation(v) << (v.valid() ? "no arrowhead of non-zero multiplicity\n" : "");
        return kFail;
    }
    const std::string text = step_csv(splice::signature_function(d), approx);
    if (csv.empty() || csv == "-")
        std::cout << text;
    else
        write_file(csv, text);
    return kOk;
}

struct CheckOptions {
    std::string path;
    std::size_t random = 0;
    std::uint64_t seed = 0;
    std::size_t nodes = 5;
    unsigned jobs = 0;
    bool json = false;
    bool timing = false;
};

int check_file(const CheckOptions& opt) {
    const auto d = load(opt.path);
    const auto v = splice::validate(d);
    if (!v.valid()) {
        std::cerr << print_validation(v);
        return kFail;
    }
    const auto r = splice::check_main_theorem(d);
    if (opt.json) {
        ordered_json j;
        j["input"] = opt.path;
        j["theorem"] = theorem_json(r);
        if (r.breakdown) j["s_gamma"] = r.breakdown->total.str();
        if (r.average) j["average"] = r.average->by_integral.str();
        std::cout << j.dump(2) << "\n";
    } else if (r.is_skipped()) {
        std::cout << "skipped: " << splice::to_string(r.skipped) << "\n";
    } else {
        std::cout << (r.holds ? "holds" : "FAILS") << ": average " << r.average->by_integral << ", -S/3 = "
                  << (-r.breakdown->total / Rational(3)) << "\n";
        if (!r.holds) std::cout << splice::serialize(d);
    }
    return r.failed() ? kFail : kOk;
}

int check_random(const CheckOptions& opt) {
    const auto start = std::chrono::steady_clock::now();
    struct Outcome {
        splice::SpliceDiagram diagram;
        splice::TheoremReport report;
        std::string error;
    };
    std::vector<Outcome> out(opt.random);
    const unsigned jobs = opt.jobs ? opt.jobs : std::max(1u, std::thread::hardware_concurrency());
    parallel_for(opt.random, jobs, [&](std::size_t i) {
        Outcome& o = out[i];
        o.diagram = splice::generate_random(opt.seed + i, opt.nodes);
        try {
            o.report = splice::check_main_theorem(o.diagram);
        } catch (const std::exception& e) {
            o.error = e.what();
        }
    });

    std::size_t held = 0, skipped = 0, failed = 0;
    ordered_json failures = ordered_json::array();
    for (std::size_t i = 0; i < out.size(); ++i) {
        const Outcome& o = out[i];
        if (o.error.empty() && o.report.is_skipped()) {
            ++skipped;
        } else if (o.error.empty() && o.report.holds) {
            ++held;
        } else {
            ++failed;
            ordered_json f;
            f["seed"] = opt.seed + i;
            if (!o.error.empty()) f["error"] = o.error;
            if (o.report.breakdown) f["s_gamma"] = o.report.breakdown->total.str();
            if (o.report.average) f["average"] = o.report.average->by_integral.str();
            f["diagram"] = splice::to_json(o.diagram);
            failures.push_back(std::move(f));
        }
    }
    ordered_json j;
    j["seed"] = opt.seed;
    j["count"] = opt.random;
    j["nodes"] = opt.nodes;
    j["held"] = held;
    j["skipped"] = skipped;
    j["failed"] = failed;
    j["failures"] = failures;
    if (opt.timing) j["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (opt.json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "checked " << opt.random << " diagrams (seeds " << opt.seed << ".." << opt.seed + opt.random - 1
                  << "): " << held << " held, " << skipped << " skipped, " << failed << " failed\n";
        for (const auto& f : failures) std::cout << "counterexample:\n" << f.dump(2) << "\n";
        if (opt.timing) std::cout << "wall time: " << j["wall_time_s"].get<double>() << " s\n";
    }
    return failed ? kFail : kOk;
}

int cmd_generate(std::uint64_t seed, std::size_t nodes, std::size_t count) {
    if (count <= 1) {
        std::cout << splice::serialize(splice::generate_random(seed, nodes));
        return kOk;
    }
    ordered_json all = ordered_json::array();
    for (std::size_t i = 0; i < count; ++i) all.push_back(splice::to_json(splice::generate_random(seed + i, nodes)));
    std::cout << all.dump(2) << "\n";
    return kOk;
}

// ---- self-test --------------------------------------------------------------

int cmd_selftest(std::int64_t max_q, std::uint64_t seed) {
    using splice::Integer;
    std::mt19937_64 rng(seed);
    auto uniform = [&](std::int64_t lo, std::int64_t hi) { return splice::detail::uniform(rng, lo, hi); };
    bool all_ok = true;
    auto report = [&](const std::string& name, std::size_t cases, std::size_t bad) {
        std::cout << (bad ? "FAIL " : "PASS ") << name << " (" << cases << " cases";
        if (bad) std::cout << ", " << bad << " mismatches";
        std::cout << ")\n";
        all_ok = all_ok && bad == 0;
    };

    {
        std::size_t cases = 0, bad = 0;
        for (std::int64_t q = 1; q <= max_q; ++q) {
            for (int k = 0; k < 200; ++k) {
                const Integer p = uniform(-3 * q, 3 * q);
                ++cases;
                if (splice::dedekind_sum_fast(p, q) != splice::dedekind_sum(p, q)) ++bad;
            }
        }
        report("fast evaluator equals naive sum for q <= " + std::to_string(max_q), cases, bad);
    }
    {
        std::size_t cases = 0, bad = 0;
        const std::int64_t top = std::min<std::int64_t>(max_q, 500);
        for (std::int64_t q = 2; q <= top; ++q) {
            for (std::int64_t p = 1; p < q; ++p) {
                if (std::gcd(p, q) != 1) continue;
                ++cases;
                const Rational lhs = Rational(12) * (splice::dedekind_sum(p, q) + splice::dedekind_sum(q, p));
                if (lhs != splice::reciprocity_defect(p, q)) ++bad;
            }
        }
        report("reciprocity for coprime p < q <= " + std::to_string(top), cases, bad);
    }
    {
        std::size_t cases = 0, bad = 0;
        while (cases < 1000) {
            const std::int64_t p = uniform(1, 300), q = uniform(1, 300), u = uniform(1, 300), v = uniform(1, 300);
            if (std::gcd(p, q) != 1 || std::gcd(u, v) != 1) continue;
            ++cases;
            if (!splice::three_term_check(p, q, u, v)) ++bad;
        }
        report("three-term law", cases, bad);
    }
    {
        std::size_t cases = 0, bad = 0;
        for (int k = 0; k < 1000; ++k) {
            const std::int64_t q = uniform(1, 200), p = uniform(-1000, 1000), a = uniform(1, 20), t = uniform(-20, 20);
            ++cases;
            const Rational s = splice::dedekind_sum(p, q);
            if (splice::dedekind_sum(a * p, a * q) != s) ++bad;
            if (splice::dedekind_sum(-p, q) != -s) ++bad;
            if (splice::dedekind_sum(p + t * q, q) != s) ++bad;
            if (std::gcd(p, q) == 1) {
                const Integer inv = splice::mod_inverse(p, q);
                if (splice::dedekind_sum(inv, q) != s) ++bad;
            }
        }
        report("scaling, sign, periodicity and inverse identities", cases, bad);
    }
    {
        std::size_t cases = 0, bad = 0;
        for (int k = 0; k < 1000; ++k) {
            const Rational x(Integer(uniform(-10000, 10000)), Integer(uniform(1, 500)));
            const std::int64_t n = uniform(-50, 50);
            ++cases;
            if (splice::sawtooth(-x) != -splice::sawtooth(x)) ++bad;
            if (splice::sawtooth(x + Rational(n)) != splice::sawtooth(x)) ++bad;
        }
        report("sawtooth oddness and periodicity", cases, bad);
    }
    return all_ok ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Splice diagram invariants: S(Gamma), signature step function, average signature"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Expand all help");

    std::string path, csv;
    bool json = false, approx = false, timing = false;

    auto* validate = app.add_subcommand("validate", "Check structure, bad leaves and link status");
    validate->add_option("path", path, "Diagram JSON file")->required();
    validate->add_flag("--json", json, "Emit a JSON report");

    auto* invariants = app.add_subcommand("invariants", "Report S(Gamma), average signature and theorem verdict");
    invariants->add_option("path", path, "Diagram JSON file")->required();
    invariants->add_flag("--json", json, "Emit a JSON report");
    invariants->add_option("--csv", csv, "Also write the step function as CSV to this path");
    invariants->add_flag("--approx", approx, "Add non-authoritative decimal approximations");
    invariants->add_flag("--timing", timing, "Include wall time (makes output non-reproducible)");

    auto* signature = app.add_subcommand("signature", "Export the signature step function as CSV");
    signature->add_option("path", path, "Diagram JSON file")->required();
    signature->add_option("--csv", csv, "Output path (default: stdout)");
    signature->add_flag("--approx", approx, "Add non-authoritative decimal columns");

    CheckOptions check_opt;
    auto* check = app.add_subcommand("check", "Check average signature = -S(Gamma)/3");
    check->add_option("path", check_opt.path, "Diagram JSON file");
    auto* random_opt = check->add_option("--random", check_opt.random, "Check N generated diagrams instead of a file")
                           ->check(CLI::PositiveNumber);
    check->add_option("--seed", check_opt.seed, "First generator seed");
    check->add_option("--nodes", check_opt.nodes, "Node-count bound for generated diagrams")->check(CLI::PositiveNumber);
    check->add_option("--jobs", check_opt.jobs, "Worker threads (default: hardware concurrency)");
    check->add_flag("--json", check_opt.json, "Emit a JSON report");
    check->add_flag("--timing", check_opt.timing, "Include wall time (makes output non-reproducible)");

    std::uint64_t gen_seed = 0;
    std::size_t gen_nodes = 5, gen_count = 1;
    auto* generate = app.add_subcommand("generate", "Print random diagrams");
    generate->add_option("--seed", gen_seed, "Seed");
    generate->add_option("--nodes", gen_nodes, "Node-count bound")->check(CLI::PositiveNumber);
    generate->add_option("--random", gen_count, "Number of diagrams (seeds seed, seed+1, ...)")
        ->check(CLI::PositiveNumber);

    std::int64_t max_q = 500;
    std::uint64_t selftest_seed = 1;
    bool identities = false;
    auto* selftest = app.add_subcommand("selftest", "Run the Dedekind-sum identity suite");
    selftest->add_flag("--identities", identities, "Run the identity suite (the default)");
    selftest->add_option("--max-q", max_q, "Largest modulus for the fast-vs-naive comparison")
        ->check(CLI::PositiveNumber);
    selftest->add_option("--seed", selftest_seed, "Seed for sampled cases");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*validate) return cmd_validate(path, json);
        if (*invariants) return cmd_invariants(path, {json, csv, approx, timing});
        if (*signature) return cmd_signature(path, csv, approx);
        if (*check) {
            if (random_opt->count() && !check_opt.path.empty()) {
                std::cerr << "check: give either a file or --random, not both\n";
                return kUsage;
            }
            if (random_opt->count()) return check_random(check_opt);
            if (check_opt.path.empty()) {
                std::cerr << "check: a diagram file or --random N is required\n";
                return kUsage;
            }
            return check_file(check_opt);
        }
        if (*generate) return cmd_generate(gen_seed, gen_nodes, gen_count);
        if (*selftest) return cmd_selftest(max_q, selftest_seed);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const splice::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
    return kUsage;
}
