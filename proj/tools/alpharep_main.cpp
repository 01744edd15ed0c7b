#include "alpharep/io.hpp"
#include "alpharep/selftest.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>

using namespace alpharep;

namespace {

unsigned default_workers() {
    if (const char* env = std::getenv("ALPHAREP_WORKERS")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v >= 1 && v <= 1024) return static_cast<unsigned>(v);
    }
    return 1;
}

struct CmdConfig {
    std::string input;
    std::string field_spec;
    std::string method;
    unsigned workers = default_workers();
    unsigned long long budget = 100'000'000ULL;
    bool as_json = false;
};

RepresentedMatroid load_input_matroid(const CmdConfig& cfg) {
    json j = load_json_file(cfg.input);
    if (looks_like_graph(j)) {
        if (cfg.field_spec.empty())
            throw input_error("graph inputs need --field");
        return RepresentedMatroid::from_graph(load_graph(j),
                                              FieldCtx::from_spec(cfg.field_spec));
    }
    std::optional<FieldCtx> force;
    if (!cfg.field_spec.empty()) force = FieldCtx::from_spec(cfg.field_spec);
    return load_matroid(j, force);
}

EvalOptions eval_options(const CmdConfig& cfg) {
    EvalOptions opts;
    opts.workers = cfg.workers;
    opts.budget = cfg.budget;
    return opts;
}

void print_tally_human(const TermTally& t) {
    std::cout << "tally:";
    for (const auto& [key, n] : t.counts)
        std::cout << " (" << key.first << "," << (key.second > 0 ? "+" : "-") << ")=" << n;
    std::cout << " skipped_odd=" << t.skipped_odd << "\n";
}

void emit(const json& out, const CmdConfig& cfg) {
    if (cfg.as_json) std::cout << out.dump() << "\n";
}

int run_chi(const CmdConfig& cfg) {
    RepresentedMatroid m = load_input_matroid(cfg);
    json out;
    out["command"] = "chi";
    out["field"] = m.field().spec();
    out["method"] = cfg.method;
    out["input"] = cfg.input;
    if (cfg.method == "whitney") {
        long long v = m.chi_whitney(m.field().q());
        out["value"] = std::to_string(v);
        if (!cfg.as_json)
            std::cout << "chi(" << m.field().q() << ") = " << v << "\n";
    } else {
        EvalResult res = eval_main1(m, eval_options(cfg));
        out["value"] = to_string(res.value);
        out["tally"] = tally_to_json(res.tally);
        out["terms"] = res.tally.total();
        if (!cfg.as_json) {
            std::cout << "chi(" << m.field().q() << ") = " << to_string(res.value)
                      << "  [" << res.tally.total() << " weight vectors]\n";
            print_tally_human(res.tally);
        }
    }
    emit(out, cfg);
    return 0;
}

int run_flow(const CmdConfig& cfg) {
    RepresentedMatroid m = load_input_matroid(cfg);
    json out;
    out["command"] = "flow";
    out["field"] = m.field().spec();
    out["method"] = cfg.method;
    out["input"] = cfg.input;
    if (cfg.method == "direct") {
        long long v = m.flow_count(cfg.budget);
        out["value"] = std::to_string(v);
        if (!cfg.as_json)
            std::cout << "nowhere-zero flows over F_" << m.field().q() << ": " << v << "\n";
    } else {
        EvalResult res = eval_main3(m, eval_options(cfg));
        out["value"] = to_string(res.value);
        out["tally"] = tally_to_json(res.tally);
        out["terms"] = res.tally.total();
        if (!cfg.as_json) {
            std::cout << "dual chi(" << m.field().q() << ") = " << to_string(res.value)
                      << "  [" << res.tally.total() << " weight vectors]\n";
            print_tally_human(res.tally);
        }
    }
    emit(out, cfg);
    return 0;
}

int run_tait(const CmdConfig& cfg) {
    CubicPlanarGraph g = load_embedded_graph(load_json_file(cfg.input));
    json out;
    out["command"] = "tait";
    out["method"] = cfg.method;
    out["input"] = cfg.input;
    if (cfg.method == "direct") {
        long long v = tait_count_direct(g);
        out["value"] = std::to_string(v);
        if (!cfg.as_json) std::cout << "Tait colorings: " << v << "\n";
    } else if (cfg.method == "heawood") {
        long long v = heawood_count(g, cfg.budget);
        out["value"] = std::to_string(v);
        if (!cfg.as_json) std::cout << "Tait colorings: " << v << "\n";
    } else {
        TaitEvalResult res = eval_tait_alpha(g, eval_options(cfg));
        out["value"] = std::to_string(res.colorings);
        out["sum"] = to_string(res.sum);
        out["tally"] = tally_to_json(res.tally);
        out["terms"] = res.tally.total();
        if (!cfg.as_json) {
            std::cout << "Tait colorings: " << res.colorings
                      << "  (spin sum " << to_string(res.sum) << ", "
                      << res.tally.total() << " spin vectors)\n";
            print_tally_human(res.tally);
        }
    }
    emit(out, cfg);
    return 0;
}

int run_selftest_cmd(const std::string& level, const CmdConfig& cfg) {
    std::vector<CheckResult> checks = run_selftest(level == "full");
    int failed = 0;
    json arr = json::array();
    for (const CheckResult& c : checks) {
        if (!c.passed) ++failed;
        if (cfg.as_json) {
            json e;
            e["name"] = c.name;
            e["passed"] = c.passed;
            e["detail"] = c.detail;
            arr.push_back(e);
        } else {
            std::cout << (c.passed ? "[ok]   " : "[FAIL] ") << c.name;
            if (!c.detail.empty()) std::cout << " - " << c.detail;
            std::cout << "\n";
        }
    }
    if (cfg.as_json) {
        json out;
        out["command"] = "selftest";
        out["level"] = level;
        out["checks"] = arr;
        out["failed"] = failed;
        std::cout << out.dump() << "\n";
    } else {
        std::cout << checks.size() << " checks, " << failed << " failed\n";
    }
    return failed == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"characteristic polynomials of F_q-representable matroids and Tait\n"
                 "colorings of planar cubic graphs via quadratic-character sums"};
    app.require_subcommand(1);

    CmdConfig cfg;
    std::string level = "quick";
    std::string chi_method = "alpha", flow_method = "alpha3", tait_method = "alpha";

    auto add_common = [&](CLI::App* cmd, bool with_field) {
        cmd->add_option("input", cfg.input, "input JSON file")->required();
        if (with_field)
            cmd->add_option("--field", cfg.field_spec,
                            "field as \"p\" or \"p^d\" (odd prime p); overrides the file");
        cmd->add_option("--workers", cfg.workers, "worker thread count");
        cmd->add_option("--budget", cfg.budget, "enumeration term budget");
        cmd->add_flag("--json", cfg.as_json, "canonical JSON output");
    };

    CLI::App* chi = app.add_subcommand(
        "chi", "characteristic polynomial of a matroid at q");
    add_common(chi, true);
    chi->add_option("--method", chi_method, "whitney | alpha (default alpha)")
        ->check(CLI::IsMember({"whitney", "alpha"}));

    CLI::App* flow = app.add_subcommand(
        "flow", "nowhere-zero flow count / dual characteristic polynomial");
    add_common(flow, true);
    flow->add_option("--method", flow_method, "direct | alpha3 (default alpha3)")
        ->check(CLI::IsMember({"direct", "alpha3"}));

    CLI::App* tait = app.add_subcommand(
        "tait", "Tait 3-edge-colorings of an embedded cubic planar graph");
    add_common(tait, false);
    tait->add_option("--method", tait_method, "direct | heawood | alpha (default alpha)")
        ->check(CLI::IsMember({"direct", "heawood", "alpha"}));

    CLI::App* selftest = app.add_subcommand("selftest", "built-in verification suites");
    selftest->add_option("level", level, "quick | full")
        ->check(CLI::IsMember({"quick", "full"}));
    selftest->add_flag("--json", cfg.as_json, "canonical JSON output");
    selftest->add_option("--workers", cfg.workers, "worker thread count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (chi->parsed()) return run_chi(cfg);
        if (flow->parsed()) return run_flow(cfg);
        if (tait->parsed()) return run_tait(cfg);
        return run_selftest_cmd(level, cfg);
    } catch (const budget_error& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 2;
    } catch (const inapplicable_error& e) {
        std::cerr << "not applicable: " << e.what() << "\n";
        return 2;
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
