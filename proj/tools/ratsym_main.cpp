// ratsym: exact Moebius-symmetry analysis of rational functions and their
// iterates.  Subcommands emit JSON reports with re-verifiable certificates.
#include "ratsym/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

using namespace ratsym;

struct CommonArgs {
    int kmax = 0; // 0 = derive from degree
    long budget = 0;
    std::string tower_spec;
    std::string out_path;
    bool assert_indecomposable = false;
    bool approx = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--kmax", args.kmax, "maximum iterate level");
    cmd->add_option("--budget", args.budget, "degree budget for iterates");
    cmd->add_option("--tower", args.tower_spec,
                    "preload tower generators, e.g. \"i,sqrt2,sqrt3\"");
    cmd->add_option("--out", args.out_path, "write the JSON report to a file");
    cmd->add_flag("--assert-indecomposable", args.assert_indecomposable,
                  "treat the input as indecomposable");
    cmd->add_flag("--approx", args.approx,
                  "add non-authoritative decimal renderings to the report");
}

EngineOptions engine_options(const CommonArgs& args) {
    EngineOptions opt;
    if (const char* env = std::getenv("RATSYM_BUDGET")) {
        long v = std::atol(env);
        if (v > 0) opt.degree_budget = v;
    }
    if (args.budget > 0) opt.degree_budget = args.budget;
    return opt;
}

Tower preload_tower(const std::string& spec, const EngineOptions& opt) {
    Tower t;
    if (spec.empty()) return t;
    std::size_t start = 0;
    while (start <= spec.size()) {
        std::size_t comma = spec.find(',', start);
        std::string item = spec.substr(start, comma == std::string::npos ? std::string::npos
                                                                         : comma - start);
        std::string g;
        for (char c : item)
            if (!std::isspace(static_cast<unsigned char>(c))) g += c;
        if (!g.empty()) {
            if (g == "i") {
                t = adjoin_imaginary(t, opt.tower_depth_cap).tower;
            } else if (g.rfind("sqrt", 0) == 0) {
                std::string num = g.substr(4);
                if (!num.empty() && num.front() == '(' && num.back() == ')')
                    num = num.substr(1, num.size() - 2);
                t = adjoin_sqrt(t, Int(num), opt.tower_depth_cap).tower;
            } else {
                throw UnknownSymbol(g);
            }
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return t;
}

void emit(const Json& report, const CommonArgs& args) {
    if (args.out_path.empty()) {
        std::cout << report.dump(2) << std::endl;
    } else {
        std::ofstream os(args.out_path);
        os << report.dump(2) << std::endl;
    }
}

int status_to_exit(const Json& report) {
    std::string status = report.value("status", "ok");
    if (status == "ok" || status == "infinite-power-map") return 0;
    return 3;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
            .count();
    }
};

int dispatch(const std::string& cmd, const std::vector<std::string>& exprs,
             const CommonArgs& args) {
    EngineOptions opt = engine_options(args);
    Timer timer;
    Tower tower = preload_tower(args.tower_spec, opt);

    if (cmd == "chebyshev") {
        int n = std::stoi(exprs.at(0));
        Poly t = chebyshev(n);
        Json j;
        j["command"] = "chebyshev";
        j["input"] = exprs.at(0);
        j["poly"] = t.str();
        j["status"] = "ok";
        j["wall_ms"] = timer.ms();
        emit(j, args);
        return 0;
    }
    if (cmd == "verify") {
        std::ifstream is(exprs.at(0));
        if (!is) {
            std::cerr << "cannot open report: " << exprs.at(0) << "\n";
            return 1;
        }
        Json report = Json::parse(is);
        int failures = verify_report(report, opt);
        Json j;
        j["command"] = "verify";
        j["input"] = exprs.at(0);
        j["failures"] = failures;
        j["status"] = failures == 0 ? "ok" : "failed";
        j["wall_ms"] = timer.ms();
        emit(j, args);
        return failures == 0 ? 0 : 1;
    }

    RatFunc a = parse_expression(exprs.at(0), tower, opt);
    ReportInputs in;
    in.command = cmd;
    in.input = exprs.at(0);
    in.approx = args.approx;
    const int kmax = args.kmax > 0 ? args.kmax : opt.default_kmax(a.degree());

    if (cmd == "analyze") {
        GroupReport rep = group_of(a, opt);
        in.tower = tower;
        in.wall_ms = timer.ms();
        Json j = make_analyze_report(in, a, rep, opt);
        emit(j, args);
        return status_to_exit(j);
    }
    if (cmd == "iterate-groups") {
        std::vector<IterateGroupReport> levels;
        for (int k = 1; k <= kmax; ++k) levels.push_back(iterate_group(a, k, opt));
        in.tower = tower;
        in.wall_ms = timer.ms();
        Json j = make_iterate_groups_report(in, a, levels);
        emit(j, args);
        return status_to_exit(j);
    }
    if (cmd == "sigma-infinity") {
        LimitGroupResult res = sigma_infinity(a, kmax, opt, args.assert_indecomposable);
        in.tower = tower;
        in.wall_ms = timer.ms();
        Json j = make_limit_report(in, "sigma_infinity", res);
        emit(j, args);
        return status_to_exit(j);
    }
    if (cmd == "aut-infinity") {
        LimitGroupResult res = aut_infinity(a, kmax, opt);
        in.tower = tower;
        in.wall_ms = timer.ms();
        Json j = make_limit_report(in, "aut_infinity", res);
        emit(j, args);
        return status_to_exit(j);
    }
    if (cmd == "s-set") {
        std::vector<SElement> elems = s_set(a, kmax, opt);
        in.tower = tower;
        in.wall_ms = timer.ms();
        Json j = make_s_set_report(in, elems);
        emit(j, args);
        return status_to_exit(j);
    }
    if (cmd == "axis-group") {
        SpherePoint z0 = parse_point(exprs.at(1), tower, opt);
        SpherePoint z1 = parse_point(exprs.at(2), tower, opt);
        Seq0Result seq = seq0_check(a, z0, z1, kmax, opt);
        in.tower = tower;
        in.wall_ms = timer.ms();
        Json j = make_axis_report(in, z0, z1, seq);
        emit(j, args);
        return status_to_exit(j);
    }
    if (cmd == "shares-iterate") {
        Tower tb = tower;
        RatFunc b = parse_expression(exprs.at(1), tb, opt);
        auto k = shares_iterate(a, b, kmax, opt);
        Json j;
        j["command"] = "shares-iterate";
        j["input"] = exprs.at(0);
        j["other"] = exprs.at(1);
        j["kmax"] = kmax;
        if (k)
            j["level"] = *k;
        else
            j["level"] = nullptr;
        j["status"] = "ok";
        j["wall_ms"] = timer.ms();
        emit(j, args);
        return 0;
    }
    if (cmd == "normal-form") {
        if (!a.is_polynomial()) {
            std::cerr << "normal-form expects a polynomial\n";
            return 1;
        }
        NormalFormResult nf = normal_form(a.num(), opt);
        Json j;
        j["command"] = "normal-form";
        j["input"] = exprs.at(0);
        j["tower"] = tower_to_json(merge_towers(tower, nf.poly.tower()));
        j["poly"] = nf.poly.str();
        j["mu"] = moebius_to_json(nf.mu, args.approx);
        j["status"] = "ok";
        j["wall_ms"] = timer.ms();
        emit(j, args);
        return 0;
    }
    std::cerr << "unknown command: " << cmd << "\n";
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Moebius symmetry groups of rational functions and their iterates"};
    app.require_subcommand(1);

    struct Sub {
        std::string name;
        std::string help;
        int positional;
        std::vector<std::string> labels;
    };
    const std::vector<Sub> subs = {
        {"analyze", "G(A), Sigma(A), Aut(A), Ghat(A) with certificates", 1, {"expr"}},
        {"iterate-groups", "groups of A^(k) for k = 1..kmax", 1, {"expr"}},
        {"sigma-infinity", "the limit group of fiber symmetries", 1, {"expr"}},
        {"aut-infinity", "the limit group of commuting symmetries", 1, {"expr"}},
        {"s-set", "union of Ghat(A^(k)) with inclusion checks", 1, {"expr"}},
        {"axis-group", "G(A, z0, z1) and its level independence", 3, {"expr", "z0", "z1"}},
        {"shares-iterate", "least level at which two functions agree", 2, {"expr", "other"}},
        {"chebyshev", "Chebyshev polynomial T_n", 1, {"n"}},
        {"normal-form", "affine normal form of a polynomial", 1, {"expr"}},
        {"verify", "re-verify every certificate in a report", 1, {"report.json"}},
    };

    std::map<std::string, std::vector<std::string>> positionals;
    std::map<std::string, CommonArgs> common;
    for (const auto& sub : subs) {
        CLI::App* cmd = app.add_subcommand(sub.name, sub.help);
        auto& vals = positionals[sub.name];
        cmd->add_option("args", vals, "arguments")->expected(sub.positional);
        add_common(cmd, common[sub.name]);
    }

    CLI11_PARSE(app, argc, argv);

    CLI::App* picked = app.get_subcommands().front();
    const std::string name = picked->get_name();
    try {
        return dispatch(name, positionals[name], common[name]);
    } catch (const DegreeBudgetExceeded& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return 2;
    } catch (const ClosureCapExceeded& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
