// Command-line entry point: run named verification suites over the shipped
// algebra presentations and print a text or JSON report.

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "voa/report.hpp"

int main(int argc, char** argv) {
    CLI::App app{"voacheck - OPE and character identity verification suites"};
    app.set_config("--config");

    std::string suite;
    std::string format = "text";
    std::string check;
    std::string params;
    voa::SuiteConfig cfg;
    app.add_option("--suite", suite,
                   "suite name (validate-presentations, ope-lc, limit-a-infinity, "
                   "realize-small-n4, reduce-first, reduce-second, char) or 'all'")
        ->required();
    app.add_option("--order", cfg.order, "q-series truncation order")->capture_default_str();
    app.add_option("--check", check,
                   "char sub-check (branching, small-n4, qhr1, qhr2, limit, sch, pbw)");
    app.add_option("--params", params, "comma-separated specializations, e.g. k=1/2,a=2");
    app.add_option("--jobs", cfg.jobs, "parallel workers for per-triple checks")
        ->capture_default_str();
    app.add_option("--max-weight", cfg.max_weight, "highest-weight vector bound")
        ->capture_default_str();
    app.add_option("--format", format, "text or json")->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    cfg.check = check;
    if (!params.empty()) {
        std::stringstream in(params);
        std::string part;
        while (std::getline(in, part, ',')) {
            auto eq = part.find('=');
            if (eq == std::string::npos) {
                std::cerr << "bad --params entry: " << part << "\n";
                return 2;
            }
            std::string name = part.substr(0, eq), value = part.substr(eq + 1);
            auto slash = value.find('/');
            voa::Rat r = slash == std::string::npos
                             ? voa::Rat(value)
                             : voa::Rat(value.substr(0, slash)) /
                                   voa::Rat(value.substr(slash + 1));
            cfg.params[name] = r;
        }
    }

    std::vector<std::string> suites;
    if (suite == "all")
        suites = voa::suite_names();
    else
        suites.push_back(suite);

    bool all_ok = true;
    for (const auto& s : suites) {
        voa::SuiteReport report = voa::run_suite(s, cfg);
        if (format == "json")
            std::cout << voa::render_json(report);
        else
            std::cout << voa::render_text(report);
        all_ok = all_ok && report.passed();
    }
    return all_ok ? 0 : 1;
}
