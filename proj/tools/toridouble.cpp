#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "toridouble/cli.hpp"

using namespace toridouble;

int main(int argc, char** argv) {
    CLI::App app{"Doubled-torus brane lifts, theta functions and Floer products"};
    std::string config_path, out_path, precision, format = "lines";
    double tol = 0;
    int max_radius = 0;
    unsigned jobs = 0;
    bool echo = false;
    app.add_option("--config", config_path, "configuration file")->required();
    app.add_option("--tol", tol, "absolute truncation tolerance");
    app.add_option("--max-radius", max_radius, "largest lattice shell per series")->check(CLI::PositiveNumber);
    app.add_option("--precision", precision, "double or dd")->check(CLI::IsMember({"double", "dd"}));
    app.add_option("--out", out_path, "write the report here instead of stdout");
    app.add_option("--format", format, "lines or summary")->check(CLI::IsMember({"lines", "summary"}));
    app.add_option("--jobs", jobs, "tasks run concurrently")->check(CLI::PositiveNumber);
    app.add_flag("--echo-config", echo, "print the normalized configuration and exit");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    JobConfig config;
    NumericConfig over;
    try {
        std::ifstream in(config_path);
        if (!in) throw ValidationError("cannot read " + config_path);
        std::stringstream ss;
        ss << in.rdbuf();
        config = parse_config(ss.str());
        if (app.count("--tol")) {
            if (!(tol > 0)) throw ValidationError("--tol must be positive");
            over.tol = tol;
        }
        if (app.count("--max-radius")) over.max_radius = max_radius;
        if (app.count("--precision")) over.precision = parse_precision(precision);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    if (echo) {
        std::cout << to_config_text(config);
        return 0;
    }

    NumericPolicy policy = resolve_policy(config.numeric, over);
    unsigned j = app.count("--jobs") ? jobs : config.numeric.jobs.value_or(1);
    std::vector<ReportRecord> records = run(config, policy, j);
    std::string text = emit_report(records, format == "summary" ? ReportFormat::summary : ReportFormat::lines);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot write " << out_path << "\n";
            return 2;
        }
        out << text;
    }
    return exit_code(records);
}
