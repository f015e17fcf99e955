#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <sojourn/cli.hpp>

namespace {

struct Args {
    std::string config;
    std::string output = "-";
    bool check_integral = false;
    bool experimental = false;
    bool quiet = false;
};

void add_common(CLI::App* sub, Args& a) {
    sub->add_option("--config", a.config, "JSON problem description")->required();
    sub->add_option("--output", a.output, "CSV destination, '-' for stdout");
    sub->add_flag("--quiet", a.quiet, "suppress diagnostics on stderr");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Laplace transforms of sojourn and local times of one-dimensional diffusions"};
    app.require_subcommand(1);
    Args a;
    const std::pair<const char*, const char*> commands[] = {
        {"transform", "phi over an (x, lambda) grid"},
        {"joint", "psi over an (x, y, lambda) grid"},
        {"localtime", "local-time transform over an (x, lambda) grid"},
        {"invert", "E_x exp(-<mu, T_t>) by Gaver-Stehfest inversion"},
        {"mc", "Monte Carlo estimate of the same expectation"},
        {"compare", "inversion against Monte Carlo with a PASS/FAIL verdict"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        add_common(sub, a);
        if (std::string(name) == "joint")
            sub->add_flag("--check-integral", a.check_integral, "append the residual of the integral over y against phi");
        if (std::string(name) == "invert")
            sub->add_flag("--experimental", a.experimental, "distribution function of the total sojourn by a second inversion");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    std::ifstream in(a.config, std::ios::binary);
    if (!in) {
        if (!a.quiet) std::cerr << "config error: cannot read " << a.config << "\n";
        return 2;
    }
    std::stringstream text;
    text << in.rdbuf();

    sojourn::cli::Options opts;
    opts.check_integral = a.check_integral;
    opts.experimental = a.experimental;
    opts.quiet = a.quiet;
    opts.threads = sojourn::cli::threads_from_env();

    const auto out = sojourn::cli::run(command, text.str(), opts);
    if (out.exit_code == 2 || out.exit_code == 3) {
        if (!a.quiet) std::cerr << out.message << "\n";
        return out.exit_code;
    }
    if (a.output == "-") {
        sojourn::cli::write_csv(std::cout, out.table);
    } else {
        std::ofstream f(a.output, std::ios::binary);
        if (!f) {
            if (!a.quiet) std::cerr << "cannot write " << a.output << "\n";
            return 2;
        }
        sojourn::cli::write_csv(f, out.table);
    }
    if (!out.message.empty() && !a.quiet) std::cerr << out.message << "\n";
    return out.exit_code;
}
