#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "hyperbound/cli.hpp"

namespace {

void add_common(CLI::App* sub, hyperbound::RunConfig& cfg, bool single_n) {
    if (single_n) {
        sub->add_option("--n", cfg.n, "dimension n")->required()->check(CLI::PositiveNumber);
        sub->add_option("--kappa", cfg.kappa, "tower height (default n)")->check(CLI::PositiveNumber);
    }
    sub->add_option("--weights", cfg.weights, "'geometric' (a_i = n^(kappa-i)) or a comma separated list")
        ->capture_default_str();
    sub->add_option("--delta", cfg.delta, "exact rational 'p/q' or 'canonical' for 1/(35 n^n)")->capture_default_str();
    sub->add_option("--windows", cfg.windows, "t-window overrides lo:hi,... one per t variable");
    sub->add_option("--budget", cfg.budget, "work budget (overrides HYPERBOUND_BUDGET)");
    static const std::map<std::string, hyperbound::OutputFormat> formats{{"json", hyperbound::OutputFormat::json},
                                                                          {"csv", hyperbound::OutputFormat::csv}};
    sub->add_option("--format", cfg.format, "json or csv")->transform(CLI::CheckedTransformer(formats));
    sub->add_option("--out", cfg.out_path, "output file (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact intersection polynomials, degree thresholds and certificates"};
    app.require_subcommand(1);
    hyperbound::RunConfig cfg;

    const std::pair<const char*, const char*> singles[] = {
        {"polynomial", "compute I(d) by per-coefficient Cauchy sums"},
        {"tilde", "closed-form I~(d), lambda~ and its threshold"},
        {"bound", "d0 of I(d) against the theorem bounds"},
        {"verify", "hypotheses and all certificates"},
    };
    for (const auto& [name, help] : singles) add_common(app.add_subcommand(name, help), cfg, true);
    CLI::App* sweep = app.add_subcommand("sweep", "bound and verify for every n in a range, in parallel");
    add_common(sweep, cfg, false);
    sweep->add_option("--n-from", cfg.n_from, "first n")->required()->check(CLI::PositiveNumber);
    sweep->add_option("--n-to", cfg.n_to, "last n")->required()->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    cfg.command = hyperbound::parse_command(app.get_subcommands().front()->get_name());
    return hyperbound::run(cfg, std::cout, std::cerr);
}
