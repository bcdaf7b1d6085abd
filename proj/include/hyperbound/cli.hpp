#ifndef HYPERBOUND_CLI_HPP
#define HYPERBOUND_CLI_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperbound/bounds.hpp"

namespace hyperbound {

enum class Command { polynomial, tilde, bound, verify, sweep };
enum class OutputFormat { json, csv };

Command parse_command(const std::string& name);

struct RunConfig {
    Command command = Command::verify;
    int n = 2;
    std::optional<int> kappa;  // defaults to n
    std::string weights = "geometric";
    std::string delta = "0";
    /// "lo:hi" per t-variable, comma separated; empty keeps the default.
    std::string windows;
    std::optional<std::size_t> budget;
    OutputFormat format = OutputFormat::json;
    std::string out_path;  // empty means stdout
    int n_from = 2;        // sweep only
    int n_to = 4;
};

/// Explicit flag, then the HYPERBOUND_BUDGET environment value, then the
/// default. Throws std::invalid_argument on a malformed environment value.
std::size_t resolve_budget(const std::optional<std::size_t>& flag, const char* env_value);

/// "geometric" or a comma separated list of positive integers.
WeightVector parse_weights(const std::string& text, int n, int kappa);
/// "canonical" for 1/(35 n^n), otherwise an exact rational literal.
Rational parse_delta(const std::string& text, int n);
std::vector<Window> parse_windows(const std::string& text, int kappa);

Parameters make_parameters(const RunConfig& config, int n);

struct Report {
    nlohmann::ordered_json json;
    /// 0 all checks pass or skipped, 2 some check failed.
    int exit_code = 0;
};

/// Deterministic: identical configs give identical reports.
Report execute(const RunConfig& config);

std::string serialize(const Report& report, OutputFormat format);

/// execute + serialize + write; returns the process exit code (1 on error).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace hyperbound

#endif  // HYPERBOUND_CLI_HPP
