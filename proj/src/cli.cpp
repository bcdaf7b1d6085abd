#include "hyperbound/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <future>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hyperbound {

using nlohmann::ordered_json;

Command parse_command(const std::string& name) {
    if (name == "polynomial") return Command::polynomial;
    if (name == "tilde") return Command::tilde;
    if (name == "bound") return Command::bound;
    if (name == "verify") return Command::verify;
    if (name == "sweep") return Command::sweep;
    throw std::invalid_argument("unknown command '" + name + "'");
}

namespace {

const char* command_name(Command c) {
    switch (c) {
        case Command::polynomial: return "polynomial";
        case Command::tilde: return "tilde";
        case Command::bound: return "bound";
        case Command::verify: return "verify";
        case Command::sweep: return "sweep";
    }
    return "?";
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep)) parts.push_back(cur);
    if (!text.empty() && text.back() == sep) parts.emplace_back();
    return parts;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

long parse_long(const std::string& s, const char* what) {
    long v = 0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    if (!s.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last) {
        throw std::invalid_argument(std::string("invalid ") + what + " '" + s + "'");
    }
    return v;
}

}  // namespace

std::size_t resolve_budget(const std::optional<std::size_t>& flag, const char* env_value) {
    if (flag) return *flag;
    if (env_value != nullptr && *env_value != '\0') {
        const long v = parse_long(trim(env_value), "HYPERBOUND_BUDGET");
        if (v <= 0) throw std::invalid_argument("HYPERBOUND_BUDGET must be positive");
        return static_cast<std::size_t>(v);
    }
    return kDefaultBudget;
}

WeightVector parse_weights(const std::string& text, int n, int kappa) {
    const std::string t = trim(text);
    if (t == "geometric") return Parameters::geometric(n, kappa, 0).a();
    std::vector<Integer> entries;
    for (const auto& part : split(t, ',')) {
        const std::string p = trim(part);
        Integer v;
        if (p.empty() || v.set_str(p, 10) != 0) throw std::invalid_argument("invalid weight '" + p + "'");
        entries.push_back(v);
    }
    if (entries.size() != static_cast<std::size_t>(kappa)) {
        throw std::invalid_argument("expected " + std::to_string(kappa) + " weights, got " +
                                    std::to_string(entries.size()));
    }
    return WeightVector(std::move(entries));
}

Rational parse_delta(const std::string& text, int n) {
    const std::string t = trim(text);
    if (t == "canonical") return Parameters::canonical_delta(n);
    return parse_rational(t);
}

std::vector<Window> parse_windows(const std::string& text, int kappa) {
    std::vector<Window> out;
    for (const auto& part : split(trim(text), ',')) {
        const auto colon = part.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("window '" + part + "' is not lo:hi");
        const long lo = parse_long(trim(part.substr(0, colon)), "window bound");
        const long hi = parse_long(trim(part.substr(colon + 1)), "window bound");
        if (lo > hi) throw std::invalid_argument("window '" + part + "' has lo > hi");
        out.push_back({lo, hi});
    }
    if (out.size() != static_cast<std::size_t>(kappa)) {
        throw std::invalid_argument("expected " + std::to_string(kappa) + " windows, got " + std::to_string(out.size()));
    }
    return out;
}

Parameters make_parameters(const RunConfig& config, int n) {
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    const int kappa = config.kappa.value_or(n);
    return Parameters(n, kappa, parse_weights(config.weights, n, kappa), parse_delta(config.delta, n));
}

namespace {

ordered_json integer_json(const Integer& x) {
    if (x.fits_slong_p()) return x.get_si();
    return to_string(x);
}

ordered_json rational_list(const std::vector<Rational>& xs) {
    ordered_json arr = ordered_json::array();
    for (const auto& x : xs) arr.push_back(to_string(x));
    return arr;
}

std::vector<Rational> conventional(const IntersectionPolynomial& p) {
    std::vector<Rational> out;
    for (int i = 0; i <= p.n(); ++i) out.push_back(p.conventional(i));
    return out;
}

ordered_json params_json(const Parameters& params) {
    ordered_json a = ordered_json::array();
    for (const auto& x : params.a().entries()) a.push_back(to_string(x));
    return {{"n", params.n()}, {"kappa", params.kappa()}, {"a", a}, {"delta", to_string(params.delta())}};
}

ordered_json check_json(const Check& c) {
    ordered_json j;
    j["name"] = c.name;
    j["lhs"] = c.lhs ? ordered_json(to_string(*c.lhs)) : ordered_json(nullptr);
    j["rel"] = to_string(c.rel);
    j["rhs"] = c.rhs ? ordered_json(to_string(*c.rhs)) : ordered_json(nullptr);
    j["status"] = to_string(c.status);
    if (c.status == CheckStatus::skipped) {
        j["skipped"] = c.note;
    } else {
        j["holds"] = c.status == CheckStatus::pass;
    }
    j["anchor"] = c.anchor;
    return j;
}

struct RunParts {
    bool polynomial = false;
    bool tilde = false;
    bool bound = false;
    bool verify = false;
};

Report single_run(const Parameters& params, const RunConfig& config, RunParts parts, std::size_t budget) {
    Report rep;
    ordered_json& j = rep.json;
    j["command"] = command_name(config.command);
    j["params"] = params_json(params);
    j["budget"] = budget;

    CertificateReport checks;
    std::optional<IntersectionPolynomial> I;
    std::string budget_note;
    if (parts.polynomial || parts.bound || parts.verify) {
        ComputeOptions opts;
        opts.budget = budget;
        if (!config.windows.empty()) opts.t_windows = parse_windows(config.windows, params.kappa());
        try {
            I = compute_I(params, opts);
        } catch (const BudgetExceeded& e) {
            // A bare polynomial request has nothing to fall back on.
            if (config.command == Command::polynomial) throw;
            budget_note = std::string("budget: ") + e.what();
        }
        if (I) {
            j["polynomial"] = {{"c", rational_list(I->raw())}, {"I", rational_list(conventional(*I))}};
        } else {
            j["polynomial"] = {{"skipped", budget_note}};
        }
    }

    const bool with_tilde = params.kappa() >= params.n();
    std::optional<IntersectionPolynomial> tilde;
    if (with_tilde) {
        tilde = compute_I_tilde(params);
        j["tilde"] = {{"I", rational_list(conventional(*tilde))},
                      {"lambda", to_string(lambda_tilde(params))},
                      {"d0", integer_json(minimal_positive_degree(*tilde))},
                      {"fujiwara", integer_json(fujiwara_integer_bound(*tilde))}};
    }

    // d0 and fujiwara refer to I(d) when computed and to I~(d) for tilde.
    const IntersectionPolynomial* subject = nullptr;
    if (config.command == Command::tilde) {
        subject = tilde ? &*tilde : nullptr;
    } else if (I) {
        subject = &*I;
    }
    std::optional<Integer> d0, fuji;
    if (subject != nullptr && subject->raw(0) > 0) {
        d0 = minimal_positive_degree(*subject);
        fuji = fujiwara_integer_bound(*subject);
    }
    j["d0"] = d0 ? integer_json(*d0) : ordered_json(nullptr);
    j["fujiwara"] = fuji ? integer_json(*fuji) : ordered_json(nullptr);

    if (parts.bound) {
        const TheoremBounds tb = theorem_bounds(params.n());
        j["theorem_bounds"] = {{"main", integer_json(tb.main)},
                               {"existence_d", integer_json(tb.existence_d)},
                               {"existence_delta_inv", integer_json(tb.existence_delta_inv)},
                               {"small_n", integer_json(tb.small_n)}};
        const bool standard = params.kappa() == params.n() && geometric_ratio_n(params) &&
                              35 * pow(Rational(params.n()), params.n()) * params.delta() <= 1;
        const std::string std_unmet = standard ? "" : "kappa = n, geometric weights, 35 n^n delta <= 1";
        if (d0) {
            checks.checks.push_back(make_check("bound.d0_le_fujiwara_plus_1", Rational(*d0), Relation::le,
                                               Rational(*fuji + 1), "d0 <= Fujiwara bound + 1"));
            checks.checks.push_back(make_check("bound.small_n", Rational(*d0), Relation::le, Rational(tb.small_n),
                                               "d0 <= 25 n^(n+2)",
                                               params.n() <= 5 ? std_unmet
                                                               : (std_unmet.empty() ? "n <= 5" : std_unmet + "; n <= 5")));
            checks.checks.push_back(make_check("bound.main", Rational(*d0), Relation::le, Rational(tb.main),
                                               "d0 <= (5n)^2 n^n", std_unmet));
        } else {
            const std::string why = I ? "leading coefficient of I is not positive" : budget_note;
            for (const char* name : {"bound.d0_le_fujiwara_plus_1", "bound.small_n", "bound.main"}) {
                checks.checks.push_back(skipped_check(name, Relation::le, "needs d0 of the full I(d)", why));
            }
        }
    }
    if (parts.verify) {
        checks.append(check_hypotheses(params));
        if (with_tilde) {
            CertifyOptions co;
            co.budget = budget;
            co.full_I = I;
            checks.append(certify_envelopes(params, co));
        }
    }
    if (parts.bound || parts.verify) {
        ordered_json arr = ordered_json::array();
        for (const auto& c : checks.checks) arr.push_back(check_json(c));
        j["checks"] = arr;
        j["summary"] = {{"pass", checks.count(CheckStatus::pass)},
                        {"fail", checks.count(CheckStatus::fail)},
                        {"skipped", checks.count(CheckStatus::skipped)}};
    }
    // Hypothesis rows describe the input only; they never fail a run.
    for (const auto& c : checks.checks) {
        if (c.status == CheckStatus::fail && c.name.rfind("hypothesis.", 0) != 0) rep.exit_code = 2;
    }
    return rep;
}

}  // namespace

Report execute(const RunConfig& config) {
    const std::size_t budget = resolve_budget(config.budget, std::getenv("HYPERBOUND_BUDGET"));
    switch (config.command) {
        case Command::polynomial: return single_run(make_parameters(config, config.n), config, {.polynomial = true}, budget);
        case Command::tilde: return single_run(make_parameters(config, config.n), config, {.tilde = true}, budget);
        case Command::bound: return single_run(make_parameters(config, config.n), config, {.bound = true}, budget);
        case Command::verify: return single_run(make_parameters(config, config.n), config, {.verify = true}, budget);
        case Command::sweep: break;
    }
    if (config.n_from < 1 || config.n_from > config.n_to) throw std::invalid_argument("sweep needs 1 <= n-from <= n-to");
    if (config.kappa) throw std::invalid_argument("sweep uses kappa = n; --kappa is not accepted");
    std::vector<Parameters> all;
    for (int n = config.n_from; n <= config.n_to; ++n) all.push_back(make_parameters(config, n));
    std::vector<std::future<Report>> jobs;
    for (const auto& p : all) {
        jobs.push_back(std::async(std::launch::async, [&config, p, budget] {
            return single_run(p, config, {.bound = true, .verify = true}, budget);
        }));
    }
    Report rep;
    rep.json["command"] = "sweep";
    rep.json["n_from"] = config.n_from;
    rep.json["n_to"] = config.n_to;
    rep.json["runs"] = ordered_json::array();
    for (auto& job : jobs) {
        Report r = job.get();
        rep.exit_code = std::max(rep.exit_code, r.exit_code);
        rep.json["runs"].push_back(std::move(r.json));
    }
    return rep;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string scalar_text(const ordered_json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "";
    return v.dump();
}

// Flattens one run: every scalar becomes a value row, every check a check row.
void csv_run(const ordered_json& run, std::ostream& out) {
    const std::string n = run["params"]["n"].dump();
    auto row = [&](const std::string& kind, const std::string& name, const std::string& lhs, const std::string& rel,
                   const std::string& rhs, const std::string& status, const std::string& anchor) {
        out << n << ',' << csv_field(kind) << ',' << csv_field(name) << ',' << csv_field(lhs) << ',' << csv_field(rel)
            << ',' << csv_field(rhs) << ',' << csv_field(status) << ',' << csv_field(anchor) << '\n';
    };
    std::function<void(const std::string&, const ordered_json&)> walk = [&](const std::string& path,
                                                                             const ordered_json& v) {
        if (v.is_object()) {
            for (auto it = v.begin(); it != v.end(); ++it) walk(path.empty() ? it.key() : path + "." + it.key(), it.value());
        } else if (v.is_array()) {
            for (std::size_t i = 0; i < v.size(); ++i) walk(path + "." + std::to_string(i), v[i]);
        } else {
            row("value", path, scalar_text(v), "", "", "", "");
        }
    };
    for (auto it = run.begin(); it != run.end(); ++it) {
        if (it.key() == "checks") continue;
        walk(it.key(), it.value());
    }
    if (run.contains("checks")) {
        for (const auto& c : run["checks"]) {
            const std::string status = c["status"].get<std::string>();
            const std::string anchor = c["anchor"].get<std::string>() +
                                       (c.contains("skipped") ? " [" + c["skipped"].get<std::string>() + "]" : "");
            row("check", c["name"].get<std::string>(), scalar_text(c["lhs"]), c["rel"].get<std::string>(),
                scalar_text(c["rhs"]), status, anchor);
        }
    }
}

}  // namespace

std::string serialize(const Report& report, OutputFormat format) {
    if (format == OutputFormat::json) return report.json.dump(2) + "\n";
    std::ostringstream out;
    out << "n,kind,name,lhs,rel,rhs,status,anchor\n";
    if (report.json.contains("runs")) {
        for (const auto& r : report.json["runs"]) csv_run(r, out);
    } else {
        csv_run(report.json, out);
    }
    return out.str();
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        const Report rep = execute(config);
        const std::string text = serialize(rep, config.format);
        if (config.out_path.empty()) {
            out << text;
        } else {
            std::ofstream file(config.out_path, std::ios::binary);
            if (!file) throw std::runtime_error("cannot open '" + config.out_path + "' for writing");
            file << text;
            if (!file) throw std::runtime_error("failed writing '" + config.out_path + "'");
        }
        return rep.exit_code;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace hyperbound
