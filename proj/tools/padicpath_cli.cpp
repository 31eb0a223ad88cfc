// padicpath: evaluate propagators and Gauss integrals over Q_v and run the
// randomized identity checks.
//
// Exit codes: 0 success, 1 verification failure, 2 usage, parse or parameter
// error, 3 oracle cap exceeded.

#include <cstdlib>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "padicpath/padicpath.hpp"

namespace {

using padicpath::Amplitude;
using padicpath::Place;
using padicpath::Rational;
using json = nlohmann::ordered_json;

enum exit_code : int { exit_ok = 0, exit_verify_failed = 1, exit_usage = 2, exit_resource = 3 };

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) out.push_back(item);
    if (out.empty()) throw padicpath::parse_error("empty list '" + s + "'");
    return out;
}

std::vector<Rational> rational_list(const std::string& s) {
    std::vector<Rational> out;
    for (const auto& item : split_list(s)) out.push_back(Rational::parse(item));
    return out;
}

std::vector<Place> place_list(const std::string& s) {
    std::vector<Place> out;
    for (const auto& item : split_list(s)) out.push_back(Place::parse(item));
    return out;
}

std::uint64_t oracle_cap(std::uint64_t flag_value) {
    if (flag_value) return flag_value;
    if (const char* env = std::getenv("PADICPATH_ORACLE_CAP")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (!*env || *end || v == 0) throw padicpath::parse_error("PADICPATH_ORACLE_CAP must be a positive integer");
        return v;
    }
    return padicpath::kDefaultOracleCap;
}

/// A table of result rows: ordered named inputs plus the value.
class Table {
public:
    struct Row {
        std::vector<std::pair<std::string, std::string>> inputs;
        std::optional<Amplitude> exact;
        std::complex<double> value;
        std::optional<std::string> root_branch;
    };

    void add(Row r) { rows_.push_back(std::move(r)); }

    void write(std::ostream& os, const std::string& format) const {
        if (format == "csv") write_csv(os);
        else write_json(os);
    }

private:
    void write_json(std::ostream& os) const {
        json out = json::array();
        for (const Row& r : rows_) {
            json inputs = json::object();
            for (const auto& [k, v] : r.inputs) inputs[k] = v;
            json row = {{"inputs", inputs}};
            row["modulus_sq"] = r.exact ? json(r.exact->modulus_sq().to_string()) : json(nullptr);
            row["phase"] = r.exact ? json(r.exact->phase().to_string()) : json(nullptr);
            row["re"] = r.value.real();
            row["im"] = r.value.imag();
            if (r.root_branch) row["root_branch"] = *r.root_branch;
            out.push_back(row);
        }
        os << out.dump(2) << '\n';
    }

    void write_csv(std::ostream& os) const {
        if (rows_.empty()) return;
        for (const auto& [k, v] : rows_.front().inputs) os << k << ',';
        os << "modulus_sq,phase,re,im\n";
        for (const Row& r : rows_) {
            for (const auto& [k, v] : r.inputs) os << v << ',';
            if (r.exact) os << r.exact->modulus_sq() << ',' << r.exact->phase() << ',';
            else os << ",,";
            os << std::setprecision(17) << r.value.real() << ',' << r.value.imag() << '\n';
        }
    }

    std::vector<Row> rows_;
};

struct KernelArgs {
    std::string system, places, T = "1", q0 = "0", q1 = "0", a = "0", lambda = "0";
    std::string x0 = "0", x1 = "0", gamma0 = "0", gamma1, gamma_dot0 = "1", gamma_dot1 = "1";
    std::string s0 = "1", s1 = "1", s_dot0 = "0", s_dot1 = "0";
    long precision = 20;
};

Table run_kernel(const KernelArgs& k) {
    Table table;
    const auto places = place_list(k.places);
    if (k.system == "osc") {
        if (k.gamma1.empty()) throw padicpath::invalid_argument_error("--gamma1 is required for --system osc");
        for (const Place& v : places)
            for (const Rational& x0 : rational_list(k.x0))
                for (const Rational& x1 : rational_list(k.x1))
                    for (const Rational& g1 : rational_list(k.gamma1)) {
                        padicpath::OscillatorBoundaryData d{x0,
                                                            x1,
                                                            Rational::parse(k.gamma0),
                                                            g1,
                                                            Rational::parse(k.gamma_dot0),
                                                            Rational::parse(k.gamma_dot1),
                                                            Rational::parse(k.s0),
                                                            Rational::parse(k.s1),
                                                            Rational::parse(k.s_dot0),
                                                            Rational::parse(k.s_dot1)};
                        const auto r = padicpath::k_oscillator_td(v, d, k.precision);
                        table.add({{{"place", v.to_string()},
                                    {"system", "osc"},
                                    {"x0", x0.to_string()},
                                    {"x1", x1.to_string()},
                                    {"gamma0", d.gamma_start.to_string()},
                                    {"gamma1", g1.to_string()},
                                    {"gamma_dot0", d.gamma_dot_start.to_string()},
                                    {"gamma_dot1", d.gamma_dot_end.to_string()},
                                    {"s0", d.s_start.to_string()},
                                    {"s1", d.s_end.to_string()},
                                    {"s_dot0", d.s_dot_start.to_string()},
                                    {"s_dot1", d.s_dot_end.to_string()},
                                    {"precision", std::to_string(k.precision)}},
                                   r.exact,
                                   r.value,
                                   r.root_branch});
                    }
        return table;
    }

    std::string param_name;
    std::vector<Rational> params{Rational(0)};
    if (k.system == "const-field") param_name = "a", params = rational_list(k.a);
    else if (k.system == "desitter") param_name = "lambda", params = rational_list(k.lambda);
    else if (k.system != "free") throw padicpath::invalid_argument_error("unknown system '" + k.system + "'");

    for (const Place& v : places)
        for (const Rational& c : params)
            for (const Rational& T : rational_list(k.T))
                for (const Rational& q0 : rational_list(k.q0))
                    for (const Rational& q1 : rational_list(k.q1)) {
                        const padicpath::System s = k.system == "desitter" ? padicpath::System(padicpath::DeSitter{c})
                                                                           : padicpath::System(padicpath::ConstantField{c});
                        const Amplitude amp = padicpath::kernel(v, s, T, q0, q1);
                        Table::Row row{{{"place", v.to_string()}, {"system", k.system}}, amp, padicpath::amp_render(amp), {}};
                        if (!param_name.empty()) row.inputs.emplace_back(param_name, c.to_string());
                        row.inputs.emplace_back("T", T.to_string());
                        row.inputs.emplace_back("q0", q0.to_string());
                        row.inputs.emplace_back("q1", q1.to_string());
                        table.add(std::move(row));
                    }
    return table;
}

Table run_gauss(const std::string& places, const std::string& a_list, const std::string& b_list) {
    Table table;
    for (const Place& v : place_list(places))
        for (const Rational& a : rational_list(a_list))
            for (const Rational& b : rational_list(b_list)) {
                const Amplitude amp = padicpath::gauss_full(v, a, b);
                table.add({{{"place", v.to_string()}, {"system", "gauss"}, {"a", a.to_string()}, {"b", b.to_string()}},
                           amp,
                           padicpath::amp_render(amp),
                           {}});
            }
    return table;
}

Table run_ball(const std::string& primes, const std::string& alphas, const std::string& betas, const std::string& radii,
               std::uint64_t cap) {
    Table table;
    for (const Place& v : place_list(primes)) {
        if (v.is_real()) throw padicpath::invalid_argument_error("ball-integral needs a prime");
        for (const Rational& alpha : rational_list(alphas))
            for (const Rational& beta : rational_list(betas))
                for (const std::string& n : split_list(radii)) {
                    long N = 0;
                    try {
                        std::size_t used = 0;
                        N = std::stol(n, &used);
                        if (used != n.size()) throw std::invalid_argument(n);
                    } catch (const std::exception&) {
                        throw padicpath::parse_error("radius exponent '" + n + "' is not an integer");
                    }
                    const Amplitude amp = padicpath::quad_char_integral_ball(v.p(), alpha, beta, N, cap);
                    table.add({{{"place", v.to_string()},
                                {"system", "ball"},
                                {"alpha", alpha.to_string()},
                                {"beta", beta.to_string()},
                                {"N", std::to_string(N)}},
                               amp,
                               padicpath::amp_render(amp),
                               {}});
                }
    }
    return table;
}

struct VerifyArgs {
    std::string check;
    std::string places;
    std::uint64_t seed = 1;
    std::size_t trials = 0;
};

int run_verify(const VerifyArgs& args, std::uint64_t cap, const std::string& format, std::ostream& os) {
    static const std::map<std::string, std::pair<std::string, std::size_t>> defaults = {
        {"lambda", {"inf,2,3,5,7,13", 1000}},  {"composition", {"inf,2,3,5,7", 50}},
        {"semigroup", {"inf,2,3,5,7", 100}},   {"overlap", {"3,5", 50}},
        {"gauss", {"inf,2,3,5,7", 20}},
    };
    const auto& [default_places, default_trials] = defaults.at(args.check);
    const std::size_t trials = args.trials ? args.trials : default_trials;

    std::vector<std::pair<Place, padicpath::VerifyReport>> reports;
    for (const Place& v : place_list(args.places.empty() ? default_places : args.places)) {
        padicpath::VerifyReport r;
        if (args.check == "lambda") r = padicpath::verify_lambda(v, args.seed, trials);
        else if (args.check == "composition") r = padicpath::verify_composition(v, args.seed, trials);
        else if (args.check == "semigroup") r = padicpath::verify_semigroup(v, args.seed, trials);
        else if (args.check == "gauss") r = padicpath::verify_gauss(v, args.seed, trials, cap);
        else {
            if (v.is_real()) throw padicpath::invalid_argument_error("the overlap check runs at primes only");
            r = padicpath::verify_overlap(v.p(), args.seed, trials, cap);
        }
        reports.emplace_back(v, std::move(r));
    }

    bool passed = true;
    for (const auto& [v, r] : reports) passed = passed && r.passed();

    if (format == "csv") {
        os << "place,check,trials,failures,max_float_error\n";
        for (const auto& [v, r] : reports)
            os << v.to_string() << ',' << r.check << ',' << r.trials << ',' << r.failures << ','
               << std::setprecision(6) << r.max_float_error << '\n';
        for (const auto& [v, r] : reports)
            for (const auto& w : r.witnesses) std::cerr << "witness: " << w << '\n';
    } else {
        json out = {{"check", args.check}, {"seed", args.seed}, {"trials", trials}, {"passed", passed}};
        json results = json::array();
        for (const auto& [v, r] : reports)
            results.push_back({{"place", v.to_string()},
                               {"trials", r.trials},
                               {"failures", r.failures},
                               {"max_float_error", r.max_float_error},
                               {"witnesses", r.witnesses}});
        out["results"] = results;
        os << out.dump(2) << '\n';
    }
    return passed ? exit_ok : exit_verify_failed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Propagators over the real and p-adic completions of Q"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "json";
    std::uint64_t cap_flag = 0;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--cap", cap_flag, "Largest coset count an enumeration may visit (overrides PADICPATH_ORACLE_CAP)");

    KernelArgs kargs;
    auto* kernel = app.add_subcommand("kernel", "Evaluate a closed-form propagator on a grid");
    kernel->add_option("--system", kargs.system)->required()->check(CLI::IsMember({"free", "const-field", "desitter", "osc"}));
    kernel->add_option("--place", kargs.places, "Places: inf or primes, comma separated")->required();
    kernel->add_option("--T", kargs.T, "Time intervals");
    kernel->add_option("--q0", kargs.q0, "Initial positions");
    kernel->add_option("--q1", kargs.q1, "Final positions");
    kernel->add_option("--a", kargs.a, "Field strengths (const-field)");
    kernel->add_option("--lambda", kargs.lambda, "Cosmological constants (desitter)");
    kernel->add_option("--x0", kargs.x0, "Initial positions (osc)");
    kernel->add_option("--x1", kargs.x1, "Final positions (osc)");
    kernel->add_option("--gamma0", kargs.gamma0, "gamma at the start (osc)");
    kernel->add_option("--gamma1", kargs.gamma1, "gamma at the end (osc)");
    kernel->add_option("--gamma-dot0", kargs.gamma_dot0, "gamma' at the start (osc)");
    kernel->add_option("--gamma-dot1", kargs.gamma_dot1, "gamma' at the end (osc)");
    kernel->add_option("--s0", kargs.s0, "s at the start (osc)");
    kernel->add_option("--s1", kargs.s1, "s at the end (osc)");
    kernel->add_option("--s-dot0", kargs.s_dot0, "s' at the start (osc)");
    kernel->add_option("--s-dot1", kargs.s_dot1, "s' at the end (osc)");
    kernel->add_option("--precision", kargs.precision, "p-adic precision for the oscillator series");

    std::string g_places, g_a, g_b = "0";
    auto* gauss = app.add_subcommand("gauss", "Closed-form Gauss integral of chi_v(a x^2 + b x)");
    gauss->add_option("--place", g_places)->required();
    gauss->add_option("--a", g_a)->required();
    gauss->add_option("--b", g_b);

    std::string b_p, b_alpha, b_beta = "0", b_N;
    auto* ball = app.add_subcommand("ball-integral", "Exact integral of chi_p(alpha x^2 + beta x) over |x|_p <= p^N");
    ball->add_option("--p", b_p)->required();
    ball->add_option("--alpha", b_alpha)->required();
    ball->add_option("--beta", b_beta);
    ball->add_option("--N", b_N)->required();

    VerifyArgs vargs;
    auto* verify = app.add_subcommand("verify", "Run a seeded identity check");
    verify->add_option("--check", vargs.check)
        ->required()
        ->check(CLI::IsMember({"composition", "semigroup", "overlap", "gauss", "lambda"}));
    verify->add_option("--place", vargs.places, "Places to check (default depends on the check)");
    verify->add_option("--seed", vargs.seed);
    verify->add_option("--trials", vargs.trials, "Trials per place (default depends on the check)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        const std::uint64_t cap = oracle_cap(cap_flag);
        if (*verify) return run_verify(vargs, cap, format, std::cout);
        Table table;
        if (*kernel) table = run_kernel(kargs);
        else if (*gauss) table = run_gauss(g_places, g_a, g_b);
        else table = run_ball(b_p, b_alpha, b_beta, b_N, cap);
        table.write(std::cout, format);
        return exit_ok;
    } catch (const padicpath::resource_error& e) {
        std::cerr << "resource error: " << e.what() << '\n';
        return exit_resource;
    } catch (const padicpath::parse_error& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return exit_usage;
    } catch (const padicpath::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
}
