// korosum: command-line front end. Exit codes: 0 ok, 2 bad input or
// configuration, 3 a proven inequality failed numerically.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "korosum/bounds.hpp"
#include "korosum/config.hpp"
#include "korosum/digits.hpp"
#include "korosum/normalnum.hpp"
#include "korosum/report.hpp"
#include "korosum/scan.hpp"
#include "korosum/sumeval.hpp"

using namespace korosum;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitViolation = 3;

struct CheckFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const Json& j, bool as_json) {
    if (as_json) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    for (const auto& [key, value] : j.items()) {
        if (value.is_array() && !value.empty() && value.front().is_object()) {
            std::cout << key << ":\n";
            for (const auto& row : value) {
                std::cout << " ";
                for (const auto& [k, v] : row.items()) std::cout << " " << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump());
                std::cout << "\n";
            }
        } else {
            std::cout << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
        }
    }
}

Json real_json(const cert::Real& r) {
    const cert::Scaled s = cert::scaled(r);
    return std::isfinite(s.value) ? Json(s.value) : Json(s.to_string());
}

std::string q_str(const mpq_class& q) { return q.get_str(); }

double q_dbl(const mpq_class& q) { return cert::rational_to_double(q, MPFR_RNDN); }

Json interval_json(const RationalInterval& I) {
    Json j;
    j["lo"] = q_str(I.lo);
    j["hi"] = I.hi_infinite ? std::string("inf") : q_str(I.hi);
    return j;
}

// ------------------------------------------------------------- subcommands

struct Opts {
    bool json = false;
    i64 a = 1;
    u64 b = 2, m = 9, n = 6, m_prime = 0, d = 1, base = 10;
    unsigned k = 0, k_max = 8, best = 0, horizon = 20;
    u64 i_max = 200, n_max = 131072, digits = 0;
    std::vector<u64> primes;
    std::string form = "recursive", pattern, config, out, format, schedule;
    unsigned workers = 0;
    bool serial = false, reduced = false;
    double c_hat = 1.0;
};

PrimeSet prime_set(const Opts& o) {
    if (o.primes.empty()) throw ConfigError("--primes", "required");
    try {
        return PrimeSet(o.primes);
    } catch (const InvalidPrimeSet& e) {
        throw ConfigError("--primes", e.what());
    }
}

int cmd_order(const Opts& o) {
    Json j;
    j["b"] = o.b;
    j["m"] = o.m;
    j["order"] = mult_order_naive(o.b, o.m);
    if (!o.primes.empty()) {
        const PrimeSet P = prime_set(o);
        const ModulusStructure s = mult_order_structured(o.b, o.m, P);
        j["tau1"] = s.tau1;
        j["mu"] = s.mu;
        j["tau_prime"] = s.tau_prime;
        Json beta = Json::object();
        for (const auto& pp : s.beta) beta[std::to_string(pp.prime)] = pp.exponent;
        j["beta"] = beta;
        j["m1"] = s.m1;
        j["order_structured"] = s.order;
        j["capital_m"] = capital_m(P, o.b).get_str();
        if (s.order != j["order"].get<u64>()) {
            emit(j, o.json);
            throw CheckFailed("structured order disagrees with direct iteration");
        }
    }
    emit(j, o.json);
    return 0;
}

int cmd_sum(const Opts& o) {
    const Exec exec = o.serial ? Exec::serial : Exec::parallel;
    const SumResult r = o.reduced ? eval_sum_reduced(o.a, o.b, o.m, o.n, exec) : eval_sum(o.a, o.b, o.m, o.n, exec);
    Json j;
    j["a"] = r.a;
    j["b"] = r.b;
    j["m"] = r.m;
    j["N"] = r.N;
    j["re"] = r.value.real();
    j["im"] = r.value.imag();
    j["abs"] = r.magnitude;
    emit(j, o.json);
    return 0;
}

Json report_json(const BoundReport& r) {
    Json j;
    j["source"] = r.source;
    j["k"] = r.k;
    j["bound"] = r.bound_value;
    j["term_main"] = r.term_main;
    j["term_secondary"] = r.term_secondary;
    j["log_factor"] = r.log_factor;
    j["nontrivial"] = r.nontrivial;
    j["in_nontrivial_range"] = r.in_nontrivial_range;
    return j;
}

int cmd_bound(const Opts& o) {
    const unsigned levels = std::max(o.k, o.best);
    const BoundSystem sys(prime_set(o), o.b, levels);
    Json j;
    j["m"] = o.m;
    j["N"] = o.n;
    if (o.best > 0) {
        const auto best = sys.best_k(o.m, o.n, o.best);
        j["k_star"] = best.k;
        j["k_heuristic"] = best.heuristic_k;
        j["best"] = report_json(best.report);
    } else {
        const BoundForm form = o.form == "main" ? BoundForm::main : BoundForm::recursive;
        if (o.form != "main" && o.form != "recursive") throw ConfigError("--form", "expected recursive or main");
        j["bound"] = report_json(sys.bound_eval(o.m, o.n, o.k, form));
    }
    j["long_sum"] = report_json(sys.bound_long(o.m, o.n));
    try {
        j["short_sum"] = report_json(sys.bound_short(o.m, o.n, o.d));
    } catch (const RangeViolation& e) {
        j["short_sum"] = std::string("n/a: ") + e.what();
    }
    emit(j, o.json);
    return 0;
}

int cmd_intervals(const Opts& o) {
    const LimitConstant& c = limit_constant();
    Json rows = Json::array();
    for (unsigned k = 0; k <= o.k_max; ++k) {
        Json r;
        r["k"] = k;
        const RationalInterval I = nontrivial_interval(k);
        r["I_lo"] = q_str(I.lo);
        r["I_hi"] = I.hi_infinite ? std::string("inf") : q_str(I.hi);
        if (const auto t = optimal_range(k)) {
            r["opt_lo"] = q_dbl(t->lo_range.lo);
            r["opt_hi"] = q_dbl(t->hi_range.hi);
            r["opt_inside_I"] = I.contains(t->lo_range.lo) && I.contains(t->hi_range.hi);
        }
        rows.push_back(r);
    }
    Json j;
    j["c"] = c.value();
    j["c_tail"] = c.tail_bound();
    j["levels"] = rows;
    emit(j, o.json);
    return 0;
}

int cmd_constants(const Opts& o) {
    const BoundSystem sys(prime_set(o), o.b, o.k_max);
    const LimitConstant& c = limit_constant();
    Json j;
    j["c"] = c.value();
    j["c_tail"] = c.tail_bound();
    j["capital_m"] = sys.capital_m().get_str();
    j["K1"] = real_json(sys.k_constants().K1);
    j["K2"] = real_json(sys.k_constants().K2);
    j["K3"] = real_json(sys.k_constants().K3);
    Json rows = Json::array();
    for (unsigned k = 0; k <= o.k_max; ++k) {
        const ExponentState& e = sys.exponents(k);
        const ConstantState& s = sys.constants(k);
        Json r;
        r["k"] = k;
        r["alpha"] = q_str(e.alpha);
        r["gamma"] = q_str(e.gamma);
        r["nu"] = q_str(e.nu);
        r["c_k"] = q_dbl(e.c_gamma);
        r["A"] = real_json(s.A);
        r["B"] = real_json(s.B);
        rows.push_back(r);
    }
    j["levels"] = rows;
    emit(j, o.json);
    return 0;
}

int cmd_scan(const Opts& o) {
    if (o.config.empty()) throw ConfigError("--config", "required");
    ScanConfig cfg = load_scan_config(o.config);
    if (!o.format.empty()) cfg.format = o.format;
    const std::string path = o.out.empty() ? cfg.output_path : o.out;
    const auto rows = run_scan(cfg, o.workers);
    const std::string bytes = render_report(rows, cfg.format);
    if (path.empty() || path == "-")
        std::cout << bytes;
    else
        write_file(path, bytes);
    if (!path.empty() && path != "-") {
        Json j;
        j["rows"] = rows.size();
        j["output"] = path;
        emit(j, o.json);
    }
    return 0;
}

int cmd_digits(const Opts& o) {
    const DigitPattern p = DigitPattern::parse(o.pattern, o.base);
    Json j;
    j["a"] = o.a;
    j["m"] = o.m;
    j["base"] = o.base;
    j["pattern"] = p.to_string();
    OccurrenceReport rep;
    if (!o.primes.empty()) {
        const DeviationReport d = deviation_report(static_cast<u64>(o.a), o.m, p, o.n, prime_set(o), o.c_hat);
        rep = d.occurrences;
        j["envelope"] = d.envelope;
        j["envelope_ratio"] = d.ratio;
    } else {
        rep = count_occurrences(static_cast<u64>(o.a), o.m, p, o.n);
    }
    j["N"] = rep.N;
    j["count"] = rep.count;
    j["expected"] = rep.expected;
    j["deviation"] = rep.deviation;
    emit(j, o.json);
    return 0;
}

int cmd_normal(const Opts& o) {
    if (o.schedule.empty()) throw ConfigError("--schedule", "required");
    const Schedule s = load_schedule(o.schedule);
    const ScheduleValidation v = validate_schedule(s, o.horizon);
    Json j;
    j["horizon"] = v.horizon;
    j["final_log_ratio"] = v.log_ratio.back();
    j["ratio_trend_decreasing"] = v.trend_decreasing;
    const DiscrepancyTrace t = discrepancy_trace(s, o.n_max);
    Json pts = Json::array();
    for (const auto& p : t.points) {
        Json r;
        r["N"] = p.N;
        r["star"] = p.star;
        r["two_sided_upper"] = 2 * p.star;
        pts.push_back(r);
    }
    j["trace"] = pts;
    j["decreasing_steps"] = t.decreasing_steps;
    if (o.digits > 0) {
        const AlphaDigits d = alpha_digits(s, o.digits);
        std::string text;
        for (unsigned x : d.digits) text += s.b <= 10 ? std::to_string(x) : std::to_string(x) + ",";
        j["digits"] = text;
        j["series_terms"] = d.terms;
    }
    emit(j, o.json);
    return 0;
}

int cmd_verify(const Opts& o) {
    u64 mp = o.m_prime;
    if (mp == 0) {
        const PrimeSet P = prime_set(o);
        const ExponentState e = exponents(o.k);
        mp = choose_m_prime(o.m, o.n, P, e.alpha, e.gamma, e.nu);
    }
    const DifferencingReport d = verify_differencing(o.a, o.b, o.m, mp, o.n);
    Json j;
    j["m_prime"] = mp;
    j["tau"] = d.tau;
    j["lhs_squared"] = d.lhs_squared;
    j["rhs"] = d.rhs;
    j["holds"] = d.holds;
    bool ok = d.holds;
    if (!o.primes.empty() && is_admissible_m_prime(o.m, mp)) {
        const PrimeSet P = prime_set(o);
        const ClaimReport c = check_claims(o.b, o.m, mp, capital_m(P, o.b), o.i_max);
        j["m_bar"] = c.m_bar;
        j["order_preserved"] = c.order_preserved;
        j["gcd_structure"] = c.gcd_structure;
        j["divides_capital_m"] = c.divides_capital_m;
        ok = ok && c.order_preserved && c.gcd_structure && c.divides_capital_m;
    }
    emit(j, o.json);
    if (!ok) throw CheckFailed("verification failed");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Korobov-type exponential sums and explicit bounds"};
    app.require_subcommand(1);
    Opts o;

    auto json_flag = [&](CLI::App* sc) { sc->add_flag("--json", o.json, "machine-readable output"); };
    auto primes_opt = [&](CLI::App* sc, bool required) {
        auto* opt = sc->add_option("--primes", o.primes, "prime set, comma separated")->delimiter(',');
        if (required) opt->required();
    };

    auto* order = app.add_subcommand("order", "multiplicative order and its structure");
    order->add_option("--b", o.b)->required();
    order->add_option("--m", o.m)->required();
    primes_opt(order, false);
    json_flag(order);

    auto* sum = app.add_subcommand("sum", "evaluate sum_{n<=N} e(a b^n / m)");
    sum->add_option("--a", o.a)->required();
    sum->add_option("--b", o.b)->required();
    sum->add_option("--m", o.m)->required();
    sum->add_option("--n", o.n)->required();
    sum->add_flag("--serial", o.serial, "use the serial reference kernel");
    sum->add_flag("--reduced", o.reduced, "fold full periods");
    json_flag(sum);

    auto* bound = app.add_subcommand("bound", "evaluate the explicit bounds");
    primes_opt(bound, true);
    bound->add_option("--b", o.b)->required();
    bound->add_option("--m", o.m)->required();
    bound->add_option("--n", o.n)->required();
    bound->add_option("--k", o.k);
    bound->add_option("--form", o.form, "recursive or main");
    bound->add_option("--best", o.best, "minimise over k = 0..best");
    bound->add_option("--d", o.d, "gcd(a, m) for the short-sum bound");
    json_flag(bound);

    auto* intervals = app.add_subcommand("intervals", "non-trivial and optimal ranges");
    intervals->add_option("--k-max", o.k_max);
    json_flag(intervals);

    auto* constants = app.add_subcommand("constants", "c, K1..K3 and the A_k, B_k table");
    primes_opt(constants, true);
    constants->add_option("--b", o.b)->required();
    constants->add_option("--k-max", o.k_max);
    json_flag(constants);

    auto* scan = app.add_subcommand("scan", "parameter sweep from a JSON config");
    scan->add_option("--config", o.config)->required();
    scan->add_option("--out", o.out, "output path, - for stdout");
    scan->add_option("--workers", o.workers);
    scan->add_option("--format", o.format, "csv or json");
    json_flag(scan);

    auto* digits = app.add_subcommand("digits", "pattern counts in the expansion of a/m");
    digits->add_option("--a", o.a)->required();
    digits->add_option("--m", o.m)->required();
    digits->add_option("--base", o.base)->required();
    digits->add_option("--pattern", o.pattern)->required();
    digits->add_option("--n", o.n)->required();
    digits->add_option("--c-hat", o.c_hat, "constant of the deviation envelope");
    primes_opt(digits, false);
    json_flag(digits);

    auto* normal = app.add_subcommand("normal", "schedule checks and discrepancy trace");
    normal->add_option("--schedule", o.schedule)->required();
    normal->add_option("--n-max", o.n_max);
    normal->add_option("--horizon", o.horizon);
    normal->add_option("--digits", o.digits, "also print this many digits of alpha");
    json_flag(normal);

    auto* verify = app.add_subcommand("verify", "differencing inequality and gcd claims");
    verify->add_option("--a", o.a)->required();
    verify->add_option("--b", o.b)->required();
    verify->add_option("--m", o.m)->required();
    verify->add_option("--n", o.n)->required();
    verify->add_option("--m-prime", o.m_prime, "defaults to the construction at level --k");
    verify->add_option("--k", o.k);
    verify->add_option("--i-max", o.i_max);
    primes_opt(verify, false);
    json_flag(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    try {
        if (*order) return cmd_order(o);
        if (*sum) return cmd_sum(o);
        if (*bound) return cmd_bound(o);
        if (*intervals) return cmd_intervals(o);
        if (*constants) return cmd_constants(o);
        if (*scan) return cmd_scan(o);
        if (*digits) return cmd_digits(o);
        if (*normal) return cmd_normal(o);
        if (*verify) return cmd_verify(o);
    } catch (const BoundViolation& e) {
        std::cerr << "korosum: " << e.what() << "\n";
        return kExitViolation;
    } catch (const CheckFailed& e) {
        std::cerr << "korosum: " << e.what() << "\n";
        return kExitViolation;
    } catch (const std::exception& e) {
        std::cerr << "korosum: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
