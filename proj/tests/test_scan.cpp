#include "doctest.h"

#include <cmath>
#include <limits>

#include "korosum/config.hpp"
#include "korosum/report.hpp"
#include "korosum/scan.hpp"

using namespace korosum;

namespace {
const char* kTiny = R"({
  "primes": [3], "b": 2,
  "m_range": {"min": 3, "max": 81},
  "a_policy": {"kind": "fixed", "values": [1]},
  "n_policy": {"kind": "period", "multiples": [1, 2]},
  "k_range": {"min": 0, "max": 3},
  "seed": 5, "workers": 2,
  "output": {"path": "out.csv", "format": "csv"}
})";

const char* kSampled = R"({
  "primes": [3, 5], "b": 2,
  "m_range": {"min": 9, "max": 3000},
  "a_policy": {"kind": "sample", "count": 6},
  "n_policy": {"kind": "powers", "exponents": [0.25, 0.5, 1.0]},
  "k_range": {"min": 0, "max": 4},
  "seed": 99
})";

std::string field_of(const char* text) {
    try {
        parse_scan_config(text);
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "";
}
}  // namespace

TEST_CASE("config parsing") {
    const ScanConfig c = parse_scan_config(kTiny);
    CHECK(c.primes == std::vector<u64>{3});
    CHECK(c.m_min == 3);
    CHECK(c.m_max == 81);
    CHECK(c.a_policy.kind == APolicy::Kind::fixed);
    CHECK(c.n_policy.kind == NPolicy::Kind::period);
    CHECK(c.k_max == 3);
    CHECK(c.output_path == "out.csv");

    CHECK(field_of(R"({"primes":[3],"b":2,"m_range":{"min":50,"max":10},"a_policy":{"kind":"fixed","values":[1]},
                      "n_policy":{"kind":"list","values":[5]},"k_range":{"min":0,"max":1}})") == "m_range");
    CHECK(field_of(R"({"primes":[3],"b":2,"m_range":{"min":5,"max":10},"a_policy":{"kind":"sample"},
                      "n_policy":{"kind":"list","values":[5]},"k_range":{"min":0,"max":1}})") == "a_policy.count");
    CHECK(field_of(R"({"primes":[3],"b":2,"m_range":{"min":5,"max":10},"a_policy":{"kind":"fixed","values":[1]},
                      "n_policy":{"kind":"nope"},"k_range":{"min":0,"max":1}})") == "n_policy.kind");
    CHECK_THROWS_AS(parse_scan_config("{not json"), ConfigError);
}

TEST_CASE("schedule parsing") {
    const Schedule s = parse_schedule(R"({"b":2,"primes":[3],"c":{"kind":"geometric","first":3,"ratio":3},
                                          "m":{"kind":"linear","first":2,"step":5},"epsilon":0.2})");
    CHECK(s.c_at(3) == 27);
    CHECK(s.m_at(3) == 12);
    CHECK(s.epsilon == 0.2);
    CHECK_THROWS_AS(parse_schedule(R"({"b":2,"primes":[3]})"), ConfigError);
}

TEST_CASE("tiny scan matches direct sums") {
    const ScanConfig c = parse_scan_config(kTiny);
    const auto rows = run_scan(c);
    // m = 3, 9, 27, 81; two period multiples each
    REQUIRE(rows.size() == 8);
    for (const ScanRow& r : rows) {
        CHECK(r.a == 1);
        CHECK(r.N % mult_order(2, r.m) == 0);
        CHECK(r.abs_sum == doctest::Approx(eval_sum(1, 2, r.m, r.N, Exec::serial).magnitude).epsilon(1e-12));
        CHECK(r.abs_sum <= r.bound_recursive);
        CHECK(r.bound_recursive <= r.bound_main);
    }
    // S over a full period of 2 mod 3^j is a Ramanujan sum: -1 for m = 3, else 0
    CHECK(rows[0].abs_sum == doctest::Approx(1.0));
    CHECK(rows[2].abs_sum < 1e-12);
}

TEST_CASE("numerator and length policies") {
    ScanConfig c = parse_scan_config(kSampled);
    const auto as = scan_numerators(c, 2025);
    CHECK(as.size() == 6);
    CHECK(std::is_sorted(as.begin(), as.end()));
    CHECK(scan_numerators(c, 9).size() == 6);  // all units of 9
    CHECK(scan_numerators(c, 2025) == as);     // same seed, same draw
    CHECK(scan_lengths(c, 10000) == std::vector<u64>{10, 100, 10000});
    c.a_policy = APolicy{APolicy::Kind::fixed, {1, 3, 5}, 1};
    CHECK(scan_numerators(c, 9) == std::vector<i64>{1, 5});
}

TEST_CASE("scan output does not depend on worker count") {
    const ScanConfig c = parse_scan_config(kSampled);
    const std::string one = render_csv(run_scan(c, 1));
    const std::string eight = render_csv(run_scan(c, 8));
    CHECK(one == eight);
}

TEST_CASE("worst-case policy keeps one row per length") {
    ScanConfig c = parse_scan_config(kSampled);
    c.m_max = 200;
    c.a_policy = APolicy{APolicy::Kind::worst_case, {}, 1000};
    const auto rows = run_scan(c, 2);
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK((rows[i].m != rows[i - 1].m || rows[i].N != rows[i - 1].N));
}

TEST_CASE("reports round-trip") {
    CHECK(render_csv({}) ==
          "m,a,N,k_star,abs_sum,ratio,bound_recursive,bound_main,bound_baseline,bound_short,bound_korobov,"
          "nontrivial_recursive,nontrivial_main\n");
    ScanRow r;
    r.m = 81;
    r.a = 2;
    r.N = 54;
    r.k_star = 1;
    r.abs_sum = 0.1 + 0.2;
    r.ratio = r.abs_sum / 54;
    r.bound_recursive = 1.0 / 3;
    r.bound_main = std::numeric_limits<double>::infinity();
    r.bound_baseline = 1e300;
    r.bound_short = std::nextafter(2.0, 3.0);
    r.nontrivial_recursive = true;
    const std::vector<ScanRow> rows{r};
    CHECK(parse_csv(render_csv(rows)) == rows);
    CHECK(parse_json_rows(render_json(rows)) == rows);
    CHECK_THROWS_AS(parse_csv("header\n1,2\n"), IoError);
    CHECK_THROWS_AS(render_report(rows, "xml"), ConfigError);
}
