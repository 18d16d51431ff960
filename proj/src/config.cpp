#include "korosum/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace korosum {

using nlohmann::json;

namespace {

const json& require(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) throw ConfigError(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(path.empty() ? key : path + "." + key, "missing");
    return *it;
}

std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

u64 as_u64(const json& v, const std::string& path) {
    if (!v.is_number_unsigned()) throw ConfigError(path, "expected a non-negative integer");
    return v.get<u64>();
}

i64 as_i64(const json& v, const std::string& path) {
    if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
    return v.get<i64>();
}

double as_double(const json& v, const std::string& path) {
    if (!v.is_number()) throw ConfigError(path, "expected a number");
    return v.get<double>();
}

std::string as_string(const json& v, const std::string& path) {
    if (!v.is_string()) throw ConfigError(path, "expected a string");
    return v.get<std::string>();
}

template <typename T, typename F>
std::vector<T> as_array(const json& v, const std::string& path, F convert) {
    if (!v.is_array()) throw ConfigError(path, "expected an array");
    std::vector<T> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(convert(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("<document>", e.what());
    }
}

PrimeSet as_prime_set(const json& v, const std::string& path) {
    auto primes = as_array<u64>(v, path, as_u64);
    try {
        return PrimeSet(std::move(primes));
    } catch (const InvalidPrimeSet& e) {
        throw ConfigError(path, e.what());
    }
}

SequenceSpec as_sequence(const json& v, const std::string& path) {
    const std::string kind = as_string(require(v, "kind", path), join(path, "kind"));
    if (kind == "list") return SequenceSpec::list_of(as_array<u64>(require(v, "values", path), join(path, "values"), as_u64));
    const u64 first = as_u64(require(v, "first", path), join(path, "first"));
    if (kind == "geometric")
        return SequenceSpec::geometric_of(first, as_u64(require(v, "ratio", path), join(path, "ratio")));
    if (kind == "linear")
        return SequenceSpec::linear_of(first, as_u64(require(v, "step", path), join(path, "step")));
    throw ConfigError(join(path, "kind"), "expected list, geometric or linear");
}

}  // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ScanConfig parse_scan_config(std::string_view text) {
    const json doc = parse_json(text);
    ScanConfig c;

    const PrimeSet primes = as_prime_set(require(doc, "primes", ""), "primes");
    c.primes.assign(primes.primes().begin(), primes.primes().end());
    c.b = as_u64(require(doc, "b", ""), "b");
    if (c.b < 2) throw ConfigError("b", "must be at least 2");
    for (u64 p : c.primes)
        if (c.b % p == 0) throw ConfigError("b", "must be coprime to every prime in primes");

    const json& range = require(doc, "m_range", "");
    c.m_min = as_u64(require(range, "min", "m_range"), "m_range.min");
    c.m_max = as_u64(require(range, "max", "m_range"), "m_range.max");
    if (c.m_max < c.m_min || c.m_max < 2) throw ConfigError("m_range", "range is empty");
    if (smooth_numbers(std::max<u64>(c.m_min, 2), c.m_max, primes).empty())
        throw ConfigError("m_range", "contains no smooth modulus above 1");

    const json& ap = require(doc, "a_policy", "");
    const std::string akind = as_string(require(ap, "kind", "a_policy"), "a_policy.kind");
    if (akind == "fixed") {
        c.a_policy.kind = APolicy::Kind::fixed;
        c.a_policy.values = as_array<i64>(require(ap, "values", "a_policy"), "a_policy.values", as_i64);
        if (c.a_policy.values.empty()) throw ConfigError("a_policy.values", "must not be empty");
    } else if (akind == "sample" || akind == "worst_case") {
        c.a_policy.kind = akind == "sample" ? APolicy::Kind::sample : APolicy::Kind::worst_case;
        c.a_policy.count = as_u64(require(ap, "count", "a_policy"), "a_policy.count");
        if (c.a_policy.count == 0) throw ConfigError("a_policy.count", "must be positive");
    } else {
        throw ConfigError("a_policy.kind", "expected fixed, sample or worst_case");
    }

    const json& np = require(doc, "n_policy", "");
    const std::string nkind = as_string(require(np, "kind", "n_policy"), "n_policy.kind");
    if (nkind == "list") {
        c.n_policy.kind = NPolicy::Kind::list;
        c.n_policy.values = as_array<u64>(require(np, "values", "n_policy"), "n_policy.values", as_u64);
        if (c.n_policy.values.empty()) throw ConfigError("n_policy.values", "must not be empty");
        for (u64 n : c.n_policy.values)
            if (n == 0) throw ConfigError("n_policy.values", "entries must be positive");
    } else if (nkind == "powers") {
        c.n_policy.kind = NPolicy::Kind::powers;
        c.n_policy.exponents = as_array<double>(require(np, "exponents", "n_policy"), "n_policy.exponents", as_double);
        if (c.n_policy.exponents.empty()) throw ConfigError("n_policy.exponents", "must not be empty");
        for (double x : c.n_policy.exponents)
            if (!(x >= 0.0 && x <= 4.0)) throw ConfigError("n_policy.exponents", "entries must lie in [0, 4]");
    } else if (nkind == "period") {
        c.n_policy.kind = NPolicy::Kind::period;
        if (np.contains("multiples"))
            c.n_policy.multiples = as_array<u64>(np["multiples"], "n_policy.multiples", as_u64);
        if (c.n_policy.multiples.empty()) throw ConfigError("n_policy.multiples", "must not be empty");
        for (u64 j : c.n_policy.multiples)
            if (j == 0) throw ConfigError("n_policy.multiples", "entries must be positive");
    } else {
        throw ConfigError("n_policy.kind", "expected list, powers or period");
    }

    const json& kr = require(doc, "k_range", "");
    c.k_min = static_cast<unsigned>(as_u64(require(kr, "min", "k_range"), "k_range.min"));
    c.k_max = static_cast<unsigned>(as_u64(require(kr, "max", "k_range"), "k_range.max"));
    if (c.k_max < c.k_min) throw ConfigError("k_range", "range is empty");
    if (c.k_max > 60) throw ConfigError("k_range.max", "must be at most 60");

    if (doc.contains("seed")) c.seed = as_u64(doc["seed"], "seed");
    if (doc.contains("workers")) {
        c.workers = static_cast<unsigned>(as_u64(doc["workers"], "workers"));
        if (c.workers == 0) throw ConfigError("workers", "must be positive");
    }
    if (doc.contains("output")) {
        const json& out = doc["output"];
        if (out.contains("path")) c.output_path = as_string(out["path"], "output.path");
        if (out.contains("format")) c.format = as_string(out["format"], "output.format");
        if (c.format != "csv" && c.format != "json") throw ConfigError("output.format", "expected csv or json");
    }
    return c;
}

ScanConfig load_scan_config(const std::string& path) { return parse_scan_config(read_text_file(path)); }

Schedule parse_schedule(std::string_view text) {
    const json doc = parse_json(text);
    Schedule s;
    s.b = as_u64(require(doc, "b", ""), "b");
    if (s.b < 2) throw ConfigError("b", "must be at least 2");
    s.primes = as_prime_set(require(doc, "primes", ""), "primes");
    s.c = as_sequence(require(doc, "c", ""), "c");
    s.m = as_sequence(require(doc, "m", ""), "m");
    if (doc.contains("epsilon")) {
        s.epsilon = as_double(doc["epsilon"], "epsilon");
        if (!(s.epsilon > 0.0)) throw ConfigError("epsilon", "must be positive");
    }
    return s;
}

Schedule load_schedule(const std::string& path) { return parse_schedule(read_text_file(path)); }

}  // namespace korosum
