#include "korosum/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace korosum {

using nlohmann::ordered_json;

const std::vector<std::string>& report_columns() {
    static const std::vector<std::string> cols{
        "m", "a", "N", "k_star", "abs_sum", "ratio", "bound_recursive", "bound_main",
        "bound_baseline", "bound_short", "bound_korobov", "nontrivial_recursive", "nontrivial_main"};
    return cols;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

double parse_double(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0') throw IoError("bad number '" + s + "' in report");
    return v;
}

u64 parse_u64(const std::string& s) {
    std::size_t used = 0;
    const u64 v = std::stoull(s, &used);
    if (used != s.size()) throw IoError("bad integer '" + s + "' in report");
    return v;
}

// JSON cannot hold infinities; they travel as the string "inf".
ordered_json json_number(double v) {
    if (std::isfinite(v)) return v;
    return v > 0 ? "inf" : "-inf";
}

double from_json_number(const ordered_json& j) {
    if (j.is_string()) return j.get<std::string>() == "inf" ? HUGE_VAL : -HUGE_VAL;
    return j.get<double>();
}

}  // namespace

std::string render_csv(const std::vector<ScanRow>& rows) {
    std::string out;
    const auto& cols = report_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
    out += '\n';
    for (const ScanRow& r : rows) {
        out += std::to_string(r.m) + ',' + std::to_string(r.a) + ',' + std::to_string(r.N) + ',' +
               std::to_string(r.k_star) + ',' + fmt(r.abs_sum) + ',' + fmt(r.ratio) + ',' +
               fmt(r.bound_recursive) + ',' + fmt(r.bound_main) + ',' + fmt(r.bound_baseline) + ',' +
               fmt(r.bound_short) + ',' + fmt(r.bound_korobov) + ',' + (r.nontrivial_recursive ? "1" : "0") +
               ',' + (r.nontrivial_main ? "1" : "0") + '\n';
    }
    return out;
}

std::string render_json(const std::vector<ScanRow>& rows) {
    ordered_json arr = ordered_json::array();
    for (const ScanRow& r : rows) {
        ordered_json o;
        o["m"] = r.m;
        o["a"] = r.a;
        o["N"] = r.N;
        o["k_star"] = r.k_star;
        o["abs_sum"] = json_number(r.abs_sum);
        o["ratio"] = json_number(r.ratio);
        o["bound_recursive"] = json_number(r.bound_recursive);
        o["bound_main"] = json_number(r.bound_main);
        o["bound_baseline"] = json_number(r.bound_baseline);
        o["bound_short"] = r.bound_short ? json_number(*r.bound_short) : ordered_json(nullptr);
        o["bound_korobov"] = r.bound_korobov ? json_number(*r.bound_korobov) : ordered_json(nullptr);
        o["nontrivial_recursive"] = r.nontrivial_recursive;
        o["nontrivial_main"] = r.nontrivial_main;
        arr.push_back(std::move(o));
    }
    return arr.dump(2) + "\n";
}

std::string render_report(const std::vector<ScanRow>& rows, const std::string& format) {
    if (format == "csv") return render_csv(rows);
    if (format == "json") return render_json(rows);
    throw ConfigError("format", "expected csv or json");
}

std::vector<ScanRow> parse_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line)) throw IoError("report is empty");
    std::vector<ScanRow> rows;
    const std::size_t ncols = report_columns().size();
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::size_t start = 0;
        for (;;) {
            const std::size_t comma = line.find(',', start);
            f.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (f.size() != ncols) throw IoError("report row has " + std::to_string(f.size()) + " fields");
        ScanRow r;
        r.m = parse_u64(f[0]);
        r.a = std::stoll(f[1]);
        r.N = parse_u64(f[2]);
        r.k_star = static_cast<unsigned>(parse_u64(f[3]));
        r.abs_sum = parse_double(f[4]);
        r.ratio = parse_double(f[5]);
        r.bound_recursive = parse_double(f[6]);
        r.bound_main = parse_double(f[7]);
        r.bound_baseline = parse_double(f[8]);
        if (!f[9].empty()) r.bound_short = parse_double(f[9]);
        if (!f[10].empty()) r.bound_korobov = parse_double(f[10]);
        r.nontrivial_recursive = f[11] == "1";
        r.nontrivial_main = f[12] == "1";
        rows.push_back(r);
    }
    return rows;
}

std::vector<ScanRow> parse_json_rows(std::string_view text) {
    std::vector<ScanRow> rows;
    try {
        const ordered_json arr = ordered_json::parse(text);
        for (const auto& o : arr) {
            ScanRow r;
            r.m = o.at("m").get<u64>();
            r.a = o.at("a").get<i64>();
            r.N = o.at("N").get<u64>();
            r.k_star = o.at("k_star").get<unsigned>();
            r.abs_sum = from_json_number(o.at("abs_sum"));
            r.ratio = from_json_number(o.at("ratio"));
            r.bound_recursive = from_json_number(o.at("bound_recursive"));
            r.bound_main = from_json_number(o.at("bound_main"));
            r.bound_baseline = from_json_number(o.at("bound_baseline"));
            if (!o.at("bound_short").is_null()) r.bound_short = from_json_number(o.at("bound_short"));
            if (!o.at("bound_korobov").is_null()) r.bound_korobov = from_json_number(o.at("bound_korobov"));
            r.nontrivial_recursive = o.at("nontrivial_recursive").get<bool>();
            r.nontrivial_main = o.at("nontrivial_main").get<bool>();
            rows.push_back(r);
        }
    } catch (const ordered_json::exception& e) {
        throw IoError(std::string("bad JSON report: ") + e.what());
    }
    return rows;
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write to " + path + " failed");
}

}  // namespace korosum
