#include "afcfo/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace afcfo {

namespace {

std::string cell(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string cell(const std::optional<double>& v) { return v ? cell(*v) : std::string(); }

std::optional<double> parse_double(const std::string& s, std::size_t line) {
    if (s.empty()) return std::nullopt;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) {
        throw std::invalid_argument("csv line " + std::to_string(line) + ": bad number '" + s + "'");
    }
    return v;
}

}  // namespace

CsvRecord to_record(const PointResult& r) {
    CsvRecord rec;
    rec.eps1 = r.eps.eps1;
    rec.eps2 = r.eps.eps2;
    rec.seed = r.master_seed;
    if (r.analytical) rec.analytical_db = r.analytical->snr_db;
    if (r.sensitivity) {
        rec.lambda1 = r.sensitivity->lambda1;
        rec.lambda2 = r.sensitivity->lambda2;
    }
    if (r.empirical) {
        rec.empirical_db = r.empirical->snr_db;
        rec.stderr_db = r.empirical->stderr_db;
        rec.trials = r.empirical->trials;
    }
    return rec;
}

std::string format_csv(std::span<const CsvRecord> records) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const CsvRecord& r : records) {
        out += cell(r.eps1) + ',' + cell(r.eps2) + ',' + cell(r.analytical_db) + ',' + cell(r.empirical_db) +
               ',' + cell(r.stderr_db) + ',' + cell(r.lambda1) + ',' + cell(r.lambda2) + ',' +
               (r.trials ? std::to_string(*r.trials) : std::string()) + ',' + std::to_string(r.seed) + '\n';
    }
    return out;
}

std::vector<CsvRecord> parse_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw std::invalid_argument("csv: missing or unexpected header");
    }
    std::vector<CsvRecord> records;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string c;
        std::istringstream fields(line);
        while (std::getline(fields, c, ',')) cells.push_back(c);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        if (cells.size() != 9) {
            throw std::invalid_argument("csv line " + std::to_string(lineno) + ": expected 9 fields, got " +
                                        std::to_string(cells.size()));
        }
        CsvRecord r;
        r.eps1 = parse_double(cells[0], lineno).value_or(0.0);
        r.eps2 = parse_double(cells[1], lineno).value_or(0.0);
        r.analytical_db = parse_double(cells[2], lineno);
        r.empirical_db = parse_double(cells[3], lineno);
        r.stderr_db = parse_double(cells[4], lineno);
        r.lambda1 = parse_double(cells[5], lineno);
        r.lambda2 = parse_double(cells[6], lineno);
        if (!cells[7].empty()) r.trials = std::stol(cells[7]);
        r.seed = std::stoull(cells[8]);
        records.push_back(r);
    }
    return records;
}

void write_csv(std::span<const PointResult> table, const std::filesystem::path& path) {
    std::vector<CsvRecord> records;
    records.reserve(table.size());
    for (const PointResult& r : table) records.push_back(to_record(r));
    const std::string text = format_csv(records);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

}  // namespace afcfo
