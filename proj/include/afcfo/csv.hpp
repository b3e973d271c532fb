#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "afcfo/experiment.hpp"

namespace afcfo {

inline constexpr std::string_view kCsvHeader =
    "eps1,eps2,analytical_db,empirical_db,stderr_db,lambda1,lambda2,trials,seed";

/// One CSV line. Missing values render as empty cells.
struct CsvRecord {
    double eps1 = 0.0;
    double eps2 = 0.0;
    std::optional<double> analytical_db;
    std::optional<double> empirical_db;
    std::optional<double> stderr_db;
    std::optional<double> lambda1;
    std::optional<double> lambda2;
    std::optional<long> trials;
    std::uint64_t seed = 0;
};

[[nodiscard]] CsvRecord to_record(const PointResult& r);

/// Header plus one line per record; floats with 9 significant digits, the
/// infinite-SNR sentinel as `inf`.
[[nodiscard]] std::string format_csv(std::span<const CsvRecord> records);
[[nodiscard]] std::vector<CsvRecord> parse_csv(std::string_view text);

/// Throws std::runtime_error naming the path on I/O failure.
void write_csv(std::span<const PointResult> table, const std::filesystem::path& path);

}  // namespace afcfo
