#ifndef DIVLAB_REPORT_HPP
#define DIVLAB_REPORT_HPP

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "divlab/inequalities.hpp"

namespace divlab::cli {

inline constexpr const char* kCsvHeader =
    "t,tau,gamma0,lambda,g,P_I,CP_I,NM1,NM2,d,lhs_p,rhs_p,ok_p,ok_p_strict,lhs_cp,rhs_cp,ok_cp,"
    "singular";

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CsvError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// 12 significant digits ("%.12g").
std::string format_number(double x);

/// One CSV line without the trailing newline.
std::string csv_row(const inequalities::VerdictRecord& r);

/// Header plus one line per record, '\n' terminated.
std::string render_csv(std::span<const inequalities::VerdictRecord> records);

/// Inverse of csv_row. Argmax fields are not part of the CSV and stay
/// default. Throws CsvError on a malformed line.
inequalities::VerdictRecord parse_csv_row(const std::string& line);

/// Header check plus parse_csv_row for every data line.
std::vector<inequalities::VerdictRecord> parse_csv(const std::string& text);

nlohmann::json record_json(const inequalities::VerdictRecord& r);
nlohmann::json summary_json(const inequalities::Summary& s);

/// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& bytes);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& bytes);

struct RunManifest {
  nlohmann::json config;
  std::string version;
  double duration_s = 0.0;
  std::size_t records = 0;
  std::size_t singular = 0;
  /// file name -> SHA-256 of the bytes read back from disk.
  std::vector<std::pair<std::string, std::string>> digests;

  nlohmann::json to_json() const;
};

}  // namespace divlab::cli

#endif  // DIVLAB_REPORT_HPP
