#include "divlab/report.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

#include <openssl/evp.h>

namespace divlab::cli {

using inequalities::VerdictRecord;
using nlohmann::json;

namespace {

constexpr std::size_t kColumns = 18;

std::string field(const std::optional<double>& x) { return x ? format_number(*x) : std::string{}; }

std::string field(const std::optional<bool>& x) {
  if (!x) return {};
  return *x ? "true" : "false";
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

double to_double(const std::string& s, const char* column) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw CsvError(std::string("bad number in column ") + column + ": '" + s + "'");
  }
  return v;
}

std::optional<double> to_opt_double(const std::string& s, const char* column) {
  if (s.empty()) return std::nullopt;
  return to_double(s, column);
}

bool to_bool(const std::string& s, const char* column) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw CsvError(std::string("bad boolean in column ") + column + ": '" + s + "'");
}

std::optional<bool> to_opt_bool(const std::string& s, const char* column) {
  if (s.empty()) return std::nullopt;
  return to_bool(s, column);
}

json opt(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }
json opt(const std::optional<bool>& x) { return x ? json(*x) : json(nullptr); }

json bloch(const qmat::BlochVector& b) { return {{"r", b.r}, {"theta", b.theta}, {"phi", b.phi}}; }

json tally(const inequalities::Tally& t) {
  return {{"pass", t.pass},
          {"fail", t.fail},
          {"singular", t.singular},
          {"worst_margin", opt(t.worst_margin)},
          {"worst_t", opt(t.worst_t)},
          {"failures", t.failures}};
}

}  // namespace

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string csv_row(const VerdictRecord& r) {
  const measures::MeasureRecord& m = r.m;
  std::ostringstream os;
  os << format_number(m.t) << ',' << format_number(m.tau) << ',' << format_number(m.gamma0) << ','
     << format_number(m.lambda) << ',' << field(m.g) << ',' << field(m.p_i) << ',' << field(m.cp_i)
     << ',' << field(m.nm1) << ',' << field(m.nm2) << ',' << field(m.d) << ',' << field(r.lhs_p)
     << ',' << field(r.rhs_p) << ',' << field(r.ok_p) << ',' << field(r.ok_p_strict) << ','
     << field(r.lhs_cp) << ',' << field(r.rhs_cp) << ',' << field(r.ok_cp) << ','
     << (m.singular ? "true" : "false");
  return os.str();
}

std::string render_csv(std::span<const VerdictRecord> records) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const VerdictRecord& r : records) {
    out += csv_row(r);
    out += '\n';
  }
  return out;
}

VerdictRecord parse_csv_row(const std::string& line) {
  const std::vector<std::string> f = split(line);
  if (f.size() != kColumns) {
    throw CsvError("expected " + std::to_string(kColumns) + " fields, got " +
                   std::to_string(f.size()));
  }
  VerdictRecord r;
  measures::MeasureRecord& m = r.m;
  m.t = to_double(f[0], "t");
  m.tau = to_double(f[1], "tau");
  m.gamma0 = to_double(f[2], "gamma0");
  m.lambda = to_double(f[3], "lambda");
  m.g = to_opt_double(f[4], "g");
  m.p_i = to_opt_double(f[5], "P_I");
  m.cp_i = to_opt_double(f[6], "CP_I");
  m.nm1 = to_opt_double(f[7], "NM1");
  m.nm2 = to_opt_double(f[8], "NM2");
  m.d = to_opt_double(f[9], "d");
  r.lhs_p = to_opt_double(f[10], "lhs_p");
  r.rhs_p = to_opt_double(f[11], "rhs_p");
  r.ok_p = to_opt_bool(f[12], "ok_p");
  r.ok_p_strict = to_opt_bool(f[13], "ok_p_strict");
  r.lhs_cp = to_opt_double(f[14], "lhs_cp");
  r.rhs_cp = to_opt_double(f[15], "rhs_cp");
  r.ok_cp = to_opt_bool(f[16], "ok_cp");
  m.singular = to_bool(f[17], "singular");
  return r;
}

std::vector<VerdictRecord> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw CsvError("missing or wrong CSV header");
  std::vector<VerdictRecord> out;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    try {
      out.push_back(parse_csv_row(line));
    } catch (const CsvError& e) {
      throw CsvError("row " + std::to_string(row) + ": " + e.what());
    }
  }
  return out;
}

json record_json(const VerdictRecord& r) {
  const measures::MeasureRecord& m = r.m;
  json j = {{"t", m.t},
            {"tau", m.tau},
            {"gamma0", m.gamma0},
            {"lambda", m.lambda},
            {"singular", m.singular},
            {"g", opt(m.g)},
            {"p_i", opt(m.p_i)},
            {"cp_i", opt(m.cp_i)},
            {"nm1", opt(m.nm1)},
            {"nm2", opt(m.nm2)},
            {"d", opt(m.d)},
            {"lhs_p", opt(r.lhs_p)},
            {"rhs_p", opt(r.rhs_p)},
            {"ok_p", opt(r.ok_p)},
            {"ok_p_strict", opt(r.ok_p_strict)},
            {"lhs_cp", opt(r.lhs_cp)},
            {"rhs_cp", opt(r.rhs_cp)},
            {"ok_cp", opt(r.ok_cp)}};
  if (m.p_i) {
    j["p_i_rho1"] = bloch(m.p_i_rho1);
    j["p_i_rho2"] = bloch(m.p_i_rho2);
  }
  if (m.nm1) {
    j["nm1_state"] = bloch(m.nm1_state);
    j["nm1_gamma0"] = m.nm1_gamma0;
  }
  if (m.nm2) j["nm2_gamma0"] = m.nm2_gamma0;
  if (m.d) {
    j["d_rho1"] = bloch(m.d_rho1);
    j["d_rho2"] = bloch(m.d_rho2);
    j["d_gamma0_1"] = m.d_gamma0_1;
    j["d_gamma0_2"] = m.d_gamma0_2;
  }
  return j;
}

json summary_json(const inequalities::Summary& s) {
  return {{"records", s.records},
          {"all_pass", s.all_pass()},
          {"ok_p", tally(s.p)},
          {"ok_p_strict", tally(s.p_strict)},
          {"ok_cp", tally(s.cp)}};
}

std::string sha256_hex(const std::string& bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw IoError("write failed for " + path.string());
}

json RunManifest::to_json() const {
  json files = json::object();
  for (const auto& [name, digest] : digests) files[name] = {{"sha256", digest}};
  return {{"version", version},
          {"config", config},
          {"duration_s", duration_s},
          {"records", records},
          {"singular", singular},
          {"files", files}};
}

}  // namespace divlab::cli
