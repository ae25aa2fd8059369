#include "lassobounds/csv.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "lassobounds/errors.hpp"

namespace lassobounds {

namespace {

constexpr std::array kSummaryHeader{"n",           "p",           "K",          "replicates",
                                    "mean_mspe",   "se_mspe",     "mean_mspe_hat", "se_mspe_hat",
                                    "thm1_bound",  "thm2_bound",  "frac_est1_holds", "frac_est3_holds",
                                    "mean_max_U",  "u_bound",     "mean_max_V", "v_bound"};

constexpr std::array kReplicateHeader{"n",          "p",          "K",          "replicate",
                                      "mspe_exact", "mspe_hat",   "thm1_bound", "thm2_bound",
                                      "max_abs_U",  "max_abs_V",  "est1_lhs",   "est1_rhs",
                                      "est3_lhs",   "est3_rhs",   "gap",        "est1_holds",
                                      "est3_holds", "precondition_holds", "converged", "iterations",
                                      "l2_error",   "l2_bound"};

template <std::size_t N>
void write_header(std::ostream& out, const std::array<const char*, N>& header) {
  for (std::size_t i = 0; i < N; ++i) out << (i ? "," : "") << header[i];
  out << '\n';
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

// Reads all data rows after checking the header matches exactly.
template <std::size_t N>
std::vector<std::vector<std::string>> read_table(const std::filesystem::path& path,
                                                 const std::array<const char*, N>& header) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw IoError(path.string() + ": empty file");
  const auto names = split(line);
  if (names.size() != N) throw IoError(path.string() + ": unexpected header");
  for (std::size_t i = 0; i < N; ++i)
    if (names[i] != header[i]) throw IoError(path.string() + ": unexpected column '" + names[i] + "'");

  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split(line);
    if (fields.size() != N) throw IoError(path.string() + ": row with " + std::to_string(fields.size()) + " fields");
    rows.push_back(std::move(fields));
  }
  return rows;
}

double to_double(const std::string& s) {
  try {
    return std::stod(s);
  } catch (const std::exception&) {
    throw IoError("malformed number '" + s + "'");
  }
}

long to_long(const std::string& s) {
  try {
    return std::stol(s);
  } catch (const std::exception&) {
    throw IoError("malformed integer '" + s + "'");
  }
}

void open_for_write(std::ofstream& out, const std::filesystem::path& path) {
  out.open(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", value);
  return buf.data();
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  write_header(out, kSummaryHeader);
  for (const auto& r : rows) {
    out << r.n << ',' << r.p << ',' << format_double(r.K) << ',' << r.replicates << ','
        << format_double(r.mean_mspe) << ',' << format_double(r.se_mspe) << ',' << format_double(r.mean_mspe_hat)
        << ',' << format_double(r.se_mspe_hat) << ',' << format_double(r.thm1_bound) << ','
        << format_double(r.thm2_bound) << ',' << format_double(r.frac_est1_holds) << ','
        << format_double(r.frac_est3_holds) << ',' << format_double(r.mean_max_U) << ','
        << format_double(r.u_bound) << ',' << format_double(r.mean_max_V) << ',' << format_double(r.v_bound)
        << '\n';
  }
}

void write_replicates_csv(std::ostream& out, const std::vector<ReplicateRecord>& rows) {
  write_header(out, kReplicateHeader);
  for (const auto& rec : rows) {
    const auto& r = rec.report;
    out << rec.n << ',' << rec.p << ',' << format_double(rec.K) << ',' << rec.replicate << ','
        << format_double(r.mspe_exact) << ',' << format_double(r.mspe_hat) << ',' << format_double(r.thm1_bound)
        << ',' << format_double(r.thm2_bound) << ',' << format_double(r.max_abs_U) << ','
        << format_double(r.max_abs_V) << ',' << format_double(r.est1_lhs) << ',' << format_double(r.est1_rhs)
        << ',' << format_double(r.est3_lhs) << ',' << format_double(r.est3_rhs) << ',' << format_double(r.gap)
        << ',' << int(r.est1_holds) << ',' << int(r.est3_holds) << ',' << int(r.precondition_holds) << ','
        << int(rec.converged) << ',' << rec.iterations << ',' << format_double(rec.l2_error) << ','
        << format_double(rec.l2_bound) << '\n';
  }
}

std::vector<SummaryRow> read_summary_csv(const std::filesystem::path& path) {
  std::vector<SummaryRow> out;
  for (const auto& f : read_table(path, kSummaryHeader)) {
    SummaryRow r;
    r.n = to_long(f[0]);
    r.p = to_long(f[1]);
    r.K = to_double(f[2]);
    r.replicates = to_long(f[3]);
    r.mean_mspe = to_double(f[4]);
    r.se_mspe = to_double(f[5]);
    r.mean_mspe_hat = to_double(f[6]);
    r.se_mspe_hat = to_double(f[7]);
    r.thm1_bound = to_double(f[8]);
    r.thm2_bound = to_double(f[9]);
    r.frac_est1_holds = to_double(f[10]);
    r.frac_est3_holds = to_double(f[11]);
    r.mean_max_U = to_double(f[12]);
    r.u_bound = to_double(f[13]);
    r.mean_max_V = to_double(f[14]);
    r.v_bound = to_double(f[15]);
    out.push_back(r);
  }
  return out;
}

std::vector<ReplicateRecord> read_replicates_csv(const std::filesystem::path& path) {
  std::vector<ReplicateRecord> out;
  for (const auto& f : read_table(path, kReplicateHeader)) {
    ReplicateRecord rec;
    rec.n = to_long(f[0]);
    rec.p = to_long(f[1]);
    rec.K = to_double(f[2]);
    rec.replicate = to_long(f[3]);
    auto& r = rec.report;
    r.mspe_exact = to_double(f[4]);
    r.mspe_hat = to_double(f[5]);
    r.thm1_bound = to_double(f[6]);
    r.thm2_bound = to_double(f[7]);
    r.max_abs_U = to_double(f[8]);
    r.max_abs_V = to_double(f[9]);
    r.est1_lhs = to_double(f[10]);
    r.est1_rhs = to_double(f[11]);
    r.est3_lhs = to_double(f[12]);
    r.est3_rhs = to_double(f[13]);
    r.gap = to_double(f[14]);
    r.est1_holds = to_long(f[15]) != 0;
    r.est3_holds = to_long(f[16]) != 0;
    r.precondition_holds = to_long(f[17]) != 0;
    rec.converged = to_long(f[18]) != 0;
    rec.iterations = to_long(f[19]);
    rec.l2_error = to_double(f[20]);
    rec.l2_bound = to_double(f[21]);
    out.push_back(rec);
  }
  return out;
}

void write_summary_csv(const std::filesystem::path& path, const std::vector<SummaryRow>& rows) {
  std::ofstream out;
  open_for_write(out, path);
  write_summary_csv(out, rows);
  if (!out) throw IoError("write failed: " + path.string());
}

void write_replicates_csv(const std::filesystem::path& path, const std::vector<ReplicateRecord>& rows) {
  std::ofstream out;
  open_for_write(out, path);
  write_replicates_csv(out, rows);
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace lassobounds
