#include "casctree/iogen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "casctree/symcore.hpp"

namespace casctree {

namespace {

constexpr double kPi = 3.14159265358979323846;
// Keeps a freak tail draw from producing a numerically singular instance.
constexpr double kWeightClamp = 1e8;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Matrix parse_csv_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open for reading");
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() && in.peek() == EOF) break;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string tok;
    int col = 0;
    while (std::getline(ss, tok, ',')) {
      ++col;
      const char* begin = tok.c_str();
      char* end = nullptr;
      double v = std::strtod(begin, &end);
      while (end && *end == ' ') ++end;
      if (end == begin || (end && *end != '\0') || !std::isfinite(v))
        throw ParseError(path, lineno, col, tok);
      row.push_back(v);
    }
    if (row.empty()) throw ParseError(path, lineno, 1, "<empty line>");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw IoError(path, "empty file");
  const size_t want = rows.front().size();
  for (size_t r = 1; r < rows.size(); ++r)
    if (rows[r].size() != want)
      throw ParseError(path, static_cast<int>(r + 1),
                       static_cast<int>(std::min(rows[r].size(), want) + 1),
                       rows[r].size() < want ? "<end of line>" : "<extra token>");
  Matrix m(rows.size(), want);
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < want; ++c) m(r, c) = rows[r][c];
  return m;
}

Matrix normalize_diag(const Matrix& m) {
  Vector d = m.diagonal().cwiseSqrt();
  Matrix out = m;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j) / (d(i) * d(j));
  return out;
}

}  // namespace

CorrMatrix read_matrix(const std::string& path, bool normalize) {
  Matrix m = parse_csv_matrix(path);
  if (m.rows() != m.cols()) throw NotSquare(m.rows(), m.cols());
  if (normalize) m = normalize_diag(m);
  return validate_corr(std::move(m));
}

CorrMatrix empirical_correlation(const Matrix& samples) {
  const long m = samples.rows();
  const long n = samples.cols();
  if (m < 2) throw DimensionMismatch(m, 2);
  Matrix centered = samples.rowwise() - samples.colwise().mean();
  Matrix cov = (centered.transpose() * centered) / static_cast<double>(m - 1);
  (void)n;
  return validate_corr(normalize_diag(cov));
}

CorrMatrix generate_synthetic(const SyntheticSpec& spec) {
  if (spec.n < 2) throw std::invalid_argument("SyntheticSpec: n must be >= 2");
  if (spec.density < 0.0 || spec.density > 1.0)
    throw std::invalid_argument("SyntheticSpec: density must be in [0, 1]");
  const int n = spec.n;
  std::mt19937_64 gen(spec.seed);
  // fixed bit mapping instead of std::uniform_real_distribution so streams
  // are identical across standard libraries
  auto next_u = [&gen] { return (gen() >> 11) * 0x1.0p-53; };

  Matrix omega = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (next_u() >= spec.density) continue;
      double w = std::tan(kPi * (next_u() - 0.5));  // standard Cauchy quantile
      w = std::clamp(w, -kWeightClamp, kWeightClamp);
      omega(i, j) = omega(j, i) = w;
    }
  for (int i = 0; i < n; ++i)
    omega(i, i) = omega.row(i).cwiseAbs().sum() + 1.0;

  Matrix Linv = invert_lower(cholesky_lower(omega));
  Matrix sigma = Linv.transpose() * Linv;  // omega^-1
  return validate_corr(normalize_diag(sigma));
}

std::string generator_id() { return "mt19937_64/er-cauchy-dd/1"; }

void write_matrix(const Matrix& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError(path, "cannot open for writing");
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      out << fmt17(m(i, j));
      if (j + 1 < m.cols()) out << ',';
    }
    out << '\n';
  }
  if (!out) throw IoError(path, "write failed");
}

void write_trace(const std::vector<double>& kl_trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError(path, "cannot open for writing");
  out << "stage,kl_nats\n";
  for (size_t i = 0; i < kl_trace.size(); ++i)
    out << i << ',' << fmt17(kl_trace[i]) << '\n';
  if (!out) throw IoError(path, "write failed");
}

void sparsity_dump(const Matrix& m, const std::string& path) {
  Matrix Linv = invert_lower(cholesky_lower(0.5 * (m + m.transpose())));
  Matrix inv = Linv.transpose() * Linv;
  write_matrix(inv.cwiseAbs(), path);
}

}  // namespace casctree
