#pragma once

#include <stdexcept>
#include <string>

namespace casctree {

struct NotSquare : std::runtime_error {
  long rows, cols;
  NotSquare(long r, long c)
      : std::runtime_error("NotSquare: matrix is " + std::to_string(r) + "x" +
                           std::to_string(c)),
        rows(r),
        cols(c) {}
};

struct NotSymmetric : std::runtime_error {
  int i, j;
  double deviation;
  NotSymmetric(int i_, int j_, double dev)
      : std::runtime_error("NotSymmetric: |m(" + std::to_string(i_) + "," +
                           std::to_string(j_) + ") - m(" + std::to_string(j_) +
                           "," + std::to_string(i_) +
                           ")| = " + std::to_string(dev)),
        i(i_),
        j(j_),
        deviation(dev) {}
};

struct NotUnitDiagonal : std::runtime_error {
  int index;
  double value;
  NotUnitDiagonal(int idx, double val)
      : std::runtime_error("NotUnitDiagonal: m(" + std::to_string(idx) + "," +
                           std::to_string(idx) +
                           ") = " + std::to_string(val)),
        index(idx),
        value(val) {}
};

struct NotPositiveDefinite : std::runtime_error {
  int pivot;  // zero-based index of the first non-positive pivot
  explicit NotPositiveDefinite(int pivot_)
      : std::runtime_error("NotPositiveDefinite: pivot " +
                           std::to_string(pivot_) + " is not positive"),
        pivot(pivot_) {}
};

struct DimensionMismatch : std::runtime_error {
  DimensionMismatch(long a, long b)
      : std::runtime_error("DimensionMismatch: " + std::to_string(a) +
                           " vs " + std::to_string(b)) {}
};

struct InvalidCorrelation : std::runtime_error {
  int u, v;
  double rho;
  InvalidCorrelation(int u_, int v_, double rho_)
      : std::runtime_error("InvalidCorrelation: |rho(" + std::to_string(u_) +
                           "," + std::to_string(v_) +
                           ")| = " + std::to_string(rho_) + " >= 1"),
        u(u_),
        v(v_),
        rho(rho_) {}
};

struct CyclicEdges : std::runtime_error {
  CyclicEdges() : std::runtime_error("CyclicEdges: edge set contains a cycle") {}
};

struct InvalidCenter : std::runtime_error {
  int center;
  explicit InvalidCenter(int c)
      : std::runtime_error("InvalidCenter: node " + std::to_string(c) +
                           " out of range"),
        center(c) {}
};

struct IoError : std::runtime_error {
  std::string path;
  IoError(std::string path_, const std::string& detail)
      : std::runtime_error("IoError: " + path_ + ": " + detail),
        path(std::move(path_)) {}
};

struct ParseError : std::runtime_error {
  std::string path;
  int row, col;  // one-based location of the first bad token
  ParseError(std::string path_, int row_, int col_, const std::string& token)
      : std::runtime_error("ParseError: " + path_ + ": row " +
                           std::to_string(row_) + ", col " +
                           std::to_string(col_) + ": bad token '" + token +
                           "'"),
        path(std::move(path_)),
        row(row_),
        col(col_) {}
};

}  // namespace casctree
