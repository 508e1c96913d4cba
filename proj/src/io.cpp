#include "lpsr/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lpsr::io {

namespace {

// Strip comments and concatenate the remaining tokens.
std::stringstream tokenize(std::istream& in) {
  std::stringstream tokens;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    tokens << line << '\n';
  }
  return tokens;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Eigen::MatrixXd read_matrix(std::istream& in) {
  std::stringstream t = tokenize(in);
  int rows = 0, cols = 0;
  if (!(t >> rows >> cols) || rows < 1 || cols < 1) {
    throw std::runtime_error("matrix file: bad 'rows cols' header");
  }
  Eigen::MatrixXd A(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (!(t >> A(i, j))) {
        throw std::runtime_error("matrix file: not enough values");
      }
    }
  }
  return A;
}

Eigen::VectorXd read_vector(std::istream& in) {
  std::stringstream t = tokenize(in);
  int n = 0;
  if (!(t >> n) || n < 1) {
    throw std::runtime_error("vector file: bad 'n' header");
  }
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) {
    if (!(t >> v(i))) {
      throw std::runtime_error("vector file: not enough values");
    }
  }
  return v;
}

void write_matrix(std::ostream& out, const Eigen::MatrixXd& A) {
  out << A.rows() << ' ' << A.cols() << '\n';
  for (int i = 0; i < A.rows(); ++i) {
    for (int j = 0; j < A.cols(); ++j) {
      out << (j ? " " : "") << format_double(A(i, j));
    }
    out << '\n';
  }
}

void write_vector(std::ostream& out, const Eigen::VectorXd& v) {
  out << v.size() << '\n';
  for (int i = 0; i < v.size(); ++i) out << format_double(v(i)) << '\n';
}

Eigen::MatrixXd read_matrix(const std::string& path) {
  auto in = open_or_throw(path);
  return read_matrix(in);
}

Eigen::VectorXd read_vector(const std::string& path) {
  auto in = open_or_throw(path);
  return read_vector(in);
}

void write_matrix(const std::string& path, const Eigen::MatrixXd& A) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_matrix(out, A);
}

void write_vector(const std::string& path, const Eigen::VectorXd& v) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_vector(out, v);
}

std::map<std::string, std::string> read_key_values(const std::string& path) {
  auto in = open_or_throw(path);
  std::map<std::string, std::string> kv;
  std::string line;
  auto trim = [](std::string s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected 'key = value'");
    }
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

}  // namespace lpsr::io
