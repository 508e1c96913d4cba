#ifndef LPSR_IO_HPP
#define LPSR_IO_HPP

#include <Eigen/Dense>
#include <iosfwd>
#include <map>
#include <string>

namespace lpsr::io {

// Delimited-text formats. A matrix file starts with a header line
// "rows cols", a vector file with "n"; values follow whitespace-separated,
// row-major. Lines starting with '#' are comments.

Eigen::MatrixXd read_matrix(const std::string& path);
Eigen::VectorXd read_vector(const std::string& path);
void write_matrix(const std::string& path, const Eigen::MatrixXd& A);
void write_vector(const std::string& path, const Eigen::VectorXd& v);

Eigen::MatrixXd read_matrix(std::istream& in);
Eigen::VectorXd read_vector(std::istream& in);
void write_matrix(std::ostream& out, const Eigen::MatrixXd& A);
void write_vector(std::ostream& out, const Eigen::VectorXd& v);

/// Shortest round-trippable decimal representation of a double.
std::string format_double(double v);

/// Flat "key = value" config file; '#' comments and blank lines ignored.
std::map<std::string, std::string> read_key_values(const std::string& path);

}  // namespace lpsr::io

#endif  // LPSR_IO_HPP
