#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "statdist/mixed.hpp"
#include "statdist/pure_state.hpp"

namespace statdist {

// Plain-text state format: line 1 is `dims d1 d2 ... dn`, followed by
// total_dim amplitude lines `re im` in row-major (party 0 most significant)
// order. A blank line may separate a second block holding a second state.
// Parse failures throw ParseError carrying the 1-based offending line.
std::vector<PureState> parse_states(std::istream& in);
std::vector<PureState> parse_state_file(const std::string& path);

// Plain-text matrix format: line 1 is `dim n`, then n*n lines `re im`
// row-major.
Eigen::MatrixXcd parse_matrix(std::istream& in);
Eigen::MatrixXcd parse_matrix_file(const std::string& path);

// Density matrices reuse the matrix format; Hermiticity, unit trace and
// positivity are validated on load (via the MixedState constructor).
MixedState parse_density_file(const std::string& path);

// Writers print every double with %.17g so a write-then-read round trip
// reproduces the amplitudes bit for bit.
void write_states(std::ostream& out, const std::vector<PureState>& states);
void write_state_file(const std::string& path,
                      const std::vector<PureState>& states);
void write_matrix(std::ostream& out, const Eigen::MatrixXcd& m);
void write_matrix_file(const std::string& path, const Eigen::MatrixXcd& m);

// Shortest decimal form that round-trips the double exactly (%.17g).
std::string format_double(double x);

}  // namespace statdist
