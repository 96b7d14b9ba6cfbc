#include "statdist/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "statdist/errors.hpp"

namespace statdist {

namespace {

// getline with 1-based line accounting; Windows line endings are tolerated.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& out) {
    if (!std::getline(in_, out)) return false;
    if (!out.empty() && out.back() == '\r') out.pop_back();
    ++line_no_;
    return true;
  }

  long line() const { return line_no_; }

 private:
  std::istream& in_;
  long line_no_ = 0;
};

bool is_blank(const std::string& s) {
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::complex<double> parse_amplitude(const std::string& line, long line_no) {
  std::istringstream iss(line);
  double re = 0.0, im = 0.0;
  if (!(iss >> re >> im)) {
    throw ParseError{"expected an amplitude line `re im`", line_no};
  }
  std::string extra;
  if (iss >> extra) {
    throw ParseError{"trailing content after the two amplitude fields",
                     line_no};
  }
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw ParseError{"non-finite amplitude", line_no};
  }
  return {re, im};
}

PartyLayout parse_dims_header(const std::string& line, long line_no) {
  std::istringstream iss(line);
  std::string tag;
  iss >> tag;
  if (tag != "dims") {
    throw ParseError{"expected a `dims d1 d2 ...` header", line_no};
  }
  std::vector<int> dims;
  int d = 0;
  while (iss >> d) dims.push_back(d);
  if (!iss.eof()) {
    throw ParseError{"non-integer dimension in header", line_no};
  }
  if (dims.empty()) {
    throw ParseError{"header needs at least one dimension", line_no};
  }
  try {
    return PartyLayout(dims);
  } catch (const DimensionError& e) {
    throw ParseError{e.what(), line_no};
  }
}

}  // namespace

std::vector<PureState> parse_states(std::istream& in) {
  LineReader reader(in);
  std::vector<PureState> states;
  std::string line;
  while (reader.next(line)) {
    if (is_blank(line)) continue;
    if (states.size() == 2) {
      throw ParseError{"at most two state blocks per file", reader.line()};
    }
    const long header_line = reader.line();
    const PartyLayout layout = parse_dims_header(line, header_line);
    Eigen::VectorXcd amps(layout.total_dim());
    for (long i = 0; i < layout.total_dim(); ++i) {
      if (!reader.next(line)) {
        throw ParseError{"file ends before all " +
                             std::to_string(layout.total_dim()) +
                             " amplitudes were read",
                         reader.line() + 1};
      }
      amps[i] = parse_amplitude(line, reader.line());
    }
    try {
      states.emplace_back(layout, std::move(amps));
    } catch (const UsageError& e) {
      throw ParseError{e.what(), header_line};
    }
  }
  if (states.empty()) {
    throw ParseError{"no state block found", 1};
  }
  return states;
}

std::vector<PureState> parse_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw UsageError("cannot open state file " + path);
  }
  return parse_states(in);
}

Eigen::MatrixXcd parse_matrix(std::istream& in) {
  LineReader reader(in);
  std::string line;
  do {
    if (!reader.next(line)) {
      throw ParseError{"no matrix block found", 1};
    }
  } while (is_blank(line));

  std::istringstream iss(line);
  std::string tag;
  long n = 0;
  if (!(iss >> tag >> n) || tag != "dim") {
    throw ParseError{"expected a `dim n` header", reader.line()};
  }
  std::string extra;
  if (iss >> extra) {
    throw ParseError{"trailing content after the matrix header",
                     reader.line()};
  }
  if (n < 1) {
    throw ParseError{"matrix dimension must be positive", reader.line()};
  }
  Eigen::MatrixXcd m(n, n);
  for (long r = 0; r < n; ++r) {
    for (long c = 0; c < n; ++c) {
      if (!reader.next(line)) {
        throw ParseError{"file ends before all " + std::to_string(n * n) +
                             " entries were read",
                         reader.line() + 1};
      }
      m(r, c) = parse_amplitude(line, reader.line());
    }
  }
  return m;
}

Eigen::MatrixXcd parse_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw UsageError("cannot open matrix file " + path);
  }
  return parse_matrix(in);
}

MixedState parse_density_file(const std::string& path) {
  return MixedState(parse_matrix_file(path));
}

void write_states(std::ostream& out, const std::vector<PureState>& states) {
  for (std::size_t s = 0; s < states.size(); ++s) {
    if (s > 0) out << "\n";
    out << "dims";
    for (int p = 0; p < states[s].layout().parties(); ++p) {
      out << " " << states[s].layout().dim(p);
    }
    out << "\n";
    const Eigen::VectorXcd& amps = states[s].amps();
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
      out << format_double(amps[i].real()) << " "
          << format_double(amps[i].imag()) << "\n";
    }
  }
}

void write_state_file(const std::string& path,
                      const std::vector<PureState>& states) {
  std::ofstream out(path);
  if (!out) {
    throw UsageError("cannot open " + path + " for writing");
  }
  write_states(out, states);
  if (!out) {
    throw UsageError("failed writing " + path);
  }
}

void write_matrix(std::ostream& out, const Eigen::MatrixXcd& m) {
  out << "dim " << m.rows() << "\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      out << format_double(m(r, c).real()) << " "
          << format_double(m(r, c).imag()) << "\n";
    }
  }
}

void write_matrix_file(const std::string& path, const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("matrix files hold square matrices");
  }
  std::ofstream out(path);
  if (!out) {
    throw UsageError("cannot open " + path + " for writing");
  }
  write_matrix(out, m);
  if (!out) {
    throw UsageError("failed writing " + path);
  }
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace statdist
