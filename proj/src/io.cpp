#include "photon_slh/io.hpp"

#include "photon_slh/errors.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace photon_slh::io {

namespace {

using nlohmann::json;

Complex complex_from(const json& j, const std::string& where) {
  if (j.is_number()) {
    return {j.get<double>(), 0.0};
  }
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ParseError(where + ": expected a complex number [re, im]");
}

json complex_to(Complex c) { return json::array({c.real(), c.imag()}); }

Matrix matrix_from(const json& j, Index rows, Index cols, const std::string& where) {
  if (!j.is_array() || static_cast<Index>(j.size()) != rows) {
    throw ParseError(where + ": expected " + std::to_string(rows) + " rows");
  }
  Matrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw ParseError(where + ": row " + std::to_string(r) + " must have " +
                       std::to_string(cols) + " entries");
    }
    for (Index c = 0; c < cols; ++c) {
      m(r, c) = complex_from(row[static_cast<std::size_t>(c)],
                             where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
  }
  return m;
}

json matrix_to(const Matrix& m) {
  json out = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(complex_to(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

const json& field(const json& doc, const char* name) {
  auto it = doc.find(name);
  if (it == doc.end()) {
    throw ParseError(std::string("model: missing field \"") + name + "\"");
  }
  return *it;
}

Index positive_count(const json& doc, const char* name) {
  const json& v = field(doc, name);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw ParseError(std::string("model: \"") + name + "\" must be a positive integer");
  }
  return static_cast<Index>(v.get<long long>());
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, sep)) out.push_back(cur);
  return out;
}

double parse_number(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() && s.find_first_not_of(" \t\r", used) != std::string::npos) {
      throw std::invalid_argument(s);
    }
    return v;
  } catch (const std::exception&) {
    throw ParseError("pulse csv line " + std::to_string(line) + ": bad number '" + s + "'");
  }
}

}  // namespace

SLHModel parse_model(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("model: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ParseError("model: top-level value must be an object");
  }
  const Index n = positive_count(doc, "levels");
  const Index k = positive_count(doc, "channels");
  Matrix s = matrix_from(field(doc, "S"), k, k, "S");
  Operator h0(matrix_from(field(doc, "H0"), n, n, "H0"));

  if (doc.contains("L")) {
    const json& ls = doc["L"];
    if (!ls.is_array() || static_cast<Index>(ls.size()) != k) {
      throw ParseError("model: \"L\" must list one matrix per channel");
    }
    std::vector<Operator> couplings;
    for (std::size_t i = 0; i < ls.size(); ++i) {
      couplings.emplace_back(matrix_from(ls[i], n, n, "L[" + std::to_string(i) + "]"));
    }
    return SLHModel::general(std::move(s), std::move(couplings), std::move(h0));
  }

  const json& t = field(doc, "theta");
  if (!t.is_array() || static_cast<Index>(t.size()) != k) {
    throw ParseError("model: \"theta\" must have one entry per channel");
  }
  Vector theta(k);
  for (Index i = 0; i < k; ++i) {
    theta(i) = complex_from(t[static_cast<std::size_t>(i)], "theta[" + std::to_string(i) + "]");
  }
  Operator l0(matrix_from(field(doc, "L0"), n, n, "L0"));
  return SLHModel(std::move(s), std::move(theta), std::move(l0), std::move(h0));
}

SLHModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open model file " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

std::string dump_model(const SLHModel& model) {
  json doc;
  doc["levels"] = model.levels();
  doc["channels"] = model.channels();
  doc["S"] = matrix_to(model.scattering());
  if (model.factorized()) {
    json theta = json::array();
    for (Index i = 0; i < model.theta().size(); ++i) theta.push_back(complex_to(model.theta()(i)));
    doc["theta"] = std::move(theta);
    doc["L0"] = matrix_to(model.coupling_operator().matrix());
  } else {
    json ls = json::array();
    for (const auto& l : model.couplings()) ls.push_back(matrix_to(l.matrix()));
    doc["L"] = std::move(ls);
  }
  doc["H0"] = matrix_to(model.hamiltonian().matrix());
  return doc.dump(2);
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

Pulse read_pulse_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) {
    throw ParseError("pulse csv: empty input");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t,ch,re,im") {
    throw ParseError("pulse csv: header must be 't,ch,re,im'");
  }
  std::vector<double> times;
  std::map<std::pair<std::size_t, long>, Complex> values;
  long max_ch = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cols = split(line, ',');
    if (cols.size() != 4) {
      throw ParseError("pulse csv line " + std::to_string(line_no) + ": expected 4 columns");
    }
    const double t = parse_number(cols[0], line_no);
    const double ch_d = parse_number(cols[1], line_no);
    const long ch = std::lround(ch_d);
    if (ch < 1 || static_cast<double>(ch) != ch_d) {
      throw ParseError("pulse csv line " + std::to_string(line_no) +
                       ": channel must be a positive integer");
    }
    if (times.empty() || t != times.back()) {
      if (!times.empty() && !(t > times.back())) {
        throw ParseError("pulse csv line " + std::to_string(line_no) +
                         ": times must be increasing");
      }
      times.push_back(t);
    }
    max_ch = std::max(max_ch, ch);
    values[{times.size() - 1, ch - 1}] =
        Complex(parse_number(cols[2], line_no), parse_number(cols[3], line_no));
  }
  if (times.size() < 2) {
    throw ParseError("pulse csv: need at least two time samples");
  }
  const double dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
  for (std::size_t j = 1; j < times.size(); ++j) {
    if (std::abs(times[j] - times[j - 1] - dt) > 1e-9 * std::max(dt, std::abs(times[j]))) {
      throw ParseError("pulse csv: time samples are not uniformly spaced");
    }
  }
  TimeGrid grid;
  try {
    grid = TimeGrid(times.front(), dt, times.size());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("pulse csv: ") + e.what());
  }
  Matrix samples = Matrix::Zero(static_cast<Index>(times.size()), max_ch);
  for (const auto& [key, v] : values) {
    samples(static_cast<Index>(key.first), key.second) = v;
  }
  return Pulse::sampled(grid, std::move(samples));
}

void write_pulse_csv(std::ostream& out, const Pulse& p) {
  out << "t,ch,re,im\n";
  const auto& s = p.samples();
  for (std::size_t j = 0; j < p.grid().size; ++j) {
    const std::string t = format_double(p.grid().time(j));
    for (Index k = 0; k < s.cols(); ++k) {
      const Complex v = s(static_cast<Index>(j), k);
      out << t << ',' << (k + 1) << ',' << format_double(v.real()) << ','
          << format_double(v.imag()) << '\n';
    }
  }
}

void write_spectrum_csv(std::ostream& out, const Spectrum& s) {
  out << "omega,ch,re,im\n";
  for (std::size_t m = 0; m < s.omegas.size; ++m) {
    const std::string w = format_double(s.omegas[m]);
    for (Index k = 0; k < s.values.cols(); ++k) {
      const Complex v = s.values(static_cast<Index>(m), k);
      out << w << ',' << (k + 1) << ',' << format_double(v.real()) << ','
          << format_double(v.imag()) << '\n';
    }
  }
}

}  // namespace photon_slh::io
