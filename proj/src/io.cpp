// Copyright 2026 The wvconc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wvconc/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "wvconc/errors.hpp"

namespace wvconc {

using nlohmann::json;

namespace {

cplx parse_complex(const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw InvalidInput("invalid state JSON: complex entries must be numbers or [re, im] pairs");
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

json weak_value_json(const WeakValueResult& w) { return w.defined() ? complex_json(*w.value) : json(nullptr); }

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw InvalidInput("malformed number in image file: '" + std::string(s) + "'");
  return v;
}

std::string header_value(std::istream& is, const std::string& key) {
  std::string line;
  if (!std::getline(is, line)) throw InvalidInput("image file truncated before '" + key + "' header");
  const std::string prefix = key + ",";
  if (line.rfind(prefix, 0) != 0) throw InvalidInput("image file: expected '" + key + "' header");
  return line.substr(prefix.size());
}

}  // namespace

DensityMatrix StateInput::reduced_a() const {
  if (pure) return reduced_state(*pure, Subsystem::A);
  if (rho.dim() == 2) return rho;
  return reduced_state(rho, Subsystem::A);
}

StateInput parse_state(const json& doc) {
  if (!doc.is_object()) throw InvalidInput("invalid state JSON: expected an object");
  if (doc.contains("amplitudes")) {
    const json& a = doc["amplitudes"];
    if (!a.is_array() || a.size() != 4) throw InvalidInput("invalid state JSON: 'amplitudes' needs 4 entries");
    std::array<Amplitude, 4> amps{};
    for (std::size_t i = 0; i < 4; ++i) amps[i] = parse_complex(a[i]);
    PureTwoQubitState psi(amps);
    return {psi, DensityMatrix::from_pure(psi)};
  }
  if (doc.contains("density_matrix")) {
    const json& rows = doc["density_matrix"];
    if (!rows.is_array() || (rows.size() != 2 && rows.size() != 4))
      throw InvalidInput("invalid state JSON: 'density_matrix' must be 2x2 or 4x4");
    const std::size_t n = rows.size();
    Matrix m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      if (!rows[r].is_array() || rows[r].size() != n) throw InvalidInput("invalid state JSON: density matrix not square");
      for (std::size_t c = 0; c < n; ++c) m(r, c) = parse_complex(rows[r][c]);
    }
    return {std::nullopt, DensityMatrix(m)};
  }
  throw InvalidInput("invalid state JSON: need 'amplitudes' or 'density_matrix'");
}

StateInput parse_state_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("invalid state JSON: ") + e.what());
  }
  return parse_state(doc);
}

StateInput load_state(const std::string& source) {
  const auto first = source.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && source[first] == '{') return parse_state_text(source);
  std::ifstream in(source);
  if (!in) throw InvalidInput("cannot open state file '" + source + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_state_text(buf.str());
}

json to_json(const WeakValuePair& pair) {
  return {{"w0", weak_value_json(pair.w0)},
          {"w1", weak_value_json(pair.w1)},
          {"p0", pair.p0},
          {"p1", pair.p1},
          {"regime", std::string(to_string(pair.regime))}};
}

json to_json(const EstimateReport& report) {
  json diag = json::object();
  for (const auto& d : report.diagnostics) diag[d.name] = d.value;
  json out = {{"concurrence", report.concurrence},
              {"route", std::string(to_string(report.route))},
              {"entropy", report.entropy},
              {"weak_values", to_json(report.pair)},
              {"reduced_state", matrix_json(report.reconstructed_rho.matrix())},
              {"diagnostics", diag}};
  if (report.uncertainty) {
    const auto& u = *report.uncertainty;
    out["uncertainty"] = {{"sigma", u.sigma}, {"ci_low", u.ci_low}, {"ci_high", u.ci_high}, {"resamples", u.resamples}};
  } else {
    out["uncertainty"] = nullptr;
  }
  return out;
}

json to_json(const MixednessCertificate& cert) {
  json amps = json::array();
  for (const auto& a : cert.witness.amplitudes()) amps.push_back(complex_json(a));
  return {{"m_upper", cert.m_upper},
          {"purity_lower", cert.purity_lower},
          {"refined", cert.refined},
          {"improvements", cert.improvements},
          {"witness", {{"amplitudes", amps}}}};
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_image_csv(std::ostream& os, const IntensityImage& image) {
  const auto& g = image.grid();
  os << "nx," << g.nx() << "\nny," << g.ny() << "\nextent," << format_double(g.extent()) << '\n';
  for (int iy = 0; iy < g.ny(); ++iy) {
    for (int ix = 0; ix < g.nx(); ++ix) {
      if (ix) os << ',';
      os << format_double(image.at(ix, iy));
    }
    os << '\n';
  }
}

IntensityImage read_image_csv(std::istream& is) {
  const int nx = static_cast<int>(parse_double(header_value(is, "nx")));
  const int ny = static_cast<int>(parse_double(header_value(is, "ny")));
  const double extent = parse_double(header_value(is, "extent"));
  const PointerGrid grid(nx, ny, extent);
  std::vector<double> values;
  values.reserve(grid.size());
  std::string line;
  for (int iy = 0; iy < ny; ++iy) {
    if (!std::getline(is, line)) throw InvalidInput("image file truncated");
    std::string_view rest(line);
    for (int ix = 0; ix < nx; ++ix) {
      const auto comma = rest.find(',');
      if ((comma == std::string_view::npos) != (ix == nx - 1)) throw InvalidInput("image row has wrong length");
      values.push_back(parse_double(rest.substr(0, comma)));
      if (comma != std::string_view::npos) rest.remove_prefix(comma + 1);
    }
  }
  return IntensityImage(grid, std::move(values));
}

static_assert(std::endian::native == std::endian::little, "binary dumps assume a little-endian host");

void write_image_raw(std::ostream& data, std::ostream& sidecar, const IntensityImage& image) {
  const auto& g = image.grid();
  const auto& v = image.values();
  data.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)));
  sidecar << json{{"nx", g.nx()}, {"ny", g.ny()}, {"extent", g.extent()}, {"dtype", "float64"}, {"endian", "little"}}.dump(2)
          << '\n';
}

IntensityImage read_image_raw(std::istream& data, std::istream& sidecar) {
  json meta;
  try {
    meta = json::parse(sidecar);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("image sidecar: ") + e.what());
  }
  if (!meta.contains("nx") || !meta.contains("ny") || !meta.contains("extent"))
    throw InvalidInput("image sidecar needs nx, ny and extent");
  const PointerGrid grid(meta["nx"].get<int>(), meta["ny"].get<int>(), meta["extent"].get<double>());
  std::vector<double> values(grid.size());
  if (!data.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(values.size() * sizeof(double))))
    throw InvalidInput("raw image truncated");
  return IntensityImage(grid, std::move(values));
}

void write_positions(std::ostream& os, const DetectionRun& run) {
  const std::uint64_t n = run.n_detected();
  os.write(reinterpret_cast<const char*>(&n), sizeof n);
  for (std::size_t k = 0; k < n; ++k) {
    const double xy[2] = {run.xs[k], run.ys[k]};
    os.write(reinterpret_cast<const char*>(xy), sizeof xy);
  }
}

std::vector<std::array<double, 2>> read_positions(std::istream& is) {
  std::uint64_t n = 0;
  if (!is.read(reinterpret_cast<char*>(&n), sizeof n)) throw InvalidInput("position dump missing count header");
  std::vector<std::array<double, 2>> out(n);
  for (auto& p : out)
    if (!is.read(reinterpret_cast<char*>(p.data()), sizeof(double) * 2)) throw InvalidInput("position dump truncated");
  return out;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& points) {
  os << "m0,m1,C\n";
  for (const auto& p : points)
    os << format_double(p.m0) << ',' << format_double(p.m1) << ',' << format_double(p.concurrence) << '\n';
}

void write_campaign_csv(std::ostream& os, const std::vector<CampaignRow>& rows) {
  os << "index,epsilon";
  if (!rows.empty())
    for (const auto& c : rows.front().checks) os << ',' << c.name << "_lhs," << c.name << "_rhs," << c.name << "_slack";
  os << '\n';
  for (const auto& row : rows) {
    os << row.index << ',' << format_double(row.epsilon);
    for (const auto& c : row.checks)
      os << ',' << format_double(c.lhs) << ',' << format_double(c.rhs) << ',' << format_double(c.slack);
    os << '\n';
  }
}

}  // namespace wvconc
