#include "confunc/state_io.hpp"

#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace confunc::states {

namespace {

std::string format(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw StateFormatError("state file: cannot parse " + what + " '" + text + "'");
  }
}

}  // namespace

void write_state(std::ostream& out, const GriddedState& state) {
  const Grid& g = state.grid();
  out << "# confunc-state\n";
  out << "# n=" << g.size() << " x_min=" << format(g.x_min()) << " x_max=" << format(g.x_max())
      << " hbar=" << format(state.hbar()) << " representation="
      << (state.representation() == Representation::position ? "position" : "momentum")
      << " conjugate_min=" << format(state.conjugate_min()) << "\n";
  out << "x re_psi im_psi\n";
  const auto amps = state.amplitudes();
  for (int i = 0; i < g.size(); ++i)
    out << format(g.point(i)) << ' ' << format(amps[i].real()) << ' ' << format(amps[i].imag())
        << '\n';
}

GriddedState read_state(std::istream& in) {
  std::map<std::string, std::string> header;
  std::string line;
  bool have_columns = false;
  while (!have_columns && std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream fields(line.substr(1));
      std::string field;
      while (fields >> field) {
        const auto eq = field.find('=');
        if (eq != std::string::npos) header[field.substr(0, eq)] = field.substr(eq + 1);
      }
      continue;
    }
    if (line.rfind("x ", 0) != 0) throw StateFormatError("state file: missing column header");
    have_columns = true;
  }
  for (const char* key : {"n", "x_min", "x_max", "hbar"})
    if (!header.contains(key)) throw StateFormatError(std::string("state file: missing ") + key);

  const double n_value = parse_double(header["n"], "n");
  if (n_value != std::floor(n_value) || n_value < 1)
    throw StateFormatError("state file: n must be a positive integer");
  const int n = static_cast<int>(n_value);
  const double x_min = parse_double(header["x_min"], "x_min");
  const double x_max = parse_double(header["x_max"], "x_max");
  const double hbar = parse_double(header["hbar"], "hbar");
  auto representation = Representation::position;
  if (header.contains("representation")) {
    if (header["representation"] == "momentum")
      representation = Representation::momentum;
    else if (header["representation"] != "position")
      throw StateFormatError("state file: unknown representation");
  }
  std::optional<double> conjugate_min;
  if (header.contains("conjugate_min"))
    conjugate_min = parse_double(header["conjugate_min"], "conjugate_min");

  try {
    const Grid grid(x_min, x_max, n);
    std::vector<Complex> amps;
    amps.reserve(n);
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::istringstream row(line);
      std::string xs;
      std::string re;
      std::string im;
      if (!(row >> xs >> re >> im)) throw StateFormatError("state file: short row '" + line + "'");
      const double x = parse_double(xs, "x");
      const auto i = static_cast<int>(amps.size());
      if (i >= n) throw StateFormatError("state file: more rows than n");
      if (std::abs(x - grid.point(i)) > 1e-9 * std::max(1.0, std::abs(x)))
        throw StateFormatError("state file: row " + std::to_string(i) + " is off the grid");
      amps.emplace_back(parse_double(re, "re_psi"), parse_double(im, "im_psi"));
    }
    if (static_cast<int>(amps.size()) != n)
      throw StateFormatError("state file: expected " + std::to_string(n) + " rows");
    return GriddedState(grid, std::move(amps), hbar, representation, conjugate_min);
  } catch (const std::invalid_argument& e) {
    throw StateFormatError(std::string("state file: ") + e.what());
  }
}

}  // namespace confunc::states
