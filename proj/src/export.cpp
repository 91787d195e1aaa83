#include "cavity/export.hpp"

#include <fmt/format.h>

#include <stdexcept>

namespace cavity {

std::string format_real(double value) {
  if (value == 0.0) return "0";  // folds -0
  return fmt::format("{:.17g}", value);
}

void write_grid_csv(std::ostream& out, const StreamFunction& psi, int n) {
  out << "x,y,psi\n";
  for (const auto& p : triangle_lattice(psi.domain(), n)) {
    out << format_real(p.x) << ',' << format_real(p.y) << ',' << format_real(psi(p)) << '\n';
  }
}

void write_streamlines_csv(std::ostream& out, const std::vector<Streamline>& lines, const StreamFunction& psi) {
  out << "trace_id,step,x,y,psi\n";
  for (std::size_t id = 0; id < lines.size(); ++id) {
    const auto& vertices = lines[id].vertices;
    for (std::size_t k = 0; k < vertices.size(); ++k) {
      out << id << ',' << k << ',' << format_real(vertices[k].x) << ',' << format_real(vertices[k].y) << ','
          << format_real(psi(vertices[k])) << '\n';
    }
  }
}

void write_stagnation_csv(std::ostream& out, const std::vector<StagnationPoint>& points) {
  out << "x,y,class,speed\n";
  for (const auto& s : points) {
    out << format_real(s.location.x) << ',' << format_real(s.location.y) << ',' << to_string(s.kind) << ','
        << format_real(s.residual_speed) << '\n';
  }
}

void write_table_csv(std::ostream& out, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw std::invalid_argument("write_table_csv: ragged row");
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_real(row[i]);
    out << '\n';
  }
}

}  // namespace cavity
