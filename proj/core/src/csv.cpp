#include "worldline/csv.hpp"

#include <fstream>
#include <iterator>

#include <fmt/format.h>

#include "worldline/errors.hpp"

namespace worldline::csv {

std::string format_number(double v) {
  // Avoid printing -0
  if (v == 0.0) v = 0.0;
  return fmt::format("{:.12e}", v);
}

void write_spectrum(std::ostream& out, std::span<const double> eigenvalues) {
  out << "index,eigenvalue\n";
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) out << i << ',' << format_number(eigenvalues[i]) << '\n';
}

void write_trace(std::ostream& out, std::span<const TracePoint> trace) {
  out << "iteration,energy,evaluations\n";
  for (const TracePoint& p : trace) out << p.iteration << ',' << format_number(p.energy) << ',' << p.evaluations << '\n';
}

void write_transition_series(std::ostream& out, const TransitionSeries& series) {
  out << 't';
  for (const std::string& label : series.final_labels) out << ",re_" << label << ",im_" << label << ",prob_" << label;
  out << '\n';
  for (std::size_t ti = 0; ti < series.t.size(); ++ti) {
    out << format_number(series.t[ti]);
    for (const auto& column : series.amplitudes) {
      const Complex a = column[ti];
      out << ',' << format_number(a.real()) << ',' << format_number(a.imag()) << ',' << format_number(std::norm(a));
    }
    out << '\n';
  }
}

void write_scan(std::ostream& out, std::span<const ScanPoint> scan) {
  out << "p2,abs_amplitude\n";
  for (const ScanPoint& p : scan) out << format_number(p.p2) << ',' << format_number(p.abs_amplitude) << '\n';
}

void write_wu_yang(std::ostream& out, std::span<const analytic::WuYangSample> samples) {
  out << "r,g,gprime,series_small,series_large\n";
  for (const auto& s : samples) {
    out << format_number(s.r) << ',' << format_number(s.g) << ',' << format_number(s.gprime) << ','
        << format_number(analytic::wu_yang_series_small(s.r)) << ',' << format_number(analytic::wu_yang_series_large(s.r))
        << '\n';
  }
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "' for writing");
  f << contents;
  if (!f) throw Error(ErrorCode::InvalidArgument, "failed writing '" + path + "'");
}

}  // namespace worldline::csv
