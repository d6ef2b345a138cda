#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "worldline/analytic.hpp"
#include "worldline/evolution.hpp"
#include "worldline/vqe.hpp"

// Fixed-format CSV writers.  Numbers use %.12e so reruns are byte-identical.
namespace worldline::csv {

std::string format_number(double v);

// index,eigenvalue
void write_spectrum(std::ostream& out, std::span<const double> eigenvalues);
// iteration,energy,evaluations
void write_trace(std::ostream& out, std::span<const TracePoint> trace);
// t,re_<label>,im_<label>,prob_<label>,...
void write_transition_series(std::ostream& out, const TransitionSeries& series);
// p2,abs_amplitude
void write_scan(std::ostream& out, std::span<const ScanPoint> scan);
// r,g,gprime,series_small,series_large
void write_wu_yang(std::ostream& out, std::span<const analytic::WuYangSample> samples);

// Opens `path` for writing, throwing InvalidArgument when that fails.
void write_file(const std::string& path, const std::string& contents);

}  // namespace worldline::csv
