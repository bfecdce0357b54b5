// Serialization boundary: CSV for sampled/derived grids, with formatting
// pinned so that emit -> reload -> emit is byte-identical at a fixed
// precision.  All file-format failures throw InputFormat and name the line.
#pragma once

#include <iosfwd>
#include <string>

#include "tempus/response.hpp"
#include "tempus/temporal.hpp"

namespace tempus {

// printf("%.{precision}g") with precision clamped to [6, 17].
std::string fmt_float(double v, int precision = 17);

// Reads "omega,re,im" CSV (header required, >= 5 data rows, omega strictly
// increasing, finite nonzero values).  Throws InputFormat with the 1-based
// line number of the offending row.
SampledResponse load_sampled_response(const std::string& path);
SampledResponse read_sampled_response(std::istream& is, const std::string& name);

// "omega,tau1,tau2,masked" table.
void write_temporal_csv(std::ostream& os, const TemporalFunction& tf,
                        int precision = 17);
TemporalFunction read_temporal_csv(std::istream& is, const std::string& name);

} // namespace tempus
