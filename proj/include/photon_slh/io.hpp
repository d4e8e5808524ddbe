#pragma once

#include "photon_slh/pulse.hpp"
#include "photon_slh/slh_model.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

namespace photon_slh::io {

// Model documents:
//   { "levels": N, "channels": K,
//     "S":     [[[re, im], ...], ...],      K x K, row-major
//     "theta": [[re, im], ...],             K entries
//     "L0":    [[[re, im], ...], ...],      N x N
//     "H0":    [[[re, im], ...], ...] }     N x N
// A model whose coupling does not factor carries "L": [K matrices] in place of
// "theta" and "L0". Throws ParseError (with line/column for malformed JSON)
// or ModelError/DimensionError for inconsistent data.
SLHModel parse_model(std::string_view text);
SLHModel load_model(const std::filesystem::path& path);
std::string dump_model(const SLHModel& model);

// Fixed 17-significant-digit scientific notation.
std::string format_double(double x);

// Pulse CSV: header "t,ch,re,im", one row per (time, channel), channels
// numbered from 1, rows ordered by time then channel. Throws ParseError.
Pulse read_pulse_csv(std::istream& in);
void write_pulse_csv(std::ostream& out, const Pulse& p);

// Spectrum CSV: header "omega,ch,re,im".
void write_spectrum_csv(std::ostream& out, const Spectrum& s);

}  // namespace photon_slh::io
