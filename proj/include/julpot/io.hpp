#pragma once

#include <string>

#include "julpot/compactset.hpp"
#include "julpot/poly.hpp"
#include "julpot/potential.hpp"

namespace julpot {

/// %.17g formatting used by every CSV writer.
std::string format_real(double x);

/// Binary PGM (P5): 0 = occupied, 255 = unoccupied, rows written top
/// (max y) to bottom, plus a JSON sidecar <path>.json with
/// {origin, h, width, height}.
void write_pgm(const GridSet& g, const std::string& path);
GridSet read_pgm(const std::string& path);

/// CSV with header re,im,weight.
void write_measure_csv(const DiscreteMeasure& mu, const std::string& path);
DiscreteMeasure read_measure_csv(const std::string& path);

/// The CLI text form: JSON array of [re, im] pairs, constant term first.
std::string poly_to_json(const Polynomial& p);
Polynomial poly_from_json(const std::string& text);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace julpot
