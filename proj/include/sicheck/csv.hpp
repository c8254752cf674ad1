#pragma once

#include "sicheck/dataset.hpp"

#include <iosfwd>
#include <string>

namespace sicheck {

//! Smallest dataset accepted by load_dataset.
inline constexpr Eigen::Index kMinObservations = 10;

//! Parses a header row plus numeric rows. The column named `y` is the
//! response; the remaining columns are covariates in file order. Errors
//! (missing y, ragged rows, non-numeric or empty cells) throw DataError
//! naming the line and column. `source` labels messages.
Dataset parse_dataset_csv(std::istream& in, const std::string& source = "<input>");

//! parse_dataset_csv on a file, then rejects fewer than 10 rows.
Dataset load_dataset(const std::string& path);

//! Header x1,...,xp,y and rows at full double precision, so reading the
//! output back reproduces the values exactly.
void write_dataset_csv(std::ostream& out, const Dataset& data);

} // namespace sicheck
