#pragma once

// Executes one configured run end to end: build the case, run the refinement
// study, print the summary table, and write every requested output file.

#include <ostream>

#include "ifem/config.hpp"
#include "ifem/study.hpp"

namespace ifem {

// Returns the study rows; throws on any failure.
std::vector<StudyRow> run_configured(const RunConfig& cfg, std::ostream& out);

}  // namespace ifem
