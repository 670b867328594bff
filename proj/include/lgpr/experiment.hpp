#pragma once

#include <iosfwd>
#include <string>

#include "lgpr/config.hpp"
#include "lgpr/pipeline.hpp"

namespace lgpr {

/// Field set up for a config: preset example, or a named / sampled curve
/// with phi0 = sd * chi for `run` and projection-band data for `init`.
Example build_example(const ExperimentConfig& cfg, const Grid2D& grid, bool for_init);

LgprOptions lgpr_options(const ExperimentConfig& cfg, const Example& ex);

/// Verb drivers. Each writes its artifacts and a manifest under cfg.out and
/// a short report to `log`; solver and IO failures propagate as exceptions.
void run_verb(const ExperimentConfig& cfg, std::ostream& log);
void init_verb(const ExperimentConfig& cfg, std::ostream& log);
void study_verb(const ExperimentConfig& cfg, std::ostream& log);
void force_verb(const ExperimentConfig& cfg, const std::string& field_path, std::ostream& log);

/// 0 ok, 2 configuration, 3 solver / geometry, 4 IO, 1 anything else.
int exit_code_for(const std::exception& e);

} // namespace lgpr
