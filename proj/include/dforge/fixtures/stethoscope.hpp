#pragma once

#include "dforge/core/project.hpp"

namespace dforge::fixtures {

/// The digital stethoscope case study: opportunity funnel, needs, metrics,
/// benchmarks, target values, concept combination chart, and the screening
/// and scoring matrices, with the document's stated results as declared
/// overlays.
Project stethoscope_project();

}  // namespace dforge::fixtures
