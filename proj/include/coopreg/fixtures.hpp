#pragma once

#include "coopreg/scenario.hpp"

namespace coopreg {

// Bundled five-agent benchmark under dynamic state feedback: ramp/sinusoid
// reference through a saturating first-order generator, slowly drifting
// disturbances, single-integrator internal model.
Scenario example1_scenario();

// The same five agents under the distributed-observer output-feedback law:
// oscillator reference with decaying forcing, scalar drift, third-order
// internal model.
Scenario example2_scenario();

}  // namespace coopreg
