#pragma once

// Umbrella header for the bipennate SMA actuator toolkit.

#include "bpsma/config.hpp"
#include "bpsma/config_io.hpp"
#include "bpsma/csv.hpp"
#include "bpsma/dfmea.hpp"
#include "bpsma/drive.hpp"
#include "bpsma/dsc.hpp"
#include "bpsma/error.hpp"
#include "bpsma/hsam.hpp"
#include "bpsma/material.hpp"
#include "bpsma/pennate.hpp"
#include "bpsma/plot.hpp"
#include "bpsma/series_io.hpp"
#include "bpsma/sim_engine.hpp"
#include "bpsma/study.hpp"
#include "bpsma/thermal.hpp"
