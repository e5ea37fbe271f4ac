#pragma once

// bibsonic: deterministic sonification of bibliometric publication metadata.

#include "bibsonic/baselines.hpp"
#include "bibsonic/csv.hpp"
#include "bibsonic/errors.hpp"
#include "bibsonic/event_log.hpp"
#include "bibsonic/mapping.hpp"
#include "bibsonic/midi.hpp"
#include "bibsonic/pipeline.hpp"
#include "bibsonic/pitch.hpp"
#include "bibsonic/records.hpp"
#include "bibsonic/report.hpp"
#include "bibsonic/synth.hpp"
#include "bibsonic/timeline.hpp"
#include "bibsonic/wav.hpp"
