#pragma once

// Umbrella header for the flock-formation game solver library.

#include "ffg/analysis.hpp"
#include "ffg/game.hpp"
#include "ffg/json_io.hpp"
#include "ffg/oracle.hpp"
#include "ffg/param_gen.hpp"
#include "ffg/result_types.hpp"
#include "ffg/sfg.hpp"
#include "ffg/spe_continuous.hpp"
#include "ffg/spe_discrete.hpp"
#include "ffg/verify.hpp"
