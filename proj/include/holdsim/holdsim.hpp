#pragma once

#include "holdsim/biquad.hpp"
#include "holdsim/config.hpp"
#include "holdsim/control.hpp"
#include "holdsim/csv.hpp"
#include "holdsim/freq_response.hpp"
#include "holdsim/metrics.hpp"
#include "holdsim/plant.hpp"
#include "holdsim/sensing.hpp"
#include "holdsim/signal.hpp"
#include "holdsim/simloop.hpp"
