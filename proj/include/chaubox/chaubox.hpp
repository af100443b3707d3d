#pragma once

// Umbrella header.

#include "chaubox/csv.hpp"
#include "chaubox/datasets.hpp"
#include "chaubox/detect.hpp"
#include "chaubox/dist.hpp"
#include "chaubox/error.hpp"
#include "chaubox/fences.hpp"
#include "chaubox/random.hpp"
#include "chaubox/render.hpp"
#include "chaubox/report.hpp"
#include "chaubox/sample.hpp"
#include "chaubox/sim.hpp"
#include "chaubox/special.hpp"
