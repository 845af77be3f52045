#pragma once

#include "mec/bench.hpp"
#include "mec/coders.hpp"
#include "mec/combine.hpp"
#include "mec/config.hpp"
#include "mec/covsel.hpp"
#include "mec/errors.hpp"
#include "mec/histogram.hpp"
#include "mec/io.hpp"
#include "mec/random.hpp"
#include "mec/report.hpp"
#include "mec/specfun.hpp"
#include "mec/synth.hpp"
