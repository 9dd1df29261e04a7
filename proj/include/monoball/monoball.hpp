#pragma once

#include "monoball/bohr.hpp"
#include "monoball/error.hpp"
#include "monoball/group.hpp"
#include "monoball/harmonic.hpp"
#include "monoball/io.hpp"
#include "monoball/linear_character.hpp"
#include "monoball/metric.hpp"
#include "monoball/parallel.hpp"
#include "monoball/pipeline.hpp"
#include "monoball/rational.hpp"
#include "monoball/report.hpp"
#include "monoball/setops.hpp"
#include "monoball/spectra.hpp"
#include "monoball/structure.hpp"
