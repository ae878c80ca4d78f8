#pragma once

#include "mcda/baselines.hpp"
#include "mcda/csv.hpp"
#include "mcda/dataset.hpp"
#include "mcda/errors.hpp"
#include "mcda/eval.hpp"
#include "mcda/generate.hpp"
#include "mcda/metrics.hpp"
#include "mcda/objective.hpp"
#include "mcda/report_io.hpp"
#include "mcda/scatter.hpp"
#include "mcda/solver.hpp"
#include "mcda/stats.hpp"
#include "mcda/subspace.hpp"
#include "mcda/types.hpp"
