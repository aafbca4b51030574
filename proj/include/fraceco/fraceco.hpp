#pragma once

#include "fraceco/caputo.hpp"
#include "fraceco/equilibria.hpp"
#include "fraceco/gamma.hpp"
#include "fraceco/harness/emit.hpp"
#include "fraceco/harness/metrics.hpp"
#include "fraceco/harness/run.hpp"
#include "fraceco/harness/scenario.hpp"
#include "fraceco/mittag_leffler.hpp"
#include "fraceco/models.hpp"
#include "fraceco/polynomial.hpp"
#include "fraceco/serialize.hpp"
#include "fraceco/solver.hpp"
#include "fraceco/stability.hpp"
#include "fraceco/types.hpp"
