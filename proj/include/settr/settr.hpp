#pragma once

#include "settr/common.hpp"
#include "settr/cone.hpp"
#include "settr/problem.hpp"
#include "settr/partition.hpp"
#include "settr/subproblem.hpp"
#include "settr/trust_region.hpp"
#include "settr/baselines.hpp"
#include "settr/suite.hpp"
#include "settr/bench.hpp"
#include "settr/io.hpp"
