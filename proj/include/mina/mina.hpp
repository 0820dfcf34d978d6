#pragma once

#include "mina/bench.hpp"
#include "mina/connectivity.hpp"
#include "mina/coverage.hpp"
#include "mina/exact.hpp"
#include "mina/generator.hpp"
#include "mina/instance.hpp"
#include "mina/instance_io.hpp"
#include "mina/lp.hpp"
#include "mina/maxflow.hpp"
#include "mina/preprocess.hpp"
#include "mina/random.hpp"
#include "mina/rational.hpp"
#include "mina/report.hpp"
#include "mina/union_find.hpp"
#include "mina/verify.hpp"
