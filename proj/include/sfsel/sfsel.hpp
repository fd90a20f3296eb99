#pragma once

#include "sfsel/covsel.hpp"
#include "sfsel/edge_set.hpp"
#include "sfsel/eval.hpp"
#include "sfsel/io.hpp"
#include "sfsel/prox.hpp"
#include "sfsel/regularizer.hpp"
#include "sfsel/rewl1.hpp"
#include "sfsel/rng.hpp"
#include "sfsel/synth.hpp"
#include "sfsel/weights.hpp"
