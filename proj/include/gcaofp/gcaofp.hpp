#pragma once

#include "engine.hpp"
#include "game.hpp"
#include "graph.hpp"
#include "io.hpp"
#include "lpahk.hpp"
#include "metrics.hpp"
#include "opinion.hpp"
#include "rng.hpp"
#include "state.hpp"
#include "study.hpp"
#include "summary.hpp"
