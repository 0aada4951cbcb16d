#pragma once

#include "wordlab/engine.hpp"
#include "wordlab/error.hpp"
#include "wordlab/letter_stats.hpp"
#include "wordlab/qlearn.hpp"
#include "wordlab/rng.hpp"
#include "wordlab/seq_search.hpp"
#include "wordlab/stats.hpp"
#include "wordlab/strategies.hpp"
