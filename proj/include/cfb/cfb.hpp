#pragma once

/// Population-level concordance statistic for benefit (cfb): exact discrete
/// evaluation, Monte Carlo for continuous covariates, the linear-Gaussian
/// closed form, improperness search, counterfactual screening and matched
/// pair construction.

#include "cfb/concordance.hpp"
#include "cfb/counterfactual_screen.hpp"
#include "cfb/csv.hpp"
#include "cfb/distribution.hpp"
#include "cfb/errors.hpp"
#include "cfb/histogram.hpp"
#include "cfb/improper_search.hpp"
#include "cfb/linear_gaussian.hpp"
#include "cfb/matched_pairs.hpp"
#include "cfb/monte_carlo.hpp"
#include "cfb/normal.hpp"
#include "cfb/oracle.hpp"
#include "cfb/parallel.hpp"
#include "cfb/population.hpp"
#include "cfb/prob_triple.hpp"
#include "cfb/rng.hpp"
#include "cfb/version.hpp"
