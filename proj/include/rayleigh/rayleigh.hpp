#pragma once

#include "rayleigh/bounds.hpp"
#include "rayleigh/conditioned_bernoulli.hpp"
#include "rayleigh/configuration.hpp"
#include "rayleigh/continuous.hpp"
#include "rayleigh/dependence.hpp"
#include "rayleigh/dpp.hpp"
#include "rayleigh/error.hpp"
#include "rayleigh/exclusion.hpp"
#include "rayleigh/functionals.hpp"
#include "rayleigh/graph.hpp"
#include "rayleigh/harness.hpp"
#include "rayleigh/measures.hpp"
#include "rayleigh/parallel.hpp"
#include "rayleigh/polynomial.hpp"
#include "rayleigh/rng.hpp"
#include "rayleigh/spanning_tree.hpp"
#include "rayleigh/stats.hpp"
