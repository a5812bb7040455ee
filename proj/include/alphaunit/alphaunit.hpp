#pragma once

#include "alphaunit/alpha_unit.hpp"
#include "alphaunit/bn_family.hpp"
#include "alphaunit/competitors.hpp"
#include "alphaunit/errors.hpp"
#include "alphaunit/estimation.hpp"
#include "alphaunit/io.hpp"
#include "alphaunit/numeric_kernels.hpp"
#include "alphaunit/optimize.hpp"
#include "alphaunit/sampling.hpp"
#include "alphaunit/simulation.hpp"
#include "alphaunit/spc.hpp"
#include "alphaunit/unit_sample.hpp"
