#pragma once

// Umbrella header.

#include "hopfdual/ring.hpp"
#include "hopfdual/matrix.hpp"
#include "hopfdual/normal_forms.hpp"
#include "hopfdual/polynomial.hpp"
#include "hopfdual/fp_module.hpp"
#include "hopfdual/sc_algebra.hpp"
#include "hopfdual/filtered_algebra.hpp"
#include "hopfdual/hopf.hpp"
#include "hopfdual/finite_dual.hpp"
#include "hopfdual/rational.hpp"
#include "hopfdual/smash.hpp"
#include "hopfdual/session.hpp"
