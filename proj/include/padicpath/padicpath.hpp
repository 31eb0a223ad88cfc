#pragma once

#include "padicpath/characters.hpp"
#include "padicpath/dynamics.hpp"
#include "padicpath/error.hpp"
#include "padicpath/gauss.hpp"
#include "padicpath/padic.hpp"
#include "padicpath/padic_functions.hpp"
#include "padicpath/place.hpp"
#include "padicpath/polynomial.hpp"
#include "padicpath/propagators.hpp"
#include "padicpath/random.hpp"
#include "padicpath/rational.hpp"
#include "padicpath/verify.hpp"
