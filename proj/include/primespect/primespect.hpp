#pragma once

#include "primespect/arith.hpp"
#include "primespect/correlation.hpp"
#include "primespect/ramanujan.hpp"
#include "primespect/series.hpp"
#include "primespect/sieve.hpp"
#include "primespect/spectrum.hpp"
