#pragma once

#include "acoe.hpp"
#include "bipoint.hpp"
#include "ck.hpp"
#include "ck_suite.hpp"
#include "cocycle.hpp"
#include "distinguish.hpp"
#include "error.hpp"
#include "groupoid.hpp"
#include "io.hpp"
#include "ktheory.hpp"
#include "matrix.hpp"
#include "numeric.hpp"
#include "orbits.hpp"
#include "poly.hpp"
#include "series.hpp"
#include "snf.hpp"
#include "word.hpp"
#include "zeta.hpp"
