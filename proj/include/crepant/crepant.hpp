#pragma once

#include "crepant/errors.hpp"
#include "crepant/exact/rational.hpp"
#include "crepant/exact/matrix.hpp"
#include "crepant/exact/lattice.hpp"
#include "crepant/special_data.hpp"
#include "crepant/datum_io.hpp"
#include "crepant/simplex_builder.hpp"
#include "crepant/triangulation.hpp"
#include "crepant/staircase.hpp"
#include "crepant/triangulator.hpp"
#include "crepant/fan.hpp"
#include "crepant/ehrhart.hpp"
#include "crepant/serialize.hpp"
