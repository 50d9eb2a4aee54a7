#pragma once

#include "allspeed/acoustics.hpp"
#include "allspeed/array2d.hpp"
#include "allspeed/config.hpp"
#include "allspeed/diagnostics.hpp"
#include "allspeed/driver.hpp"
#include "allspeed/euler_common.hpp"
#include "allspeed/euler_lp.hpp"
#include "allspeed/euler_relax.hpp"
#include "allspeed/fused.hpp"
#include "allspeed/grid.hpp"
#include "allspeed/io.hpp"
#include "allspeed/parallel.hpp"
#include "allspeed/problems.hpp"
#include "allspeed/stencil.hpp"
#include "allspeed/toy.hpp"
