#pragma once

#include "z2lat/box.hpp"
#include "z2lat/dimension.hpp"
#include "z2lat/errors.hpp"
#include "z2lat/fractal.hpp"
#include "z2lat/gf2.hpp"
#include "z2lat/io.hpp"
#include "z2lat/minweight.hpp"
#include "z2lat/parallel.hpp"
#include "z2lat/point.hpp"
#include "z2lat/point_set.hpp"
#include "z2lat/verify.hpp"
#include "z2lat/version.hpp"
#include "z2lat/walk.hpp"
