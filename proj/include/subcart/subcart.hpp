#pragma once

#include "subcart/error.hpp"
#include "subcart/rational.hpp"
#include "subcart/poly.hpp"
#include "subcart/matrix.hpp"
#include "subcart/space.hpp"
#include "subcart/tangent.hpp"
#include "subcart/stratify.hpp"
#include "subcart/frames.hpp"
#include "subcart/io.hpp"
