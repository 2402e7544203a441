#pragma once

#include "mckay/error.hpp"
#include "mckay/cyclotomic.hpp"
#include "mckay/expression.hpp"
#include "mckay/matrix.hpp"
#include "mckay/group.hpp"
#include "mckay/abelian.hpp"
#include "mckay/ages.hpp"
#include "mckay/class_group.hpp"
#include "mckay/polynomial.hpp"
#include "mckay/invariants.hpp"
