#pragma once

#include "cardano.hpp"
#include "cubic.hpp"
#include "errors.hpp"
#include "fp.hpp"
#include "hensel.hpp"
#include "number.hpp"
#include "oracle.hpp"
#include "prime.hpp"
#include "rational.hpp"
