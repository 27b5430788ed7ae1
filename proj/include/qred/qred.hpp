#pragma once

#include "bigfloat.hpp"
#include "error.hpp"
#include "expr.hpp"
#include "gosper.hpp"
#include "identity.hpp"
#include "idfile.hpp"
#include "numeval.hpp"
#include "poly.hpp"
#include "qrat.hpp"
#include "reduction.hpp"
#include "xalg.hpp"
