#pragma once

// Everything except the command line layer.

#include "qfd/arith.hpp"
#include "qfd/designs.hpp"
#include "qfd/forms.hpp"
#include "qfd/matrix.hpp"
#include "qfd/oracle.hpp"
#include "qfd/scan.hpp"
#include "qfd/symbols.hpp"
#include "qfd/verdict.hpp"
