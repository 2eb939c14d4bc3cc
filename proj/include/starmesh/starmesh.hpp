#pragma once

#include "circuit.hpp"
#include "errors.hpp"
#include "netlist.hpp"
#include "normalize.hpp"
#include "oracle.hpp"
#include "rewrite.hpp"
#include "rig.hpp"
#include "union_find.hpp"
