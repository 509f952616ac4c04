#pragma once

// Everything: groups, the three Beck contexts, the theorem checkers and I/O.

#include "cotangent/abgrp.hpp"
#include "cotangent/beck.hpp"
#include "cotangent/io/algebra_text.hpp"
#include "cotangent/io/json.hpp"
#include "cotangent/monoid_context.hpp"
#include "cotangent/ring_context.hpp"
#include "cotangent/set_context.hpp"
#include "cotangent/smith.hpp"
