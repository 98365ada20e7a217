#pragma once

#include "fitzmono/bipotential.hpp"
#include "fitzmono/coaxial.hpp"
#include "fitzmono/error.hpp"
#include "fitzmono/fitzpatrick.hpp"
#include "fitzmono/linear_law.hpp"
#include "fitzmono/monotone.hpp"
#include "fitzmono/oracle.hpp"
#include "fitzmono/symlin.hpp"
