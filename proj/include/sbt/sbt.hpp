#pragma once

#include "sbt/config.hpp"
#include "sbt/errors.hpp"
#include "sbt/extension.hpp"
#include "sbt/frac_sobolev.hpp"
#include "sbt/hermite.hpp"
#include "sbt/io.hpp"
#include "sbt/quadrature.hpp"
#include "sbt/random.hpp"
#include "sbt/report.hpp"
#include "sbt/segal_bargmann.hpp"
#include "sbt/specfun.hpp"
#include "sbt/spectrum.hpp"
#include "sbt/suites.hpp"
#include "sbt/svg.hpp"
