#pragma once

#include "mrv/core.hpp"
#include "mrv/laurent.hpp"
#include "mrv/linalg.hpp"
#include "mrv/maps.hpp"
#include "mrv/report.hpp"
#include "mrv/rings.hpp"
#include "mrv/runner.hpp"
#include "mrv/verify.hpp"
