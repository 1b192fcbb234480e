#pragma once
// Convenience umbrella: the whole library.

#include "rsim/diag.hpp"
#include "rsim/dot.hpp"
#include "rsim/elaborate.hpp"
#include "rsim/expr.hpp"
#include "rsim/frontend.hpp"
#include "rsim/memfile.hpp"
#include "rsim/model.hpp"
#include "rsim/ops.hpp"
#include "rsim/rtg.hpp"
#include "rsim/sim.hpp"
#include "rsim/suite.hpp"
#include "rsim/value.hpp"
#include "rsim/xml.hpp"
