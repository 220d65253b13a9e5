#pragma once

// Umbrella header for the whole toolkit.

#include "rcsp/base.hpp"
#include "rcsp/classify.hpp"
#include "rcsp/difftest.hpp"
#include "rcsp/digraph.hpp"
#include "rcsp/formula.hpp"
#include "rcsp/generators.hpp"
#include "rcsp/language.hpp"
#include "rcsp/partial_op.hpp"
#include "rcsp/reconfigure.hpp"
#include "rcsp/relation.hpp"
#include "rcsp/text.hpp"
