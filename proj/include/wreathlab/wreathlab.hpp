#pragma once

#include "element.hpp"
#include "equivalence.hpp"
#include "error.hpp"
#include "expression.hpp"
#include "generators.hpp"
#include "group.hpp"
#include "metric.hpp"
#include "sampling.hpp"
#include "structure.hpp"
#include "wreath.hpp"
