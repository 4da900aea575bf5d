#pragma once

// Umbrella header: the whole library in one include.

#include "binomial.hpp"
#include "constructions.hpp"
#include "errors.hpp"
#include "family.hpp"
#include "formulas.hpp"
#include "json_io.hpp"
#include "layer.hpp"
#include "multipart_set.hpp"
#include "numbers.hpp"
#include "part_structure.hpp"
#include "reproduce.hpp"
#include "search.hpp"
#include "shifting.hpp"
