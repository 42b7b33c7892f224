#pragma once

#include "schurloewner/bounds.hpp"
#include "schurloewner/estimators.hpp"
#include "schurloewner/functions.hpp"
#include "schurloewner/harness.hpp"
#include "schurloewner/json_io.hpp"
#include "schurloewner/loewner.hpp"
#include "schurloewner/matrixcore.hpp"
#include "schurloewner/random.hpp"
