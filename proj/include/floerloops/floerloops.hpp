#pragma once

#include "ainfty.hpp"
#include "cubical.hpp"
#include "cylinder.hpp"
#include "graded.hpp"
#include "json_io.hpp"
#include "moduli.hpp"
#include "oracles.hpp"
#include "pipeline.hpp"
#include "pontryagin.hpp"
#include "table_category.hpp"
#include "twisted.hpp"
