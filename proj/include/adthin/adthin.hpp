#pragma once

#include "adthin/afpa.hpp"
#include "adthin/autocorr.hpp"
#include "adthin/element_pattern.hpp"
#include "adthin/ga.hpp"
#include "adthin/grid.hpp"
#include "adthin/mask.hpp"
#include "adthin/oracle.hpp"
#include "adthin/pattern.hpp"
#include "adthin/pd.hpp"
#include "adthin/sequence.hpp"
