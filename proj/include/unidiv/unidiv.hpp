// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "unidiv/bounds.hpp"
#include "unidiv/compensated_sum.hpp"
#include "unidiv/csiszar.hpp"
#include "unidiv/error.hpp"
#include "unidiv/means.hpp"
#include "unidiv/measures.hpp"
#include "unidiv/registry.hpp"
#include "unidiv/simplex.hpp"
#include "unidiv/type_s.hpp"
