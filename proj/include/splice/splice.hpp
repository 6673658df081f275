#pragma once

#include "splice/dedekind.hpp"
#include "splice/diagram.hpp"
#include "splice/error.hpp"
#include "splice/json_io.hpp"
#include "splice/operations.hpp"
#include "splice/rational.hpp"
#include "splice/s_gamma.hpp"
#include "splice/signatures.hpp"
