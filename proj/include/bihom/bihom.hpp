#pragma once

#include "bihom/scalar.hpp"
#include "bihom/linalg.hpp"
#include "bihom/graded.hpp"
#include "bihom/tensor.hpp"
#include "bihom/report.hpp"
#include "bihom/algebra.hpp"
#include "bihom/tau.hpp"
#include "bihom/derivations.hpp"
#include "bihom/rota_baxter.hpp"
#include "bihom/nijenhuis.hpp"
