#pragma once

#include "kernels.hpp"
#include "drift.hpp"
#include "problems.hpp"
#include "eigensolver.hpp"
#include "closed_forms.hpp"
#include "model_spaces.hpp"
#include "heat_flow.hpp"
