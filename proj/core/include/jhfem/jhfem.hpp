#pragma once

#include "jhfem/analysis.hpp"
#include "jhfem/banded.hpp"
#include "jhfem/basis.hpp"
#include "jhfem/csv_io.hpp"
#include "jhfem/errors.hpp"
#include "jhfem/fe_function.hpp"
#include "jhfem/jeffery_hamel.hpp"
#include "jhfem/mesh_dof.hpp"
#include "jhfem/model_problem.hpp"
#include "jhfem/newton.hpp"
#include "jhfem/quadrature.hpp"
#include "jhfem/shooting.hpp"
#include "jhfem/verification.hpp"
