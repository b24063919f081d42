#pragma once

#include "eqhom/bar_complex.hpp"
#include "eqhom/error.hpp"
#include "eqhom/extensions.hpp"
#include "eqhom/finab.hpp"
#include "eqhom/finite_group.hpp"
#include "eqhom/h1.hpp"
#include "eqhom/int_matrix.hpp"
#include "eqhom/integer.hpp"
#include "eqhom/laurent.hpp"
#include "eqhom/normal_form.hpp"
#include "eqhom/qg_module.hpp"
#include "eqhom/sparse_elimination.hpp"
#include "eqhom/spec_io.hpp"
#include "eqhom/verification.hpp"
