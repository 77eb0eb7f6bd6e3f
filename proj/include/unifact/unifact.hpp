#pragma once

// Umbrella header: the whole factorization engine.

#include "unifact/assemble.hpp"
#include "unifact/chain_oracle.hpp"
#include "unifact/class_set.hpp"
#include "unifact/complex_matrix.hpp"
#include "unifact/cond_c.hpp"
#include "unifact/eigen.hpp"
#include "unifact/errors.hpp"
#include "unifact/five_factor.hpp"
#include "unifact/generators.hpp"
#include "unifact/involution.hpp"
#include "unifact/ladder.hpp"
#include "unifact/perm_carry.hpp"
#include "unifact/perm_five_factor.hpp"
#include "unifact/projection.hpp"
#include "unifact/random.hpp"
#include "unifact/random_perm.hpp"
#include "unifact/rational.hpp"
#include "unifact/serialize.hpp"
#include "unifact/symmetry_factor.hpp"
#include "unifact/tail_permutation.hpp"
#include "unifact/tolerance.hpp"
#include "unifact/unitary.hpp"
#include "unifact/verify.hpp"
#include "unifact/word.hpp"
