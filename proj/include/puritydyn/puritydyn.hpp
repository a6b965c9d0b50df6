// Convenience facade: the whole library in one include.
#pragma once

#include "puritydyn/bounds.hpp"
#include "puritydyn/closed_forms.hpp"
#include "puritydyn/common.hpp"
#include "puritydyn/csv.hpp"
#include "puritydyn/exact.hpp"
#include "puritydyn/lattice.hpp"
#include "puritydyn/linalg.hpp"
#include "puritydyn/mps.hpp"
#include "puritydyn/pauli.hpp"
#include "puritydyn/verify.hpp"
