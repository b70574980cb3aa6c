#pragma once

#include "adares/certificates.hpp"
#include "adares/design_matrix.hpp"
#include "adares/gradient_map.hpp"
#include "adares/libsvm.hpp"
#include "adares/problem.hpp"
#include "adares/regularizer.hpp"
#include "adares/restart.hpp"
#include "adares/schemes.hpp"
#include "adares/smooth.hpp"
#include "adares/synthetic.hpp"
#include "adares/theta.hpp"
#include "adares/trace.hpp"
#include "adares/types.hpp"
