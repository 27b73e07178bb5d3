// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "abcs/amplitude.hpp"
#include "abcs/bound.hpp"
#include "abcs/errors.hpp"
#include "abcs/ode.hpp"
#include "abcs/physics.hpp"
#include "abcs/smatrix.hpp"
#include "abcs/specfun.hpp"
#include "abcs/validation.hpp"
