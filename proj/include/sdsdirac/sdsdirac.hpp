// Copyright 2026 The sdsdirac Authors
// SPDX-License-Identifier: Apache-2.0

// Umbrella header.

#pragma once

#include <sdsdirac/deformation.hpp>
#include <sdsdirac/errors.hpp>
#include <sdsdirac/oracle.hpp>
#include <sdsdirac/radial_ops.hpp>
#include <sdsdirac/specfun.hpp>
#include <sdsdirac/spectrum.hpp>
#include <sdsdirac/wavefun.hpp>
