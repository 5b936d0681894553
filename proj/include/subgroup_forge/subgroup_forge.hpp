#pragma once

#include "subgroup_forge/adam.hpp"
#include "subgroup_forge/autodiff.hpp"
#include "subgroup_forge/canonical.hpp"
#include "subgroup_forge/datasets.hpp"
#include "subgroup_forge/discovery.hpp"
#include "subgroup_forge/errors.hpp"
#include "subgroup_forge/linear_map.hpp"
#include "subgroup_forge/mask_head.hpp"
#include "subgroup_forge/models.hpp"
#include "subgroup_forge/nets.hpp"
#include "subgroup_forge/permutation.hpp"
#include "subgroup_forge/rng.hpp"
#include "subgroup_forge/subgroup.hpp"
#include "subgroup_forge/tensor.hpp"
#include "subgroup_forge/training.hpp"
