#pragma once

#include "gwasym/singularity/frobenius.hpp"
#include "gwasym/singularity/profile.hpp"
#include "gwasym/singularity/series.hpp"
#include "gwasym/singularity/x0.hpp"
