// Copyright 2026 the tcjoin authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include "tcjoin/dataset.hpp"
#include "tcjoin/result_set.hpp"

namespace tcjoin::oracle {

/// Ground truth: for every ordered pair, sum_k (p_ik - p_jk)^2 in FP64 in
/// ascending k, kept when sqrt(dist_sq) <= epsilon. Includes self-pairs.
ResultSet brute_force_fp64(const Dataset& ds, double epsilon);

/// Order-exact scalar mirror of the mixed-precision pipeline without tiling:
/// one sequential round-toward-zero dot product per pair over all padded
/// dimensions, the stored norms, the FP32 combine, clamping and the squared
/// threshold. The tiled engine must match it bit for bit.
ResultSet reference_mixed_scalar(const HalfDataset& hd, float epsilon);

}  // namespace tcjoin::oracle
