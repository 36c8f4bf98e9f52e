# Copyright 2026 The complexity-lab Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Python front end for the complexity-lab core.

Classes and matrices are native objects and NumPy arrays. Structured
results (dimension witnesses, bound reports, criterion reports) come back
as plain dicts with the same fields as the command line JSON output.
"""

import json as _json

from . import _complexity_lab as _core
from ._complexity_lab import (  # noqa: F401
    ConfigError,
    ConstraintError,
    DistributionOverX,
    Error,
    FiniteHypothesisClass,
    InputError,
    NormalizedClass,
    SizeError,
    avg_rank_error_oracle,
    binary_entropy,
    eval_loss,
    gershgorin_bound,
    gram_matrix,
    jl_matrix,
    lemma3_dim_transfer,
    linear_erm,
    min_eigenvalue,
    normalize_class,
    one_sparse,
    parities,
    pattern_decision_list,
    psi,
    random_class,
    random_distribution,
    random_halfplane_class,
    representer_reduce,
    sm_log_count_bound,
    thm12_coefficient,
    zigzag_parameter,
)

__version__ = _core.__version__


def _decoded(fn):
    def wrapper(*args, **kwargs):
        return _json.loads(fn(*args, **kwargs))

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


sq_dimension = _decoded(_core.sq_dimension)
min_ev_dimension = _decoded(_core.min_ev_dimension)
greedy_cover = _decoded(_core.greedy_cover)
dc_criterion = _decoded(_core.dc_criterion)
min_dim_for_criterion = _decoded(_core.min_dim_for_criterion)
thm9_lower_bound = _decoded(_core.thm9_lower_bound)
cor10_lower_bound = _decoded(_core.cor10_lower_bound)
vc_dimension = _decoded(_core.vc_dimension)
mc_upper_heuristic = _decoded(_core.mc_upper_heuristic)
run_verify = _decoded(_core.run_verify)
