# Copyright 2026 The wcdt Authors.
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

"""Python bindings for the wcdt decision-tree WCET toolkit."""

from ._wcdt import (
    DecisionTree,
    SurrogateModel,
    WcdtError,
    brute_force,
    collect_samples,
    default_model_table,
    emit_c,
    enumerate_paths,
    fit,
    generate_tree,
    kendall_tau,
    label,
    path_cycles,
    r_squared,
    select_model,
    synthesize_input,
    tree_cost,
)

__all__ = [
    "DecisionTree",
    "SurrogateModel",
    "WcdtError",
    "brute_force",
    "collect_samples",
    "default_model_table",
    "emit_c",
    "enumerate_paths",
    "fit",
    "generate_tree",
    "kendall_tau",
    "label",
    "path_cycles",
    "r_squared",
    "select_model",
    "synthesize_input",
    "tree_cost",
]

__version__ = "0.1.0"
