# Copyright 2026 The rcgnn Authors
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

"""Retrieval-based causal graph explanations."""

from ._rcgnn import (
    Dataset,
    EmptyCandidateSetError,
    Explanation,
    GeneratorOptions,
    Graph,
    HyperParams,
    Model,
    NonFiniteError,
    ParameterError,
    ParseError,
    ShapeError,
    Splits,
    benchmark,
    brute_force_score,
    cross_entropy,
    derangement,
    disentangle_weight,
    explain_random,
    fit,
    gce_loss,
    generate_ba3motif,
    generate_multimotif,
    load_dataset,
    load_model,
    match,
    multimotif_kind,
    precision_at_n,
    recall_at_n,
)

__version__ = "0.1.0"
