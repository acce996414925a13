# Copyright 2026 The repmem Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Repetition-code quantum memory.

Times are in units of T2* unless a keyword says otherwise; t1 defaults to
no amplitude damping.
"""

from ._core import (
    NO_DECAY,
    breakeven,
    extract_coefficients,
    f_bit,
    f_idle,
    f_phase,
    f_phase_n,
    f_phase_noreset_2,
    f_phase_reset,
    f_phase_reset_limit,
    gate_error_coefficients,
    optimal_code_size,
    presets,
    scan_fig3,
    scan_fig4,
    simulate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
