from __future__ import annotations

import numpy as np
import pytest

from ionchain import RegisterState


def make_random_state(
    rng: np.random.Generator,
    n_ions: int,
    n_max: int,
    zero_top: list[tuple[int, int]] | None = None,
) -> RegisterState:
    """Random normalized register state.

    zero_top lists (1-based ion, level) pairs whose |level, n_max> components
    are cleared, so sideband pulses on those transitions stay inside the
    truncated space.
    """
    dim = 3**n_ions * (n_max + 1)
    amps = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    shaped = amps.reshape([3] * n_ions + [n_max + 1])
    for ion, level in zero_top or []:
        index = [slice(None)] * (n_ions + 1)
        index[ion - 1] = level
        index[n_ions] = n_max
        shaped[tuple(index)] = 0.0
    amps = shaped.reshape(-1)
    amps = amps / np.linalg.norm(amps)
    return RegisterState(n_ions, n_max, amps)


def permute_other_ions(state: RegisterState, perm: list[int]) -> RegisterState:
    """Relabel ions by the permutation ``perm`` (0-based, new-from-old axes)."""
    shaped = state.shaped()
    axes = list(perm) + [state.n_ions]
    return RegisterState(
        state.n_ions, state.n_max, np.transpose(shaped, axes).reshape(-1)
    )


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260808)
