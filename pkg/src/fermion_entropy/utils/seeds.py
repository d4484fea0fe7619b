import numpy as np


def derive_seed(master: int, *keys: int) -> int:
    """
    Derive a child seed as a pure function of a master seed and integer keys.

    The mapping goes through numpy's SeedSequence hashing, so restart i of a run
    with master seed s always receives derive_seed(s, i), whether restarts run
    serially or in parallel.
    """
    if master < 0 or any(key < 0 for key in keys):
        raise ValueError("Seeds and seed keys must be non-negative integers")
    state = np.random.SeedSequence([int(master), *map(int, keys)]).generate_state(1, dtype=np.uint32)
    return int(state[0])
