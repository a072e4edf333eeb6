"""Small reference instances."""

from spcls.core import StatePropertySystem, validate_lattice, validate_sps

FIVE_STATE_ORDER = [
    ("0", "a"), ("0", "b"), ("0", "c"),
    ("a", "d"), ("b", "d"), ("d", "I"), ("c", "I"),
]


def five_state_example() -> StatePropertySystem:
    """Five states over the six-element lattice 0 < a, b < d < I, 0 < c < I."""
    lattice = validate_lattice(FIVE_STATE_ORDER, ["0", "a", "b", "c", "d", "I"])
    xi = {
        "p": ["b", "d", "I"],
        "q": ["b", "d", "I"],
        "r": ["a", "d", "I"],
        "s": ["c", "I"],
        "t": ["c", "I"],
    }
    return validate_sps(["p", "q", "r", "s", "t"], lattice, xi)
