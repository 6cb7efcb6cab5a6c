"""Named networks used in examples, tests and the CLI."""

from .dynamics import AutomataNetwork

__all__ = ["example_network", "rotation_network", "identity_network", "NAMED"]


def _example_f0(x):
    if (x[0] == 0 and x[1] == x[2]) or x[0] == x[1] == x[2] == 1:
        return 0
    if (x[1] + x[2]) % 2 == 1:
        return 1
    return 2


def example_network() -> AutomataNetwork:
    """Three automata over {0,1,2} x B x B whose dynamics differ under
    ``({1},{0,2})`` and ``{(0),(2,1)}``."""
    return AutomataNetwork.from_functions(
        (3, 2, 2),
        [
            _example_f0,
            lambda x: int(x[0] != 0 or x[1] == 1 or x[2] == 1),
            lambda x: int((x[0] == 1 and x[1] == 1) or x[0] == 2),
        ],
        name="example",
    )


def rotation_network(n: int = 3) -> AutomataNetwork:
    """Boolean positive cycle: automaton ``i`` copies automaton ``i - 1``."""
    return AutomataNetwork.from_functions(
        [2] * n, [lambda x, i=i: x[(i - 1) % n] for i in range(n)], name="rotation"
    )


def identity_network(n: int = 3) -> AutomataNetwork:
    return AutomataNetwork.identity([2] * n)


NAMED = {
    "example": example_network,
    "rotation": rotation_network,
    "identity": identity_network,
}
